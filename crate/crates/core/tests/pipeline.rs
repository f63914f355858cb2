//! End-to-end checks of the synthesis -> reception -> estimation chain.

use cyclic_wcl::bench::{run_sweep, run_trial, trial_seed, ExperimentConfig};
use cyclic_wcl::cyclostat::{cac, theta_from_signals};
use cyclic_wcl::locator::cyclic_wcl;
use cyclic_wcl::quadform::{build_quadforms, ratio_estimate};
use cyclic_wcl::scenario::{dbm_to_mw, place_radios, Point, Scenario};
use cyclic_wcl::seed;
use cyclic_wcl::waveform::{compose_received, generate_qam, SampleBlock, WaveformParams};

fn target_params(seed: u64) -> WaveformParams {
    WaveformParams {
        modulation_order: 4,
        symbol_rate: 20e6,
        rolloff: 0.35,
        sample_rate: 200e6,
        num_samples: 5000,
        seed,
    }
}

#[test]
fn target_has_a_feature_at_its_symbol_rate() {
    let (mut on, mut off) = (0.0, 0.0);
    for s in 0..100 {
        let st = generate_qam(&target_params(seed::derive(11, &[s]))).unwrap();
        on += cac(&st, 20e6, 200e6).value.norm_sqr();
        off += cac(&st, 23e6, 200e6).value.norm_sqr();
    }
    assert!(on > 10.0 * off, "on-feature {on:e} vs off-feature {off:e}");
}

fn interferer_free(p_t: f64, noise: Option<f64>) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::table_defaults(&[]);
    cfg.sweep.p_i_dbm = vec![None];
    cfg.sweep.p_t_dbm = vec![p_t];
    cfg.scenario.radio_count = Some(15);
    cfg.scenario.layout_seed = 21;
    cfg.scenario.noise_psd_dbm_hz = noise;
    cfg.target_waveform.num_samples = 2000;
    cfg.interferer_waveform.num_samples = 2000;
    cfg
}

/// With the interferer off and no noise every CAC is `p_tk R_t`, so the
/// estimate is the centroid with weights `p_tk^2`.
#[test]
fn noiseless_interferer_free_estimate_is_the_power_centroid() {
    let cfg = interferer_free(30.0, None);
    let point = cfg.sweep_points()[0];
    let radios = cfg.radio_positions();
    let w: Vec<f64> = radios
        .iter()
        .map(|r| (dbm_to_mw(30.0) * r.norm().max(1.0).powf(-3.8)).powi(2))
        .collect();
    let total: f64 = w.iter().sum();
    let expect = Point::new(
        w.iter().zip(&radios).map(|(w, r)| w * r.x).sum::<f64>() / total,
        w.iter().zip(&radios).map(|(w, r)| w * r.y).sum::<f64>() / total,
    );
    for t in 0..3 {
        let out = run_trial(&cfg, &point, trial_seed(&cfg, 0, t)).unwrap();
        assert!(out.cyclic.distance(&expect) < 1e-9 * expect.norm().max(1.0));
        assert!(out.plain.distance(&expect) < 1e-9 * expect.norm().max(1.0));
    }
    let (lo_x, hi_x) = radios
        .iter()
        .fold((f64::MAX, f64::MIN), |(a, b), r| (a.min(r.x), b.max(r.x)));
    assert!(expect.x >= lo_x && expect.x <= hi_x);
}

#[test]
fn interferer_free_plain_and_cyclic_agree_with_noise() {
    let cfg = interferer_free(30.0, Some(-174.0));
    let point = cfg.sweep_points()[0];
    for t in 0..5 {
        let out = run_trial(&cfg, &point, trial_seed(&cfg, 0, t)).unwrap();
        assert!(out.cyclic.distance(&out.plain) < 1.0, "{out:?}");
    }
}

#[test]
fn strong_interferer_drags_the_estimate_toward_it() {
    let mut cfg = ExperimentConfig::table_defaults(&[15.0, 40.0]);
    cfg.scenario.radio_count = Some(40);
    cfg.scenario.layout_seed = 949;
    cfg.trials = 20;
    cfg.common_random_numbers = true;
    let rows = run_sweep(&cfg).unwrap();
    let (weak, strong) = (&rows[0], &rows[1]);
    assert!(strong.rmse_cyclic_mc.unwrap() > 2.0 * weak.rmse_cyclic_mc.unwrap());
    assert!(strong.mean_x.unwrap() > weak.mean_x.unwrap());
    assert!(strong.mean_y.unwrap() > weak.mean_y.unwrap());
    // saturation: the estimate settles near the radio closest to the interferer
    let sat = strong.rmse_cyclic_mc.unwrap();
    assert!((sat - strong.nearest_cr_dist).abs() < 0.3 * strong.nearest_cr_dist);
}

#[test]
fn rmse_never_exceeds_the_farthest_radio() {
    let mut cfg = ExperimentConfig::table_defaults(&[15.0, 25.0, 35.0]);
    cfg.scenario.radio_count = Some(12);
    cfg.scenario.layout_seed = 3;
    cfg.target_waveform.num_samples = 1000;
    cfg.interferer_waveform.num_samples = 1000;
    cfg.trials = 10;
    cfg.sweep.interferer_positions = vec![Point::new(10.0, 10.0), Point::new(-30.0, 5.0)];
    let reach = cfg.radio_positions().iter().map(|r| r.norm()).fold(0.0, f64::max);
    let rows = run_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 6);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.point.sweep_id, i);
        assert!(row.rmse_cyclic_mc.unwrap() <= reach);
        assert!(row.rmse_plain_mc.unwrap() <= reach);
    }
}

/// The ratio of quadratic forms evaluated on theta of the actual waveforms
/// reproduces the locator run on noiseless received blocks.
#[test]
fn quadratic_form_estimate_matches_locator_on_noiseless_blocks() {
    for s in 0..5u64 {
        let st = generate_qam(&target_params(seed::derive(31, &[s]))).unwrap();
        let si = generate_qam(&WaveformParams {
            modulation_order: [4, 16, 64][s as usize % 3],
            symbol_rate: 40e6,
            ..target_params(seed::derive(32, &[s]))
        })
        .unwrap();
        let sc = Scenario {
            radio_positions: place_radios(6 + 4 * s as usize, 50.0, s),
            target_position: Point::ORIGIN,
            interferer_position: Point::new(10.0 + 5.0 * s as f64, 20.0),
            p_t_dbm: 10.0,
            p_i_dbm: 15.0 + 5.0 * s as f64,
            d0: 1.0,
            gamma: 3.8,
            noise_psd_dbm_hz: f64::NEG_INFINITY,
        };
        let pks = sc.power_vectors().unwrap();
        let zeros = SampleBlock::zeros(st.len());
        let received: Vec<SampleBlock> = pks
            .iter()
            .map(|pk| compose_received(&st, &si, pk, &zeros).unwrap())
            .collect();
        let located = cyclic_wcl(&received, &sc.radio_positions, 20e6, 200e6).unwrap();

        let theta = theta_from_signals(&st, &si, 20e6, 200e6).unwrap();
        let (x, y) = ratio_estimate(&theta, &build_quadforms(&pks, &sc.radio_positions).unwrap()).unwrap();
        let err = Point::new(x, y).distance(&located.point());
        assert!(err <= 1e-9 * located.point().norm(), "seed {s}: {err:e}");
    }
}
