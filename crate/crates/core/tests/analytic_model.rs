use cyclic_wcl::analytic::{analytic_rmse, fit_theta_model};
use cyclic_wcl::quadform::build_quadforms;
use cyclic_wcl::scenario::{place_radios, Point, Scenario};
use cyclic_wcl::waveform::WaveformParams;

fn params(order: u32, symbol_rate: f64) -> WaveformParams {
    WaveformParams {
        modulation_order: order,
        symbol_rate,
        rolloff: 0.35,
        sample_rate: 200e6,
        num_samples: 1000,
        seed: 0,
    }
}

fn scenario(radios: Vec<Point>, interferer: Point) -> Scenario {
    Scenario {
        radio_positions: radios,
        target_position: Point::ORIGIN,
        interferer_position: interferer,
        p_t_dbm: 10.0,
        p_i_dbm: 25.0,
        d0: 1.0,
        gamma: 3.8,
        noise_psd_dbm_hz: -174.0,
    }
}

#[test]
fn absent_interferer_zeroes_its_coordinates() {
    let m = fit_theta_model(&params(4, 20e6), None, 20e6, 100, 3).unwrap();
    for i in [1, 2, 4, 5] {
        assert_eq!(m.mean[i], 0.0);
        assert_eq!(m.covariance[(i, i)], 0.0);
    }
    assert!(m.near_singular);
    assert!(m.mean[0].hypot(m.mean[3]) > 0.0);
}

#[test]
fn fitting_is_deterministic_per_seed() {
    let a = fit_theta_model(&params(4, 20e6), Some(&params(16, 40e6)), 20e6, 50, 9).unwrap();
    let b = fit_theta_model(&params(4, 20e6), Some(&params(16, 40e6)), 20e6, 50, 9).unwrap();
    let c = fit_theta_model(&params(4, 20e6), Some(&params(16, 40e6)), 20e6, 50, 10).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.mean, c.mean);
}

#[test]
fn rmse_is_invariant_to_theta_scale_and_mirroring() {
    let model = fit_theta_model(&params(4, 20e6), Some(&params(4, 40e6)), 20e6, 300, 1).unwrap();
    let radios = place_radios(12, 50.0, 4);
    let sc = scenario(radios.clone(), Point::new(20.0, 20.0));
    let qf = build_quadforms(&sc.power_vectors().unwrap(), &sc.radio_positions).unwrap();
    let base = analytic_rmse(&model, &qf).unwrap();

    let scaled = analytic_rmse(&model.scaled(0.25), &qf).unwrap();
    assert!((scaled - base).abs() <= 1e-6 * base, "{scaled} vs {base}");

    let mirrored = scenario(
        radios.iter().map(|p| Point::new(p.x, -p.y)).collect(),
        Point::new(20.0, -20.0),
    );
    let qm = build_quadforms(&mirrored.power_vectors().unwrap(), &mirrored.radio_positions).unwrap();
    assert_eq!(qm.a_y, -qf.a_y);
    let mirror = analytic_rmse(&model, &qm).unwrap();
    assert!((mirror - base).abs() <= 1e-9 * base, "{mirror} vs {base}");
}

#[test]
fn rmse_grows_with_interferer_power() {
    let model = fit_theta_model(&params(4, 20e6), Some(&params(4, 40e6)), 20e6, 300, 2).unwrap();
    let radios = place_radios(20, 50.0, 8);
    let rmse = |p_i: f64| {
        let mut sc = scenario(radios.clone(), Point::new(20.0, 20.0));
        sc.p_i_dbm = p_i;
        let qf = build_quadforms(&sc.power_vectors().unwrap(), &sc.radio_positions).unwrap();
        analytic_rmse(&model, &qf).unwrap()
    };
    let (lo, hi) = (rmse(10.0), rmse(40.0));
    assert!(hi > lo, "{lo} -> {hi}");
}
