//! The Cyclic WCL estimate written as a ratio of quadratic forms in theta,
//! checked against the weighted centroid, plus the definiteness report of B_p.

use cyclic_wcl::cyclostat::{cac, theta_from_signals};
use cyclic_wcl::locator::{centroid, weights_from_cac};
use cyclic_wcl::quadform::{build_quadforms, check_positive_definite, ratio_estimate};
use cyclic_wcl::scenario::{place_radios, Point, Scenario};
use cyclic_wcl::waveform::{compose_received, generate_qam, SampleBlock, WaveformParams};

fn main() -> cyclic_wcl::Result<()> {
    let wf = |symbol_rate, seed| WaveformParams {
        modulation_order: 4,
        symbol_rate,
        rolloff: 0.35,
        sample_rate: 200e6,
        num_samples: 5000,
        seed,
    };
    let st = generate_qam(&wf(20e6, 1))?;
    let si = generate_qam(&wf(40e6, 2))?;
    let theta = theta_from_signals(&st, &si, 20e6, 200e6)?;
    println!("theta = {:?}", theta.0);

    let sc = Scenario {
        radio_positions: place_radios(10, 50.0, 7),
        target_position: Point::ORIGIN,
        interferer_position: Point::new(20.0, 20.0),
        p_t_dbm: 10.0,
        p_i_dbm: 25.0,
        d0: 1.0,
        gamma: 3.8,
        noise_psd_dbm_hz: f64::NEG_INFINITY,
    };
    let pks = sc.power_vectors()?;
    let qf = build_quadforms(&pks, &sc.radio_positions)?;
    let (x, y) = ratio_estimate(&theta, &qf)?;

    let zeros = SampleBlock::zeros(st.len());
    let cacs = pks
        .iter()
        .map(|pk| compose_received(&st, &si, pk, &zeros).map(|r| cac(&r, 20e6, 200e6)))
        .collect::<cyclic_wcl::Result<Vec<_>>>()?;
    let direct = centroid(&weights_from_cac(&cacs), &sc.radio_positions)?;

    println!("ratio of quadratic forms: ({x:.9}, {y:.9})");
    println!("weighted centroid:        ({:.9}, {:.9})", direct.x, direct.y);
    let r = check_positive_definite(&qf);
    println!(
        "B_p: min eigenvalue {:.3e}, min/trace {:.3e}, positive definite {}",
        r.min_eigenvalue, r.relative_min, r.positive_definite
    );
    Ok(())
}
