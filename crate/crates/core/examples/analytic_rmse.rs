//! Analytic RMSE from a Gaussian fit of theta, next to the Monte Carlo RMSE,
//! on a reduced scenario (20 radios, 1000 samples per block).

use cyclic_wcl::bench::{run_sweep, ExperimentConfig, Mode};

fn main() -> cyclic_wcl::Result<()> {
    let mut cfg = ExperimentConfig::table_defaults(&[15.0, 20.0, 25.0, 30.0, 35.0, 40.0]);
    cfg.scenario.radio_count = Some(20);
    cfg.scenario.layout_seed = 949;
    cfg.target_waveform.num_samples = 1000;
    cfg.interferer_waveform.num_samples = 1000;
    cfg.fit_realizations = 1000;
    cfg.trials = 500;
    cfg.mode = Mode::Both;
    println!("{:>8} {:>12} {:>12}", "p_i dBm", "MC", "analytic");
    for row in run_sweep(&cfg)? {
        let fmt = |v: Option<f64>| v.map_or("-".into(), |v| format!("{v:.3}"));
        println!(
            "{:8} {:>12} {:>12}",
            row.point.p_i_dbm,
            fmt(row.rmse_cyclic_mc),
            fmt(row.rmse_cyclic_analytic)
        );
    }
    Ok(())
}
