//! One synthesis -> reception -> estimation pass per interferer power:
//! Cyclic WCL against WCL without cyclostationarity.

use cyclic_wcl::bench::{run_trial, trial_seed, ExperimentConfig};

fn main() -> cyclic_wcl::Result<()> {
    let mut cfg = ExperimentConfig::table_defaults(&[15.0, 25.0, 35.0]);
    cfg.scenario.radio_count = Some(40);
    cfg.scenario.layout_seed = 949;
    cfg.validate()?;
    for point in cfg.sweep_points() {
        let out = run_trial(&cfg, &point, trial_seed(&cfg, point.sweep_id, 0))?;
        println!(
            "p_i={:>4} dBm  cyclic ({:7.2}, {:7.2}) err {:6.2} m   plain ({:7.2}, {:7.2}) err {:6.2} m",
            point.p_i_dbm,
            out.cyclic.x,
            out.cyclic.y,
            out.cyclic_sq_error().sqrt(),
            out.plain.x,
            out.plain.y,
            out.plain_sq_error().sqrt()
        );
    }
    Ok(())
}
