//! The four experiment families as CSV on stdout:
//!
//! ```text
//! cargo run --release --example experiments -- position|modulation|power|wcl [trials]
//! ```
//!
//! `wcl` rows carry both the cyclic and the plain RMSE columns.

use cyclic_wcl::bench::{run_sweep, write_csv, ExperimentConfig};
use cyclic_wcl::scenario::Point;

fn main() -> cyclic_wcl::Result<()> {
    let mut args = std::env::args().skip(1);
    let family = args.next().unwrap_or_else(|| "position".into());
    let trials = args
        .next()
        .map_or(Ok(100), |t| t.parse())
        .map_err(|e| cyclic_wcl::Error::Config(format!("trials: {e}")))?;

    let mut cfg = ExperimentConfig::table_defaults(&[15.0, 20.0, 25.0, 30.0, 35.0, 40.0]);
    cfg.scenario.radio_count = Some(40);
    cfg.scenario.layout_seed = 949;
    cfg.trials = trials;
    cfg.common_random_numbers = true;
    match family.as_str() {
        "position" => {
            cfg.sweep.interferer_positions = [10.0, 20.0, 30.0].iter().map(|&c| Point::new(c, c)).collect();
        }
        "modulation" => cfg.sweep.interferer_modulation_orders = Some(vec![4, 64]),
        "power" => cfg.sweep.p_t_dbm = vec![10.0, 20.0, 30.0],
        "wcl" => {}
        other => {
            return Err(cyclic_wcl::Error::Config(format!(
                "unknown family {other:?}; expected position, modulation, power or wcl"
            )))
        }
    }
    let rows = run_sweep(&cfg)?;
    write_csv(std::io::stdout().lock(), &cfg, &rows)
}
