//! `cwcl` command line: `run`, `layout` and `validate`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use super::config::{ExperimentConfig, Mode};
use super::sweep::{run_sweep, write_csv};
use crate::quadform::{build_quadforms, check_positive_definite};
use crate::scenario::{place_radios, Point};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "cwcl", version, about = "Cyclic WCL localization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a Monte Carlo and/or analytic sweep and write CSV results.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Output CSV path; `-` or unset (with no `output` in the config) writes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a seeded radio layout as JSON.
    Layout {
        /// Take count, extent and seed from a config's scenario section.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        extent: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a config and report positive definiteness of B_p per sweep point.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Serialize)]
struct LayoutDoc {
    count: usize,
    extent: f64,
    seed: u64,
    radio_positions: Vec<Point>,
}

fn open_out(path: Option<&PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufWriter::new(File::create(p)?))),
        _ => Ok(Box::new(BufWriter::new(std::io::stdout().lock()))),
    }
}

fn run(
    config: PathBuf,
    mode: Option<Mode>,
    seed: Option<u64>,
    trials: Option<usize>,
    out: Option<PathBuf>,
) -> Result<()> {
    let mut cfg = ExperimentConfig::load(&config)?;
    if let Some(m) = mode {
        cfg.mode = m;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(t) = trials {
        cfg.trials = t;
    }
    if out.is_some() {
        cfg.output = out;
    }
    let rows = run_sweep(&cfg)?;
    let mut w = open_out(cfg.output.as_ref())?;
    write_csv(&mut w, &cfg, &rows)?;
    w.flush()?;

    let failed = rows
        .iter()
        .filter(|r| r.mc_error.is_some() || r.analytic_error.is_some())
        .count();
    if failed > 0 {
        eprintln!("warning: {failed} of {} rows carry error markers", rows.len());
    }
    Ok(())
}

fn layout(
    config: Option<PathBuf>,
    count: Option<usize>,
    extent: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
) -> Result<()> {
    let base = config.map(|p| ExperimentConfig::load(&p)).transpose()?;
    let sc = base.as_ref().map(|c| &c.scenario);
    let count = count
        .or(sc.and_then(|s| s.radio_count))
        .ok_or_else(|| Error::Config("layout needs --count or a config with radio_count".into()))?;
    let extent = extent.or(sc.map(|s| s.layout_extent)).unwrap_or(50.0);
    let seed = seed.or(sc.map(|s| s.layout_seed)).unwrap_or(0);
    if count == 0 || !(extent > 0.0 && extent.is_finite()) {
        return Err(Error::Config("layout needs count >= 1 and extent > 0".into()));
    }
    let doc = LayoutDoc {
        count,
        extent,
        seed,
        radio_positions: place_radios(count, extent, seed),
    };
    let mut w = open_out(out.as_ref())?;
    serde_json::to_writer_pretty(&mut w, &doc)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn validate(config: PathBuf) -> Result<()> {
    let cfg = ExperimentConfig::load(&config)?;
    cfg.validate()?;
    let radios = cfg.radio_positions();
    let mut uncertified = 0;
    for point in cfg.sweep_points() {
        let (working, _) = cfg.scenario_with_radios(&point, radios.clone()).centered();
        let qf = build_quadforms(&working.power_vectors()?, &working.radio_positions)?;
        let r = check_positive_definite(&qf);
        if !r.positive_definite {
            uncertified += 1;
        }
        println!(
            "sweep_id={} p_t_dbm={} p_i_dbm={} interferer=({}, {}) min_eig={:e} min_eig/trace={:e} positive_definite={}",
            point.sweep_id,
            point.p_t_dbm,
            point.p_i_dbm,
            point.interferer_position.x,
            point.interferer_position.y,
            r.min_eigenvalue,
            r.relative_min,
            r.positive_definite
        );
    }
    println!(
        "config ok: {} radios, {} sweep points, {} without certified B_p",
        radios.len(),
        cfg.sweep_points().len(),
        uncertified
    );
    Ok(())
}

/// Entry point shared by the `cwcl` binary and tests.
pub fn cli_main<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run {
            config,
            mode,
            seed,
            trials,
            out,
        } => run(config, mode, seed, trials, out),
        Command::Layout {
            config,
            count,
            extent,
            seed,
            out,
        } => layout(config, count, extent, seed, out),
        Command::Validate { config } => validate(config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
