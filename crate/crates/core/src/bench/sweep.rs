//! Seeded Monte Carlo trials, sweeps and CSV output.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;

use super::config::ExperimentConfig;
pub use super::config::SweepPoint;
use crate::analytic::{analytic_rmse, fit_theta_model, GaussianThetaModel};
use crate::locator::{cyclic_wcl, plain_wcl};
use crate::quadform::build_quadforms;
use crate::scenario::{noise_power, Point, Scenario};
use crate::seed::{self, stream};
use crate::waveform::{awgn, compose_received, generate_qam, SampleBlock};
use crate::{Error, Result};

/// Column header of the sweep CSV. Fields are separated by `", "`.
pub const CSV_HEADER: &str = "sweep_id, p_t_dbm, p_i_dbm, interferer_x, interferer_y, mod_order_t, mod_order_i, trials, rmse_cyclic_mc, rmse_plain_mc, rmse_cyclic_analytic, mean_x, mean_y, nearest_cr_dist, seed";

const SEP: &str = ", ";

/// Estimates from one synthesis-reception-estimation pass, in the
/// configuration's coordinate frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub cyclic: Point,
    pub plain: Point,
    pub target: Point,
}

impl TrialOutcome {
    pub fn cyclic_sq_error(&self) -> f64 {
        self.cyclic.distance(&self.target).powi(2)
    }

    pub fn plain_sq_error(&self) -> f64 {
        self.plain.distance(&self.target).powi(2)
    }
}

/// Seed of trial `trial` at sweep point `sweep_id`.
pub fn trial_seed(config: &ExperimentConfig, sweep_id: usize, trial: usize) -> u64 {
    if config.common_random_numbers {
        seed::derive(config.seed, &[stream::TRIAL, trial as u64])
    } else {
        seed::derive(config.seed, &[stream::TRIAL, sweep_id as u64, trial as u64])
    }
}

pub fn run_trial(config: &ExperimentConfig, point: &SweepPoint, trial_seed: u64) -> Result<TrialOutcome> {
    trial_on(config, &config.scenario_for(point), point, trial_seed)
}

fn trial_on(
    config: &ExperimentConfig,
    scenario: &Scenario,
    point: &SweepPoint,
    trial_seed: u64,
) -> Result<TrialOutcome> {
    scenario.validate()?;
    let (working, origin) = scenario.centered();
    let pks = working.power_vectors()?;
    let fs = config.sample_rate();
    let n = config.target_waveform.num_samples;

    let st = generate_qam(
        &config
            .target_params(point)
            .with_seed(seed::derive(trial_seed, &[stream::TARGET])),
    )?;
    let si = generate_qam(
        &config
            .interferer_params(point)
            .with_seed(seed::derive(trial_seed, &[stream::INTERFERER])),
    )?;
    let variance = noise_power(working.noise_psd_dbm_hz, fs);

    let received: Vec<SampleBlock> = pks
        .iter()
        .enumerate()
        .map(|(k, pk)| {
            let noise = awgn(n, variance, seed::derive(trial_seed, &[stream::NOISE, k as u64]));
            compose_received(&st, &si, pk, &noise)
        })
        .collect::<Result<_>>()?;

    let cyclic = cyclic_wcl(&received, &working.radio_positions, config.alpha_t(), fs)?;
    let plain = plain_wcl(&received, &working.radio_positions, fs)?;
    Ok(TrialOutcome {
        cyclic: cyclic.point().offset(origin.x, origin.y),
        plain: plain.point().offset(origin.x, origin.y),
        target: scenario.target_position,
    })
}

/// Distance from the target to the radio nearest the interferer (lowest index
/// wins ties).
pub fn nearest_cr_distance(scenario: &Scenario) -> f64 {
    let mut best: Option<(f64, Point)> = None;
    for p in &scenario.radio_positions {
        let d = p.distance(&scenario.interferer_position);
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, *p));
        }
    }
    best.map_or(f64::NAN, |(_, p)| p.distance(&scenario.target_position))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub point: SweepPoint,
    pub trials: usize,
    pub rmse_cyclic_mc: Option<f64>,
    pub rmse_plain_mc: Option<f64>,
    pub rmse_cyclic_analytic: Option<f64>,
    pub mean_x: Option<f64>,
    pub mean_y: Option<f64>,
    pub nearest_cr_dist: f64,
    pub seed: u64,
    /// Error kind that stopped the Monte Carlo columns of this row.
    pub mc_error: Option<&'static str>,
    pub analytic_error: Option<&'static str>,
}

fn cell(v: Option<f64>, err: Option<&'static str>) -> String {
    match (err, v) {
        (Some(e), _) => format!("err:{e}"),
        (None, Some(v)) => v.to_string(),
        (None, None) => String::new(),
    }
}

impl ResultRow {
    pub fn to_csv_line(&self) -> String {
        let p = &self.point;
        [
            p.sweep_id.to_string(),
            p.p_t_dbm.to_string(),
            p.p_i_dbm.to_string(),
            p.interferer_position.x.to_string(),
            p.interferer_position.y.to_string(),
            p.mod_order_t.to_string(),
            p.mod_order_i.to_string(),
            self.trials.to_string(),
            cell(self.rmse_cyclic_mc, self.mc_error),
            cell(self.rmse_plain_mc, self.mc_error),
            cell(self.rmse_cyclic_analytic, self.analytic_error),
            cell(self.mean_x, self.mc_error),
            cell(self.mean_y, self.mc_error),
            self.nearest_cr_dist.to_string(),
            self.seed.to_string(),
        ]
        .join(SEP)
    }
}

/// Runs every sweep point. Failures inside a point are recorded on its row
/// and the sweep continues; an invalid configuration fails up front.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    config.validate()?;
    let radios = config.radio_positions();
    let mut fits: BTreeMap<(u32, u32), std::result::Result<GaussianThetaModel, &'static str>> = BTreeMap::new();
    let mut rows = Vec::new();

    for point in config.sweep_points() {
        let scenario = config.scenario_with_radios(&point, radios.clone());
        let mut row = ResultRow {
            point,
            trials: 0,
            rmse_cyclic_mc: None,
            rmse_plain_mc: None,
            rmse_cyclic_analytic: None,
            mean_x: None,
            mean_y: None,
            nearest_cr_dist: nearest_cr_distance(&scenario),
            seed: config.seed,
            mc_error: None,
            analytic_error: None,
        };

        if config.mode.runs_mc() {
            row.trials = config.trials;
            let outcomes: Result<Vec<TrialOutcome>> = (0..config.trials)
                .into_par_iter()
                .map(|t| trial_on(config, &scenario, &point, trial_seed(config, point.sweep_id, t)))
                .collect();
            match outcomes {
                Ok(o) => {
                    let n = o.len() as f64;
                    // reduced in trial order
                    let (mut ec, mut ep, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
                    for t in &o {
                        ec += t.cyclic_sq_error();
                        ep += t.plain_sq_error();
                        sx += t.cyclic.x;
                        sy += t.cyclic.y;
                    }
                    row.rmse_cyclic_mc = Some((ec / n).sqrt());
                    row.rmse_plain_mc = Some((ep / n).sqrt());
                    row.mean_x = Some(sx / n);
                    row.mean_y = Some(sy / n);
                }
                Err(e) => row.mc_error = Some(e.kind()),
            }
        }

        if config.mode.runs_analytic() {
            let model = fits.entry((point.mod_order_t, point.mod_order_i)).or_insert_with(|| {
                fit_theta_model(
                    &config.target_params(&point),
                    Some(&config.interferer_params(&point)),
                    config.alpha_t(),
                    config.fit_realizations,
                    seed::derive(
                        config.seed,
                        &[stream::FIT, point.mod_order_t as u64, point.mod_order_i as u64],
                    ),
                )
                .map_err(|e| e.kind())
            });
            let result = model
                .clone()
                .and_then(|m| analytic_for(&scenario, &m).map_err(|e| e.kind()));
            match result {
                Ok(v) => row.rmse_cyclic_analytic = Some(v),
                Err(kind) => row.analytic_error = Some(kind),
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

fn analytic_for(scenario: &Scenario, model: &GaussianThetaModel) -> Result<f64> {
    let (working, _) = scenario.centered();
    let qf = build_quadforms(&working.power_vectors()?, &working.radio_positions)?;
    analytic_rmse(model, &qf)
}

/// Writes a comment line describing the seeding scheme, the header and one
/// line per row.
pub fn write_csv<W: Write>(mut out: W, config: &ExperimentConfig, rows: &[ResultRow]) -> Result<()> {
    let scheme = if config.common_random_numbers {
        "trial_seed=splitmix64(master_seed; trial_tag, trial)"
    } else {
        "trial_seed=splitmix64(master_seed; trial_tag, sweep_id, trial)"
    };
    writeln!(
        out,
        "# cyclic-wcl mode={:?} master_seed={} {scheme} common_random_numbers={}",
        config.mode, config.seed, config.common_random_numbers
    )
    .map_err(Error::from)?;
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    Ok(())
}
