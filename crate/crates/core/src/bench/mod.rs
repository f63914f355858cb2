//! Experiment harness: JSON configs, seeded Monte Carlo sweeps, analytic
//! evaluation, CSV output and the command-line entry point.

pub mod cli;
pub mod config;
pub mod sweep;

pub use config::{ExperimentConfig, Mode};
pub use sweep::{
    nearest_cr_distance, run_sweep, run_trial, trial_seed, write_csv, ResultRow, SweepPoint, TrialOutcome, CSV_HEADER,
};
