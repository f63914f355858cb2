//! Cyclic weighted centroid localization (Cyclic WCL).
//!
//! Locates a cyclostationary transmitter in a network of sensing radios while a
//! spectrally overlapped interferer is active. Each radio computes the cyclic
//! autocorrelation (CAC) of its received samples at the target's cyclic
//! frequency; squared CAC magnitudes weight a centroid of the radio positions.
//!
//! The crate covers both halves of the problem:
//!
//! - simulation: path-loss geometry ([`scenario`]), QAM waveform synthesis
//!   ([`waveform`]), cyclic correlators ([`cyclostat`]) and the estimators
//!   themselves ([`locator`]);
//! - analysis: the estimate written as a ratio of quadratic forms in a
//!   6-vector of cyclic correlations ([`quadform`]), and the RMSE of that
//!   ratio under a Gaussian model of the vector ([`analytic`]).
//!
//! [`bench`] ties everything into seeded Monte Carlo sweeps with CSV output and
//! hosts the command-line entry point used by the `cwcl` binary.

// `!(x > t)` is used on purpose throughout so that NaN fails validity checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod bench;
pub mod cyclostat;
mod error;
pub mod locator;
pub mod quadform;
mod quadrature;
pub mod scenario;
pub mod seed;
pub mod waveform;

pub use error::{Error, Result};
pub use scenario::{Point, PowerVector, Scenario};
pub use waveform::{SampleBlock, WaveformParams};
