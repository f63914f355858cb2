//! RMSE of the Cyclic WCL estimate under a Gaussian model of theta.
//!
//! For `theta ~ N(mu, S)` the second moment of a ratio of quadratic forms is
//! computed through
//!
//! ```text
//! 1 / b^2 = int_0^inf t e^{-t b} dt
//! E[(q_A / q_B)^2] = int_0^inf t E[q_A^2 e^{-t q_B}] dt
//! ```
//!
//! Tilting the Gaussian by `e^{-t q_B}` gives another Gaussian with
//! `M = I + 2t S B`, mean `M^-1 mu` and covariance `M^-1 S`, scaled by
//! `det(M)^{-1/2} exp(-t mu^T B M^-1 mu)`. `S` is never inverted, so a singular
//! covariance is fine. The outer integral is mapped to `[0, 1)` by
//! `t = u / (1 - u)` and integrated adaptively.

use nalgebra::{Matrix6, SymmetricEigen, Vector6};
use rayon::prelude::*;

use crate::cyclostat::{theta_from_signals, ThetaVector};
use crate::quadform::{check_positive_definite, QuadFormSet, PD_RELATIVE_THRESHOLD};
use crate::quadrature;
use crate::seed::{self, stream};
use crate::waveform::{generate_qam, SampleBlock, WaveformParams};
use crate::{Error, Result};

/// Relative accuracy requested from the outer integral.
pub const QUADRATURE_REL_TOL: f64 = 1e-6;
const QUADRATURE_MAX_INTERVALS: usize = 4000;

/// Covariances whose smallest eigenvalue falls below this fraction of
/// `trace / 6` are flagged as near-singular.
pub const NEAR_SINGULAR_RELATIVE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianThetaModel {
    pub mean: Vector6<f64>,
    pub covariance: Matrix6<f64>,
    pub n_realizations: usize,
    /// Set when the covariance is numerically rank-deficient (for example an
    /// absent interferer zeroes four coordinates).
    pub near_singular: bool,
}

impl GaussianThetaModel {
    pub fn new(mean: Vector6<f64>, covariance: Matrix6<f64>, n_realizations: usize) -> Result<Self> {
        if !mean.iter().all(|v| v.is_finite()) || !covariance.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("theta model"));
        }
        let covariance = (covariance + covariance.transpose()) * 0.5;
        let trace = covariance.trace();
        let min_eig = SymmetricEigen::new(covariance).eigenvalues.min();
        if min_eig < -1e-9 * trace.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::NotPositiveDefinite {
                relative_min: min_eig / trace,
            });
        }
        Ok(Self {
            mean,
            covariance,
            n_realizations,
            near_singular: min_eig <= NEAR_SINGULAR_RELATIVE * trace / 6.0,
        })
    }

    /// Scalar multiple of the model: `theta -> c theta`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            mean: self.mean * c,
            covariance: self.covariance * (c * c),
            ..self.clone()
        }
    }
}

/// Fits mean and unbiased covariance of theta over `m` independent waveform
/// realizations. `interferer = None` models an absent interferer (zero block).
pub fn fit_theta_model(
    target: &WaveformParams,
    interferer: Option<&WaveformParams>,
    alpha_t: f64,
    m: usize,
    seed: u64,
) -> Result<GaussianThetaModel> {
    if m < 2 {
        return Err(Error::TooFewRealizations(m));
    }
    target.validate()?;
    if let Some(i) = interferer {
        i.validate()?;
        if i.num_samples != target.num_samples || i.sample_rate != target.sample_rate {
            return Err(Error::InvalidWaveform(
                "target and interferer must share num_samples and sample_rate".into(),
            ));
        }
    }

    let thetas: Vec<ThetaVector> = (0..m as u64)
        .into_par_iter()
        .map(|j| {
            let st = generate_qam(&target.with_seed(seed::derive(seed, &[stream::FIT, j, stream::TARGET])))?;
            let si = match interferer {
                Some(p) => generate_qam(&p.with_seed(seed::derive(seed, &[stream::FIT, j, stream::INTERFERER])))?,
                None => SampleBlock::zeros(target.num_samples),
            };
            theta_from_signals(&st, &si, alpha_t, target.sample_rate)
        })
        .collect::<Result<_>>()?;

    let n = m as f64;
    let mean = thetas.iter().fold(Vector6::zeros(), |acc, t| acc + t.as_vector()) / n;
    let covariance = thetas.iter().fold(Matrix6::zeros(), |acc, t| {
        let d = t.as_vector() - mean;
        acc + d * d.transpose()
    }) / (n - 1.0);
    GaussianThetaModel::new(mean, covariance, m)
}

/// `E[(theta^T A theta)^2 / (theta^T B theta)^2]` for `theta ~ model`.
///
/// `B` must be positive definite: its smallest eigenvalue must exceed
/// [`PD_RELATIVE_THRESHOLD`] times its trace.
pub fn second_moment_ratio(model: &GaussianThetaModel, a: &Matrix6<f64>, b: &Matrix6<f64>) -> Result<f64> {
    let b = (b + b.transpose()) * 0.5;
    let trace = b.trace();
    let min_eig = SymmetricEigen::new(b).eigenvalues.min();
    let relative_min = if trace > 0.0 { min_eig / trace } else { 0.0 };
    if !(relative_min > PD_RELATIVE_THRESHOLD) {
        return Err(Error::NotPositiveDefinite { relative_min });
    }
    second_moment_ratio_certified(model, a, &b)
}

/// If `a == c b` up to rounding, returns `c`.
fn proportionality(a: &Matrix6<f64>, b: &Matrix6<f64>) -> Option<f64> {
    let (idx, _) = b.iter().enumerate().max_by(|x, y| x.1.abs().total_cmp(&y.1.abs()))?;
    let c = a[idx] / b[idx];
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let residual = (a - b * c).amax();
    (residual <= 8.0 * f64::EPSILON * scale).then_some(c)
}

fn second_moment_ratio_certified(model: &GaussianThetaModel, a: &Matrix6<f64>, b: &Matrix6<f64>) -> Result<f64> {
    let a = (a + a.transpose()) * 0.5;
    if a.amax() == 0.0 {
        return Ok(0.0);
    }
    if let Some(c) = proportionality(&a, b) {
        return Ok(c * c);
    }

    let mu = model.mean;
    let sigma = model.covariance;

    // Normalize so that E[theta^T B theta] = 1; the ratio is invariant.
    let scale = (mu.transpose() * b * mu)[(0, 0)] + (b * sigma).trace();
    if !(scale > 0.0) {
        return Err(Error::DegenerateDenominator(scale));
    }
    let a = a / scale;
    let b = b / scale;
    let sigma_b = sigma * b;

    let integrand = |t: f64| -> f64 {
        let m = Matrix6::identity() + sigma_b * (2.0 * t);
        let lu = m.lu();
        let det = lu.determinant();
        let (Some(mu_t), Some(sigma_t)) = (lu.solve(&mu), lu.solve(&sigma)) else {
            return f64::NAN;
        };
        let sigma_t = (sigma_t + sigma_t.transpose()) * 0.5;
        let weight = det.powf(-0.5) * (-t * (mu.transpose() * b * mu_t)[(0, 0)]).exp();
        if weight == 0.0 {
            return 0.0;
        }
        let a_s = a * sigma_t;
        let a_mu = a * mu_t;
        let mean_q = a_s.trace() + mu_t.dot(&a_mu);
        let var_q = 2.0 * (a_s * a_s).trace() + 4.0 * a_mu.dot(&(sigma_t * a_mu));
        t * weight * (mean_q * mean_q + var_q)
    };

    let q = quadrature::integrate(
        |u| {
            if u >= 1.0 {
                return 0.0;
            }
            let w = 1.0 - u;
            integrand(u / w) / (w * w)
        },
        0.0,
        1.0,
        QUADRATURE_REL_TOL,
        QUADRATURE_MAX_INTERVALS,
    )?;
    Ok(q.max(0.0))
}

/// `sqrt(E[x_hat^2] + E[y_hat^2])` with the target at the origin. Refuses
/// geometries whose `B_p` cannot be certified positive definite.
pub fn analytic_rmse(model: &GaussianThetaModel, qf: &QuadFormSet) -> Result<f64> {
    // zero numerators: every estimate is the origin wherever it is defined
    if qf.a_x.amax() == 0.0 && qf.a_y.amax() == 0.0 {
        return Ok(0.0);
    }
    let report = check_positive_definite(qf);
    if !report.positive_definite {
        return Err(Error::NotPositiveDefinite {
            relative_min: report.relative_min,
        });
    }
    let ex2 = second_moment_ratio_certified(model, &qf.a_x, &qf.b)?;
    let ey2 = second_moment_ratio_certified(model, &qf.a_y, &qf.b)?;
    Ok((ex2 + ey2).sqrt())
}
