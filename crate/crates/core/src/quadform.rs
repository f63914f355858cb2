//! The Cyclic WCL estimate as a ratio of quadratic forms.
//!
//! With noise dropped, the CAC at radio `k` is `[theta_r^T; theta_i^T] p_k`
//! (real and imaginary parts), so
//!
//! ```text
//! x_hat = sum_k |R_k|^2 x_k / sum_k |R_k|^2 = theta^T A_x theta / theta^T B theta
//! A_px = sum_k x_k p_k p_k^T,   B_p = sum_k p_k p_k^T = P P^T
//! A_x  = diag(A_px, A_px),      B   = diag(B_p, B_p)
//! ```
//!
//! `B_p` is positive definite exactly when the rows of `P` (target powers,
//! interferer powers, cross powers) are linearly independent.

use nalgebra::{DMatrix, Matrix3, Matrix6};

use crate::cyclostat::ThetaVector;
use crate::scenario::{Point, PowerVector};
use crate::{Error, Result};

/// Default certification threshold on `min_eig(B_p) / trace(B_p)`.
pub const PD_RELATIVE_THRESHOLD: f64 = 1e-18;

/// `theta^T B theta` at or below this fraction of `|theta|^2 trace(B)` is
/// treated as a vanishing denominator.
pub const DENOMINATOR_RELATIVE_TOLERANCE: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadFormSet {
    pub a_px: Matrix3<f64>,
    pub a_py: Matrix3<f64>,
    pub b_p: Matrix3<f64>,
    pub a_x: Matrix6<f64>,
    pub a_y: Matrix6<f64>,
    pub b: Matrix6<f64>,
    /// Columns are the `p_k`; kept to evaluate the spectrum of `B_p = P P^T`
    /// through singular values of `P`.
    pub power_matrix: DMatrix<f64>,
}

pub fn block_diag(m: &Matrix3<f64>) -> Matrix6<f64> {
    let mut out = Matrix6::zeros();
    out.fixed_view_mut::<3, 3>(0, 0).copy_from(m);
    out.fixed_view_mut::<3, 3>(3, 3).copy_from(m);
    out
}

pub fn build_quadforms(pks: &[PowerVector], positions: &[Point]) -> Result<QuadFormSet> {
    if pks.len() != positions.len() {
        return Err(Error::LengthMismatch {
            expected: positions.len(),
            found: pks.len(),
        });
    }
    let mut a_px = Matrix3::zeros();
    let mut a_py = Matrix3::zeros();
    let mut b_p = Matrix3::zeros();
    let mut power_matrix = DMatrix::zeros(3, pks.len());
    for (k, (pk, pos)) in pks.iter().zip(positions).enumerate() {
        let p = nalgebra::Vector3::from(pk.as_array());
        let outer = p * p.transpose();
        a_px += outer * pos.x;
        a_py += outer * pos.y;
        b_p += outer;
        power_matrix.set_column(k, &p);
    }
    Ok(QuadFormSet {
        a_x: block_diag(&a_px),
        a_y: block_diag(&a_py),
        b: block_diag(&b_p),
        a_px,
        a_py,
        b_p,
        power_matrix,
    })
}

pub fn quadratic(theta: &ThetaVector, m: &Matrix6<f64>) -> f64 {
    let v = theta.as_vector();
    (v.transpose() * m * v)[(0, 0)]
}

/// `(theta^T A_x theta, theta^T A_y theta) / theta^T B theta`.
pub fn ratio_estimate(theta: &ThetaVector, qf: &QuadFormSet) -> Result<(f64, f64)> {
    let denom = quadratic(theta, &qf.b);
    let scale = theta.as_vector().norm_squared() * qf.b.trace();
    if !(denom > DENOMINATOR_RELATIVE_TOLERANCE * scale) || !denom.is_finite() {
        return Err(Error::DegenerateDenominator(denom));
    }
    Ok((quadratic(theta, &qf.a_x) / denom, quadratic(theta, &qf.a_y) / denom))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefinitenessReport {
    pub min_eigenvalue: f64,
    pub trace: f64,
    /// `min_eigenvalue / trace`, or 0 for a zero matrix.
    pub relative_min: f64,
    pub positive_definite: bool,
}

pub fn check_positive_definite(qf: &QuadFormSet) -> DefinitenessReport {
    check_positive_definite_with(qf, PD_RELATIVE_THRESHOLD)
}

pub fn check_positive_definite_with(qf: &QuadFormSet, relative_threshold: f64) -> DefinitenessReport {
    let trace = qf.b_p.trace();
    let k = qf.power_matrix.ncols();
    // rank(B_p) <= K, so fewer than three radios can never certify
    let min_eigenvalue = if k < 3 {
        0.0
    } else {
        let sv = qf.power_matrix.transpose().singular_values();
        let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
        smin * smin
    };
    let relative_min = if trace > 0.0 { min_eigenvalue / trace } else { 0.0 };
    DefinitenessReport {
        min_eigenvalue,
        trace,
        relative_min,
        positive_definite: relative_min > relative_threshold,
    }
}
