//! Cyclic autocorrelation (CAC) and cyclic cross-correlation (CCC) estimators.
//!
//! Both are Fourier coefficients at a single cyclic frequency `alpha`:
//!
//! ```text
//! cac(u)    = 1/N sum_{n=1..N} |u(n)|^2            e^{-j 2 pi alpha n Ts}
//! ccc(u, v) = 1/N sum_{n=1..N} 2 Re{u(n) v(n)^*}   e^{-j 2 pi alpha n Ts}
//! ```
//!
//! Sample indices start at 1. Sums run in ascending index order through a
//! single accumulator so results are bit-reproducible.

use nalgebra::Vector6;
use num_complex::Complex64;

use crate::scenario::PowerVector;
use crate::waveform::SampleBlock;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclicCorrelation {
    pub value: Complex64,
    /// Cyclic frequency in Hz.
    pub alpha: f64,
    pub n_used: usize,
}

/// `1/N sum_{n=1..N} f(n) e^{-j 2 pi alpha n / fs}` for a real sequence `f`.
fn cyclic_mean<I>(values: I, len: usize, alpha: f64, sample_rate: f64) -> Complex64
where
    I: Iterator<Item = f64>,
{
    if len == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let cycles_per_sample = alpha / sample_rate;
    let mut acc = Complex64::new(0.0, 0.0);
    if alpha == 0.0 {
        for v in values {
            acc.re += v;
        }
    } else {
        for (i, v) in values.enumerate() {
            let n = (i + 1) as f64;
            // reduce to one period before scaling by 2 pi
            let phase = -std::f64::consts::TAU * (cycles_per_sample * n).fract();
            let (s, c) = phase.sin_cos();
            acc.re += v * c;
            acc.im += v * s;
        }
    }
    acc / len as f64
}

pub fn cac(u: &SampleBlock, alpha: f64, sample_rate: f64) -> CyclicCorrelation {
    let value = cyclic_mean(
        u.samples().iter().map(|s| s.re * s.re + s.im * s.im),
        u.len(),
        alpha,
        sample_rate,
    );
    CyclicCorrelation {
        value,
        alpha,
        n_used: u.len(),
    }
}

pub fn ccc(u: &SampleBlock, v: &SampleBlock, alpha: f64, sample_rate: f64) -> Result<CyclicCorrelation> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    let value = cyclic_mean(
        u.samples()
            .iter()
            .zip(v.samples())
            .map(|(a, b)| 2.0 * (a.re * b.re + a.im * b.im)),
        u.len(),
        alpha,
        sample_rate,
    );
    Ok(CyclicCorrelation {
        value,
        alpha,
        n_used: u.len(),
    })
}

/// Real and imaginary parts of the target CAC, interferer CAC and their CCC,
/// ordered `[Re R_t, Re R_i, Re R_ti, Im R_t, Im R_i, Im R_ti]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaVector(pub [f64; 6]);

impl ThetaVector {
    pub fn from_correlations(r_t: Complex64, r_i: Complex64, r_ti: Complex64) -> Self {
        Self([r_t.re, r_i.re, r_ti.re, r_t.im, r_i.im, r_ti.im])
    }

    pub fn r_target(&self) -> Complex64 {
        Complex64::new(self.0[0], self.0[3])
    }

    pub fn r_interferer(&self) -> Complex64 {
        Complex64::new(self.0[1], self.0[4])
    }

    pub fn r_cross(&self) -> Complex64 {
        Complex64::new(self.0[2], self.0[5])
    }

    /// First three entries (real parts).
    pub fn real_part(&self) -> [f64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    /// Last three entries (imaginary parts).
    pub fn imag_part(&self) -> [f64; 3] {
        [self.0[3], self.0[4], self.0[5]]
    }

    pub fn as_vector(&self) -> Vector6<f64> {
        Vector6::from_column_slice(&self.0)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl From<Vector6<f64>> for ThetaVector {
    fn from(v: Vector6<f64>) -> Self {
        let mut a = [0.0; 6];
        a.copy_from_slice(v.as_slice());
        Self(a)
    }
}

pub fn theta_from_signals(st: &SampleBlock, si: &SampleBlock, alpha_t: f64, sample_rate: f64) -> Result<ThetaVector> {
    let r_ti = ccc(st, si, alpha_t, sample_rate)?;
    let r_t = cac(st, alpha_t, sample_rate);
    let r_i = cac(si, alpha_t, sample_rate);
    Ok(ThetaVector::from_correlations(r_t.value, r_i.value, r_ti.value))
}

/// Noise-free CAC of a received signal from its source correlations:
/// `p_tk R_t + p_ik R_i + sqrt(p_tk p_ik) R_ti`.
pub fn decompose_received(theta: &ThetaVector, pk: &PowerVector) -> Complex64 {
    theta.r_target() * pk.p_tk + theta.r_interferer() * pk.p_ik + theta.r_cross() * pk.cross
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::waveform::{awgn, compose_received, generate_qam, WaveformParams};

    const FS: f64 = 200e6;

    fn block(len: usize, f: impl Fn(usize) -> Complex64) -> SampleBlock {
        SampleBlock::new((1..=len).map(f).collect())
    }

    fn qam(seed: u64, symbol_rate: f64) -> SampleBlock {
        generate_qam(&WaveformParams {
            modulation_order: 4,
            symbol_rate,
            rolloff: 0.35,
            sample_rate: FS,
            num_samples: 2000,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn cac_at_zero_is_mean_power() {
        let u = awgn(1000, 2.0, 3);
        let c = cac(&u, 0.0, FS);
        assert_eq!(c.value.im, 0.0);
        assert!((c.value.re - u.mean_power()).abs() < 1e-14);
        assert_eq!(c.n_used, 1000);
    }

    #[test]
    fn cac_of_constant_over_full_periods_vanishes() {
        let u = block(1000, |_| Complex64::new(1.0, 0.0));
        // alpha N / fs = 100
        assert!(cac(&u, 20e6, FS).value.norm() < 1e-12);
    }

    #[test]
    fn cac_of_cosine_envelope() {
        let alpha = 20e6;
        // |u(n)|^2 = 1 + cos(2 pi alpha n Ts)
        let u = block(1000, |n| {
            let p = 1.0 + (std::f64::consts::TAU * alpha * n as f64 / FS).cos();
            Complex64::new(p.sqrt(), 0.0)
        });
        let c = cac(&u, alpha, FS).value;
        assert!((c.re - 0.5).abs() < 1e-12, "{c}");
        assert!(c.im.abs() < 1e-12);
    }

    #[test]
    fn ccc_identities() {
        let u = awgn(777, 1.0, 1);
        let v = awgn(777, 1.0, 2);
        assert_eq!(ccc(&u, &v, 20e6, FS).unwrap(), ccc(&v, &u, 20e6, FS).unwrap());

        let real = block(500, |n| Complex64::new((n as f64 * 0.37).sin(), 0.0));
        let c2 = ccc(&real, &real, 20e6, FS).unwrap().value;
        assert_eq!(c2, cac(&real, 20e6, FS).value * 2.0);

        let zero = SampleBlock::zeros(777);
        assert_eq!(ccc(&u, &zero, 20e6, FS).unwrap().value.norm(), 0.0);
        assert!(ccc(&u, &SampleBlock::zeros(3), 20e6, FS).is_err());
    }

    #[test]
    fn theta_packing() {
        let st = qam(1, 20e6);
        let si = qam(2, 40e6);
        let th = theta_from_signals(&st, &si, 20e6, FS).unwrap();
        assert_eq!(th.r_target(), cac(&st, 20e6, FS).value);
        assert_eq!(th.r_interferer(), cac(&si, 20e6, FS).value);
        assert_eq!(th.r_cross(), ccc(&st, &si, 20e6, FS).unwrap().value);
        assert_eq!(ThetaVector::from(th.as_vector()), th);

        let zero = SampleBlock::zeros(st.len());
        let th0 = theta_from_signals(&st, &zero, 20e6, FS).unwrap();
        for i in [1, 2, 4, 5] {
            assert_eq!(th0.0[i], 0.0);
        }

        let dc = theta_from_signals(&st, &si, 0.0, FS).unwrap();
        assert!((dc.0[0] - 1.0).abs() < 1e-12 && (dc.0[1] - 1.0).abs() < 1e-12);
        assert_eq!(dc.imag_part(), [0.0; 3]);
    }

    #[test]
    fn noiseless_decomposition() {
        let st = qam(10, 20e6);
        let si = qam(20, 40e6);
        let zero = SampleBlock::zeros(st.len());
        let th = theta_from_signals(&st, &si, 20e6, FS).unwrap();
        for (pt, pi) in [(1.0, 1.0), (1e-3, 4.0), (0.2, 1e-6)] {
            let pk = PowerVector::new(pt, pi);
            let r = compose_received(&st, &si, &pk, &zero).unwrap();
            let direct = cac(&r, 20e6, FS).value;
            let decomposed = decompose_received(&th, &pk);
            assert!((direct - decomposed).norm() <= 1e-12 * direct.norm());
        }
        assert_eq!(decompose_received(&th, &PowerVector::new(1.0, 0.0)), th.r_target());
        assert_eq!(decompose_received(&th, &PowerVector::new(0.0, 0.0)).norm(), 0.0);
    }

    #[test]
    fn cac_is_linear_in_squared_magnitude() {
        let a = awgn(600, 1.0, 7);
        let b = awgn(600, 1.0, 8);
        let sum = SampleBlock::new(
            a.samples()
                .iter()
                .zip(b.samples())
                .map(|(x, y)| Complex64::new((x.norm_sqr() + y.norm_sqr()).sqrt(), 0.0))
                .collect(),
        );
        let lhs = cac(&sum, 20e6, FS).value;
        let rhs = cac(&a, 20e6, FS).value + cac(&b, 20e6, FS).value;
        assert!((lhs - rhs).norm() < 1e-13);
    }
}
