//! Unit-power QAM baseband synthesis and received-signal composition.
//!
//! The symbol-rate cyclic feature of `|s(n)|^2` exists only with excess
//! bandwidth, so the pulse is a raised cosine with nonzero roll-off. Both
//! sources are simulated at complex baseband.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::scenario::PowerVector;
use crate::seed;
use crate::{Error, Result};

/// Raised-cosine truncation, in symbols on each side of the peak.
pub const FILTER_SPAN_SYMBOLS: usize = 8;

pub const SUPPORTED_ORDERS: [u32; 3] = [4, 16, 64];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformParams {
    pub modulation_order: u32,
    /// Symbol rate in Hz; this is also the cyclic frequency of `|s|^2`.
    pub symbol_rate: f64,
    pub rolloff: f64,
    pub sample_rate: f64,
    pub num_samples: usize,
    #[serde(default)]
    pub seed: u64,
}

impl WaveformParams {
    pub fn validate(&self) -> Result<()> {
        if !SUPPORTED_ORDERS.contains(&self.modulation_order) {
            return Err(Error::InvalidWaveform(format!(
                "unsupported modulation order {} (expected one of {:?})",
                self.modulation_order, SUPPORTED_ORDERS
            )));
        }
        if !(self.symbol_rate > 0.0 && self.symbol_rate.is_finite()) {
            return Err(Error::InvalidWaveform("symbol_rate must be > 0".into()));
        }
        if !(self.sample_rate > 0.0 && self.sample_rate.is_finite()) {
            return Err(Error::InvalidWaveform("sample_rate must be > 0".into()));
        }
        let ratio = self.sample_rate / self.symbol_rate;
        if ratio < 1.0 || (ratio - ratio.round()).abs() > 1e-9 * ratio {
            return Err(Error::InvalidWaveform(format!(
                "sample_rate / symbol_rate must be a positive integer, got {ratio}"
            )));
        }
        if !(0.0..=1.0).contains(&self.rolloff) {
            return Err(Error::InvalidWaveform(format!(
                "rolloff must be in [0, 1], got {}",
                self.rolloff
            )));
        }
        if self.num_samples == 0 {
            return Err(Error::InvalidWaveform("num_samples must be >= 1".into()));
        }
        Ok(())
    }

    /// Samples per symbol.
    pub fn oversampling(&self) -> usize {
        (self.sample_rate / self.symbol_rate).round() as usize
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}

/// A length-N block of complex baseband samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBlock {
    samples: Vec<Complex64>,
}

impl SampleBlock {
    pub fn new(samples: Vec<Complex64>) -> Self {
        Self { samples }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); len])
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean_power(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.samples.len() as f64
    }
}

impl From<Vec<Complex64>> for SampleBlock {
    fn from(samples: Vec<Complex64>) -> Self {
        Self::new(samples)
    }
}

/// Square QAM alphabet with odd-integer levels, unnormalized.
pub fn qam_alphabet(order: u32) -> Result<Vec<Complex64>> {
    if !SUPPORTED_ORDERS.contains(&order) {
        return Err(Error::InvalidWaveform(format!("unsupported modulation order {order}")));
    }
    let side = (order as f64).sqrt().round() as i32;
    let levels: Vec<f64> = (0..side).map(|i| (2 * i - (side - 1)) as f64).collect();
    Ok(levels
        .iter()
        .flat_map(|&re| levels.iter().map(move |&im| Complex64::new(re, im)))
        .collect())
}

/// `count` i.i.d. uniform symbols from the `order`-QAM alphabet.
pub fn draw_symbols<R: Rng>(order: u32, count: usize, rng: &mut R) -> Result<Vec<Complex64>> {
    let alphabet = qam_alphabet(order)?;
    Ok((0..count)
        .map(|_| alphabet[rng.random_range(0..alphabet.len())])
        .collect())
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        let px = std::f64::consts::PI * x;
        px.sin() / px
    }
}

/// Raised-cosine impulse response sampled at `oversampling` points per symbol
/// over `±span` symbols. The peak tap (index `span * oversampling`) is 1.
pub fn raised_cosine_taps(oversampling: usize, rolloff: f64, span: usize) -> Vec<f64> {
    let half = (span * oversampling) as isize;
    (-half..=half)
        .map(|j| {
            let t = j as f64 / oversampling as f64;
            let denom = 1.0 - (2.0 * rolloff * t).powi(2);
            if rolloff > 0.0 && denom.abs() < 1e-10 {
                std::f64::consts::FRAC_PI_4 * sinc(1.0 / (2.0 * rolloff))
            } else {
                sinc(t) * (std::f64::consts::PI * rolloff * t).cos() / denom
            }
        })
        .collect()
}

/// Pulse-shapes a symbol stream into exactly `len` samples, symbol `m` peaking
/// at sample `m * oversampling`. Start-up and tail transients are kept.
pub fn pulse_shape(symbols: &[Complex64], taps: &[f64], oversampling: usize, len: usize) -> Vec<Complex64> {
    let half = (taps.len() / 2) as isize;
    let l = oversampling as isize;
    let m_max = symbols.len() as isize - 1;
    (0..len as isize)
        .map(|n| {
            let lo = (n - half + l - 1).div_euclid(l).max(0);
            let hi = (n + half).div_euclid(l).min(m_max);
            let mut acc = Complex64::new(0.0, 0.0);
            for m in lo..=hi {
                acc += symbols[m as usize] * taps[(n - m * l + half) as usize];
            }
            acc
        })
        .collect()
}

/// Unit-power raised-cosine QAM block, deterministic in `params.seed`.
pub fn generate_qam(params: &WaveformParams) -> Result<SampleBlock> {
    params.validate()?;
    let l = params.oversampling();
    let n = params.num_samples;
    let mut rng = seed::rng(params.seed);
    let symbols = draw_symbols(params.modulation_order, n.div_ceil(l), &mut rng)?;
    let taps = raised_cosine_taps(l, params.rolloff, FILTER_SPAN_SYMBOLS);
    let mut samples = pulse_shape(&symbols, &taps, l, n);

    let power = samples.iter().map(|s| s.norm_sqr()).sum::<f64>() / n as f64;
    if power > 0.0 {
        let g = power.sqrt().recip();
        samples.iter_mut().for_each(|s| *s *= g);
    }
    Ok(SampleBlock::new(samples))
}

/// Circularly symmetric complex Gaussian noise with total variance `variance`.
pub fn awgn(n_count: usize, variance: f64, seed: u64) -> SampleBlock {
    if variance <= 0.0 {
        return SampleBlock::zeros(n_count);
    }
    let sigma = (variance / 2.0).sqrt();
    let mut rng = seed::rng(seed);
    let samples = (0..n_count)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(sigma * re, sigma * im)
        })
        .collect();
    SampleBlock::new(samples)
}

/// `r(n) = sqrt(p_tk) s_t(n) + sqrt(p_ik) s_i(n) + w(n)`.
pub fn compose_received(
    st: &SampleBlock,
    si: &SampleBlock,
    pk: &PowerVector,
    noise: &SampleBlock,
) -> Result<SampleBlock> {
    let n = st.len();
    for other in [si, noise] {
        if other.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: other.len(),
            });
        }
    }
    let (at, ai) = (pk.p_tk.sqrt(), pk.p_ik.sqrt());
    let samples = st
        .samples()
        .iter()
        .zip(si.samples())
        .zip(noise.samples())
        .map(|((t, i), w)| t * at + i * ai + w)
        .collect();
    Ok(SampleBlock::new(samples))
}
