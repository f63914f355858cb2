//! Weighted centroid estimators.
//!
//! Cyclic WCL weights each radio by `|R_k|^2 / max_j |R_j|^2`, where `R_k` is
//! the CAC of its received block at the target's cyclic frequency. Plain WCL is
//! the same algorithm evaluated at `alpha = 0`, where the CAC degenerates to
//! mean received power.

use crate::cyclostat::{cac, CyclicCorrelation};
use crate::scenario::Point;
use crate::waveform::SampleBlock;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct LocationEstimate {
    pub x: f64,
    pub y: f64,
    pub weights: Vec<f64>,
}

impl LocationEstimate {
    pub fn point(&self) -> Point {
        Point::new(self.x, self.y)
    }
}

/// Normalized squared magnitudes. All-zero input yields uniform `1/K` weights.
pub fn weights_from_cac(cacs: &[CyclicCorrelation]) -> Vec<f64> {
    let mags: Vec<f64> = cacs.iter().map(|c| c.value.norm_sqr()).collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    if max > 0.0 {
        mags.into_iter().map(|m| m / max).collect()
    } else {
        vec![1.0 / mags.len() as f64; mags.len()]
    }
}

pub fn centroid(weights: &[f64], positions: &[Point]) -> Result<LocationEstimate> {
    if weights.len() != positions.len() {
        return Err(Error::LengthMismatch {
            expected: positions.len(),
            found: weights.len(),
        });
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::NonFinite("centroid weights"));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateDenominator(total));
    }
    let (mut sx, mut sy) = (0.0, 0.0);
    for (w, p) in weights.iter().zip(positions) {
        sx += w * p.x;
        sy += w * p.y;
    }
    Ok(LocationEstimate {
        x: sx / total,
        y: sy / total,
        weights: weights.to_vec(),
    })
}

/// Weighted centroid with weights taken from each block's CAC at `alpha`.
pub fn wcl_at(received: &[SampleBlock], positions: &[Point], alpha: f64, sample_rate: f64) -> Result<LocationEstimate> {
    if received.len() != positions.len() {
        return Err(Error::LengthMismatch {
            expected: positions.len(),
            found: received.len(),
        });
    }
    if let Some(first) = received.first() {
        if let Some(bad) = received.iter().find(|b| b.len() != first.len()) {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                found: bad.len(),
            });
        }
    }
    let cacs: Vec<CyclicCorrelation> = received.iter().map(|r| cac(r, alpha, sample_rate)).collect();
    centroid(&weights_from_cac(&cacs), positions)
}

pub fn cyclic_wcl(
    received: &[SampleBlock],
    positions: &[Point],
    alpha_t: f64,
    sample_rate: f64,
) -> Result<LocationEstimate> {
    wcl_at(received, positions, alpha_t, sample_rate)
}

/// WCL without cyclostationarity: weights are squared mean received powers.
pub fn plain_wcl(received: &[SampleBlock], positions: &[Point], sample_rate: f64) -> Result<LocationEstimate> {
    wcl_at(received, positions, 0.0, sample_rate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{received_power, PowerVector};
    use crate::waveform::{compose_received, generate_qam, WaveformParams};
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn cc(v: f64) -> CyclicCorrelation {
        CyclicCorrelation {
            value: Complex64::new(v, 0.0),
            alpha: 20e6,
            n_used: 1,
        }
    }

    #[test]
    fn weight_normalization() {
        let w = weights_from_cac(&[cc(1.0), cc(2f64.sqrt()), cc(-2.0)]);
        assert!((w[0] - 0.25).abs() < 1e-15);
        assert!((w[1] - 0.5).abs() < 1e-15);
        assert_eq!(w[2], 1.0);
        assert_eq!(weights_from_cac(&[cc(0.0); 4]), vec![0.25; 4]);
    }

    #[test]
    fn centroid_cases() {
        let e = centroid(&[3.0], &[Point::new(4.0, -2.0)]).unwrap();
        assert_eq!((e.x, e.y), (4.0, -2.0));

        let tri = [Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(0.0, 3.0)];
        let e = centroid(&[1.0; 3], &tri).unwrap();
        assert!((e.x - 1.0).abs() < 1e-15 && (e.y - 1.0).abs() < 1e-15);

        assert!(centroid(&[f64::NAN, 1.0, 1.0], &tri).is_err());
        assert!(centroid(&[0.0; 3], &tri).is_err());
        assert!(centroid(&[1.0; 2], &tri).is_err());
    }

    fn qam(seed: u64) -> SampleBlock {
        generate_qam(&WaveformParams {
            modulation_order: 4,
            symbol_rate: 20e6,
            rolloff: 0.35,
            sample_rate: 200e6,
            num_samples: 2000,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn single_radio_and_symmetric_layout() {
        let st = qam(1);
        let zero = SampleBlock::zeros(st.len());
        let e = cyclic_wcl(std::slice::from_ref(&st), &[Point::new(7.0, 8.0)], 20e6, 200e6).unwrap();
        assert_eq!(e.point(), Point::new(7.0, 8.0));

        let radios = [
            Point::new(10.0, 0.0),
            Point::new(0.0, 10.0),
            Point::new(-10.0, 0.0),
            Point::new(0.0, -10.0),
        ];
        let rx: Vec<SampleBlock> = radios
            .iter()
            .map(|&p| {
                let pt = received_power(Point::ORIGIN, 10.0, p, 1.0, 3.8).unwrap();
                compose_received(&st, &zero, &PowerVector::new(pt, 0.0), &zero).unwrap()
            })
            .collect();
        let e = cyclic_wcl(&rx, &radios, 20e6, 200e6).unwrap();
        assert!(e.x.abs() < 1e-9 && e.y.abs() < 1e-9, "{e:?}");
    }

    #[test]
    fn plain_wcl_weight_ratio_follows_path_loss() {
        let st = qam(2);
        let zero = SampleBlock::zeros(st.len());
        let gamma = 3.8;
        let radios = [Point::new(5.0, 0.0), Point::new(10.0, 0.0)];
        let rx: Vec<SampleBlock> = radios
            .iter()
            .map(|&p| {
                let pt = received_power(Point::ORIGIN, 10.0, p, 1.0, gamma).unwrap();
                compose_received(&st, &zero, &PowerVector::new(pt, 0.0), &zero).unwrap()
            })
            .collect();
        let e = plain_wcl(&rx, &radios, 200e6).unwrap();
        let ratio = e.weights[0] / e.weights[1];
        let expected = 2f64.powf(2.0 * gamma);
        assert!((ratio / expected - 1.0).abs() < 1e-12, "{ratio} vs {expected}");
    }

    fn points() -> impl Strategy<Value = Vec<(f64, f64, f64)>> {
        prop::collection::vec((-50.0..50.0f64, -50.0..50.0f64, 0.0..10.0f64), 1..12)
    }

    proptest! {
        #[test]
        fn estimate_in_bounding_box_and_scale_invariant(pts in points(), c in 0.01..100.0f64) {
            let positions: Vec<Point> = pts.iter().map(|p| Point::new(p.0, p.1)).collect();
            let mut w: Vec<f64> = pts.iter().map(|p| p.2).collect();
            w[0] += 0.1;
            let e = centroid(&w, &positions).unwrap();
            let xmin = positions.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
            let xmax = positions.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
            let ymin = positions.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
            let ymax = positions.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(e.x >= xmin - 1e-9 && e.x <= xmax + 1e-9);
            prop_assert!(e.y >= ymin - 1e-9 && e.y <= ymax + 1e-9);

            let scaled: Vec<f64> = w.iter().map(|v| v * c).collect();
            let s = centroid(&scaled, &positions).unwrap();
            prop_assert!((s.x - e.x).abs() < 1e-9 && (s.y - e.y).abs() < 1e-9);

            let mut rw = w.clone();
            let mut rp = positions.clone();
            rw.reverse();
            rp.reverse();
            let r = centroid(&rw, &rp).unwrap();
            prop_assert!((r.x - e.x).abs() < 1e-9 && (r.y - e.y).abs() < 1e-9);
        }
    }
}
