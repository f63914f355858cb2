//! Network geometry, path loss and per-radio received powers.
//!
//! Powers are configured in dBm and converted to linear mW at this boundary;
//! everything downstream works in mW.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::seed;
use crate::{Error, Result};

/// A point in the plane, in meters. Serializes as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn offset(&self, dx: f64, dy: f64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Received powers at one radio: `[p_t,k, p_i,k, sqrt(p_t,k * p_i,k)]` in mW.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerVector {
    pub p_tk: f64,
    pub p_ik: f64,
    pub cross: f64,
}

impl PowerVector {
    pub fn new(p_tk: f64, p_ik: f64) -> Self {
        Self {
            p_tk,
            p_ik,
            cross: (p_tk * p_ik).sqrt(),
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p_tk, self.p_ik, self.cross]
    }
}

/// Geometry and power configuration of one localization problem.
///
/// `p_i_dbm = -inf` models an absent interferer.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub radio_positions: Vec<Point>,
    pub target_position: Point,
    pub interferer_position: Point,
    pub p_t_dbm: f64,
    pub p_i_dbm: f64,
    pub d0: f64,
    pub gamma: f64,
    pub noise_psd_dbm_hz: f64,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if self.radio_positions.is_empty() {
            return Err(Error::InvalidScenario("at least one radio is required".into()));
        }
        if !self.radio_positions.iter().all(Point::is_finite) {
            return Err(Error::InvalidScenario("radio positions must be finite".into()));
        }
        if !self.target_position.is_finite() || !self.interferer_position.is_finite() {
            return Err(Error::InvalidScenario(
                "target and interferer positions must be finite".into(),
            ));
        }
        if !(self.d0 > 0.0 && self.d0.is_finite()) {
            return Err(Error::InvalidScenario(format!("d0 must be > 0, got {}", self.d0)));
        }
        if !(self.gamma > 0.0 && self.gamma.is_finite()) {
            return Err(Error::InvalidScenario(format!("gamma must be > 0, got {}", self.gamma)));
        }
        if self.target_position == self.interferer_position {
            return Err(Error::InvalidScenario(
                "target_position must differ from interferer_position".into(),
            ));
        }
        if !self.p_t_dbm.is_finite() {
            return Err(Error::InvalidScenario("p_t_dbm must be finite".into()));
        }
        if self.p_i_dbm.is_nan() || self.p_i_dbm == f64::INFINITY {
            return Err(Error::InvalidScenario("p_i_dbm must be finite or -inf".into()));
        }
        if self.noise_psd_dbm_hz.is_nan() || self.noise_psd_dbm_hz == f64::INFINITY {
            return Err(Error::InvalidScenario("noise_psd_dbm_hz must be finite or -inf".into()));
        }
        Ok(())
    }

    pub fn num_radios(&self) -> usize {
        self.radio_positions.len()
    }

    /// Copy of the scenario translated so the target sits at the origin,
    /// together with the translation that was subtracted.
    pub fn centered(&self) -> (Scenario, Point) {
        let t = self.target_position;
        let shift = |p: &Point| p.offset(-t.x, -t.y);
        let centered = Scenario {
            radio_positions: self.radio_positions.iter().map(shift).collect(),
            target_position: Point::ORIGIN,
            interferer_position: shift(&self.interferer_position),
            ..self.clone()
        };
        (centered, t)
    }

    pub fn power_vectors(&self) -> Result<Vec<PowerVector>> {
        power_vectors(self)
    }
}

pub fn dbm_to_mw(dbm: f64) -> f64 {
    10f64.powf(dbm / 10.0)
}

pub fn mw_to_dbm(mw: f64) -> f64 {
    10.0 * mw.log10()
}

/// Simplified path loss `P * (d / d0)^-gamma`, with `d` clamped below at `d0`.
pub fn received_power(source_pos: Point, source_p_dbm: f64, radio_pos: Point, d0: f64, gamma: f64) -> Result<f64> {
    if !source_pos.is_finite() || !radio_pos.is_finite() {
        return Err(Error::NonFinite("received_power position"));
    }
    let d = source_pos.distance(&radio_pos).max(d0);
    Ok(dbm_to_mw(source_p_dbm) * (d / d0).powf(-gamma))
}

pub fn power_vectors(s: &Scenario) -> Result<Vec<PowerVector>> {
    s.radio_positions
        .iter()
        .map(|&radio| {
            let p_tk = received_power(s.target_position, s.p_t_dbm, radio, s.d0, s.gamma)?;
            let p_ik = received_power(s.interferer_position, s.p_i_dbm, radio, s.d0, s.gamma)?;
            Ok(PowerVector::new(p_tk, p_ik))
        })
        .collect()
}

/// Noise power over the full sampled band: `N0 + 10 log10(fs)` dBm, in mW.
pub fn noise_power(noise_psd_dbm_hz: f64, sample_rate: f64) -> f64 {
    dbm_to_mw(noise_psd_dbm_hz + 10.0 * sample_rate.log10())
}

/// `count` radios drawn i.i.d. uniform on `[-extent, extent]^2`.
pub fn place_radios(count: usize, extent: f64, seed: u64) -> Vec<Point> {
    let mut rng = seed::rng(seed);
    (0..count)
        .map(|_| {
            let x = rng.random_range(-extent..=extent);
            let y = rng.random_range(-extent..=extent);
            Point::new(x, y)
        })
        .collect()
}
