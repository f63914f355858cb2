//! JSON experiment configuration.
//!
//! Distances are meters, powers dBm, rates Hz. A `null` power means "off"
//! (`-inf` dBm), which is how an absent interferer or a noiseless receiver is
//! written. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::scenario::{place_radios, Point, Scenario};
use crate::waveform::{WaveformParams, SUPPORTED_ORDERS};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Mc,
    Analytic,
    Both,
}

impl Mode {
    pub fn runs_mc(self) -> bool {
        matches!(self, Mode::Mc | Mode::Both)
    }

    pub fn runs_analytic(self) -> bool {
        matches!(self, Mode::Analytic | Mode::Both)
    }
}

fn default_extent() -> f64 {
    50.0
}
fn default_d0() -> f64 {
    1.0
}
fn default_gamma() -> f64 {
    3.8
}
fn default_noise_psd() -> Option<f64> {
    Some(-174.0)
}
fn default_trials() -> usize {
    100
}
fn default_fit_realizations() -> usize {
    2000
}
fn default_p_t() -> Vec<f64> {
    vec![10.0]
}
fn default_interferer_positions() -> Vec<Point> {
    vec![Point::new(20.0, 20.0)]
}

/// Geometry section. Radios come either from an explicit list or from a
/// seeded uniform layout on `[-layout_extent, layout_extent]^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub radio_positions: Option<Vec<Point>>,
    #[serde(default)]
    pub radio_count: Option<usize>,
    #[serde(default = "default_extent")]
    pub layout_extent: f64,
    #[serde(default)]
    pub layout_seed: u64,
    #[serde(default)]
    pub target_position: Point,
    #[serde(default = "default_d0")]
    pub d0: f64,
    #[serde(default = "default_gamma")]
    pub gamma: f64,
    #[serde(default = "default_noise_psd")]
    pub noise_psd_dbm_hz: Option<f64>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            radio_positions: None,
            radio_count: Some(30),
            layout_extent: default_extent(),
            layout_seed: 0,
            target_position: Point::ORIGIN,
            d0: default_d0(),
            gamma: default_gamma(),
            noise_psd_dbm_hz: default_noise_psd(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Interferer powers; `null` switches the interferer off.
    pub p_i_dbm: Vec<Option<f64>>,
    #[serde(default = "default_p_t")]
    pub p_t_dbm: Vec<f64>,
    #[serde(default = "default_interferer_positions")]
    pub interferer_positions: Vec<Point>,
    /// Defaults to the interferer waveform's own order.
    #[serde(default)]
    pub interferer_modulation_orders: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub scenario: ScenarioConfig,
    pub target_waveform: WaveformParams,
    pub interferer_waveform: WaveformParams,
    /// Cyclic frequency used by the estimator; defaults to the target symbol rate.
    #[serde(default)]
    pub alpha_t: Option<f64>,
    pub sweep: SweepConfig,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Waveform realizations used to fit the Gaussian theta model.
    #[serde(default = "default_fit_realizations")]
    pub fit_realizations: usize,
    /// Reuse trial seeds across sweep points (common random numbers) instead
    /// of keying them by sweep index.
    #[serde(default)]
    pub common_random_numbers: bool,
}

/// One row of the sweep grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub sweep_id: usize,
    pub p_t_dbm: f64,
    pub p_i_dbm: f64,
    pub interferer_position: Point,
    pub mod_order_t: u32,
    pub mod_order_i: u32,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn alpha_t(&self) -> f64 {
        self.alpha_t.unwrap_or(self.target_waveform.symbol_rate)
    }

    pub fn sample_rate(&self) -> f64 {
        self.target_waveform.sample_rate
    }

    pub fn noise_psd_dbm_hz(&self) -> f64 {
        self.scenario.noise_psd_dbm_hz.unwrap_or(f64::NEG_INFINITY)
    }

    pub fn radio_positions(&self) -> Vec<Point> {
        match (&self.scenario.radio_positions, self.scenario.radio_count) {
            (Some(p), _) => p.clone(),
            (None, Some(k)) => place_radios(k, self.scenario.layout_extent, self.scenario.layout_seed),
            (None, None) => Vec::new(),
        }
    }

    pub fn interferer_orders(&self) -> Vec<u32> {
        self.sweep
            .interferer_modulation_orders
            .clone()
            .unwrap_or_else(|| vec![self.interferer_waveform.modulation_order])
    }

    /// Grid order: interferer position, interferer modulation, target power,
    /// interferer power (innermost).
    pub fn sweep_points(&self) -> Vec<SweepPoint> {
        let mut points = Vec::new();
        for &interferer_position in &self.sweep.interferer_positions {
            for mod_order_i in self.interferer_orders() {
                for &p_t_dbm in &self.sweep.p_t_dbm {
                    for p_i in &self.sweep.p_i_dbm {
                        points.push(SweepPoint {
                            sweep_id: points.len(),
                            p_t_dbm,
                            p_i_dbm: p_i.unwrap_or(f64::NEG_INFINITY),
                            interferer_position,
                            mod_order_t: self.target_waveform.modulation_order,
                            mod_order_i,
                        });
                    }
                }
            }
        }
        points
    }

    pub fn scenario_for(&self, point: &SweepPoint) -> Scenario {
        self.scenario_with_radios(point, self.radio_positions())
    }

    pub(crate) fn scenario_with_radios(&self, point: &SweepPoint, radios: Vec<Point>) -> Scenario {
        Scenario {
            radio_positions: radios,
            target_position: self.scenario.target_position,
            interferer_position: point.interferer_position,
            p_t_dbm: point.p_t_dbm,
            p_i_dbm: point.p_i_dbm,
            d0: self.scenario.d0,
            gamma: self.scenario.gamma,
            noise_psd_dbm_hz: self.noise_psd_dbm_hz(),
        }
    }

    pub fn target_params(&self, point: &SweepPoint) -> WaveformParams {
        WaveformParams {
            modulation_order: point.mod_order_t,
            ..self.target_waveform.clone()
        }
    }

    pub fn interferer_params(&self, point: &SweepPoint) -> WaveformParams {
        WaveformParams {
            modulation_order: point.mod_order_i,
            ..self.interferer_waveform.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));

        self.target_waveform.validate()?;
        self.interferer_waveform.validate()?;
        if self.target_waveform.sample_rate != self.interferer_waveform.sample_rate {
            return bad("target and interferer sample_rate must match".into());
        }
        if self.target_waveform.num_samples != self.interferer_waveform.num_samples {
            return bad("target and interferer num_samples must match".into());
        }
        if !(self.target_waveform.rolloff > 0.0) {
            return bad("target rolloff must be > 0 for a symbol-rate cyclic feature".into());
        }
        let alpha = self.alpha_t();
        if !alpha.is_finite() || alpha < 0.0 {
            return bad(format!("alpha_t must be finite and >= 0, got {alpha}"));
        }

        let sc = &self.scenario;
        if sc.radio_positions.is_none() && sc.radio_count.is_none() {
            return bad("scenario needs radio_positions or radio_count".into());
        }
        if sc.radio_positions.is_some() && sc.radio_count.is_some() {
            return bad("scenario takes radio_positions or radio_count, not both".into());
        }
        if sc.radio_positions.is_none() && !(sc.layout_extent > 0.0 && sc.layout_extent.is_finite()) {
            return bad("layout_extent must be > 0".into());
        }

        if self.sweep.p_i_dbm.is_empty() {
            return bad("sweep.p_i_dbm must not be empty".into());
        }
        if self.sweep.p_t_dbm.is_empty() {
            return bad("sweep.p_t_dbm must not be empty".into());
        }
        if self.sweep.interferer_positions.is_empty() {
            return bad("sweep.interferer_positions must not be empty".into());
        }
        let orders = self.interferer_orders();
        if orders.is_empty() {
            return bad("sweep.interferer_modulation_orders must not be empty".into());
        }
        if let Some(o) = orders.iter().find(|o| !SUPPORTED_ORDERS.contains(o)) {
            return bad(format!("unsupported interferer modulation order {o}"));
        }
        if self.mode.runs_mc() && self.trials == 0 {
            return bad("trials must be >= 1 in mc mode".into());
        }
        if self.mode.runs_analytic() && self.fit_realizations < 2 {
            return bad("fit_realizations must be >= 2 in analytic mode".into());
        }

        let radios = self.radio_positions();
        for point in self.sweep_points() {
            self.scenario_with_radios(&point, radios.clone())
                .validate()
                .map_err(|e| Error::Config(format!("sweep point {}: {e}", point.sweep_id)))?;
        }
        Ok(())
    }

    /// Reference simulation defaults for the given interferer powers: 4-QAM target at
    /// 20 MHz symbol rate, 4-QAM interferer at 40 MHz, 200 MHz sampling,
    /// N = 5000, roll-off 0.35.
    pub fn table_defaults(p_i_dbm: &[f64]) -> Self {
        let waveform = |symbol_rate| WaveformParams {
            modulation_order: 4,
            symbol_rate,
            rolloff: 0.35,
            sample_rate: 200e6,
            num_samples: 5000,
            seed: 0,
        };
        Self {
            scenario: ScenarioConfig::default(),
            target_waveform: waveform(20e6),
            interferer_waveform: waveform(40e6),
            alpha_t: None,
            sweep: SweepConfig {
                p_i_dbm: p_i_dbm.iter().map(|&p| Some(p)).collect(),
                p_t_dbm: default_p_t(),
                interferer_positions: default_interferer_positions(),
                interferer_modulation_orders: None,
            },
            trials: default_trials(),
            mode: Mode::Mc,
            seed: 0,
            output: None,
            fit_realizations: default_fit_realizations(),
            common_random_numbers: false,
        }
    }
}
