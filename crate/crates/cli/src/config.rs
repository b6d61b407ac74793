//! Run configuration: a JSON object naming an experiment, its parameters and
//! optional truncation and output settings.
//!
//! Unknown keys are rejected so that a typo cannot silently fall back to a
//! default.

use std::f64::consts::{PI, TAU};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: String,
    #[serde(default)]
    pub params: Value,
    #[serde(default)]
    pub truncation: Option<TruncationSpec>,
    /// Output directory; `MESOQ_OUT` and `--out` take precedence.
    #[serde(default)]
    pub output_dir: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    #[serde(default)]
    pub initial_dim: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub cap: Option<usize>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Typed parameters; missing keys take their defaults.
    pub fn params<P: for<'de> Deserialize<'de>>(&self) -> Result<P, CliError> {
        let v = if self.params.is_null() { Value::Object(Default::default()) } else { self.params.clone() };
        serde_json::from_value(v).map_err(|e| CliError::Config(format!("{}: {e}", self.experiment)))
    }
}

/// `points` uniform samples of `[start, stop]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub const fn new(start: f64, stop: f64, points: usize) -> Self {
        Self { start, stop, points }
    }

    pub fn validate(&self, name: &str) -> Result<(), CliError> {
        if self.points < 2 || !self.start.is_finite() || !self.stop.is_finite() || self.stop <= self.start {
            return Err(CliError::Config(format!("{name}: grid needs start < stop and at least 2 points")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let d = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points).map(|i| self.start + d * i as f64).collect()
    }
}

fn default_q() -> f64 {
    std::f64::consts::FRAC_1_SQRT_2
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig1Params {
    pub omega: f64,
    pub xi: f64,
    /// Real coherent amplitude shared by both states.
    pub amplitude: f64,
    pub squeeze_r: f64,
    pub squeeze_varphi: f64,
    pub omega_t: Grid,
    pub count_max: usize,
}

impl Default for Fig1Params {
    fn default() -> Self {
        Self { omega: 1e-4, xi: 1.0, amplitude: 2.0, squeeze_r: 0.5, squeeze_varphi: 0.0, omega_t: Grid::new(0.0, 2.0 * TAU, 401), count_max: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig4Params {
    pub q: f64,
    pub omega: f64,
    pub squeeze_r: f64,
    pub omega_t: Grid,
}

impl Default for Fig4Params {
    fn default() -> Self {
        Self { q: default_q(), omega: 1e-4, squeeze_r: 0.5, omega_t: Grid::new(0.0, 2.0 * TAU, 401) }
    }
}

/// Shared settings of the ⟨N⟩-matched single-device figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatchedParams {
    pub q: f64,
    pub omega: f64,
    pub mean_photons: f64,
    pub squeeze_r: f64,
    /// Classical drive strength `eφ₁`.
    pub e_phi1: f64,
    /// Axis in units of `ωt` (fig5) or `ωτ` (fig6); unused by fig7.
    pub axis: Grid,
    /// Spectral range `|K| <= k_max` (fig7).
    pub k_max: usize,
    /// Quadrature samples per period (fig7).
    pub samples: usize,
}

impl Default for MatchedParams {
    fn default() -> Self {
        Self {
            q: default_q(),
            omega: 1e-4,
            mean_photons: 17.0,
            squeeze_r: 4.2,
            e_phi1: 34f64.sqrt(),
            axis: Grid::new(0.0, TAU, 401),
            k_max: 20,
            samples: mesoq::interference::MIN_QUADRATURE_SAMPLES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitTargets {
    pub lower: f64,
    pub upper: f64,
    pub q_min: f64,
    pub q_max: f64,
    pub scan_points: usize,
}

impl Default for FitTargets {
    fn default() -> Self {
        Self { lower: 1.0001, upper: 1.2471, q_min: 0.05, q_max: 1.0, scan_points: 400 }
    }
}

/// Two interference devices driven by the `(|00⟩, |11⟩)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PairParams {
    /// Coupling; `null` fits it to `fit`.
    pub q: Option<f64>,
    pub fit: FitTargets,
    pub omega1: f64,
    pub omega2: f64,
    /// Screen grid per axis (fig9, fig10).
    pub screen: Grid,
    /// `(ω₁+ω₂)t` for the entangled surface (fig10).
    pub sum_phase: f64,
    /// Fixed screen points (fig11).
    pub xa: f64,
    pub xb: f64,
    /// Axis in units of `(ω₁+ω₂)t` (fig11).
    pub sum_phase_axis: Grid,
}

impl Default for PairParams {
    fn default() -> Self {
        Self {
            q: None,
            fit: FitTargets::default(),
            omega1: 1.2e-4,
            omega2: 1e-4,
            screen: Grid::new(-TAU, TAU, 201),
            sum_phase: PI,
            xa: 0.9 * PI,
            xb: 1.025 * PI,
            sum_phase_axis: Grid::new(0.0, 3.0 * TAU, 601),
        }
    }
}

/// Two SQUID rings driven by number or coherent pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SquidPairParams {
    pub n1: u32,
    pub n2: u32,
    pub a1: f64,
    pub a2: f64,
    pub qprime: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega_a: f64,
    pub omega_b: f64,
    pub i1: f64,
    pub i2: f64,
    pub pole_margin: f64,
    /// Axis in units of `(ω₁-ω₂)t`.
    pub t_scaled: Grid,
}

impl Default for SquidPairParams {
    fn default() -> Self {
        Self {
            n1: 1,
            n2: 3,
            a1: 1.0,
            a2: 3f64.sqrt(),
            qprime: 0.5,
            omega1: 1.2e-4,
            omega2: 1e-4,
            omega_a: 3e-5,
            omega_b: 2e-5,
            i1: 1.0,
            i2: 1.0,
            pole_margin: mesoq::squid::POLE_MARGIN,
            t_scaled: Grid::new(0.0, 20.0, 401),
        }
    }
}

/// Shapiro step scan of one ring.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ShapiroParams {
    pub qprime: f64,
    pub omega1: f64,
    pub icrit: f64,
    pub phase0: f64,
    /// Classical `2eu`; the coherent state is matched to it.
    pub amplitude: f64,
    pub squeeze_r: f64,
    pub n_max: i64,
}

impl Default for ShapiroParams {
    fn default() -> Self {
        Self { qprime: 0.5, omega1: 1e-4, icrit: 1.0, phase0: PI / 2.0, amplitude: 2.4, squeeze_r: 2.0, n_max: 8 }
    }
}
