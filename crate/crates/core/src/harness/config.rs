// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON scenario configuration.
//!
//! Frequencies are written as ordinary frequencies (MHz, kHz) and converted
//! with a factor 2π unless `angular` is set, in which case the numbers are
//! already angular (rad/µs for the MHz fields, rad/ms for the kHz fields).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::curve::CurveParams;
use crate::error::{Error, Result};
use crate::optimize::SearchBox;
use crate::pulse::{PiTransition, SchemeTag};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// Scheme used by the single-program subcommands.
    pub scheme: SchemeTag,
    /// Frequencies below are angular rather than ordinary.
    pub angular: bool,
    pub omega_max_mhz: f64,
    pub curve: CurveConfig,
    pub sta_samples: usize,
    pub stirap: StirapConfig,
    pub srt: SrtConfig,
    pub pi: PiConfig,
    pub delta_sweep_khz: Grid,
    pub epsilon_sweep: Grid,
    /// Rows kept in population-trace CSVs.
    pub trace_points: usize,
    pub optimizer: OptimizerConfig,
    pub lab_frame: LabFrame,
    /// Overridden by `--out`; not part of the config hash.
    pub output_dir: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            scheme: SchemeTag::StaScqc,
            angular: false,
            omega_max_mhz: 1.9,
            curve: CurveConfig::default(),
            sta_samples: 4000,
            stirap: StirapConfig::default(),
            srt: SrtConfig::default(),
            pi: PiConfig::default(),
            delta_sweep_khz: Grid {
                min: -1000.0,
                max: 1000.0,
                points: 41,
            },
            epsilon_sweep: Grid {
                min: -0.3,
                max: 0.3,
                points: 31,
            },
            trace_points: 400,
            optimizer: OptimizerConfig::default(),
            lab_frame: LabFrame::default(),
            output_dir: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub a_over_pi: f64,
    pub b: f64,
}

impl Default for CurveConfig {
    fn default() -> Self {
        Self {
            a_over_pi: 0.15,
            b: 0.06,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StirapConfig {
    /// Duration of the single STIRAP program.
    pub duration_us: f64,
    /// Durations compared against the STA pulse in the trace figure.
    pub trace_durations_us: Vec<f64>,
    pub samples: usize,
}

impl Default for StirapConfig {
    fn default() -> Self {
        Self {
            duration_us: 5.0,
            trace_durations_us: vec![0.8, 5.0, 6.0],
            samples: 4000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SrtConfig {
    pub detuning_mhz: f64,
    /// Fixed duration; calibrated to the best transfer when absent.
    pub duration_us: Option<f64>,
    pub samples: usize,
}

impl Default for SrtConfig {
    fn default() -> Self {
        Self {
            detuning_mhz: 2.5,
            duration_us: None,
            samples: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PiConfig {
    pub transition: PiTransition,
    pub samples: usize,
}

impl Default for PiConfig {
    fn default() -> Self {
        Self {
            transition: PiTransition::Both,
            samples: 400,
        }
    }
}

/// Inclusive uniform grid; `points = 0` is an empty grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match self.points {
            0 => vec![],
            1 => vec![self.min],
            n => (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizerConfig {
    #[serde(rename = "box")]
    pub search_box: SearchBox,
    pub grid: [usize; 2],
    pub refine: bool,
    /// ζ grid per curve evaluation.
    pub curve_grid: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            search_box: SearchBox::default(),
            grid: [60, 60],
            refine: true,
            curve_grid: crate::optimize::LANDSCAPE_GRID,
        }
    }
}

/// Lab-frame carrier data, carried into waveform headers only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabFrame {
    pub omega_plus_ghz: f64,
    pub omega_minus_ghz: f64,
    pub splitting_ghz: f64,
}

impl Default for LabFrame {
    fn default() -> Self {
        Self {
            omega_plus_ghz: 4.284,
            omega_minus_ghz: 1.457,
            splitting_ghz: 2.827,
        }
    }
}

fn config_error(path: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        path: path.into(),
        reason: reason.into(),
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: Self = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config_error(&path, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |path: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(config_error(
                    path,
                    format!("must be a positive number, got {v}"),
                ))
            }
        };
        let samples = |path: &str, n: usize| {
            if n >= 2 {
                Ok(())
            } else {
                Err(config_error(
                    path,
                    format!("needs at least 2 samples, got {n}"),
                ))
            }
        };
        positive("omega_max_mhz", self.omega_max_mhz)?;
        CurveParams::new(self.curve.a_over_pi * std::f64::consts::PI, self.curve.b)
            .map_err(|e| config_error("curve", e.to_string()))?;
        samples("sta_samples", self.sta_samples)?;
        positive("stirap.duration_us", self.stirap.duration_us)?;
        for (i, &t) in self.stirap.trace_durations_us.iter().enumerate() {
            positive(&format!("stirap.trace_durations_us[{i}]"), t)?;
        }
        samples("stirap.samples", self.stirap.samples)?;
        if !self.srt.detuning_mhz.is_finite() {
            return Err(config_error("srt.detuning_mhz", "must be finite"));
        }
        if let Some(t) = self.srt.duration_us {
            positive("srt.duration_us", t)?;
        }
        samples("srt.samples", self.srt.samples)?;
        samples("pi.samples", self.pi.samples)?;
        for (path, g) in [
            ("delta_sweep_khz", &self.delta_sweep_khz),
            ("epsilon_sweep", &self.epsilon_sweep),
        ] {
            if !(g.min.is_finite() && g.max.is_finite() && g.min <= g.max) {
                return Err(config_error(path, "needs finite min ≤ max"));
            }
        }
        if self.epsilon_sweep.points > 0 && self.epsilon_sweep.min <= -1.0 {
            return Err(config_error("epsilon_sweep.min", "must be > −1"));
        }
        if self.trace_points < 2 {
            return Err(config_error("trace_points", "needs at least 2"));
        }
        self.optimizer
            .search_box
            .validate()
            .map_err(|e| config_error("optimizer.box", e.to_string()))?;
        if self.optimizer.grid.contains(&0) {
            return Err(config_error(
                "optimizer.grid",
                "needs at least one point per axis",
            ));
        }
        if self.optimizer.curve_grid < crate::curve::MIN_GRID {
            return Err(config_error(
                "optimizer.curve_grid",
                format!("needs at least {}", crate::curve::MIN_GRID),
            ));
        }
        for (path, v) in [
            ("lab_frame.omega_plus_ghz", self.lab_frame.omega_plus_ghz),
            ("lab_frame.omega_minus_ghz", self.lab_frame.omega_minus_ghz),
            ("lab_frame.splitting_ghz", self.lab_frame.splitting_ghz),
        ] {
            positive(path, v)?;
        }
        Ok(())
    }

    fn scale(&self) -> f64 {
        if self.angular {
            1.0
        } else {
            2.0 * std::f64::consts::PI
        }
    }

    /// Ω_max in rad/s.
    pub fn omega_max(&self) -> f64 {
        self.omega_max_mhz * 1e6 * self.scale()
    }

    /// Common SRT detuning in rad/s.
    pub fn srt_detuning(&self) -> f64 {
        self.srt.detuning_mhz * 1e6 * self.scale()
    }

    /// Converts a sweep value in kHz to rad/s.
    pub fn khz_to_angular(&self, v: f64) -> f64 {
        v * 1e3 * self.scale()
    }

    pub fn curve_params(&self) -> CurveParams {
        CurveParams {
            a: self.curve.a_over_pi * std::f64::consts::PI,
            b: self.curve.b,
        }
    }

    /// Pretty JSON including every defaulted field.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("config serializes");
        s.push('\n');
        s
    }

    /// SHA-256 of the canonical JSON with the output location removed, so
    /// that the echo file reproduces the same hash wherever it is run.
    pub fn hash(&self) -> String {
        let canonical = ScenarioConfig {
            output_dir: None,
            ..self.clone()
        };
        let digest = Sha256::digest(canonical.to_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_is_default() {
        assert_eq!(
            ScenarioConfig::from_json("{}").unwrap(),
            ScenarioConfig::default()
        );
    }

    #[test]
    fn unknown_field_reports_path() {
        let err =
            ScenarioConfig::from_json(r#"{"srt": {"detuning_mhz": 2.5, "bogus": 1}}"#).unwrap_err();
        match err {
            Error::Config { path, .. } => assert!(path.starts_with("srt"), "{path}"),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn semantic_error_reports_path() {
        let err = ScenarioConfig::from_json(r#"{"stirap": {"trace_durations_us": [1.0, -2.0]}}"#)
            .unwrap_err();
        assert!(
            matches!(err, Error::Config { ref path, .. } if path == "stirap.trace_durations_us[1]")
        );
    }

    #[test]
    fn angular_flag() {
        let c = ScenarioConfig::from_json(r#"{"omega_max_mhz": 2.0, "angular": true}"#).unwrap();
        assert_eq!(c.omega_max(), 2.0e6);
        let c = ScenarioConfig::default();
        assert!((c.omega_max() - crate::units::reference_rabi()).abs() < 1e-6);
        assert!((c.khz_to_angular(300.0) - crate::units::khz(300.0)).abs() < 1e-9);
    }

    #[test]
    fn echo_round_trip_and_hash() {
        let c = ScenarioConfig {
            output_dir: Some("x".into()),
            ..Default::default()
        };
        let back = ScenarioConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let moved = ScenarioConfig {
            output_dir: Some("y".into()),
            ..c.clone()
        };
        assert_eq!(moved.hash(), c.hash());
        assert_eq!(c.hash().len(), 64);
    }

    #[test]
    fn grids() {
        let g = Grid {
            min: -1.0,
            max: 1.0,
            points: 5,
        };
        assert_eq!(g.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(Grid { points: 0, ..g }.values().is_empty());
    }
}
