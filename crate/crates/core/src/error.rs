// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("pulse program needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("curve parameter ζ = {0} is outside [0, 0.5]")]
    ZetaOutOfRange(f64),

    #[error("curve is singular or unresolved near ζ = {zeta}")]
    SingularCurve { zeta: f64 },

    #[error("curve fails validity gates: closure {closure:.3e}, tangent residuals [{tangent_start:.3e}, {tangent_end:.3e}]")]
    CurveGateFailed {
        closure: f64,
        tangent_start: f64,
        tangent_end: f64,
    },

    #[error("tangent reconstruction failed: |ṙ| = {speed} at t = {time:e} s")]
    TangentReconstruction { time: f64, speed: f64 },

    #[error("length mismatch: {0}")]
    Misaligned(String),

    #[error("insufficient data for fit: {0}")]
    InsufficientData(String),

    #[error("no valid point in the search box")]
    EmptyValidRegion,

    #[error("waveform exceeds the reference amplitude: max |Ω|/Ω_max = {0:.6}")]
    AmplitudeOverflow(f64),

    #[error("malformed CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },

    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
