// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Config-driven scenarios, figure data, plots and waveform export.

pub mod awg;
pub mod config;
pub mod scenario;
pub mod svg;

pub use awg::{export_awg, AwgWaveform};
pub use config::ScenarioConfig;
pub use scenario::{sweep, write_artifacts, Artifact, FigureId, Scenario, SweepAxis, SweepReport};
