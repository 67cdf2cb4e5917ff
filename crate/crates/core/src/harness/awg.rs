// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Normalized envelope files for an arbitrary waveform generator.

use std::fmt::Write as _;

use super::config::LabFrame;
use crate::error::{Error, Result};
use crate::pulse::PulseProgram;

/// Peak |Ω|/Ω_max allowed before export is refused.
pub const OVERFLOW_LIMIT: f64 = 1.005;

/// One exported channel. `channel` is None when both transitions share
/// the same envelope and a single file drives both.
#[derive(Debug, Clone, PartialEq)]
pub struct AwgWaveform {
    pub channel: Option<&'static str>,
    pub csv: String,
}

type Pick = fn(&crate::spin::DriveSample) -> f64;

/// Writes Ω(t)/Ω_max per sample midpoint as `t_s,amplitude_normalized`.
pub fn export_awg(
    program: &PulseProgram,
    omega_max: f64,
    lab: &LabFrame,
) -> Result<Vec<AwgWaveform>> {
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::invalid(
            "omega_max",
            "reference amplitude must be positive",
        ));
    }
    let peak = program.peak_envelope() / omega_max;
    if peak > OVERFLOW_LIMIT {
        return Err(Error::AmplitudeOverflow(peak));
    }
    let channels: Vec<(Option<&'static str>, Pick)> = if program.envelopes_identical() {
        vec![(None, |s| s.omega_plus)]
    } else {
        vec![
            (Some("plus"), |s| s.omega_plus),
            (Some("minus"), |s| s.omega_minus),
        ]
    };
    Ok(channels
        .into_iter()
        .map(|(channel, pick)| {
            let mut csv = String::new();
            let _ = writeln!(csv, "# scheme={}", program.scheme());
            let _ = writeln!(
                csv,
                "# channel={}",
                match channel {
                    None => "both (|0>-|+1> and |0>-|-1>)",
                    Some("plus") => "plus (|0>-|+1>)",
                    Some(_) => "minus (|0>-|-1>)",
                }
            );
            let _ = writeln!(
                csv,
                "# lab_frame,omega_plus_GHz={},omega_minus_GHz={},splitting_GHz={}",
                lab.omega_plus_ghz, lab.omega_minus_ghz, lab.splitting_ghz
            );
            let _ = writeln!(csv, "# reference,omega_max_rad_s={omega_max:e},amplitude=1");
            csv.push_str("# negative amplitude = carrier phase flipped by pi\n");
            csv.push_str("t_s,amplitude_normalized\n");
            for (k, s) in program.samples().iter().enumerate() {
                let _ = writeln!(
                    csv,
                    "{:e},{:.9}",
                    program.sample_time(k),
                    pick(s) / omega_max
                );
            }
            AwgWaveform { channel, csv }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::{synth_pi, PiTransition};
    use crate::units::reference_rabi;

    #[test]
    fn overflow_is_rejected() {
        let p = synth_pi(reference_rabi(), PiTransition::Both, 10).unwrap();
        let err = export_awg(&p, 0.99 * reference_rabi(), &LabFrame::default()).unwrap_err();
        assert!(matches!(err, Error::AmplitudeOverflow(r) if r > 1.0));
        assert!(export_awg(&p, 0.996 * reference_rabi(), &LabFrame::default()).is_ok());
    }

    #[test]
    fn single_channel_layout() {
        let p = synth_pi(reference_rabi(), PiTransition::Both, 4).unwrap();
        let w = export_awg(&p, reference_rabi(), &LabFrame::default()).unwrap();
        assert_eq!(w.len(), 1);
        let rows: Vec<&str> = w[0].csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows[0], "t_s,amplitude_normalized");
        assert_eq!(rows.len(), 5);
        assert!(rows[1].ends_with(",1.000000000"));
        assert!(w[0].csv.contains("omega_plus_GHz=4.284"));
    }
}
