// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Sampled drive programs for the four transfer schemes, noise injection,
//! and CSV serialization.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::curve::{geometry, CurveGeometry, CurveParams, GateTolerances, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::propagate::{final_state, step_unitary};
use crate::spin::{frobenius, hamiltonian_unchecked, DriveSample, Level, QutritState};

pub const CSV_HEADER: &str =
    "t_s,omega_plus_rad_s,omega_minus_rad_s,delta_plus_rad_s,delta_minus_rad_s";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeTag {
    #[serde(rename = "STA_SCQC")]
    StaScqc,
    #[serde(rename = "STIRAP")]
    Stirap,
    #[serde(rename = "SRT")]
    Srt,
    #[serde(rename = "PI_PULSE")]
    PiPulse,
}

impl SchemeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeTag::StaScqc => "STA_SCQC",
            SchemeTag::Stirap => "STIRAP",
            SchemeTag::Srt => "SRT",
            SchemeTag::PiPulse => "PI_PULSE",
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            SchemeTag::StaScqc => "sta",
            SchemeTag::Stirap => "stirap",
            SchemeTag::Srt => "srt",
            SchemeTag::PiPulse => "pi",
        }
    }
}

impl fmt::Display for SchemeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiTransition {
    Plus,
    Minus,
    Both,
}

/// Quasi-static error applied to a whole program.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseSpec {
    /// Differential detuning in rad/s: +δ on |+1⟩, −δ on |−1⟩.
    pub delta: f64,
    /// Relative amplitude error, Ω → (1 + ε)Ω.
    pub epsilon: f64,
}

impl NoiseSpec {
    pub fn detuning(delta: f64) -> Self {
        Self {
            delta,
            epsilon: 0.0,
        }
    }

    pub fn amplitude(epsilon: f64) -> Self {
        Self {
            delta: 0.0,
            epsilon,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.delta == 0.0 && self.epsilon == 0.0
    }

    /// Noise equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &NoiseSpec) -> NoiseSpec {
        NoiseSpec {
            delta: self.delta + next.delta,
            epsilon: (1.0 + self.epsilon) * (1.0 + next.epsilon) - 1.0,
        }
    }
}

/// Parameters a program was generated from, enough to regenerate it at a
/// different resolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Sta {
        params: CurveParams,
        omega_max: f64,
    },
    Stirap {
        duration: f64,
        amp_plus: f64,
        amp_minus: f64,
        sigma: f64,
        delta_tau: f64,
    },
    Srt {
        duration: f64,
        omega: f64,
        detuning_common: f64,
    },
    Pi {
        omega: f64,
        transition: PiTransition,
    },
    Imported,
}

/// Uniformly sampled drive record. Sample k holds the drive at the step
/// midpoint (k + ½)·dt and is held constant over its step.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseProgram {
    dt: f64,
    samples: Vec<DriveSample>,
    scheme: SchemeTag,
    origin: Origin,
    noise: NoiseSpec,
}

impl PulseProgram {
    pub fn new(
        dt: f64,
        samples: Vec<DriveSample>,
        scheme: SchemeTag,
        origin: Origin,
    ) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::invalid("dt", format!("must be > 0, got {dt}")));
        }
        if !samples.iter().all(DriveSample::is_finite) {
            return Err(Error::NonFinite("drive samples"));
        }
        Ok(Self {
            dt,
            samples,
            scheme,
            origin,
            noise: NoiseSpec::default(),
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.samples.len() as f64
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[DriveSample] {
        &self.samples
    }

    pub fn scheme(&self) -> SchemeTag {
        self.scheme
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    /// Accumulated noise applied after synthesis.
    pub fn noise(&self) -> &NoiseSpec {
        &self.noise
    }

    pub fn sample_time(&self, k: usize) -> f64 {
        (k as f64 + 0.5) * self.dt
    }

    /// Largest |Ω±| over the record.
    pub fn peak_envelope(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.omega_plus.abs().max(s.omega_minus.abs()))
            .fold(0.0, f64::max)
    }

    pub fn peak_hamiltonian_norm(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| frobenius(&hamiltonian_unchecked(s)))
            .fold(0.0, f64::max)
    }

    /// Whether both transitions carry bit-identical envelopes.
    pub fn envelopes_identical(&self) -> bool {
        self.samples.iter().all(|s| s.omega_plus == s.omega_minus)
    }

    /// Regenerates the program from its origin with `n_samples` samples,
    /// re-applying any accumulated noise.
    pub fn resample(&self, n_samples: usize) -> Result<PulseProgram> {
        let fresh = match self.origin {
            Origin::Sta { params, omega_max } => synth_sta(&params, omega_max, n_samples)?,
            Origin::Stirap {
                duration,
                amp_plus,
                amp_minus,
                sigma,
                delta_tau,
            } => synth_stirap(duration, amp_plus, amp_minus, sigma, delta_tau, n_samples)?,
            Origin::Srt {
                duration,
                omega,
                detuning_common,
            } => synth_srt(duration, omega, detuning_common, n_samples)?,
            Origin::Pi { omega, transition } => synth_pi(omega, transition, n_samples)?,
            Origin::Imported => {
                return Err(Error::invalid(
                    "program",
                    "imported programs cannot be resampled",
                ))
            }
        };
        Ok(apply_noise(&fresh, &self.noise))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(96 * (self.samples.len() + 1));
        out.push_str(CSV_HEADER);
        out.push('\n');
        for (k, s) in self.samples.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:e},{:e},{:e},{:e},{:e}",
                self.sample_time(k),
                s.omega_plus,
                s.omega_minus,
                s.delta_plus,
                s.delta_minus
            );
        }
        out
    }

    /// Parses the CSV written by [`PulseProgram::to_csv`]. Lines starting
    /// with `#` are ignored. The time column must be (k + ½)·dt.
    pub fn from_csv(text: &str, scheme: SchemeTag) -> Result<PulseProgram> {
        let mut rows = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
        match rows.next() {
            Some((_, h)) if h.trim() == CSV_HEADER => {}
            Some((i, _)) => {
                return Err(Error::Csv {
                    line: i + 1,
                    reason: format!("expected header `{CSV_HEADER}`"),
                })
            }
            None => {
                return Err(Error::Csv {
                    line: 0,
                    reason: "empty input".into(),
                })
            }
        }
        let mut times = Vec::new();
        let mut samples = Vec::new();
        for (i, line) in rows {
            let fields: Vec<f64> = line
                .split(',')
                .map(|f| f.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Csv {
                    line: i + 1,
                    reason: e.to_string(),
                })?;
            if fields.len() != 5 {
                return Err(Error::Csv {
                    line: i + 1,
                    reason: format!("expected 5 columns, got {}", fields.len()),
                });
            }
            times.push(fields[0]);
            samples.push(DriveSample {
                omega_plus: fields[1],
                omega_minus: fields[2],
                delta_plus: fields[3],
                delta_minus: fields[4],
            });
        }
        let Some(&t0) = times.first() else {
            return Err(Error::TooFewSamples { min: 1, got: 0 });
        };
        let dt = 2.0 * t0;
        for (k, t) in times.iter().enumerate() {
            let expect = (k as f64 + 0.5) * dt;
            if (t - expect).abs() > 1e-9 * expect.max(dt) {
                return Err(Error::Csv {
                    line: k + 2,
                    reason: format!("non-uniform time column: {t} vs {expect}"),
                });
            }
        }
        PulseProgram::new(dt, samples, scheme, Origin::Imported)
    }
}

fn check_samples(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::TooFewSamples { min: 1, got: 0 });
    }
    Ok(())
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::invalid(name, format!("must be > 0, got {v}")));
    }
    Ok(())
}

/// Time scaling between the design curve and the physical pulse.
///
/// For H = ΩJx/√2 the tangent of the accumulated curve rotates at Ω/√2,
/// so the physical curve is the design curve scaled by
/// λ = √2 κ_max/Ω_max: t = λ·L and Ω(t) = −√2 κ_s(ζ(t))/λ. The sign makes
/// the accumulated curve coincide with the design curve (no reflection).
#[derive(Debug, Clone)]
pub struct StaDesign {
    pub geometry: CurveGeometry,
    pub omega_max: f64,
    /// Seconds per unit of design arc length.
    pub time_scale: f64,
}

impl StaDesign {
    pub fn new(params: &CurveParams, omega_max: f64) -> Result<Self> {
        positive("omega_max", omega_max)?;
        let geometry = geometry(params, DEFAULT_GRID)?;
        geometry.check_gates(&GateTolerances::default())?;
        Ok(Self::from_geometry(geometry, omega_max))
    }

    pub fn from_geometry(geometry: CurveGeometry, omega_max: f64) -> Self {
        let time_scale = SQRT_2 * geometry.kappa_max / omega_max;
        Self {
            geometry,
            omega_max,
            time_scale,
        }
    }

    pub fn duration(&self) -> f64 {
        self.time_scale * self.geometry.l_total
    }

    pub fn envelope_at(&self, t: f64) -> f64 {
        let zeta = self.geometry.zeta_at_arclength(t / self.time_scale);
        -SQRT_2 * self.geometry.sample_at(zeta).signed_curvature() / self.time_scale
    }

    pub fn program(&self, n_samples: usize) -> Result<PulseProgram> {
        check_samples(n_samples)?;
        let dt = self.duration() / n_samples as f64;
        let samples = (0..n_samples)
            .map(|k| DriveSample::symmetric(self.envelope_at((k as f64 + 0.5) * dt)))
            .collect();
        PulseProgram::new(
            dt,
            samples,
            SchemeTag::StaScqc,
            Origin::Sta {
                params: self.geometry.params,
                omega_max: self.omega_max,
            },
        )
    }
}

/// Curve-derived shortcut pulse, identical on both transitions.
pub fn synth_sta(params: &CurveParams, omega_max: f64, n_samples: usize) -> Result<PulseProgram> {
    StaDesign::new(params, omega_max)?.program(n_samples)
}

/// Gaussian pair Ω±(t) = A± exp[−(t − T/2 ± Δτ)²/σ²] truncated to [0, T].
/// Negative Δτ puts the Ω₋ pulse first.
pub fn synth_stirap(
    duration: f64,
    amp_plus: f64,
    amp_minus: f64,
    sigma: f64,
    delta_tau: f64,
    n_samples: usize,
) -> Result<PulseProgram> {
    positive("duration", duration)?;
    positive("sigma", sigma)?;
    check_samples(n_samples)?;
    let dt = duration / n_samples as f64;
    let gauss = |t: f64, shift: f64| (-((t - 0.5 * duration + shift) / sigma).powi(2)).exp();
    let samples = (0..n_samples)
        .map(|k| {
            let t = (k as f64 + 0.5) * dt;
            DriveSample {
                omega_plus: amp_plus * gauss(t, delta_tau),
                omega_minus: amp_minus * gauss(t, -delta_tau),
                ..Default::default()
            }
        })
        .collect();
    PulseProgram::new(
        dt,
        samples,
        SchemeTag::Stirap,
        Origin::Stirap {
            duration,
            amp_plus,
            amp_minus,
            sigma,
            delta_tau,
        },
    )
}

/// The standard STIRAP shape for a window T: 2σ = T/3 and 2|Δτ| = T/5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirapShape {
    pub sigma: f64,
    pub delta_tau: f64,
}

impl StirapShape {
    pub fn standard(duration: f64, order_sign: f64) -> Self {
        Self {
            sigma: duration / 6.0,
            delta_tau: order_sign.signum() * duration / 10.0,
        }
    }
}

/// Square pulses on both transitions, both red-detuned by a common Δ.
pub fn synth_srt(
    duration: f64,
    omega: f64,
    detuning_common: f64,
    n_samples: usize,
) -> Result<PulseProgram> {
    positive("duration", duration)?;
    check_samples(n_samples)?;
    if !(omega.is_finite() && detuning_common.is_finite()) {
        return Err(Error::NonFinite("SRT parameters"));
    }
    let sample = DriveSample {
        omega_plus: omega,
        omega_minus: omega,
        delta_plus: detuning_common,
        delta_minus: detuning_common,
    };
    PulseProgram::new(
        duration / n_samples as f64,
        vec![sample; n_samples],
        SchemeTag::Srt,
        Origin::Srt {
            duration,
            omega,
            detuning_common,
        },
    )
}

/// Resonant constant drive. Single transition: π/Ω. Both: √2·π/Ω, the
/// spin-1 rotation by π about x.
pub fn synth_pi(omega: f64, transition: PiTransition, n_samples: usize) -> Result<PulseProgram> {
    positive("omega", omega)?;
    check_samples(n_samples)?;
    let (sample, duration) = match transition {
        PiTransition::Plus => (
            DriveSample {
                omega_plus: omega,
                ..Default::default()
            },
            PI / omega,
        ),
        PiTransition::Minus => (
            DriveSample {
                omega_minus: omega,
                ..Default::default()
            },
            PI / omega,
        ),
        PiTransition::Both => (DriveSample::symmetric(omega), SQRT_2 * PI / omega),
    };
    PulseProgram::new(
        duration / n_samples as f64,
        vec![sample; n_samples],
        SchemeTag::PiPulse,
        Origin::Pi { omega, transition },
    )
}

/// Copy of `program` with δ₊ += δ, δ₋ −= δ and Ω± scaled by (1 + ε).
pub fn apply_noise(program: &PulseProgram, noise: &NoiseSpec) -> PulseProgram {
    let mut out = program.clone();
    if noise.is_zero() {
        return out;
    }
    let scale = 1.0 + noise.epsilon;
    for s in &mut out.samples {
        if noise.delta != 0.0 {
            s.delta_plus += noise.delta;
            s.delta_minus -= noise.delta;
        }
        if noise.epsilon != 0.0 {
            s.omega_plus *= scale;
            s.omega_minus *= scale;
        }
    }
    out.noise = out.noise.then(noise);
    out
}

/// Final P₋₁ from |+1⟩.
pub fn transfer(program: &PulseProgram) -> Result<f64> {
    Ok(final_state(program, &QutritState::basis(Level::Plus))?.population(Level::Minus))
}

/// Outcome of choosing the STIRAP pulse order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StirapCalibration {
    /// Sign of Δτ to use.
    pub order_sign: f64,
    pub transfer_positive: f64,
    pub transfer_negative: f64,
}

/// Simulates both pulse orders at `duration` and keeps the one with the
/// higher |+1⟩ → |−1⟩ transfer.
pub fn calibrate_stirap_order(
    duration: f64,
    amplitude: f64,
    n_samples: usize,
) -> Result<StirapCalibration> {
    let run = |sign: f64| -> Result<f64> {
        let shape = StirapShape::standard(duration, sign);
        transfer(&synth_stirap(
            duration,
            amplitude,
            amplitude,
            shape.sigma,
            shape.delta_tau,
            n_samples,
        )?)
    };
    let pos = run(1.0)?;
    let neg = run(-1.0)?;
    Ok(StirapCalibration {
        order_sign: if neg > pos { -1.0 } else { 1.0 },
        transfer_positive: pos,
        transfer_negative: neg,
    })
}

/// Duration at which the STIRAP pulse order is calibrated, deep in the
/// adiabatic regime.
pub const STIRAP_CALIBRATION_DURATION: f64 = 5e-6;

/// Picks the pulse order once, at [`STIRAP_CALIBRATION_DURATION`]. The
/// sign is a property of the level labelling, so it is reused for every
/// duration rather than re-optimized per T.
pub fn calibrate_stirap_sign(amplitude: f64, n_samples: usize) -> Result<StirapCalibration> {
    calibrate_stirap_order(STIRAP_CALIBRATION_DURATION, amplitude, n_samples)
}

/// Calibrated π-time of the square-pulse Raman scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SrtCalibration {
    pub duration: f64,
    pub transfer: f64,
}

/// Locates the best transfer within the first Raman period for the
/// constant SRT drive.
/// The Hamiltonian is time independent, so P₋₁(T) is evaluated exactly
/// for every trial T.
pub fn calibrate_srt_duration(omega: f64, detuning_common: f64) -> Result<SrtCalibration> {
    positive("omega", omega)?;
    if !detuning_common.is_finite() {
        return Err(Error::NonFinite("SRT detuning"));
    }
    let h = hamiltonian_unchecked(&DriveSample {
        omega_plus: omega,
        omega_minus: omega,
        delta_plus: detuning_common,
        delta_minus: detuning_common,
    });
    let p_minus = |t: f64| step_unitary(&h, t)[(2, 0)].norm_sqr();

    // Raman estimate 2πΔ/Ω² sets the scan horizon; fall back to the
    // resonant spin-1 π time when Δ is small. Fast ripples ride on the
    // Raman envelope, so take the global maximum rather than the first.
    let raman = 2.0 * PI * detuning_common.abs() / (omega * omega);
    let horizon = 2.0 * raman.max(SQRT_2 * PI / omega);
    let n = 6000;
    let step = horizon / n as f64;
    let (k_best, p_best) =
        (1..=n)
            .map(|k| (k, p_minus(k as f64 * step)))
            .fold(
                (0, f64::NEG_INFINITY),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            );
    if p_best <= 0.5 {
        return Err(Error::invalid(
            "srt",
            "no transfer maximum above 0.5 inside the scan horizon",
        ));
    }
    let t = k_best as f64 * step;
    let (duration, transfer) = golden_max_1d(&p_minus, t - step, t + step);
    Ok(SrtCalibration { duration, transfer })
}

fn golden_max_1d(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let tol = 1e-9 * hi;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
