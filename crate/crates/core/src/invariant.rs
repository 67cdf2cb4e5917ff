// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Diagnostics that check a pulse against its invariant-based design.
//!
//! The central object is m(t) = ∫₀ᵗ U†(s) Jz U(s) ds, the noise operator in
//! the interaction frame. Its Jν coordinates trace a space curve; if the
//! curve closes, the first-order response to a detuning δ vanishes.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::curve::CurveGeometry;
use crate::error::{Error, Result};
use crate::propagate::{step_unitary, MIN_SAMPLES};
use crate::pulse::{apply_noise, transfer, NoiseSpec, Origin, PulseProgram};
use crate::spin::{frobenius, hamiltonian_unchecked, spin_matrices, Mat3, Vec3};

/// Infidelity window used by the exponent fit.
pub const FIT_WINDOW: (f64, f64) = (1e-10, 1e-2);

/// Allowed deviation of |ṙ| from 1 during angle extraction.
pub const UNIT_SPEED_TOLERANCE: f64 = 1e-3;

/// Fraction of T cut from each end of the β report window.
pub const BETA_MARGIN: f64 = 0.02;

/// m(T) together with the curve it traces.
#[derive(Debug, Clone)]
pub struct ErrorFunctional {
    /// Step boundaries 0, dt, …, T.
    pub times: Vec<f64>,
    pub m_final: Mat3,
    /// (x, y, z) = Tr[Jν m(t)]/2 at each step boundary.
    pub r_trajectory: Vec<[f64; 3]>,
    /// Unit tangent ṙ(t) = coordinates of U†JzU at each step boundary.
    pub tangents: Vec<[f64; 3]>,
    /// |⟨+1|m(T)|0⟩|² + |⟨+1|m(T)|−1⟩|², in s².
    pub c_first_order: f64,
}

impl ErrorFunctional {
    pub fn duration(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    /// ‖m(T)‖_F / T.
    pub fn closure(&self) -> f64 {
        frobenius(&self.m_final) / self.duration()
    }
}

fn check_len(program: &PulseProgram) -> Result<()> {
    if program.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: program.len(),
        });
    }
    Ok(())
}

/// Half-step and full-step unitaries of each sample.
fn half_steps(program: &PulseProgram) -> impl Iterator<Item = (Mat3, Mat3)> + '_ {
    let half = 0.5 * program.dt();
    program.samples().iter().map(move |s| {
        let h = step_unitary(&hamiltonian_unchecked(s), half);
        (h, h * h)
    })
}

/// Accumulates m(t) with the midpoint rule: each step contributes
/// U†(t_mid) Jz U(t_mid)·dt, where U(t_mid) is the propagator half-way
/// through the step.
pub fn accumulate_m(program: &PulseProgram) -> Result<ErrorFunctional> {
    check_len(program)?;
    let j = spin_matrices();
    let dt = program.dt();
    let dt_c = Complex64::new(dt, 0.0);
    let n = program.len();

    let mut times = Vec::with_capacity(n + 1);
    let mut r_trajectory = Vec::with_capacity(n + 1);
    let mut tangents = Vec::with_capacity(n + 1);
    let mut m = Mat3::zeros();
    let mut u = Mat3::identity();
    times.push(0.0);
    r_trajectory.push([0.0; 3]);
    tangents.push(j.coordinates(&j.jz));

    for (k, (half, full)) in half_steps(program).enumerate() {
        let mid = half * u;
        m += mid.adjoint() * j.jz * mid * dt_c;
        u = full * u;
        times.push((k + 1) as f64 * dt);
        r_trajectory.push(j.coordinates(&m));
        tangents.push(j.coordinates(&(u.adjoint() * j.jz * u)));
    }
    let c_first_order = m[(0, 1)].norm_sqr() + m[(0, 2)].norm_sqr();
    Ok(ErrorFunctional {
        times,
        m_final: m,
        r_trajectory,
        tangents,
        c_first_order,
    })
}

/// C = Σ_{n≠1} |∫⟨ψ₁|Jz|ψₙ⟩dt|² from propagated basis states ψₙ = U|n⟩.
///
/// Uses the same midpoint rule as [`accumulate_m`] but works on state
/// vectors, so the two routes agree only if both are implemented right.
pub fn first_order_coefficient(program: &PulseProgram) -> Result<f64> {
    check_len(program)?;
    let jz = spin_matrices().jz;
    let dt = program.dt();
    let mut psi: [Vec3; 3] = [0, 1, 2].map(|k| {
        let mut v = Vec3::zeros();
        v[k] = Complex64::new(1.0, 0.0);
        v
    });
    let mut integral = [Complex64::new(0.0, 0.0); 2];
    for (half, full) in half_steps(program) {
        let mid = psi.map(|v| half * v);
        let bra = mid[0].adjoint();
        for (acc, ket) in integral.iter_mut().zip(&mid[1..]) {
            *acc += (bra * jz * ket)[(0, 0)] * dt;
        }
        psi = psi.map(|v| full * v);
    }
    Ok(integral.iter().map(|c| c.norm_sqr()).sum())
}

/// Seconds per unit of design arc length for an STA program.
fn sta_time_scale(program: &PulseProgram, designed: &CurveGeometry) -> Result<f64> {
    let Origin::Sta { omega_max, .. } = program.origin() else {
        return Err(Error::invalid(
            "program",
            "curve round trip needs an STA program",
        ));
    };
    let lambda = SQRT_2 * designed.kappa_max / omega_max;
    let expect = lambda * designed.l_total;
    let got = program.duration();
    if ((got - expect) / expect).abs() > 1e-9 {
        return Err(Error::Misaligned(format!(
            "program lasts {got:e} s but the design implies {expect:e} s"
        )));
    }
    Ok(lambda)
}

/// Largest distance between the reconstructed curve r(t)/λ and the design
/// curve at the matching arc length, minimized over the in-plane reflection
/// y → −y that the planar geometry leaves undetermined.
pub fn curve_roundtrip(program: &PulseProgram, designed: &CurveGeometry) -> Result<f64> {
    let lambda = sta_time_scale(program, designed)?;
    let ef = accumulate_m(program)?;
    roundtrip_from(&ef, designed, lambda)
}

pub(crate) fn roundtrip_from(
    ef: &ErrorFunctional,
    designed: &CurveGeometry,
    lambda: f64,
) -> Result<f64> {
    let mut worst = [0.0_f64; 2];
    for (t, r) in ef.times.iter().zip(&ef.r_trajectory) {
        let s = (t / lambda).min(designed.l_total);
        let p = designed.sample_at(designed.zeta_at_arclength(s));
        let (x, y, z) = (r[0] / lambda, r[1] / lambda, r[2] / lambda);
        for (w, sign) in worst.iter_mut().zip([1.0, -1.0]) {
            let d = (x * x + (y - sign * p.y).powi(2) + (z - p.z).powi(2)).sqrt();
            *w = w.max(d);
        }
    }
    Ok(worst[0].min(worst[1]))
}

/// Least-squares fit of log(1 − P₋₁) against log δ.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// (δ, infidelity) for every grid point, in grid order.
    pub samples: Vec<(f64, f64)>,
    /// How many samples fell inside [`FIT_WINDOW`].
    pub used: usize,
}

/// Simulates the program at each detuning and fits the infidelity exponent.
/// Points outside [`FIT_WINDOW`] are dropped.
pub fn infidelity_scaling(program: &PulseProgram, delta_grid: &[f64]) -> Result<ScalingFit> {
    let samples = delta_grid
        .par_iter()
        .map(|&d| {
            Ok((
                d,
                1.0 - transfer(&apply_noise(program, &NoiseSpec::detuning(d)))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(d, q)| *d > 0.0 && (FIT_WINDOW.0..=FIT_WINDOW.1).contains(q))
        .map(|(d, q)| (d.ln(), q.ln()))
        .collect();
    let distinct = pts.iter().any(|p| p.0 != pts[0].0);
    if pts.len() < 2 || !distinct {
        return Err(Error::InsufficientData(format!(
            "{} usable point(s) with infidelity in [{:e}, {:e}]",
            pts.len(),
            FIT_WINDOW.0,
            FIT_WINDOW.1
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Ok(ScalingFit {
        slope,
        intercept: my - slope * mx,
        used: pts.len(),
        samples,
    })
}

/// Angles of the followed invariant mode, sampled at step boundaries.
#[derive(Debug, Clone)]
pub struct InvariantAngles {
    pub times: Vec<f64>,
    pub theta: Vec<f64>,
    /// Clamped to [−π/2, π/2]; NaN outside the report window.
    pub beta: Vec<f64>,
    pub alpha1: Vec<f64>,
    /// Eigenvalue scale of the invariant; cancels everywhere.
    pub omega0: f64,
    /// Largest |sin β| − 1 before clamping, inside the report window
    /// (≤ 0 when no clamping was needed).
    pub clamp_excess: f64,
    /// |θ(0)|.
    pub theta_start_residual: f64,
    /// |θ(T) − π|.
    pub theta_end_residual: f64,
}

/// Recovers θ, α₁ and β from the interaction-frame tangent ṙ(t).
///
/// ṙ = (−sinθ cosα₁, −sinθ sinα₁, cosθ); β follows from
/// θ̇ = −(Ω/√2) sinβ, the rotation rate of H = ΩJx/√2.
pub fn extract_angles(program: &PulseProgram) -> Result<InvariantAngles> {
    let ef = accumulate_m(program)?;
    angles_from(program, &ef)
}

pub(crate) fn angles_from(program: &PulseProgram, ef: &ErrorFunctional) -> Result<InvariantAngles> {
    for (t, v) in ef.times.iter().zip(&ef.tangents) {
        let speed = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if (speed - 1.0).abs() > UNIT_SPEED_TOLERANCE {
            return Err(Error::TangentReconstruction { time: *t, speed });
        }
    }
    let theta: Vec<f64> = ef
        .tangents
        .iter()
        .map(|v| v[2].clamp(-1.0, 1.0).acos())
        .collect();
    let alpha1 = ef.tangents.iter().map(|v| (-v[1]).atan2(-v[0])).collect();

    let n = theta.len();
    let dt = program.dt();
    let t_end = ef.duration();
    let samples = program.samples();
    let mut beta = vec![f64::NAN; n];
    let mut clamp_excess = f64::NEG_INFINITY;
    for k in 1..n - 1 {
        let t = ef.times[k];
        if t < BETA_MARGIN * t_end || t > (1.0 - BETA_MARGIN) * t_end {
            continue;
        }
        let omega = 0.5 * (samples[k - 1].omega_plus + samples[k].omega_plus);
        let rate = omega / SQRT_2;
        if rate == 0.0 {
            continue;
        }
        let dtheta = (theta[k + 1] - theta[k - 1]) / (2.0 * dt);
        let s = -dtheta / rate;
        clamp_excess = clamp_excess.max(s.abs() - 1.0);
        beta[k] = s.clamp(-1.0, 1.0).asin();
    }
    Ok(InvariantAngles {
        times: ef.times.clone(),
        theta_start_residual: theta[0].abs(),
        theta_end_residual: (theta[n - 1] - PI).abs(),
        theta,
        beta,
        alpha1,
        omega0: 1.0,
        clamp_excess,
    })
}

/// Per-program summary of the invariant diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosticSummary {
    pub c_first_order: f64,
    pub closure: f64,
    pub exponent: Option<f64>,
}

/// Per-time diagnostic rows `t_s,theta,beta_clamped,x,y,z` followed by a
/// `#summary` comment.
pub fn diagnostic_csv(
    ef: &ErrorFunctional,
    angles: &InvariantAngles,
    summary: &DiagnosticSummary,
) -> String {
    let mut out = String::from("t_s,theta,beta_clamped,x,y,z\n");
    for k in 0..ef.times.len() {
        let r = ef.r_trajectory[k];
        let _ = writeln!(
            out,
            "{:e},{:e},{},{:e},{:e},{:e}",
            ef.times[k],
            angles.theta[k],
            if angles.beta[k].is_nan() {
                String::new()
            } else {
                format!("{:e}", angles.beta[k])
            },
            r[0],
            r[1],
            r[2]
        );
    }
    let exponent = summary
        .exponent
        .map_or_else(|| "none".into(), |e| format!("{e:.4}"));
    let _ = writeln!(
        out,
        "#summary,C_s2={:e},closure={:e},exponent={exponent}",
        summary.c_first_order, summary.closure
    );
    out
}
