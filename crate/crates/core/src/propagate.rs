// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Time-ordered propagation of piecewise-constant drives.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pulse::PulseProgram;
use crate::spin::{frobenius, hamiltonian_unchecked, Level, Mat3, QutritState, NORM_TOLERANCE};

/// Largest phase ‖H‖_F·dt a single step should accumulate.
pub const STEP_PHASE_BUDGET: f64 = 0.02;

/// Minimum number of samples a propagated program must have.
pub const MIN_SAMPLES: usize = 2;

#[derive(Debug, Clone)]
pub struct SimulationResult {
    /// Step boundaries, starting at 0 and ending at T (len = steps + 1).
    pub times: Vec<f64>,
    /// (P₊₁, P₀, P₋₁) at each entry of `times`.
    pub populations: Vec<[f64; 3]>,
    pub final_state: QutritState,
    pub final_propagator: Mat3,
    pub step_count: usize,
}

impl SimulationResult {
    pub fn final_population(&self, level: Level) -> f64 {
        self.final_state.population(level)
    }

    /// ‖U†U − I‖_F of the cumulative propagator.
    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.final_propagator)
    }
}

pub fn unitarity_defect(u: &Mat3) -> f64 {
    frobenius(&(u.adjoint() * u - Mat3::identity()))
}

/// exp(−i·H·dt) for Hermitian `h`, through its eigendecomposition.
pub fn step_unitary(h: &Mat3, dt: f64) -> Mat3 {
    let eig = h.symmetric_eigen();
    let v = eig.eigenvectors;
    let mut scaled = v;
    for (k, lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda * dt);
        for r in 0..3 {
            scaled[(r, k)] *= phase;
        }
    }
    scaled * v.adjoint()
}

/// Per-step unitaries of a program, in time order.
pub(crate) fn step_unitaries(program: &PulseProgram) -> impl Iterator<Item = Mat3> + '_ {
    let dt = program.dt();
    program
        .samples()
        .iter()
        .map(move |s| step_unitary(&hamiltonian_unchecked(s), dt))
}

/// Propagates `initial` through the program. Each sample holds the
/// Hamiltonian at the midpoint of its step and is applied as one exact
/// exponential.
pub fn propagate(program: &PulseProgram, initial: &QutritState) -> Result<SimulationResult> {
    let n = program.len();
    if n < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: n,
        });
    }
    let n2 = initial.norm_squared();
    if (n2 - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(n2));
    }
    if !program.samples().iter().all(|s| s.is_finite()) {
        return Err(Error::NonFinite("pulse program"));
    }

    let dt = program.dt();
    let mut times = Vec::with_capacity(n + 1);
    let mut populations = Vec::with_capacity(n + 1);
    let mut psi = *initial.vector();
    let mut u_total = Mat3::identity();
    times.push(0.0);
    populations.push(initial.populations());

    for (k, u) in step_unitaries(program).enumerate() {
        psi = u * psi;
        u_total = u * u_total;
        times.push((k + 1) as f64 * dt);
        populations.push(QutritState::from_vector_unchecked(psi).populations());
    }

    Ok(SimulationResult {
        times,
        populations,
        final_state: QutritState::from_vector_unchecked(psi),
        final_propagator: u_total,
        step_count: n,
    })
}

/// Final-state-only propagation for sweeps.
pub fn final_state(program: &PulseProgram, initial: &QutritState) -> Result<QutritState> {
    if program.len() < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: program.len(),
        });
    }
    let psi = step_unitaries(program).fold(*initial.vector(), |psi, u| u * psi);
    Ok(QutritState::from_vector_unchecked(psi))
}

/// Cumulative propagator U(T, 0) only.
pub fn total_propagator(program: &PulseProgram) -> Mat3 {
    step_unitaries(program).fold(Mat3::identity(), |acc, u| u * acc)
}

/// Number of steps needed to keep ‖H‖_F·dt within [`STEP_PHASE_BUDGET`].
pub fn budget_samples(duration: f64, peak_norm: f64) -> usize {
    ((peak_norm * duration / STEP_PHASE_BUDGET).ceil() as usize).max(MIN_SAMPLES)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::{synth_pi, PiTransition};
    use crate::spin::{spin_matrices, DriveSample};

    #[test]
    fn step_unitary_matches_taylor_for_small_steps() {
        let h = hamiltonian_unchecked(&DriveSample {
            omega_plus: 1.0,
            omega_minus: -0.4,
            delta_plus: 0.2,
            delta_minus: 0.7,
        });
        let dt = 1e-4;
        let i = Complex64::i();
        let c = |x: f64| Complex64::new(x, 0.0);
        let taylor = Mat3::identity() - h * (i * dt) - h * h * c(0.5 * dt * dt)
            + h * h * h * (i * dt * dt * dt / 6.0);
        assert!(frobenius(&(step_unitary(&h, dt) - taylor)) < 1e-15);
    }

    #[test]
    fn spin_rotation_about_x() {
        // exp(−iπJx) maps |+1⟩ to |−1⟩ up to phase
        let j = spin_matrices();
        let u = step_unitary(&j.jx, std::f64::consts::PI);
        assert!((u[(2, 0)].norm() - 1.0).abs() < 1e-14);
        assert!(unitarity_defect(&u) < 1e-14);
    }

    #[test]
    fn rejects_short_program_and_bad_state() {
        let p = synth_pi(1.0, PiTransition::Both, 1).unwrap();
        assert!(matches!(
            propagate(&p, &QutritState::basis(Level::Plus)),
            Err(Error::TooFewSamples { .. })
        ));
        let p = synth_pi(1.0, PiTransition::Both, 10).unwrap();
        let bad = QutritState::from_vector_unchecked(crate::spin::Vec3::zeros());
        assert!(matches!(propagate(&p, &bad), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn budget() {
        assert_eq!(budget_samples(1.0, 2.0), 100);
        assert_eq!(budget_samples(0.0, 2.0), MIN_SAMPLES);
    }
}
