// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Spin-1 operator algebra and Hamiltonian assembly.
//!
//! All matrices use the basis order (|+1⟩, |0⟩, |−1⟩), so that
//! `Jz = diag(+1, 0, −1)` literally.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Mat3 = Matrix3<Complex64>;
pub type Vec3 = Vector3<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tolerance on Σ|cᵢ|² − 1 accepted when constructing a state.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Basis level of the qutrit, in matrix index order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    Plus,
    Zero,
    Minus,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Plus, Level::Zero, Level::Minus];

    pub fn index(self) -> usize {
        match self {
            Level::Plus => 0,
            Level::Zero => 1,
            Level::Minus => 2,
        }
    }
}

/// Normalized amplitude triple over (|+1⟩, |0⟩, |−1⟩).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QutritState(Vec3);

impl QutritState {
    pub fn new(amplitudes: [Complex64; 3]) -> Result<Self> {
        let v = Vec3::from(amplitudes);
        if v.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        let n2 = v.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self(v))
    }

    pub fn basis(level: Level) -> Self {
        let mut v = Vec3::zeros();
        v[level.index()] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    /// Wraps a vector produced by a unitary map; no normalization check.
    pub(crate) fn from_vector_unchecked(v: Vec3) -> Self {
        Self(v)
    }

    pub fn amplitudes(&self) -> [Complex64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }

    /// (P₊₁, P₀, P₋₁).
    pub fn populations(&self) -> [f64; 3] {
        [
            self.0[0].norm_sqr(),
            self.0[1].norm_sqr(),
            self.0[2].norm_sqr(),
        ]
    }

    pub fn population(&self, level: Level) -> f64 {
        self.0[level.index()].norm_sqr()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators {
    pub jx: Mat3,
    pub jy: Mat3,
    pub jz: Mat3,
}

impl SpinOperators {
    pub fn components(&self) -> [&Mat3; 3] {
        [&self.jx, &self.jy, &self.jz]
    }

    /// Coordinates of a Hermitian matrix in the (Jx, Jy, Jz) basis,
    /// `rν = Tr[Jν M] / 2`.
    pub fn coordinates(&self, m: &Mat3) -> [f64; 3] {
        let c = |j: &Mat3| 0.5 * (j * m).trace().re;
        [c(&self.jx), c(&self.jy), c(&self.jz)]
    }
}

/// Spin-1 angular momentum matrices in the (|+1⟩, |0⟩, |−1⟩) basis.
pub fn spin_matrices() -> SpinOperators {
    let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let is = Complex64::new(0.0, FRAC_1_SQRT_2);
    let one = Complex64::new(1.0, 0.0);
    #[rustfmt::skip]
    let jx = Mat3::new(
        ZERO, s,    ZERO,
        s,    ZERO, s,
        ZERO, s,    ZERO,
    );
    #[rustfmt::skip]
    let jy = Mat3::new(
        ZERO, -is,  ZERO,
        is,   ZERO, -is,
        ZERO, is,   ZERO,
    );
    #[rustfmt::skip]
    let jz = Mat3::new(
        one,  ZERO, ZERO,
        ZERO, ZERO, ZERO,
        ZERO, ZERO, -one,
    );
    SpinOperators { jx, jy, jz }
}

/// One time sample of the rotating-frame drive, all in rad/s.
///
/// Envelopes may be negative: a sign flip is a π phase jump of the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DriveSample {
    pub omega_plus: f64,
    pub omega_minus: f64,
    /// Diagonal energy of |+1⟩.
    pub delta_plus: f64,
    /// Diagonal energy of |−1⟩.
    pub delta_minus: f64,
}

impl DriveSample {
    /// Identical resonant drive on both transitions.
    pub fn symmetric(omega: f64) -> Self {
        Self {
            omega_plus: omega,
            omega_minus: omega,
            ..Self::default()
        }
    }

    pub fn is_finite(&self) -> bool {
        self.omega_plus.is_finite()
            && self.omega_minus.is_finite()
            && self.delta_plus.is_finite()
            && self.delta_minus.is_finite()
    }
}

/// H = diag(δ₊, 0, δ₋) + (Ω₊/2)(|+1⟩⟨0| + h.c.) + (Ω₋/2)(|−1⟩⟨0| + h.c.).
///
/// With Ω₊ = Ω₋ = Ω and (δ₊, δ₋) = (δ, −δ) this is ΩJx/√2 + δJz.
pub fn assemble_hamiltonian(sample: &DriveSample) -> Result<Mat3> {
    if !sample.is_finite() {
        return Err(Error::NonFinite("drive sample"));
    }
    Ok(hamiltonian_unchecked(sample))
}

pub(crate) fn hamiltonian_unchecked(sample: &DriveSample) -> Mat3 {
    let c = |x: f64| Complex64::new(x, 0.0);
    let gp = c(0.5 * sample.omega_plus);
    let gm = c(0.5 * sample.omega_minus);
    #[rustfmt::skip]
    let h = Mat3::new(
        c(sample.delta_plus), gp,   ZERO,
        gp,                   ZERO, gm,
        ZERO,                 gm,   c(sample.delta_minus),
    );
    h
}

pub fn frobenius(m: &Mat3) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

pub fn commutator(a: &Mat3, b: &Mat3) -> Mat3 {
    a * b - b * a
}
