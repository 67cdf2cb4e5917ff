// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Unit conversions. Everything inside the crate is SI with angular
//! frequencies in rad/s; these helpers are only meant for the edges.

use std::f64::consts::TAU;

/// Ordinary frequency in MHz to angular frequency in rad/s.
pub fn mhz(f: f64) -> f64 {
    TAU * f * 1e6
}

/// Ordinary frequency in kHz to angular frequency in rad/s.
pub fn khz(f: f64) -> f64 {
    TAU * f * 1e3
}

pub fn us(t: f64) -> f64 {
    t * 1e-6
}

pub fn to_us(t: f64) -> f64 {
    t * 1e6
}

/// Angular frequency in rad/s back to ordinary kHz.
pub fn to_khz(w: f64) -> f64 {
    w / (TAU * 1e3)
}

/// Rabi frequency used throughout the reference scenarios, 2π × 1.9 MHz.
pub fn reference_rabi() -> f64 {
    mhz(1.9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_invert() {
        assert!((to_khz(khz(300.0)) - 300.0).abs() < 1e-12);
        assert!((to_us(us(0.8)) - 0.8).abs() < 1e-15);
        assert!((mhz(1.0) - 2.0 * std::f64::consts::PI * 1e6).abs() < 1e-6);
    }
}
