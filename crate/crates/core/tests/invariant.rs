// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

use scqc_core::curve::{geometry, CurveParams, DEFAULT_GRID};
use scqc_core::invariant::{
    accumulate_m, curve_roundtrip, extract_angles, first_order_coefficient, infidelity_scaling,
};
use scqc_core::pulse::{
    apply_noise, synth_pi, synth_sta, transfer, NoiseSpec, PiTransition, StaDesign,
};
use scqc_core::units::{khz, reference_rabi};

fn design() -> StaDesign {
    StaDesign::new(&CurveParams::reference(), reference_rabi()).unwrap()
}

#[test]
fn closed_curve_and_identity() {
    let p = design().program(4000).unwrap();
    let ef = accumulate_m(&p).unwrap();
    let t = p.duration();
    assert!(ef.closure() <= 1e-3);
    assert!(ef.c_first_order <= 1e-6 * t * t);
    let c = first_order_coefficient(&p).unwrap();
    assert!((c - ef.c_first_order).abs() <= 1e-8 * t * t);
    assert_eq!(ef.m_final, ef.m_final.adjoint());
}

#[test]
fn closures_agree() {
    let d = design();
    let ef = accumulate_m(&d.program(4000).unwrap()).unwrap();
    let reconstructed = ef.closure();
    let designed = d.geometry.closure_residual / d.geometry.l_total;
    // both sit at their numerical floors for an analytically closed curve
    let agree = (reconstructed <= 1e-6 && designed <= 1e-6)
        || (reconstructed / designed <= 5.0 && designed / reconstructed <= 5.0);
    assert!(agree, "{reconstructed:e} vs {designed:e}");
}

#[test]
fn curve_round_trip_and_convergence() {
    let d = design();
    let dev = |n| curve_roundtrip(&d.program(n).unwrap(), &d.geometry).unwrap();
    let (coarse, fine) = (dev(500), dev(2000));
    assert!(fine <= 1e-2 * d.geometry.l_total);
    assert!(fine < coarse, "{fine:e} !< {coarse:e}");
}

#[test]
fn round_trip_rejects_mismatched_design() {
    let p = design().program(500).unwrap();
    let other = geometry(
        &CurveParams::new(0.2 * std::f64::consts::PI, 0.05).unwrap(),
        DEFAULT_GRID,
    )
    .unwrap();
    assert!(curve_roundtrip(&p, &other).is_err());
}

#[test]
fn angles_of_sta_pulse() {
    let p = design().program(4000).unwrap();
    assert!(transfer(&p).unwrap() >= 0.9);
    let a = extract_angles(&p).unwrap();
    assert!(a.theta_start_residual <= 1e-2);
    assert!(a.theta_end_residual <= 1e-2);
    assert!(a.clamp_excess < 1e-6);
    assert_eq!(a.omega0, 1.0);
    // planar curve: the x component of the tangent vanishes, so cos α₁ = 0
    let n = a.theta.len();
    for k in n / 50..n - n / 50 {
        let s = a.theta[k].sin();
        if s > 1e-3 {
            assert!(a.alpha1[k].cos().abs() * s <= 1e-6, "k = {k}");
        }
    }
}

#[test]
fn exponent_separation() {
    let grid: Vec<f64> = (0..12).map(|k| khz(30f64.powf(k as f64 / 11.0))).collect();
    let sta = infidelity_scaling(
        &synth_sta(&CurveParams::reference(), reference_rabi(), 4000).unwrap(),
        &grid,
    )
    .unwrap();
    let pi = infidelity_scaling(
        &synth_pi(reference_rabi(), PiTransition::Both, 400).unwrap(),
        &grid,
    )
    .unwrap();
    assert!(sta.slope >= 3.0, "{}", sta.slope);
    assert!((pi.slope - 2.0).abs() <= 0.2, "{}", pi.slope);
}

#[test]
fn pi_pulse_quadratic_response() {
    let p = synth_pi(reference_rabi(), PiTransition::Both, 400).unwrap();
    let c = accumulate_m(&p).unwrap().c_first_order;
    for f in [1.0, 3.0, 10.0] {
        let d = khz(f);
        let infidelity = 1.0 - transfer(&apply_noise(&p, &NoiseSpec::detuning(d))).unwrap();
        let predicted = c * d * d;
        assert!(
            (infidelity / predicted - 1.0).abs() <= 0.1,
            "{f} kHz: {infidelity:e} vs {predicted:e}"
        );
    }
}
