// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;

use scqc_core::curve::CurveParams;
use scqc_core::propagate::{propagate, total_propagator, unitarity_defect};
use scqc_core::pulse::{
    apply_noise, synth_pi, synth_sta, transfer, NoiseSpec, Origin, PiTransition, PulseProgram,
    SchemeTag,
};
use scqc_core::spin::{DriveSample, Level, QutritState};
use scqc_core::units::{khz, reference_rabi};

fn drive() -> impl Strategy<Value = DriveSample> {
    let w = -3.0e7..3.0e7;
    (w.clone(), w.clone(), w.clone(), w).prop_map(|(a, b, c, d)| DriveSample {
        omega_plus: a,
        omega_minus: b,
        delta_plus: c,
        delta_minus: d,
    })
}

fn program(samples: Vec<DriveSample>, dt: f64) -> PulseProgram {
    PulseProgram::new(dt, samples, SchemeTag::PiPulse, Origin::Imported).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evolution_is_unitary(samples in prop::collection::vec(drive(), 2..60), dt in 1e-10..2e-8) {
        let p = program(samples, dt);
        prop_assert!(unitarity_defect(&total_propagator(&p)) <= 1e-9);
        let r = propagate(&p, &QutritState::basis(Level::Plus)).unwrap();
        for pops in &r.populations {
            prop_assert!((pops.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn symmetric_drive_from_zero_is_symmetric(
        envelope in prop::collection::vec(-3.0e7..3.0e7f64, 2..40),
        dt in 1e-9..1e-8,
    ) {
        // exchanging |+1⟩ and |−1⟩ leaves H and |0⟩ invariant
        let p = program(envelope.into_iter().map(DriveSample::symmetric).collect(), dt);
        let pops = propagate(&p, &QutritState::basis(Level::Zero)).unwrap().final_state.populations();
        prop_assert!((pops[0] - pops[2]).abs() <= 1e-12);
    }

    #[test]
    fn pulse_csv_round_trip(samples in prop::collection::vec(drive(), 2..30), dt in 1e-10..1e-7) {
        let p = program(samples, dt);
        let back = PulseProgram::from_csv(&p.to_csv(), SchemeTag::PiPulse).unwrap();
        prop_assert_eq!(back.len(), p.len());
        prop_assert!((back.dt() - p.dt()).abs() <= 1e-12 * p.dt());
        for (a, b) in back.samples().iter().zip(p.samples()) {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn sta_converges_at_second_order() {
    let params = CurveParams::reference();
    let exact = transfer(&synth_sta(&params, reference_rabi(), 16000).unwrap()).unwrap();
    let err =
        |n| (transfer(&synth_sta(&params, reference_rabi(), n).unwrap()).unwrap() - exact).abs();
    let noisy = |n| {
        let p = apply_noise(
            &synth_sta(&params, reference_rabi(), n).unwrap(),
            &NoiseSpec::detuning(khz(500.0)),
        );
        transfer(&p).unwrap()
    };
    // the noiseless error is at round-off, so test the order on a detuned run
    let ref_noisy = noisy(16000);
    let (e1, e2) = (
        (noisy(250) - ref_noisy).abs(),
        (noisy(500) - ref_noisy).abs(),
    );
    assert!(e1 / e2 > 3.0 && e1 / e2 < 5.0, "ratio {}", e1 / e2);
    assert!(err(1000) < 1e-8);
}

#[test]
fn resampling_converges() {
    let p = synth_sta(&CurveParams::reference(), reference_rabi(), 1000).unwrap();
    let p = apply_noise(&p, &NoiseSpec::detuning(khz(200.0)));
    let coarse = transfer(&p).unwrap();
    let fine = transfer(&p.resample(8000).unwrap()).unwrap();
    assert!((coarse - fine).abs() < 1e-6, "{coarse} vs {fine}");
    assert_eq!(p.resample(8000).unwrap().noise(), p.noise());
}

#[test]
fn pi_pulse_oracle() {
    for n in [2, 10, 300] {
        let p = synth_pi(reference_rabi(), PiTransition::Both, n).unwrap();
        assert!(transfer(&p).unwrap() >= 0.9999);
    }
}
