// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use scqc_core::curve::{CurveParams, GateTolerances};
use scqc_core::optimize::{objective, optimize, SearchBox, LANDSCAPE_GRID};
use scqc_core::pulse::StaDesign;
use scqc_core::units::reference_rabi;

fn small_box() -> SearchBox {
    SearchBox {
        a_over_pi: [0.1, 0.3],
        b: [0.02, 0.1],
    }
}

fn run(refine: bool) -> scqc_core::optimize::OptimumReport {
    optimize(
        &small_box(),
        [12, 10],
        refine,
        reference_rabi(),
        LANDSCAPE_GRID,
        &GateTolerances::default(),
    )
    .unwrap()
}

#[test]
fn objective_matches_synthesized_duration() {
    let p = CurveParams::reference();
    let t = objective(&p, reference_rabi());
    let d = StaDesign::new(&p, reference_rabi()).unwrap().duration();
    assert!((t - d).abs() <= 1e-9 * d);
}

#[test]
fn landscape_is_deterministic() {
    let (a, b) = (run(true), run(true));
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn refinement_never_worsens() {
    let coarse = run(false);
    let fine = run(true);
    assert_eq!(coarse.best_t, coarse.coarse_t);
    assert!(fine.best_t.unwrap() <= coarse.best_t.unwrap());
    assert!(fine.evaluations > coarse.evaluations);
    let action = fine.best_t.unwrap() * reference_rabi();
    assert!((PI..=20.0).contains(&action), "{action}");
}

#[test]
fn landscape_csv_layout() {
    let r = run(false);
    let csv = r.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("a_over_pi,b,T_us,valid"));
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 1 + 120);
    assert!(csv
        .lines()
        .last()
        .unwrap()
        .starts_with("#optimum,a_over_pi="));
    // row-major in a then b
    assert!(csv
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("0.100000,0.020000,"));
    assert!(csv
        .lines()
        .nth(2)
        .unwrap()
        .starts_with("0.100000,0.028889,"));
}

#[test]
fn empty_valid_region_is_reported() {
    let impossible = GateTolerances {
        closure_rel: -1.0,
        tangent: -1.0,
    };
    let r = optimize(
        &small_box(),
        [3, 3],
        true,
        reference_rabi(),
        LANDSCAPE_GRID,
        &impossible,
    )
    .unwrap();
    assert!(r.best_params.is_none() && r.best_t.is_none());
    assert!(r.landscape.iter().all(|c| !c.valid));
    assert!(r.to_csv().contains("#optimum,none"));
}

#[test]
fn ties_prefer_smaller_a_then_b() {
    // a degenerate box makes every cell an exact tie; the first must win
    let b = SearchBox {
        a_over_pi: [0.15, 0.15],
        b: [0.06, 0.06],
    };
    let r = optimize(
        &b,
        [3, 3],
        false,
        reference_rabi(),
        LANDSCAPE_GRID,
        &GateTolerances::default(),
    )
    .unwrap();
    let best = r.best_params.unwrap();
    assert_eq!(
        (best.a_over_pi(), best.b),
        (r.landscape[0].a_over_pi, r.landscape[0].b)
    );
}
