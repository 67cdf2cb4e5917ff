// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! The acceptance suite: eight end-to-end criteria, each with a runtime
//! budget. A criterion passes only if its check holds within the budget.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::curve::{curve_point, geometry, CurveParams, GateTolerances};
use crate::error::Result;
use crate::harness::scenario::scaling_grid;
use crate::harness::{sweep, SweepAxis};
use crate::invariant::{accumulate_m, first_order_coefficient, infidelity_scaling};
use crate::optimize::{optimize, SearchBox, LANDSCAPE_GRID};
use crate::propagate::{propagate, total_propagator, unitarity_defect};
use crate::pulse::{
    calibrate_srt_duration, calibrate_stirap_sign, synth_pi, synth_srt, synth_sta, synth_stirap,
    transfer, NoiseSpec, PiTransition, PulseProgram, StirapShape,
};
use crate::spin::{commutator, frobenius, spin_matrices, Level, QutritState};
use crate::units::{khz, mhz, reference_rabi, to_us, us};

/// Samples used for the STA pulse throughout the suite.
pub const STA_SAMPLES: usize = 4000;
const STIRAP_SAMPLES: usize = 2000;
const SRT_SAMPLES: usize = 2000;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} {:<28} {:>7.2}s/{:<4} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            format!("{}s", self.budget.as_secs()),
            self.detail
        )
    }
}

/// Runs `check`, which returns (condition, detail), and folds in the time
/// budget. Errors count as failures.
fn timed(
    id: u8,
    title: &'static str,
    budget_s: u64,
    check: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionOutcome {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget_s);
    let (ok, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > budget {
        detail.push_str("; over time budget");
    }
    CriterionOutcome {
        id,
        title,
        passed: ok && elapsed <= budget,
        detail,
        elapsed,
        budget,
    }
}

fn sta_reference() -> Result<PulseProgram> {
    synth_sta(&CurveParams::reference(), reference_rabi(), STA_SAMPLES)
}

fn stirap(duration: f64, order_sign: f64) -> Result<f64> {
    let omega = reference_rabi();
    let shape = StirapShape::standard(duration, order_sign);
    transfer(&synth_stirap(
        duration,
        omega,
        omega,
        shape.sigma,
        shape.delta_tau,
        STIRAP_SAMPLES,
    )?)
}

fn srt_reference() -> Result<PulseProgram> {
    let cal = calibrate_srt_duration(reference_rabi(), mhz(2.5))?;
    synth_srt(cal.duration, reference_rabi(), mhz(2.5), SRT_SAMPLES)
}

pub fn criterion_1() -> CriterionOutcome {
    timed(1, "STA transfer fidelity", 1, || {
        let p = sta_reference()?;
        let pm = transfer(&p)?;
        let t = to_us(p.duration());
        Ok((
            pm >= 0.99 && (0.68..=0.92).contains(&t),
            format!("P-1 = {pm:.6} (need >= 0.99), T = {t:.4} us (need [0.68, 0.92])"),
        ))
    })
}

pub fn criterion_2() -> CriterionOutcome {
    timed(2, "optimization landscape", 20, || {
        let search = SearchBox::default();
        let grid = [60, 60];
        let r = optimize(
            &search,
            grid,
            true,
            reference_rabi(),
            LANDSCAPE_GRID,
            &GateTolerances::default(),
        )?;
        let (Some(p), Some(t)) = (r.best_params, r.best_t) else {
            return Ok((false, "no valid cell".into()));
        };
        let da = (search.a_over_pi[1] - search.a_over_pi[0]) / (grid[0] - 1) as f64;
        let db = (search.b[1] - search.b[0]) / (grid[1] - 1) as f64;
        let near = (p.a_over_pi() - 0.15).abs() <= da && (p.b - 0.06).abs() <= db;
        let action = t * reference_rabi();
        let action_ok = (action - 9.55).abs() <= 0.15 * 9.55;
        Ok((
            near && action_ok,
            format!(
                "optimum (a/pi, b) = ({:.4}, {:.4}), cell ({da:.4}, {db:.4}) from (0.15, 0.06): {}; T = {:.4} us, action = {action:.3} rad (need 9.55 +- 15%)",
                p.a_over_pi(),
                p.b,
                if near { "inside" } else { "outside" },
                to_us(t)
            ),
        ))
    })
}

pub fn criterion_3() -> CriterionOutcome {
    timed(3, "STIRAP speed comparison", 2, || {
        let sign = calibrate_stirap_sign(reference_rabi(), STIRAP_SAMPLES)?.order_sign;
        let p08 = stirap(us(0.8), sign)?;
        let p5 = stirap(us(5.0), sign)?;
        let p6 = stirap(us(6.0), sign)?;
        // smallest T on a 0.1 us grid where calibrated STIRAP reaches 0.9
        let mut t_min = None;
        for k in 1..=60 {
            let t = us(0.1 * k as f64);
            if stirap(t, sign)? >= 0.9 {
                t_min = Some(t);
                break;
            }
        }
        let t_sta = sta_reference()?.duration();
        let ratio = t_min.map(|t| t / t_sta);
        let ok = p08 < 0.5 && p5 >= 0.9 && p6 >= 0.9 && ratio.is_some_and(|r| r >= 6.0);
        Ok((
            ok,
            format!(
                "order sign {sign:+}; P-1(0.8us) = {p08:.3}, P-1(5us) = {p5:.3}, P-1(6us) = {p6:.3}; first T >= 0.9: {}, STA T = {:.3} us, ratio = {} (need >= 6)",
                t_min.map_or("none".into(), |t| format!("{:.1} us", to_us(t))),
                to_us(t_sta),
                ratio.map_or("n/a".into(), |r| format!("{r:.2}"))
            ),
        ))
    })
}

pub fn criterion_4() -> CriterionOutcome {
    timed(4, "detuning robustness", 5, || {
        let sta = sta_reference()?;
        let srt = srt_reference()?;
        let grid: Vec<f64> = (-30..=30).map(|k| 10.0 * k as f64).collect();
        let r = sweep(&sta, SweepAxis::DeltaKhz, &grid, |v| {
            NoiseSpec::detuning(khz(v))
        })?;
        let worst = r.p_minus().map(|(_, p)| p).fold(f64::INFINITY, f64::min);
        let at = |p: &PulseProgram| -> Result<f64> {
            transfer(&crate::pulse::apply_noise(
                p,
                &NoiseSpec::detuning(khz(300.0)),
            ))
        };
        let (a, b) = (at(&sta)?, at(&srt)?);
        Ok((
            worst >= 0.8 && a > b,
            format!("min STA P-1 over |delta| <= 300 kHz = {worst:.4}; at 300 kHz STA {a:.4} vs SRT {b:.4}"),
        ))
    })
}

pub fn criterion_5() -> CriterionOutcome {
    timed(5, "amplitude robustness", 5, || {
        let sta = sta_reference()?;
        let srt = srt_reference()?;
        let grid: Vec<f64> = (-10..=10).map(|k| 0.02 * k as f64).collect();
        let a = sweep(&sta, SweepAxis::Epsilon, &grid, NoiseSpec::amplitude)?;
        let b = sweep(&srt, SweepAxis::Epsilon, &grid, NoiseSpec::amplitude)?;
        let (worst_eps, margin) = a
            .p_minus()
            .zip(b.p_minus())
            .map(|((e, pa), (_, pb))| (e, pa - pb))
            .fold(
                (0.0, f64::INFINITY),
                |acc, x| if x.1 < acc.1 { x } else { acc },
            );
        Ok((
            margin >= -0.02,
            format!(
                "min P-1(STA) - P-1(SRT) = {margin:.4} at eps = {worst_eps:+.2} (need >= -0.02)"
            ),
        ))
    })
}

pub fn criterion_6() -> CriterionOutcome {
    timed(6, "closed-curve invariant", 1, || {
        let p = sta_reference()?;
        let ef = accumulate_m(&p)?;
        let t = p.duration();
        let c_states = first_order_coefficient(&p)?;
        let closure = ef.closure();
        let c_rel = ef.c_first_order / (t * t);
        let identity = (ef.c_first_order - c_states).abs() / (t * t);
        Ok((
            closure <= 1e-3 && c_rel <= 1e-6 && identity <= 1e-8,
            format!(
                "|m(T)|/T = {closure:.2e}, C/T^2 = {c_rel:.2e}, identity gap/T^2 = {identity:.1e}"
            ),
        ))
    })
}

pub fn criterion_7() -> CriterionOutcome {
    timed(7, "error-scaling separation", 3, || {
        let grid = scaling_grid();
        let sta = infidelity_scaling(&sta_reference()?, &grid)?;
        let pi = infidelity_scaling(&synth_pi(reference_rabi(), PiTransition::Both, 400)?, &grid)?;
        Ok((
            sta.slope >= 3.0 && (pi.slope - 2.0).abs() <= 0.2,
            format!(
                "STA exponent = {:.3} ({} pts, need >= 3); pi-pulse exponent = {:.3} ({} pts, need 2 +- 0.2)",
                sta.slope, sta.used, pi.slope, pi.used
            ),
        ))
    })
}

pub fn criterion_8() -> CriterionOutcome {
    timed(8, "numerical-core properties", 2, || {
        let sta = sta_reference()?;
        let u_defect = unitarity_defect(&total_propagator(&sta));
        let sim = propagate(&sta, &QutritState::basis(Level::Plus))?;
        let drift = sim
            .populations
            .iter()
            .map(|p| (p.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max);

        let j = spin_matrices();
        let i = num_complex::Complex64::i();
        let comm = [
            (&j.jx, &j.jy, &j.jz),
            (&j.jy, &j.jz, &j.jx),
            (&j.jz, &j.jx, &j.jy),
        ]
        .iter()
        .map(|(a, b, c)| frobenius(&(commutator(a, b) - *c * i)))
        .fold(0.0, f64::max);

        let params = CurveParams::reference();
        let h = 1e-5;
        let mut fd = 0.0_f64;
        for k in 1..40 {
            let z = 0.5 * k as f64 / 40.0;
            let (lo, mid, hi) = (
                curve_point(z - h, &params)?,
                curve_point(z, &params)?,
                curve_point(z + h, &params)?,
            );
            let pairs = [
                (mid.dy, (hi.y - lo.y) / (2.0 * h)),
                (mid.dz, (hi.z - lo.z) / (2.0 * h)),
                (mid.ddy, (hi.dy - lo.dy) / (2.0 * h)),
                (mid.ddz, (hi.dz - lo.dz) / (2.0 * h)),
            ];
            let scale = pairs.iter().map(|p| p.0.abs()).fold(1.0, f64::max);
            for (exact, numeric) in pairs {
                fd = fd.max((exact - numeric).abs() / scale);
            }
        }
        // the geometry must also build on the reference parameters
        geometry(&params, 1024)?;

        let pi = transfer(&synth_pi(reference_rabi(), PiTransition::Both, 100)?)?;
        let ok = u_defect <= 1e-9 && drift <= 1e-9 && comm <= 1e-14 && fd <= 1e-6 && pi >= 0.9999;
        Ok((
            ok,
            format!(
                "unitarity {u_defect:.1e}, norm drift {drift:.1e}, commutators {comm:.1e}, derivative FD {fd:.1e}, pi-pulse P-1 = {pi:.8}"
            ),
        ))
    })
}

/// Runs all criteria in order.
pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ]
}

pub fn format_table(outcomes: &[CriterionOutcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        let _ = writeln!(out, "{}", o.line());
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(out, "{passed}/{} criteria passed", outcomes.len());
    out
}
