// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! The erf-modulated closed plane curve used to shape the transfer pulse,
//! with analytic derivatives, arc length and signed curvature.
//!
//! The curve is r(ζ) = (0, y(ζ), z(ζ)) for ζ ∈ [0, 0.5] with
//!
//! ```text
//! y = −3√2 sin(4πζ) / (4 + 4cos²(2πζ)) · f(ζ)
//! z =  2√2 sin(2πζ) / (1 +  cos²(2πζ))
//! f = (erf μ − erf η) / 2,  μ = 2[−a − 2π(ζ − ½ + b)]/a,  η = 2[a − 2π(ζ − b)]/a
//! ```
//!
//! It starts and ends at the origin with tangents +ẑ and −ẑ.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZETA_END: f64 = 0.5;

/// Default number of ζ grid points.
pub const DEFAULT_GRID: usize = 4096;

pub const MIN_GRID: usize = 256;

/// Speed below which the curve is considered singular.
pub const SINGULAR_SPEED: f64 = 1e-12;

/// Largest tangent rotation allowed between neighbouring grid points. A
/// speed zero that falls between grid points shows up as a flip of ≈ π.
pub const MAX_TURN_PER_STEP: f64 = 0.5;

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveParams {
    /// Modulation width (usually quoted as a multiple of π).
    pub a: f64,
    /// Modulation offset.
    pub b: f64,
}

impl CurveParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let p = Self { a, b };
        p.validate()?;
        Ok(p)
    }

    /// The operating point reported for the experiment, (0.15π, 0.06).
    pub fn reference() -> Self {
        Self {
            a: 0.15 * PI,
            b: 0.06,
        }
    }

    pub fn a_over_pi(&self) -> f64 {
        self.a / PI
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a.is_finite() && self.a > 0.0) {
            return Err(Error::invalid("a", format!("must be > 0, got {}", self.a)));
        }
        if !(self.b.is_finite() && (0.0..0.5).contains(&self.b)) {
            return Err(Error::invalid(
                "b",
                format!("must lie in [0, 0.5), got {}", self.b),
            ));
        }
        Ok(())
    }
}

/// f and its first two ζ-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Modulation {
    f: f64,
    df: f64,
    ddf: f64,
}

fn modulation(zeta: f64, p: &CurveParams) -> Modulation {
    let mu = 2.0 * (-p.a - 2.0 * PI * (zeta - 0.5 + p.b)) / p.a;
    let eta = 2.0 * (p.a - 2.0 * PI * (zeta - p.b)) / p.a;
    // Both erfs saturate together near the ends; use erfc there.
    let f = if mu >= 0.0 && eta >= 0.0 {
        0.5 * (libm::erfc(eta) - libm::erfc(mu))
    } else if mu <= 0.0 && eta <= 0.0 {
        0.5 * (libm::erfc(-mu) - libm::erfc(-eta))
    } else {
        0.5 * (libm::erf(mu) - libm::erf(eta))
    };
    let c = -4.0 * PI / p.a;
    let gm = (-mu * mu).exp();
    let ge = (-eta * eta).exp();
    // d/dμ of erf(μ)/2 is e^{−μ²}/√π
    let k = 0.5 * FRAC_2_SQRT_PI;
    Modulation {
        f,
        df: c * k * (gm - ge),
        ddf: c * c * k * (-2.0 * mu * gm + 2.0 * eta * ge),
    }
}

/// The modulation function f(ζ) ∈ [0, 1].
pub fn modulation_f(zeta: f64, params: &CurveParams) -> Result<f64> {
    params.validate()?;
    check_zeta(zeta)?;
    Ok(modulation(zeta, params).f)
}

fn check_zeta(zeta: f64) -> Result<()> {
    if !(0.0..=ZETA_END).contains(&zeta) {
        return Err(Error::ZetaOutOfRange(zeta));
    }
    Ok(())
}

/// Point on the curve with first and second ζ-derivatives. The x
/// coordinate is identically zero and not stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub zeta: f64,
    pub y: f64,
    pub z: f64,
    pub dy: f64,
    pub dz: f64,
    pub ddy: f64,
    pub ddz: f64,
}

impl CurveSample {
    pub fn speed(&self) -> f64 {
        self.dy.hypot(self.dz)
    }

    /// (y′z″ − z′y″)/(y′² + z′²)^{3/2}
    pub fn signed_curvature(&self) -> f64 {
        let s2 = self.dy * self.dy + self.dz * self.dz;
        (self.dy * self.ddz - self.dz * self.ddy) / (s2 * s2.sqrt())
    }

    /// Unit tangent (x, y, z).
    pub fn unit_tangent(&self) -> [f64; 3] {
        let s = self.speed();
        [0.0, self.dy / s, self.dz / s]
    }

    pub fn point(&self) -> [f64; 3] {
        [0.0, self.y, self.z]
    }
}

/// (P/D, (P/D)′, (P/D)″) from P, D and their derivatives.
fn quotient(p: [f64; 3], d: [f64; 3]) -> [f64; 3] {
    let [p0, p1, p2] = p;
    let [d0, d1, d2] = d;
    let q0 = p0 / d0;
    let q1 = (p1 * d0 - p0 * d1) / (d0 * d0);
    let q2 =
        (p2 * d0 * d0 - 2.0 * p1 * d1 * d0 - p0 * d2 * d0 + 2.0 * p0 * d1 * d1) / (d0 * d0 * d0);
    [q0, q1, q2]
}

fn sample(zeta: f64, p: &CurveParams) -> CurveSample {
    let w = 2.0 * PI * zeta;
    let (s1, c1) = w.sin_cos();
    let (s2, c2) = (2.0 * w).sin_cos();

    let den = [1.0 + c1 * c1, -2.0 * PI * s2, -8.0 * PI * PI * c2];
    let g = quotient(
        [
            -0.75 * SQRT_2 * s2,
            -3.0 * SQRT_2 * PI * c2,
            12.0 * SQRT_2 * PI * PI * s2,
        ],
        den,
    );
    let z = quotient(
        [
            2.0 * SQRT_2 * s1,
            4.0 * SQRT_2 * PI * c1,
            -8.0 * SQRT_2 * PI * PI * s1,
        ],
        den,
    );
    let m = modulation(zeta, p);

    CurveSample {
        zeta,
        y: g[0] * m.f,
        z: z[0],
        dy: g[1] * m.f + g[0] * m.df,
        dz: z[1],
        ddy: g[2] * m.f + 2.0 * g[1] * m.df + g[0] * m.ddf,
        ddz: z[2],
    }
}

/// Evaluates the curve and its analytic derivatives at ζ.
pub fn curve_point(zeta: f64, params: &CurveParams) -> Result<CurveSample> {
    params.validate()?;
    check_zeta(zeta)?;
    Ok(sample(zeta, params))
}

// 5-point Gauss-Legendre on [-1, 1]
const GL_X: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_W: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];

fn gauss5(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    let h = 0.5 * (hi - lo);
    let m = 0.5 * (hi + lo);
    h * GL_X
        .iter()
        .zip(GL_W.iter())
        .map(|(x, w)| w * f(m + h * x))
        .sum::<f64>()
}

/// Adaptive bisection on top of the 5-point rule.
fn adaptive_gauss(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, whole: f64, depth: u32) -> f64 {
    let mid = 0.5 * (lo + hi);
    let left = gauss5(f, lo, mid);
    let right = gauss5(f, mid, hi);
    let refined = left + right;
    if depth == 0 || (refined - whole).abs() <= 1e-14 * refined.abs().max(1e-300) {
        return refined;
    }
    adaptive_gauss(f, lo, mid, left, depth - 1) + adaptive_gauss(f, mid, hi, right, depth - 1)
}

fn integrate(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    adaptive_gauss(f, lo, hi, gauss5(f, lo, hi), 24)
}

/// Thresholds that decide whether a curve is usable for synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateTolerances {
    /// Closure residual relative to the total length.
    pub closure_rel: f64,
    pub tangent: f64,
}

impl Default for GateTolerances {
    fn default() -> Self {
        Self {
            closure_rel: 1e-3,
            tangent: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveGeometry {
    pub params: CurveParams,
    pub zeta_grid: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
    /// Cumulative arc length L(ζ).
    pub arclen: Vec<f64>,
    pub kappa_signed: Vec<f64>,
    pub l_total: f64,
    /// max |κ| after refinement between grid points.
    pub kappa_max: f64,
    pub zeta_at_kappa_max: f64,
    /// |r(0.5) − r(0)|
    pub closure_residual: f64,
    /// |ṙ(0) − ẑ| and |ṙ(0.5) + ẑ| for the unit tangent ṙ.
    pub tangent_residuals: [f64; 2],
}

impl CurveGeometry {
    pub fn passes_gates(&self, tol: &GateTolerances) -> bool {
        self.closure_residual <= tol.closure_rel * self.l_total
            && self.tangent_residuals.iter().all(|&r| r <= tol.tangent)
    }

    pub fn check_gates(&self, tol: &GateTolerances) -> Result<()> {
        if self.passes_gates(tol) {
            Ok(())
        } else {
            Err(Error::CurveGateFailed {
                closure: self.closure_residual,
                tangent_start: self.tangent_residuals[0],
                tangent_end: self.tangent_residuals[1],
            })
        }
    }

    pub fn sample_at(&self, zeta: f64) -> CurveSample {
        sample(zeta.clamp(0.0, ZETA_END), &self.params)
    }

    /// Inverts L(ζ) = `length`. Seeds with linear interpolation on the
    /// monotone table, then polishes with Newton steps on the exact speed.
    pub fn zeta_at_arclength(&self, length: f64) -> f64 {
        if length <= 0.0 {
            return 0.0;
        }
        if length >= self.l_total {
            return ZETA_END;
        }
        let i = self
            .arclen
            .partition_point(|&l| l <= length)
            .saturating_sub(1);
        let i = i.min(self.arclen.len() - 2);
        let (z0, z1) = (self.zeta_grid[i], self.zeta_grid[i + 1]);
        let (l0, l1) = (self.arclen[i], self.arclen[i + 1]);
        let speed = |z: f64| sample(z, &self.params).speed();

        let mut zeta = z0 + (z1 - z0) * (length - l0) / (l1 - l0);
        let (mut lo, mut hi) = (z0, z1);
        for _ in 0..12 {
            let residual = l0 + gauss5(&speed, z0, zeta) - length;
            let step = residual / speed(zeta);
            if step.abs() <= f64::EPSILON * zeta {
                break;
            }
            if residual > 0.0 {
                hi = zeta;
            } else {
                lo = zeta;
            }
            let next = zeta - step;
            zeta = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
        }
        zeta
    }

    /// ∫ κ_s dL over the whole curve (signed turning angle of the tangent).
    pub fn turning_angle(&self) -> f64 {
        let p = self.params;
        let integrand = |z: f64| {
            let s = sample(z, &p);
            s.signed_curvature() * s.speed()
        };
        self.zeta_grid
            .windows(2)
            .map(|w| integrate(&integrand, w[0], w[1]))
            .sum()
    }

    /// CSV with columns `zeta,y,z,arclen,kappa_signed`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("zeta,y,z,arclen,kappa_signed\n");
        for k in 0..self.zeta_grid.len() {
            let _ = writeln!(
                out,
                "{:e},{:e},{:e},{:e},{:e}",
                self.zeta_grid[k], self.y[k], self.z[k], self.arclen[k], self.kappa_signed[k]
            );
        }
        out
    }
}

/// Golden-section search for the maximum of `f` on [lo, hi].
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-13 {
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
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Tabulates arc length and signed curvature on `n_grid` uniform ζ points
/// and evaluates the closure diagnostics.
pub fn geometry(params: &CurveParams, n_grid: usize) -> Result<CurveGeometry> {
    params.validate()?;
    if n_grid < MIN_GRID {
        return Err(Error::invalid(
            "n_grid",
            format!("needs at least {MIN_GRID} points, got {n_grid}"),
        ));
    }
    let p = *params;
    let h = ZETA_END / (n_grid - 1) as f64;
    let zeta_grid: Vec<f64> = (0..n_grid)
        .map(|k| {
            if k + 1 == n_grid {
                ZETA_END
            } else {
                k as f64 * h
            }
        })
        .collect();
    let samples: Vec<CurveSample> = zeta_grid.iter().map(|&z| sample(z, &p)).collect();

    if let Some(s) = samples
        .iter()
        .find(|s| s.speed().is_nan() || s.speed() < SINGULAR_SPEED)
    {
        return Err(Error::SingularCurve { zeta: s.zeta });
    }
    for w in samples.windows(2) {
        let (u, v) = (w[0].unit_tangent(), w[1].unit_tangent());
        let turn = (u[1] * v[2] - u[2] * v[1]).atan2(u[1] * v[1] + u[2] * v[2]);
        if turn.abs() > MAX_TURN_PER_STEP {
            return Err(Error::SingularCurve { zeta: w[0].zeta });
        }
    }

    let speed = |z: f64| sample(z, &p).speed();
    let mut arclen = Vec::with_capacity(n_grid);
    arclen.push(0.0);
    for w in zeta_grid.windows(2) {
        let last = *arclen.last().unwrap();
        arclen.push(last + integrate(&speed, w[0], w[1]));
    }

    let kappa_signed: Vec<f64> = samples.iter().map(CurveSample::signed_curvature).collect();
    let abs_k: Vec<f64> = kappa_signed.iter().map(|k| k.abs()).collect();
    let grid_max = abs_k.iter().cloned().fold(0.0, f64::max);

    // Refine every local maximum that could beat the grid maximum.
    let mut best = (0.0, 0.0);
    for i in 0..n_grid {
        let left = if i > 0 {
            abs_k[i - 1]
        } else {
            f64::NEG_INFINITY
        };
        let right = if i + 1 < n_grid {
            abs_k[i + 1]
        } else {
            f64::NEG_INFINITY
        };
        if abs_k[i] < left || abs_k[i] < right || abs_k[i] < 0.5 * grid_max {
            continue;
        }
        let lo = zeta_grid[i.saturating_sub(1)];
        let hi = zeta_grid[(i + 1).min(n_grid - 1)];
        let (z, k) = golden_max(|z| sample(z, &p).signed_curvature().abs(), lo, hi);
        let (z, k) = if abs_k[i] >= k {
            (zeta_grid[i], abs_k[i])
        } else {
            (z, k)
        };
        if k > best.1 {
            best = (z, k);
        }
    }

    let first = samples[0];
    let last = samples[n_grid - 1];
    let t0 = first.unit_tangent();
    let t1 = last.unit_tangent();
    let closure_residual = (last.y - first.y).hypot(last.z - first.z);
    let tangent_residuals = [t0[1].hypot(t0[2] - 1.0), t1[1].hypot(t1[2] + 1.0)];

    Ok(CurveGeometry {
        params: p,
        y: samples.iter().map(|s| s.y).collect(),
        z: samples.iter().map(|s| s.z).collect(),
        zeta_grid,
        l_total: *arclen.last().unwrap(),
        arclen,
        kappa_signed,
        kappa_max: best.1,
        zeta_at_kappa_max: best.0,
        closure_residual,
        tangent_residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> CurveParams {
        CurveParams::reference()
    }

    /// Independent erf oracle: Maclaurin series, exact in f64 for |x| ≤ 4.
    fn erf_series(x: f64) -> f64 {
        let mut term = x;
        let mut sum = x;
        let mut n = 0.0;
        while term.abs() > 1e-300 && n < 400.0 {
            n += 1.0;
            term *= -x * x / n;
            let add = term / (2.0 * n + 1.0);
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        sum * FRAC_2_SQRT_PI
    }

    #[test]
    fn modulation_matches_series_oracle() {
        let p = reference();
        // μ ≈ 3.07, η ≈ −3.07 at ζ = 0.25
        let mu: f64 = 2.0 * (-p.a - 2.0 * PI * (0.25 - 0.5 + p.b)) / p.a;
        let eta: f64 = 2.0 * (p.a - 2.0 * PI * (0.25 - p.b)) / p.a;
        assert!((mu - 3.0667).abs() < 1e-3 && (eta + 3.0667).abs() < 1e-3);
        let oracle = 0.5 * (erf_series(mu) - erf_series(eta));
        let f = modulation_f(0.25, &p).unwrap();
        assert!((f - oracle).abs() < 1e-12);
        assert!((f - 1.0).abs() < 1e-3);

        let f0 = modulation_f(0.0, &p).unwrap();
        assert!(f0.abs() < 1e-3);
        assert!(f0 >= 0.0);
    }

    #[test]
    fn modulation_is_symmetric() {
        let p = reference();
        for k in 0..=200 {
            let z = k as f64 * 0.5 / 200.0;
            let a = modulation_f(z, &p).unwrap();
            let b = modulation_f(0.5 - z, &p).unwrap();
            assert!((a - b).abs() < 1e-12, "ζ = {z}: {a} vs {b}");
        }
    }

    #[test]
    fn modulation_rejects_bad_input() {
        let p = CurveParams { a: 0.0, b: 0.06 };
        assert!(modulation_f(0.1, &p).is_err());
        assert!(CurveParams::new(-1.0, 0.0).is_err());
        assert!(CurveParams::new(1.0, 0.5).is_err());
        assert!(matches!(
            modulation_f(0.6, &reference()),
            Err(Error::ZetaOutOfRange(_))
        ));
    }

    #[test]
    fn curve_landmarks() {
        let p = reference();
        let s = curve_point(0.0, &p).unwrap();
        assert_eq!((s.y, s.z), (0.0, 0.0));
        let s = curve_point(0.25, &p).unwrap();
        assert!((s.z - 2.0 * SQRT_2).abs() < 1e-12);
        assert!(s.y.abs() < 1e-12);
        assert_eq!(s.point()[0], 0.0);
        assert!(curve_point(-1e-9, &p).is_err());
    }

    #[test]
    fn derivatives_match_central_differences() {
        let p = reference();
        let h = 1e-5;
        for k in 0..=100 {
            let z = (k as f64 * 0.5 / 100.0).clamp(h, 0.5 - h);
            let s = sample(z, &p);
            let (m, pl) = (sample(z - h, &p), sample(z + h, &p));
            let pairs = [
                (s.dy, (pl.y - m.y) / (2.0 * h)),
                (s.dz, (pl.z - m.z) / (2.0 * h)),
                (s.ddy, (pl.dy - m.dy) / (2.0 * h)),
                (s.ddz, (pl.dz - m.dz) / (2.0 * h)),
            ];
            // scale-aware relative error: derivative magnitudes range over decades
            let scale = [s.speed(), s.speed(), s.ddy.hypot(s.ddz), s.ddy.hypot(s.ddz)];
            for ((exact, fd), sc) in pairs.iter().zip(scale) {
                let rel = (exact - fd).abs() / sc.max(1e-12);
                assert!(rel <= 1e-6, "ζ = {z}: {exact} vs {fd} (rel {rel:e})");
            }
        }
    }

    #[test]
    fn geometry_of_reference_curve() {
        let g = geometry(&reference(), DEFAULT_GRID).unwrap();
        assert_eq!(g.arclen[0], 0.0);
        assert!(g.arclen.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(g.l_total, *g.arclen.last().unwrap());
        assert!(g.closure_residual <= 1e-3 * g.l_total);
        assert!(g.tangent_residuals.iter().all(|&r| r <= 1e-3));
        assert!(g.kappa_max > 0.0);
        assert!(g.kappa_max >= g.kappa_signed.iter().fold(0.0, |m: f64, k| m.max(k.abs())));
        assert!(g.passes_gates(&GateTolerances::default()));
    }

    #[test]
    fn arclength_converges_with_grid() {
        let p = reference();
        let a = geometry(&p, 1024).unwrap();
        let b = geometry(&p, 2047).unwrap();
        assert!(((a.l_total - b.l_total) / b.l_total).abs() < 1e-8);
        assert!(((a.kappa_max - b.kappa_max) / b.kappa_max).abs() < 1e-8);
    }

    #[test]
    fn arclength_matches_polyline_oracle() {
        // Fine polyline length converges from below at O(h²).
        let p = reference();
        let g = geometry(&p, 512).unwrap();
        let n = 400_000;
        let mut len = 0.0;
        let mut prev = sample(0.0, &p);
        for k in 1..=n {
            let s = sample(0.5 * k as f64 / n as f64, &p);
            len += (s.y - prev.y).hypot(s.z - prev.z);
            prev = s;
        }
        assert!(((g.l_total - len) / len).abs() < 1e-8);
    }

    #[test]
    fn turning_angle_is_half_turn() {
        let g = geometry(&reference(), 1024).unwrap();
        // tangent goes from +ẑ to −ẑ: net signed turn of magnitude π
        assert!((g.turning_angle().abs() - PI).abs() < 1e-3);
    }

    #[test]
    fn arclength_inversion() {
        let g = geometry(&reference(), 512).unwrap();
        for k in 0..=50 {
            let l = g.l_total * k as f64 / 50.0;
            let z = g.zeta_at_arclength(l);
            let p = g.params;
            let i = g.zeta_grid.partition_point(|&x| x <= z).saturating_sub(1);
            let exact = g.arclen[i] + integrate(&|x| sample(x, &p).speed(), g.zeta_grid[i], z);
            assert!(
                (exact - l).abs() < 1e-11 * g.l_total,
                "L = {l}, got {exact}"
            );
        }
    }

    #[test]
    fn rejects_small_grid() {
        assert!(geometry(&reference(), 100).is_err());
    }

    #[test]
    fn csv_layout() {
        let g = geometry(&reference(), 256).unwrap();
        let csv = g.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("zeta,y,z,arclen,kappa_signed"));
        assert_eq!(lines.count(), 256);
    }

    #[test]
    fn collapsed_modulation_is_singular() {
        // μ ≡ η, so f ≡ 0, when a = π(1 − 4b)/2: the curve folds back along z
        let p = CurveParams::new(0.44 * PI, 0.03).unwrap();
        assert!(modulation_f(0.25, &p).unwrap().abs() < 1e-15);
        assert!(matches!(
            geometry(&p, 512),
            Err(Error::SingularCurve { .. })
        ));
    }
}
