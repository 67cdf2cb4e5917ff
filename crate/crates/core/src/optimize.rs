// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimum-time search over the curve parameters (a, b).

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{geometry, CurveParams, GateTolerances};
use crate::error::{Error, Result};
use crate::units::to_us;

/// Curve grid used for landscape evaluation. κ_max and L are refined
/// analytically, so this only needs to resolve the curvature peaks.
pub const LANDSCAPE_GRID: usize = 512;

/// Nelder-Mead stops when the simplex diameter in (a/π, b) drops below this.
pub const SIMPLEX_TOLERANCE: f64 = 1e-4;

const MAX_SIMPLEX_ITERATIONS: usize = 400;

/// Pulse duration T = √2·L·κ_max/Ω_max for the curve, or +∞ when the curve
/// is unusable (fails a gate, is singular, or the inputs are invalid).
pub fn objective(params: &CurveParams, omega_max: f64) -> f64 {
    objective_with(
        params,
        omega_max,
        LANDSCAPE_GRID,
        &GateTolerances::default(),
    )
}

pub fn objective_with(
    params: &CurveParams,
    omega_max: f64,
    n_grid: usize,
    gates: &GateTolerances,
) -> f64 {
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return f64::INFINITY;
    }
    match geometry(params, n_grid) {
        Ok(g) if g.passes_gates(gates) => SQRT_2 * g.l_total * g.kappa_max / omega_max,
        _ => f64::INFINITY,
    }
}

/// Rectangle in (a/π, b).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBox {
    pub a_over_pi: [f64; 2],
    pub b: [f64; 2],
}

impl Default for SearchBox {
    fn default() -> Self {
        Self {
            a_over_pi: [0.05, 0.5],
            b: [0.0, 0.2],
        }
    }
}

impl SearchBox {
    pub fn validate(&self) -> Result<()> {
        let outer = Self::default();
        let inside = |r: [f64; 2], o: [f64; 2]| r[0] <= r[1] && r[0] >= o[0] && r[1] <= o[1];
        if !inside(self.a_over_pi, outer.a_over_pi) || !inside(self.b, outer.b) {
            return Err(Error::invalid(
                "box",
                format!("{self:?} must be an ordered sub-box of a/π ∈ [0.05, 0.5], b ∈ [0, 0.2]"),
            ));
        }
        Ok(())
    }

    fn contains(&self, x: [f64; 2]) -> bool {
        (self.a_over_pi[0]..=self.a_over_pi[1]).contains(&x[0])
            && (self.b[0]..=self.b[1]).contains(&x[1])
    }

    fn axis(range: [f64; 2], n: usize) -> Vec<f64> {
        if n == 1 {
            return vec![range[0]];
        }
        (0..n)
            .map(|i| range[0] + (range[1] - range[0]) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LandscapeCell {
    pub a_over_pi: f64,
    pub b: f64,
    /// Seconds; +∞ when invalid (serialized as null).
    pub t: f64,
    pub valid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimumReport {
    /// None when no grid cell is valid.
    pub best_params: Option<CurveParams>,
    pub best_t: Option<f64>,
    /// Best raster cell before simplex refinement.
    pub coarse_params: Option<CurveParams>,
    pub coarse_t: Option<f64>,
    /// Row-major over a, then b.
    pub landscape: Vec<LandscapeCell>,
    pub grid: [usize; 2],
    pub evaluations: usize,
    pub gates: GateTolerances,
    pub omega_max: f64,
}

impl OptimumReport {
    /// Landscape CSV `a_over_pi,b,T_us,valid` with an `#optimum` footer.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("a_over_pi,b,T_us,valid\n");
        for c in &self.landscape {
            let t = if c.valid {
                format!("{:.9}", to_us(c.t))
            } else {
                "inf".into()
            };
            let _ = writeln!(out, "{:.6},{:.6},{t},{}", c.a_over_pi, c.b, c.valid);
        }
        match (self.best_params, self.best_t) {
            (Some(p), Some(t)) => {
                let _ = writeln!(
                    out,
                    "#optimum,a_over_pi={:.6},b={:.6},T_us={:.9},action_rad={:.6},evaluations={}",
                    p.a_over_pi(),
                    p.b,
                    to_us(t),
                    t * self.omega_max,
                    self.evaluations
                );
            }
            _ => out.push_str("#optimum,none\n"),
        }
        out
    }
}

/// Raster scan of the box, then optional Nelder-Mead refinement from the
/// best cell. Ties go to the smaller a, then the smaller b.
pub fn optimize(
    search: &SearchBox,
    grid: [usize; 2],
    refine: bool,
    omega_max: f64,
    n_grid: usize,
    gates: &GateTolerances,
) -> Result<OptimumReport> {
    search.validate()?;
    if grid[0] == 0 || grid[1] == 0 {
        return Err(Error::invalid("grid", "needs at least one point per axis"));
    }
    if !(omega_max.is_finite() && omega_max > 0.0) {
        return Err(Error::invalid("omega_max", "must be positive"));
    }
    let a_axis = SearchBox::axis(search.a_over_pi, grid[0]);
    let b_axis = SearchBox::axis(search.b, grid[1]);
    let points: Vec<(f64, f64)> = a_axis
        .iter()
        .flat_map(|&a| b_axis.iter().map(move |&b| (a, b)))
        .collect();
    // collect() on an indexed parallel iterator keeps input order
    let landscape: Vec<LandscapeCell> = points
        .par_iter()
        .map(|&(a, b)| {
            let t = objective_with(&CurveParams { a: a * PI, b }, omega_max, n_grid, gates);
            LandscapeCell {
                a_over_pi: a,
                b,
                t,
                valid: t.is_finite(),
            }
        })
        .collect();
    let mut evaluations = landscape.len();

    // strict < over row-major order realizes the tie-break
    let coarse = landscape
        .iter()
        .filter(|c| c.valid)
        .fold(None::<&LandscapeCell>, |best, c| match best {
            Some(b) if b.t <= c.t => Some(b),
            _ => Some(c),
        });
    let Some(coarse) = coarse.copied() else {
        return Ok(OptimumReport {
            best_params: None,
            best_t: None,
            coarse_params: None,
            coarse_t: None,
            landscape,
            grid,
            evaluations,
            gates: *gates,
            omega_max,
        });
    };
    let coarse_params = CurveParams {
        a: coarse.a_over_pi * PI,
        b: coarse.b,
    };

    let (mut best_x, mut best_t) = ([coarse.a_over_pi, coarse.b], coarse.t);
    if refine {
        let f = |x: [f64; 2]| {
            if search.contains(x) {
                objective_with(
                    &CurveParams {
                        a: x[0] * PI,
                        b: x[1],
                    },
                    omega_max,
                    n_grid,
                    gates,
                )
            } else {
                f64::INFINITY
            }
        };
        let step = |r: [f64; 2], n: usize| {
            if n > 1 {
                (r[1] - r[0]) / (n - 1) as f64
            } else {
                0.0
            }
        };
        let scale = [step(search.a_over_pi, grid[0]), step(search.b, grid[1])];
        let (x, t, evals) = nelder_mead(f, [coarse.a_over_pi, coarse.b], coarse.t, scale);
        evaluations += evals;
        if t < best_t {
            best_x = x;
            best_t = t;
        }
    }

    Ok(OptimumReport {
        best_params: Some(CurveParams {
            a: best_x[0] * PI,
            b: best_x[1],
        }),
        best_t: Some(best_t),
        coarse_params: Some(coarse_params),
        coarse_t: Some(coarse.t),
        landscape,
        grid,
        evaluations,
        gates: *gates,
        omega_max,
    })
}

/// Standard Nelder-Mead (1, 2, 0.5, 0.5) in two dimensions. Returns the
/// best vertex, its value and the number of objective calls.
fn nelder_mead(
    f: impl Fn([f64; 2]) -> f64,
    x0: [f64; 2],
    f0: f64,
    scale: [f64; 2],
) -> ([f64; 2], f64, usize) {
    let mut evals = 0;
    let mut call = |x: [f64; 2]| {
        evals += 1;
        f(x)
    };
    if scale == [0.0, 0.0] {
        return (x0, f0, 0);
    }
    let lerp =
        |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    let x1 = [x0[0] + scale[0], x0[1]];
    let x2 = [x0[0], x0[1] + scale[1]];
    let mut s = [(x0, f0), (x1, call(x1)), (x2, call(x2))];

    for _ in 0..MAX_SIMPLEX_ITERATIONS {
        s.sort_by(|p, q| p.1.total_cmp(&q.1));
        let diameter = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| (s[i].0[0] - s[j].0[0]).hypot(s[i].0[1] - s[j].0[1]))
            .fold(0.0, f64::max);
        if diameter < SIMPLEX_TOLERANCE {
            break;
        }
        let centroid = lerp(s[0].0, s[1].0, 0.5);
        let reflected = lerp(centroid, s[2].0, -1.0);
        let fr = call(reflected);
        if fr < s[0].1 {
            let expanded = lerp(centroid, s[2].0, -2.0);
            let fe = call(expanded);
            s[2] = if fe < fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
        } else if fr < s[1].1 {
            s[2] = (reflected, fr);
        } else {
            let (contracted, fc) = if fr < s[2].1 {
                let c = lerp(centroid, reflected, 0.5);
                (c, call(c))
            } else {
                let c = lerp(centroid, s[2].0, 0.5);
                (c, call(c))
            };
            if fc < s[2].1.min(fr) {
                s[2] = (contracted, fc);
            } else {
                let best = s[0].0;
                for v in s.iter_mut().skip(1) {
                    let x = lerp(best, v.0, 0.5);
                    *v = (x, call(x));
                }
            }
        }
    }
    s.sort_by(|p, q| p.1.total_cmp(&q.1));
    (s[0].0, s[0].1, evals)
}
