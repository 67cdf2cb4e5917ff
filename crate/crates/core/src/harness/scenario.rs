// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Scenario runner: builds the programs a config describes and renders
//! every requested artifact in memory. Files are written afterwards by
//! [`write_artifacts`], so output order never depends on scheduling.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

use super::awg::export_awg;
use super::config::ScenarioConfig;
use super::svg::{Heatmap, LinePlot, Series};
use crate::error::{Error, Result};
use crate::invariant::{
    accumulate_m, angles_from, diagnostic_csv, infidelity_scaling, DiagnosticSummary,
};
use crate::optimize::{optimize, OptimumReport};
use crate::propagate::{final_state, propagate, SimulationResult};
use crate::pulse::{
    apply_noise, calibrate_srt_duration, calibrate_stirap_sign, synth_pi, synth_srt, synth_stirap,
    NoiseSpec, PulseProgram, SchemeTag, StaDesign, StirapShape,
};
use crate::spin::{Level, QutritState};
use crate::units::{khz, to_us};

/// One output file, held in memory until written.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub contents: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig2a,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    All,
}

impl FromStr for FigureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "fig2a" => FigureId::Fig2a,
            "fig3a" => FigureId::Fig3a,
            "fig3b" => FigureId::Fig3b,
            "fig4a" => FigureId::Fig4a,
            "fig4b" => FigureId::Fig4b,
            "all" => FigureId::All,
            _ => {
                return Err(Error::invalid(
                    "figure",
                    format!(
                        "unknown figure `{s}` (expected fig2a, fig3a, fig3b, fig4a, fig4b or all)"
                    ),
                ))
            }
        })
    }
}

/// Noise axis of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// δ in kHz (display units; converted through the config).
    DeltaKhz,
    Epsilon,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::DeltaKhz => "delta_khz",
            SweepAxis::Epsilon => "epsilon",
        }
    }
}

/// Final populations of one program over one noise axis.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub axis: SweepAxis,
    pub scheme: SchemeTag,
    /// Axis values in display units.
    pub values: Vec<f64>,
    /// (P₊₁, P₀, P₋₁) per value.
    pub populations: Vec<[f64; 3]>,
}

impl SweepReport {
    pub fn p_minus(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .copied()
            .zip(self.populations.iter().map(|p| p[2]))
    }
}

/// Runs `program` at every noise value, in parallel, keeping grid order.
pub fn sweep(
    program: &PulseProgram,
    axis: SweepAxis,
    values: &[f64],
    to_noise: impl Fn(f64) -> NoiseSpec + Sync,
) -> Result<SweepReport> {
    let initial = QutritState::basis(Level::Plus);
    let populations = values
        .par_iter()
        .map(|&v| Ok(final_state(&apply_noise(program, &to_noise(v)), &initial)?.populations()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        axis,
        scheme: program.scheme(),
        values: values.to_vec(),
        populations,
    })
}

fn sweep_csv(reports: &[SweepReport]) -> String {
    let axis = reports.first().map_or("value", |r| r.axis.name());
    let mut out = format!("scheme,{axis},p_plus,p_zero,p_minus\n");
    for r in reports {
        for (v, p) in r.values.iter().zip(&r.populations) {
            let _ = writeln!(
                out,
                "{},{v},{:.12},{:.12},{:.12}",
                r.scheme, p[0], p[1], p[2]
            );
        }
    }
    out
}

fn trace_indices(len: usize, points: usize) -> Vec<usize> {
    let points = points.min(len).max(2);
    (0..points)
        .map(|i| ((i as f64 * (len - 1) as f64 / (points - 1) as f64).round()) as usize)
        .collect()
}

/// δ grid for the exponent fit: 2π×[1, 30] kHz, log-spaced.
pub fn scaling_grid() -> Vec<f64> {
    (0..12).map(|k| khz(30f64.powf(k as f64 / 11.0))).collect()
}

pub struct Scenario {
    cfg: ScenarioConfig,
    hash: String,
    stirap_sign: OnceLock<f64>,
}

impl Scenario {
    pub fn new(cfg: ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        let hash = cfg.hash();
        Ok(Self {
            cfg,
            hash,
            stirap_sign: OnceLock::new(),
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.cfg
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    /// CSV artifact with the provenance footer.
    fn csv(&self, name: impl Into<String>, mut body: String) -> Artifact {
        let _ = writeln!(body, "#provenance,config_sha256={}", self.hash);
        Artifact {
            name: name.into(),
            contents: body,
        }
    }

    fn svg(name: impl Into<String>, contents: String) -> Artifact {
        Artifact {
            name: name.into(),
            contents,
        }
    }

    /// The config exactly as run, with defaults filled in.
    pub fn echo(&self) -> Artifact {
        Artifact {
            name: "config.echo.json".into(),
            contents: self.cfg.to_json(),
        }
    }

    pub fn sta_design(&self) -> Result<StaDesign> {
        StaDesign::new(&self.cfg.curve_params(), self.cfg.omega_max())
    }

    pub fn sta_program(&self) -> Result<PulseProgram> {
        self.sta_design()?.program(self.cfg.sta_samples)
    }

    /// STIRAP at `duration` in the pulse order calibrated at 5 µs.
    pub fn stirap_program(&self, duration: f64) -> Result<PulseProgram> {
        let omega = self.cfg.omega_max();
        let n = self.cfg.stirap.samples;
        let sign = match self.stirap_sign.get() {
            Some(&s) => s,
            None => {
                let s = calibrate_stirap_sign(omega, n)?.order_sign;
                *self.stirap_sign.get_or_init(|| s)
            }
        };
        let shape = StirapShape::standard(duration, sign);
        synth_stirap(duration, omega, omega, shape.sigma, shape.delta_tau, n)
    }

    pub fn srt_program(&self) -> Result<PulseProgram> {
        let omega = self.cfg.omega_max();
        let detuning = self.cfg.srt_detuning();
        let duration = match self.cfg.srt.duration_us {
            Some(t) => crate::units::us(t),
            None => calibrate_srt_duration(omega, detuning)?.duration,
        };
        synth_srt(duration, omega, detuning, self.cfg.srt.samples)
    }

    pub fn program(&self, scheme: SchemeTag) -> Result<PulseProgram> {
        match scheme {
            SchemeTag::StaScqc => self.sta_program(),
            SchemeTag::Stirap => self.stirap_program(crate::units::us(self.cfg.stirap.duration_us)),
            SchemeTag::Srt => self.srt_program(),
            SchemeTag::PiPulse => synth_pi(
                self.cfg.omega_max(),
                self.cfg.pi.transition,
                self.cfg.pi.samples,
            ),
        }
    }

    fn noise_for(&self, axis: SweepAxis) -> impl Fn(f64) -> NoiseSpec + Sync + '_ {
        move |v| match axis {
            SweepAxis::DeltaKhz => NoiseSpec::detuning(self.cfg.khz_to_angular(v)),
            SweepAxis::Epsilon => NoiseSpec::amplitude(v),
        }
    }

    pub fn sweep_program(&self, program: &PulseProgram, axis: SweepAxis) -> Result<SweepReport> {
        let values = match axis {
            SweepAxis::DeltaKhz => self.cfg.delta_sweep_khz.values(),
            SweepAxis::Epsilon => self.cfg.epsilon_sweep.values(),
        };
        sweep(program, axis, &values, self.noise_for(axis))
    }

    fn trace_csv(&self, sim: &SimulationResult) -> (String, Vec<Series>) {
        let mut out = String::from("t_us,p_plus,p_zero,p_minus\n");
        let mut series: Vec<Series> = ["P+1", "P0", "P-1"]
            .iter()
            .map(|n| Series {
                name: (*n).into(),
                points: vec![],
            })
            .collect();
        for i in trace_indices(sim.times.len(), self.cfg.trace_points) {
            let t = to_us(sim.times[i]);
            let p = sim.populations[i];
            let _ = writeln!(out, "{t:.9},{:.12},{:.12},{:.12}", p[0], p[1], p[2]);
            for (s, v) in series.iter_mut().zip(p) {
                s.points.push((t, v));
            }
        }
        (out, series)
    }

    /// Pulse CSV for the configured scheme (plus the design curve for STA).
    pub fn synthesize(&self) -> Result<Vec<Artifact>> {
        let scheme = self.cfg.scheme;
        let mut out = vec![];
        if scheme == SchemeTag::StaScqc {
            let design = self.sta_design()?;
            out.push(self.csv("curve_sta.csv", design.geometry.to_csv()));
            out.push(self.csv(
                "pulse_sta.csv",
                design.program(self.cfg.sta_samples)?.to_csv(),
            ));
        } else {
            let p = self.program(scheme)?;
            out.push(self.csv(format!("pulse_{}.csv", scheme.slug()), p.to_csv()));
        }
        Ok(out)
    }

    /// Population trace of the configured scheme, plus invariant
    /// diagnostics for the STA pulse.
    pub fn simulate(&self) -> Result<Vec<Artifact>> {
        let scheme = self.cfg.scheme;
        let p = self.program(scheme)?;
        let sim = propagate(&p, &QutritState::basis(Level::Plus))?;
        let (csv, series) = self.trace_csv(&sim);
        let slug = scheme.slug();
        let mut out = vec![
            self.csv(format!("simulate_{slug}.csv"), csv),
            Self::svg(
                format!("simulate_{slug}.svg"),
                LinePlot {
                    title: format!("{scheme} populations"),
                    x_label: "t (µs)".into(),
                    y_label: "population".into(),
                    series,
                }
                .render(),
            ),
        ];
        if scheme == SchemeTag::StaScqc {
            let ef = accumulate_m(&p)?;
            let angles = angles_from(&p, &ef)?;
            let summary = DiagnosticSummary {
                c_first_order: ef.c_first_order,
                closure: ef.closure(),
                exponent: infidelity_scaling(&p, &scaling_grid())
                    .ok()
                    .map(|f| f.slope),
            };
            out.push(self.csv(
                "diagnostics_sta.csv",
                diagnostic_csv(&ef, &angles, &summary),
            ));
        }
        Ok(out)
    }

    pub fn optimize(&self) -> Result<(OptimumReport, Vec<Artifact>)> {
        let o = &self.cfg.optimizer;
        let report = optimize(
            &o.search_box,
            o.grid,
            o.refine,
            self.cfg.omega_max(),
            o.curve_grid,
            &crate::curve::GateTolerances::default(),
        )?;
        let mut xs: Vec<f64> = report.landscape.iter().map(|c| c.a_over_pi).collect();
        xs.dedup();
        let ys: Vec<f64> = report.landscape[..o.grid[1]].iter().map(|c| c.b).collect();
        let heat = Heatmap {
            title: "Pulse duration T (µs) over (a, b)".into(),
            x_label: "a / π".into(),
            y_label: "b".into(),
            x: xs,
            y: ys,
            values: report.landscape.iter().map(|c| to_us(c.t)).collect(),
            marker: report.best_params.map(|p| (p.a_over_pi(), p.b)),
            // T diverges near singular curves; keep contrast near the valley
            cap: report.best_t.map(|t| 2.0 * to_us(t)),
        };
        let artifacts = vec![
            self.csv("fig2a_landscape.csv", report.to_csv()),
            Self::svg("fig2a_landscape.svg", heat.render()),
        ];
        Ok((report, artifacts))
    }

    /// δ and ε sweeps of the configured scheme.
    pub fn sweep(&self) -> Result<Vec<Artifact>> {
        let p = self.program(self.cfg.scheme)?;
        let slug = self.cfg.scheme.slug();
        let mut out = vec![];
        for axis in [SweepAxis::DeltaKhz, SweepAxis::Epsilon] {
            let r = self.sweep_program(&p, axis)?;
            out.push(self.csv(format!("sweep_{}_{slug}.csv", axis.name()), sweep_csv(&[r])));
        }
        Ok(out)
    }

    pub fn export_awg(&self) -> Result<Vec<Artifact>> {
        let p = self.program(self.cfg.scheme)?;
        let slug = self.cfg.scheme.slug();
        Ok(export_awg(&p, self.cfg.omega_max(), &self.cfg.lab_frame)?
            .into_iter()
            .map(|w| {
                let name = match w.channel {
                    None => format!("awg_{slug}.csv"),
                    Some(c) => format!("awg_{slug}_{c}.csv"),
                };
                self.csv(name, w.csv)
            })
            .collect())
    }

    fn fig3a(&self) -> Result<Vec<Artifact>> {
        let p = self.sta_program()?;
        let sim = propagate(&p, &QutritState::basis(Level::Plus))?;
        let (csv, series) = self.trace_csv(&sim);
        Ok(vec![
            self.csv("fig3a_populations.csv", csv),
            Self::svg(
                "fig3a_populations.svg",
                LinePlot {
                    title: format!("STA populations, T = {:.3} µs", to_us(p.duration())),
                    x_label: "t (µs)".into(),
                    y_label: "population".into(),
                    series,
                }
                .render(),
            ),
        ])
    }

    fn fig3b(&self) -> Result<Vec<Artifact>> {
        let mut programs = vec![self.sta_program()?];
        for &t in &self.cfg.stirap.trace_durations_us {
            programs.push(self.stirap_program(crate::units::us(t))?);
        }
        let mut csv = String::from("scheme,duration_us,t_us,p_minus\n");
        let mut series = vec![];
        for p in &programs {
            let sim = propagate(p, &QutritState::basis(Level::Plus))?;
            let d = to_us(p.duration());
            let mut s = Series {
                name: format!("{} {d:.2} µs", p.scheme()),
                points: vec![],
            };
            for i in trace_indices(sim.times.len(), self.cfg.trace_points) {
                let t = to_us(sim.times[i]);
                let pm = sim.populations[i][2];
                let _ = writeln!(csv, "{},{d:.6},{t:.9},{pm:.12}", p.scheme());
                s.points.push((t, pm));
            }
            series.push(s);
        }
        Ok(vec![
            self.csv("fig3b_traces.csv", csv),
            Self::svg(
                "fig3b_traces.svg",
                LinePlot {
                    title: "P-1 for STA and STIRAP".into(),
                    x_label: "t (µs)".into(),
                    y_label: "P-1".into(),
                    series,
                }
                .render(),
            ),
        ])
    }

    fn fig4(&self, axis: SweepAxis) -> Result<Vec<Artifact>> {
        let reports = [self.sta_program()?, self.srt_program()?]
            .iter()
            .map(|p| self.sweep_program(p, axis))
            .collect::<Result<Vec<_>>>()?;
        let (stem, x_label) = match axis {
            SweepAxis::DeltaKhz => ("fig4a_detuning", "δ/2π (kHz)"),
            SweepAxis::Epsilon => ("fig4b_amplitude", "ε"),
        };
        let series = reports
            .iter()
            .map(|r| Series {
                name: r.scheme.to_string(),
                points: r.p_minus().collect(),
            })
            .collect();
        Ok(vec![
            self.csv(format!("{stem}.csv"), sweep_csv(&reports)),
            Self::svg(
                format!("{stem}.svg"),
                LinePlot {
                    title: format!("P-1 vs {}", axis.name()),
                    x_label: x_label.into(),
                    y_label: "P-1".into(),
                    series,
                }
                .render(),
            ),
        ])
    }

    pub fn reproduce(&self, fig: FigureId) -> Result<Vec<Artifact>> {
        Ok(match fig {
            FigureId::Fig2a => self.optimize()?.1,
            FigureId::Fig3a => self.fig3a()?,
            FigureId::Fig3b => self.fig3b()?,
            FigureId::Fig4a => self.fig4(SweepAxis::DeltaKhz)?,
            FigureId::Fig4b => self.fig4(SweepAxis::Epsilon)?,
            FigureId::All => {
                let mut all = vec![];
                for f in [
                    FigureId::Fig2a,
                    FigureId::Fig3a,
                    FigureId::Fig3b,
                    FigureId::Fig4a,
                    FigureId::Fig4b,
                ] {
                    all.extend(self.reproduce(f)?);
                }
                all
            }
        })
    }
}

/// Writes artifacts into `dir`, creating it if needed.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for a in artifacts {
        let path = dir.join(&a.name);
        std::fs::write(&path, &a.contents).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}
