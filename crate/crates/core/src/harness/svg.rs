// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

//! Minimal SVG 1.1 line plots and heat maps.

use std::fmt::Write as _;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct LinePlot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// (lo, hi) padded so a constant series still gets a visible range.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 * lo.abs().max(1.0) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">
<rect width="100%" height="100%" fill="white"/>
<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + 0.5 * (WIDTH - LEFT - RIGHT),
        escape(title)
    );
}

struct Frame {
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x.0) / (self.x.1 - self.x.0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y.0) / (self.y.1 - self.y.0) * (HEIGHT - TOP - BOTTOM)
    }

    fn axes(&self, out: &mut String, x_label: &str, y_label: &str) {
        let (x0, x1) = (LEFT, WIDTH - RIGHT);
        let (y0, y1) = (HEIGHT - BOTTOM, TOP);
        let _ = writeln!(
            out,
            r#"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="black"/>"#,
            x1 - x0,
            y0 - y1
        );
        for i in 0..=4 {
            let f = i as f64 / 4.0;
            let xv = self.x.0 + f * (self.x.1 - self.x.0);
            let yv = self.y.0 + f * (self.y.1 - self.y.0);
            let (xp, yp) = (self.px(xv), self.py(yv));
            let _ = writeln!(
                out,
                r#"<line x1="{xp:.1}" y1="{y0}" x2="{xp:.1}" y2="{:.1}" stroke="black"/><text x="{xp:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
                y0 + 5.0,
                y0 + 18.0,
                tick(xv)
            );
            let _ = writeln!(
                out,
                r#"<line x1="{:.1}" y1="{yp:.1}" x2="{x0}" y2="{yp:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" text-anchor="end">{}</text>"#,
                x0 - 5.0,
                x0 - 8.0,
                yp + 4.0,
                tick(yv)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            0.5 * (x0 + x1),
            HEIGHT - 12.0,
            escape(x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="16" y="{:.1}" text-anchor="middle" transform="rotate(-90 16 {:.1})">{}</text>"#,
            0.5 * (y0 + y1),
            0.5 * (y0 + y1),
            escape(y_label)
        );
    }
}

fn tick(v: f64) -> String {
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e4).contains(&a) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.3}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" {
            "0".into()
        } else {
            s.into()
        }
    }
}

impl LinePlot {
    pub fn render(&self) -> String {
        let frame = Frame {
            x: range(
                self.series
                    .iter()
                    .flat_map(|s| s.points.iter().map(|p| p.0)),
            ),
            y: range(
                self.series
                    .iter()
                    .flat_map(|s| s.points.iter().map(|p| p.1)),
            ),
        };
        let mut out = String::new();
        header(&mut out, &self.title);
        frame.axes(&mut out, &self.x_label, &self.y_label);
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|p| p.0.is_finite() && p.1.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", frame.px(x), frame.py(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                pts.join(" ")
            );
            let ly = TOP + 10.0 + 18.0 * i as f64;
            let lx = WIDTH - RIGHT + 10.0;
            let _ = writeln!(
                out,
                r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{}</text>"#,
                lx + 20.0,
                lx + 25.0,
                ly + 4.0,
                escape(&s.name)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Cells on a regular grid; non-finite values are drawn grey.
#[derive(Debug, Clone)]
pub struct Heatmap {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Row-major, `values[ix * y.len() + iy]`.
    pub values: Vec<f64>,
    /// Optional marker (e.g. the optimum).
    pub marker: Option<(f64, f64)>,
    /// Values above this saturate the colour scale.
    pub cap: Option<f64>,
}

fn viridis_like(t: f64) -> String {
    // blue → green → yellow
    let t = t.clamp(0.0, 1.0);
    let r = (255.0 * (1.5 * t - 0.5).clamp(0.0, 1.0)) as u8;
    let g = (255.0 * (0.15 + 0.8 * t)) as u8;
    let b = (255.0 * (0.55 - 0.5 * t).clamp(0.0, 1.0)) as u8;
    format!("#{r:02x}{g:02x}{b:02x}")
}

impl Heatmap {
    pub fn render(&self) -> String {
        let step = |v: &[f64]| if v.len() > 1 { v[1] - v[0] } else { 1.0 };
        let (dx, dy) = (step(&self.x), step(&self.y));
        let frame = Frame {
            x: range(
                self.x
                    .iter()
                    .map(|&v| v - 0.5 * dx)
                    .chain(self.x.iter().map(|&v| v + 0.5 * dx)),
            ),
            y: range(
                self.y
                    .iter()
                    .map(|&v| v - 0.5 * dy)
                    .chain(self.y.iter().map(|&v| v + 0.5 * dy)),
            ),
        };
        let (lo, hi) = range(
            self.values
                .iter()
                .map(|&v| self.cap.map_or(v, |c| v.min(c))),
        );
        let mut out = String::new();
        header(&mut out, &self.title);
        for (ix, &x) in self.x.iter().enumerate() {
            for (iy, &y) in self.y.iter().enumerate() {
                let v = self.values[ix * self.y.len() + iy];
                let fill = if v.is_finite() {
                    viridis_like((v - lo) / (hi - lo))
                } else {
                    "#c8c8c8".into()
                };
                let (x0, x1) = (frame.px(x - 0.5 * dx), frame.px(x + 0.5 * dx));
                let (y0, y1) = (frame.py(y + 0.5 * dy), frame.py(y - 0.5 * dy));
                let _ = writeln!(
                    out,
                    r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="{fill}"/>"#,
                    x1 - x0 + 0.3,
                    y1 - y0 + 0.3
                );
            }
        }
        frame.axes(&mut out, &self.x_label, &self.y_label);
        if let Some((mx, my)) = self.marker {
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="red" stroke="white"/>"#,
                frame.px(mx),
                frame.py(my)
            );
        }
        let lx = WIDTH - RIGHT + 20.0;
        for i in 0..10 {
            let f = i as f64 / 10.0;
            let y = HEIGHT - BOTTOM - f * (HEIGHT - TOP - BOTTOM);
            let _ = writeln!(
                out,
                r#"<rect x="{lx}" y="{:.2}" width="18" height="{:.2}" fill="{}"/>"#,
                y - 0.1 * (HEIGHT - TOP - BOTTOM),
                0.1 * (HEIGHT - TOP - BOTTOM) + 0.5,
                viridis_like(f)
            );
        }
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}">{}</text><text x="{}" y="{}">{}</text>"#,
            lx + 24.0,
            TOP + 4.0,
            if self
                .cap
                .is_some_and(|c| self.values.iter().any(|&v| v.is_finite() && v > c))
            {
                format!("≥ {}", tick(hi))
            } else {
                tick(hi)
            },
            lx + 24.0,
            HEIGHT - BOTTOM,
            tick(lo)
        );
        out.push_str("</svg>\n");
        out
    }
}
