// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

use scqc_core::harness::config::LabFrame;
use scqc_core::harness::{
    export_awg, write_artifacts, Artifact, FigureId, Scenario, ScenarioConfig,
};
use scqc_core::pulse::{synth_stirap, Origin, PulseProgram, SchemeTag, StirapShape};
use scqc_core::spin::DriveSample;
use scqc_core::units::{reference_rabi, us};
use scqc_core::Error;

fn scenario(json: &str) -> Scenario {
    Scenario::new(ScenarioConfig::from_json(json).unwrap()).unwrap()
}

fn find<'a>(artifacts: &'a [Artifact], name: &str) -> &'a str {
    &artifacts.iter().find(|a| a.name == name).unwrap().contents
}

/// Data rows (no comments, no header).
fn rows(csv: &str) -> Vec<Vec<&str>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect()
}

#[test]
fn fig3a_ends_in_target_state() {
    let a = scenario("{}").reproduce(FigureId::Fig3a).unwrap();
    let csv = find(&a, "fig3a_populations.csv");
    let r = rows(csv);
    assert!(r.len() >= 200);
    let last = r.last().unwrap();
    assert!(last[3].parse::<f64>().unwrap() >= 0.99);
    assert!(find(&a, "fig3a_populations.svg").contains("<polyline"));
}

#[test]
fn fig4a_sta_beats_srt_at_300_khz() {
    let a = scenario("{}").reproduce(FigureId::Fig4a).unwrap();
    let r = rows(find(&a, "fig4a_detuning.csv"));
    let at = |scheme: &str| -> f64 {
        r.iter()
            .find(|row| row[0] == scheme && row[1].parse::<f64>().unwrap() == 300.0)
            .unwrap()[4]
            .parse()
            .unwrap()
    };
    let (sta, srt) = (at("STA_SCQC"), at("SRT"));
    assert!(sta >= 0.8 && srt < sta, "{sta} {srt}");
    for row in &r {
        for p in &row[2..] {
            let p: f64 = p.parse().unwrap();
            assert!((-1e-12..=1.0 + 1e-12).contains(&p));
        }
    }
}

#[test]
fn fig3b_and_fig4b_shapes() {
    let s = scenario(
        r#"{"trace_points": 50, "epsilon_sweep": {"min": -0.2, "max": 0.2, "points": 5}}"#,
    );
    let b = s.reproduce(FigureId::Fig3b).unwrap();
    let r = rows(find(&b, "fig3b_traces.csv"));
    assert_eq!(r.len(), 4 * 50);
    assert!(r
        .iter()
        .any(|row| row[0] == "STIRAP" && row[1] == "0.800000"));
    let e = s.reproduce(FigureId::Fig4b).unwrap();
    assert_eq!(rows(find(&e, "fig4b_amplitude.csv")).len(), 10);
}

#[test]
fn every_csv_has_header_and_provenance() {
    let s = scenario(
        r#"{"optimizer": {"grid": [4, 4]}, "delta_sweep_khz": {"min": -100, "max": 100, "points": 3}, "epsilon_sweep": {"min": 0, "max": 0, "points": 1}}"#,
    );
    let mut all = s.reproduce(FigureId::All).unwrap();
    all.extend(s.synthesize().unwrap());
    all.extend(s.simulate().unwrap());
    all.extend(s.sweep().unwrap());
    all.extend(s.export_awg().unwrap());
    let tag = format!("#provenance,config_sha256={}", s.hash());
    for a in all.iter().filter(|a| a.name.ends_with(".csv")) {
        assert!(a.contents.lines().any(|l| l == tag), "{}", a.name);
        let header = a.contents.lines().find(|l| !l.starts_with('#')).unwrap();
        assert!(
            header.chars().next().unwrap().is_ascii_alphabetic(),
            "{}: {header}",
            a.name
        );
    }
    for a in all.iter().filter(|a| a.name.ends_with(".svg")) {
        assert!(a.contents.trim_end().ends_with("</svg>"));
    }
}

#[test]
fn echo_reproduces_identical_run() {
    let s = scenario(
        r#"{"scheme": "SRT", "srt": {"detuning_mhz": 2.0}, "delta_sweep_khz": {"min": -50, "max": 50, "points": 3}, "epsilon_sweep": {"min": -0.1, "max": 0.1, "points": 3}}"#,
    );
    let echo = s.echo();
    let again = Scenario::new(ScenarioConfig::from_json(&echo.contents).unwrap()).unwrap();
    assert_eq!(again.echo(), echo);
    assert_eq!(again.hash(), s.hash());
    assert_eq!(again.sweep().unwrap(), s.sweep().unwrap());
}

#[test]
fn unwritable_output_is_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let a = Artifact {
        name: "a.csv".into(),
        contents: String::new(),
    };
    let err = write_artifacts(&blocker.join("sub"), std::slice::from_ref(&a)).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    write_artifacts(&dir.path().join("ok"), &[a]).unwrap();
    assert!(dir.path().join("ok/a.csv").exists());
}

fn amplitudes(csv: &str) -> Vec<(f64, f64)> {
    rows(csv)
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect()
}

#[test]
fn awg_sta_is_normalized() {
    let w = scenario("{}").export_awg().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].name, "awg_sta.csv");
    let peak = amplitudes(&w[0].contents)
        .iter()
        .map(|a| a.1.abs())
        .fold(0.0, f64::max);
    assert!((peak - 1.0).abs() <= 0.005, "{peak}");
    assert!(w[0].contents.contains("phase flipped"));
}

#[test]
fn awg_zero_program() {
    let p = PulseProgram::new(
        1e-9,
        vec![DriveSample::default(); 8],
        SchemeTag::PiPulse,
        Origin::Imported,
    )
    .unwrap();
    let w = export_awg(&p, reference_rabi(), &LabFrame::default()).unwrap();
    assert_eq!(w.len(), 1);
    assert!(amplitudes(&w[0].csv).iter().all(|a| a.1 == 0.0));
}

#[test]
fn awg_stirap_has_two_gaussian_channels() {
    let t = us(5.0);
    let shape = StirapShape::standard(t, 1.0);
    let p = synth_stirap(
        t,
        reference_rabi(),
        reference_rabi(),
        shape.sigma,
        shape.delta_tau,
        2000,
    )
    .unwrap();
    let w = export_awg(&p, reference_rabi(), &LabFrame::default()).unwrap();
    assert_eq!(
        w.iter().map(|c| c.channel).collect::<Vec<_>>(),
        vec![Some("plus"), Some("minus")]
    );
    let peak_time = |csv: &str| {
        amplitudes(csv)
            .into_iter()
            .fold(
                (0.0, f64::NEG_INFINITY),
                |acc, x| if x.1 > acc.1 { x } else { acc },
            )
            .0
    };
    let dt = p.dt();
    assert!((peak_time(&w[0].csv) - (0.5 * t - shape.delta_tau)).abs() <= dt);
    assert!((peak_time(&w[1].csv) - (0.5 * t + shape.delta_tau)).abs() <= dt);
}

#[test]
fn invalid_config_field_is_reported() {
    let err = ScenarioConfig::from_json(r#"{"optimizer": {"grid": [0, 5]}}"#).unwrap_err();
    assert!(matches!(err, Error::Config { ref path, .. } if path == "optimizer.grid"));
    let err = ScenarioConfig::from_json(r#"{"omega_max_mhz": "fast"}"#).unwrap_err();
    assert!(matches!(err, Error::Config { ref path, .. } if path == "omega_max_mhz"));
}
