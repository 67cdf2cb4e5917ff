// Copyright 2026 The scqc Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use scqc_core::acceptance::{format_table, run_all};
use scqc_core::harness::{write_artifacts, Artifact, FigureId, Scenario, ScenarioConfig};
use scqc_core::Error;

#[derive(Parser)]
#[command(
    name = "scqc",
    version,
    about = "Space-curve pulse design for a driven spin-1 system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Io {
    /// JSON scenario config; defaults are used when omitted.
    config: Option<PathBuf>,
    /// Output directory (overrides `output_dir` in the config).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the pulse program of the configured scheme.
    Synthesize(Io),
    /// Propagate the configured scheme and write population traces.
    Simulate(Io),
    /// Scan and refine the curve parameters.
    Optimize(Io),
    /// Detuning and amplitude sweeps of the configured scheme.
    Sweep(Io),
    /// Regenerate one figure's data and plot (fig2a, fig3a, fig3b, fig4a, fig4b, all).
    Reproduce {
        figure: String,
        #[command(flatten)]
        io: Io,
    },
    /// Run the acceptance criteria.
    Accept,
    /// Write normalized AWG envelopes.
    ExportAwg(Io),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 3,
        Error::Config { .. }
        | Error::InvalidParameter { .. }
        | Error::CurveGateFailed { .. }
        | Error::SingularCurve { .. }
        | Error::ZetaOutOfRange(_)
        | Error::AmplitudeOverflow(_)
        | Error::Csv { .. } => 2,
        _ => 1,
    }
}

fn load(io: &Io) -> Result<(Scenario, PathBuf), Error> {
    let cfg = match &io.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    let dir = io
        .out
        .clone()
        .or_else(|| cfg.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    Ok((Scenario::new(cfg)?, dir))
}

fn emit(scenario: &Scenario, dir: &Path, mut artifacts: Vec<Artifact>) -> Result<(), Error> {
    artifacts.push(scenario.echo());
    write_artifacts(dir, &artifacts)?;
    for a in &artifacts {
        println!("{}", dir.join(&a.name).display());
    }
    Ok(())
}

type Make = fn(&Scenario) -> Result<Vec<Artifact>, Error>;

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let (io, make): (&Io, Make) = match &cli.command {
        Command::Accept => {
            let outcomes = run_all();
            print!("{}", format_table(&outcomes));
            return Ok(if outcomes.iter().all(|o| o.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Reproduce { figure, io } => {
            let fig: FigureId = figure.parse()?;
            let (s, dir) = load(io)?;
            let artifacts = s.reproduce(fig)?;
            emit(&s, &dir, artifacts)?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Synthesize(io) => (io, Scenario::synthesize),
        Command::Simulate(io) => (io, Scenario::simulate),
        Command::Optimize(io) => (io, |s| Ok(s.optimize()?.1)),
        Command::Sweep(io) => (io, Scenario::sweep),
        Command::ExportAwg(io) => (io, Scenario::export_awg),
    };
    let (s, dir) = load(io)?;
    let artifacts = make(&s)?;
    emit(&s, &dir, artifacts)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
