mod cli;
mod commands;
mod report;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;

use cli::{Cli, Format};
use commands::{Outcome, UsageError};
use report::{digest_file, render_text, RunReport};

fn emit(cli: &Cli, out: &Outcome, started: Instant) -> Result<()> {
    let common = cli.command.common();
    let mut input_digest = BTreeMap::new();
    for p in &out.inputs {
        input_digest.insert(p.display().to_string(), digest_file(p)?);
    }
    let report = RunReport {
        tool: "geodetic",
        version: env!("CARGO_PKG_VERSION"),
        command: std::env::args().skip(1).collect(),
        input_digest,
        result: out.result.clone(),
        duration_ms: started.elapsed().as_millis() as u64,
    };
    let text = match common.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Text => {
            let mut v = serde_json::to_value(&report)?;
            render_text(&std::mem::take(&mut v))
        }
    };
    match (&common.output, &out.artifact) {
        (Some(path), Some(artifact)) => {
            std::fs::write(path, artifact).with_context(|| format!("writing {}", path.display()))?;
            std::io::stdout().write_all(text.as_bytes())?;
        }
        (Some(path), None) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        (None, _) => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    let started = Instant::now();
    if let Some(jobs) = cli.command.common().jobs {
        if jobs == 0 {
            return Err(UsageError("--jobs must be at least 1".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let out = commands::run(&cli.command)?;
    emit(cli, &out, started)?;
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("geodetic: verification failed; see the report");
            ExitCode::from(1)
        }
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("geodetic: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("geodetic: {e:#}");
            ExitCode::from(1)
        }
    }
}
