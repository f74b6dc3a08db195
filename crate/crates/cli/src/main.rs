mod commands;
mod config;
mod error;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use commands::{Ctx, Outcome, DEFAULT_SEED};
use config::{Cli, Command};
use error::CliError;
use report::Sink;

fn run(cli: Cli) -> Result<bool, CliError> {
    let cli = config::resolve(cli)?;
    let jobs = config::jobs(&cli.common)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::config("jobs", e))?;
    let ctx = Ctx {
        seed: cli.common.seed.unwrap_or(DEFAULT_SEED),
        tol: cli.common.tol.map(|t| config::positive("tol", t)).transpose()?,
        pool,
    };
    let sink = Sink::new(cli.common.out.clone())?;
    let started = Instant::now();
    let Outcome { report, files } = match &cli.command {
        Command::BesselTable(a) => commands::bessel::run(a, &ctx)?,
        Command::KernelVerify(a) => commands::kernel::run(a, &ctx)?,
        Command::LemmaVerify(a) => commands::lemma::run(a, &ctx)?,
        Command::Solve(a) => commands::solve::run(a, &ctx)?,
    };
    for (name, contents) in &files {
        sink.write(name, contents)?;
    }
    sink.write("report.jsonl", &report.jsonl())?;
    sink.write("summary.json", &report.summary_json())?;

    let failed = report.failed();
    eprintln!(
        "{}: {} records, {} failed, max error {}, {:.2} s",
        report.command,
        report.records.len(),
        failed,
        report.max_error().map_or("n/a".to_owned(), |e| format!("{e:e}")),
        started.elapsed().as_secs_f64(),
    );
    for r in report.records.iter().filter(|r| r.status == report::Status::Fail) {
        eprintln!("  FAIL {}", r.to_json());
    }
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        // configuration and i/o problems share the "could not run" code
        Err(e) => {
            eprintln!("wavekit: {e}");
            ExitCode::from(2)
        }
    }
}
