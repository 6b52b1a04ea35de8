//! Command-line front end for `flagcoh`.

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use anyhow::Result;
use clap::{CommandFactory, Parser};
use flagcoh::Exec;

pub mod args;
mod commands;
pub mod sweep;
pub mod verdict;

pub use args::{Cli, Command, GlobalArgs};
pub use verdict::{Report, Status, TableRow, Verdict};

/// Parses `argv`, runs the command, writes the outputs and returns the
/// process exit code: 0 all agree, 2 some disagreement, 1 error.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let msg = e.render().to_string();
            eprint!("{msg}");
            if !msg.contains("Usage:") {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            return 1;
        }
        Err(e) => {
            let _ = e.print();
            return 0;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let g = cli.global.clone();
    let exec = match g.parallel {
        Some(0) => anyhow::bail!("--parallel needs at least one thread"),
        Some(1) => Exec::Sequential,
        _ => Exec::Parallel,
    };
    let report = in_pool(g.parallel, || build_report(&cli.command, exec, g.timing))??;
    if !g.quiet {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        report.write_table(&mut out)?;
        out.flush()?;
    }
    if let Some(p) = &g.json {
        report.write_json(p)?;
    }
    if let Some(p) = &g.csv {
        report.write_csv(p)?;
    }
    Ok(report.exit_code())
}

fn build_report(command: &Command, exec: Exec, timing: bool) -> Result<Report> {
    let verdicts = match command {
        Command::Sweep { config } => sweep::run_sweep(config, exec, timing)?,
        other => timed(other, exec, timing)?,
    };
    Ok(Report {
        version: env!("CARGO_PKG_VERSION"),
        command: command.name().to_string(),
        parameters: command.parameters(),
        verdicts,
    })
}

pub(crate) fn timed(command: &Command, exec: Exec, timing: bool) -> Result<Vec<Verdict>> {
    let start = Instant::now();
    let mut vs = command.execute(exec)?;
    if timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        for v in &mut vs {
            v.timing_ms = Some(ms);
        }
    }
    Ok(vs)
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        Some(n) => Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(f)),
        None => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<R: Send>(_threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    Ok(f())
}
