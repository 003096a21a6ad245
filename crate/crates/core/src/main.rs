use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use conic_codes::cli::{execute, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    match execute(&cfg) {
        Ok(report) => match print(&report.text) {
            Ok(()) if report.success => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn print(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).context("writing to standard output")?;
    out.flush().context("flushing standard output")
}
