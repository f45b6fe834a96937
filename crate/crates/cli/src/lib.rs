//! Command-line front end: spectrum tables, wavefunction samples,
//! verification reports and quadrature checks in table, JSON or CSV form.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain rejection, 3 verification
//! failure (the report is still written in full).

// Negated comparisons are how NaN inputs get rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod number;
pub mod report;

use std::io::Write;

use args::{Cli, Command, Format, OutputArgs};
use error::{CliError, CliResult};
use report::Render;

/// Renders the whole report into memory, then writes it in one piece.
fn emit<R: Render>(report: &R, output: &OutputArgs, stdout: &mut dyn Write) -> CliResult<()> {
    let mut buf = Vec::new();
    match output.format {
        Format::Table => report.write_table(&mut buf)?,
        Format::Json => report.write_json(&mut buf)?,
        Format::Csv => report.write_csv(&mut buf)?,
    }
    match &output.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => stdout.write_all(&buf)?,
    }
    Ok(())
}

fn emit_checked<R: Render>(
    (report, failed): (R, Option<String>),
    output: &OutputArgs,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    emit(&report, output, stdout)?;
    match failed {
        Some(what) => Err(CliError::Verification(what)),
        None => Ok(()),
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Spectrum(a) => emit_checked(commands::spectrum(a)?, &a.output, stdout),
        Command::Wavefunction(a) => emit(&commands::wavefunction(a)?, &a.output, stdout),
        Command::Verify(a) => emit_checked(commands::verify(a)?, &a.output, stdout),
        Command::Quadcheck(a) => emit(&commands::quadcheck(a)?, &a.output, stdout),
    }
}
