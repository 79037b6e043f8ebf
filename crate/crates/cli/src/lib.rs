//! Command-line front end: argument resolution, the five commands and their
//! JSON / CSV / table reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod settings;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{Context, DEFAULT_SEED};
use error::{CliError, Result, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use output::{Format, Output};
use settings::Settings;

/// Resolves settings and runs the selected command, without printing.
pub fn execute(cli: &Cli) -> Result<Output> {
    let settings = Settings::load(cli.config.as_deref())?;
    let ctx = Context {
        seed: settings.pick(cli.seed, "seed", DEFAULT_SEED)?,
        thresholds: settings.thresholds(&cli.thresholds)?,
        settings,
    };
    match &cli.command {
        Command::Verify(a) => commands::verify::run(&ctx, a),
        Command::Planewave(a) => commands::planewave::run(&ctx, a),
        Command::Evolve(a) => commands::evolve::run(&ctx, a),
        Command::Nonlinear(a) => commands::nonlinear::run(&ctx, a),
        Command::Torus(a) => commands::torus::run(&ctx, a),
    }
}

fn execute_and_emit(cli: &Cli, env_out: Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let settings = Settings::load(cli.config.as_deref())?;
    let format = settings.pick(cli.format, "format", Format::Table)?;
    let out_dir = settings.output_dir(cli.output_dir.clone(), env_out)?;
    let out = execute(cli)?;
    stdout
        .write_all(out.render(format).as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    if let Some(dir) = out_dir {
        out.save(&dir)?;
    }
    for f in &out.failures {
        let _ = writeln!(stderr, "FAIL {f}");
    }
    Ok(if out.passed { EXIT_PASS } else { EXIT_FAIL })
}

/// Full run: parse `args`, execute, print, save. Returns the exit code.
pub fn run<I, T>(args: I, env_out: Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_PASS
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute_and_emit(&cli, env_out, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
