//! Command-line front end: load a curve file, run one analysis, write
//! CSV / OBJ / JSON.

pub mod args;
pub mod commands;
pub mod mesh;
pub mod output;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use focal_core::error::ErrorKind;
use focal_core::{parse_curve, Curve, FocalError};
use thiserror::Error;

use args::{Cli, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Focal(#[from] FocalError),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Focal(e) => match e.kind() {
                ErrorKind::Usage => EXIT_USAGE,
                ErrorKind::Numeric => EXIT_NUMERIC,
            },
            CliError::Io(_) | CliError::Internal(_) => EXIT_NUMERIC,
        }
    }
}

fn load(cli: &Cli, cfg: &RunConfig) -> Result<Curve, CliError> {
    let text = std::fs::read_to_string(&cli.curve)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", cli.curve.display())))?;
    let mut def = parse_curve(&text)?;
    if let Some(space) = cli.space {
        def = def.with_space(space)?;
    }
    Ok(Curve::with_tolerances(def, cfg.tolerances)?)
}

/// Run the command line `args` (program name first); returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = RunConfig::from_cli(&cli)
        .map_err(CliError::Usage)
        .and_then(|cfg| {
            let curve = load(&cli, &cfg)?;
            let mut ctx = commands::Ctx {
                cli: &cli,
                cfg,
                curve,
                out: &mut *out,
                err: &mut *err,
            };
            commands::dispatch(&mut ctx)
        });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
