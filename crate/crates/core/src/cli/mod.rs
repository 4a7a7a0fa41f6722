//! Command-line front end: flag and config parsing, the four commands and
//! their JSON/CSV records.
//!
//! Exit codes: 0 success, 2 invalid input (including a violated
//! normalization window), 3 numerical failure, 4 dynamical blow-up, 1 I/O.

mod args;
mod commands;
mod config;
mod record;

pub use args::{Cli, CommandArgs, CommandKind, Flags, OutputFormat};
pub use commands::{cmd_check, cmd_evolve, cmd_gram, cmd_norm, execute, provenance};
pub use config::{
    parse_coeffs, parse_labels, FileConfig, ModelSpec, RunConfig, DEFAULT_DT, DEFAULT_HALF_WIDTH, DEFAULT_POINTS,
    DEFAULT_SNAPSHOT_EVERY, DEFAULT_STEPS, DEFAULT_TOL,
};
pub use record::{
    CheckEntry, CheckResults, Component, EvolveResults, GramResults, NormEntry, NormResults, ResultRecord, Results,
};

use std::ffi::OsString;
use std::fs;
use std::io;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::models::ModelError;
use crate::pseudonorm::PseudoNormError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("blow-up: {0}")]
    BlowUp(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::BlowUp(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Invalid { .. }
            | ModelError::LabelOutOfRange { .. }
            | ModelError::NormInvalid { .. }
            | ModelError::SignViolation { .. } => CliError::Validation(e.to_string()),
            ModelError::UnresolvedNorm | ModelError::SpecialFn(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<PseudoNormError> for CliError {
    fn from(e: PseudoNormError) -> Self {
        // Classify by the innermost cause but keep the full message, which
        // carries Gram indices.
        let mut cause = &e;
        while let PseudoNormError::GramEntry { source, .. } = cause {
            cause = source;
        }
        let kind = match cause {
            PseudoNormError::Model(m) => CliError::from(m.clone()),
            PseudoNormError::Precondition(_) => CliError::Validation(String::new()),
            _ => CliError::Numerical(String::new()),
        };
        let msg = e.to_string();
        match kind {
            CliError::Validation(_) => CliError::Validation(msg),
            CliError::BlowUp(_) => CliError::BlowUp(msg),
            CliError::Io(_) => CliError::Io(msg),
            CliError::Numerical(_) => CliError::Numerical(msg),
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        let msg = e.to_string();
        match e {
            DynamicsError::Grid(_)
            | DynamicsError::BoundaryNotSmall { .. }
            | DynamicsError::GridMismatch(_)
            | DynamicsError::Precondition(_) => CliError::Validation(msg),
            DynamicsError::NonFinite(_) => CliError::Numerical(msg),
            DynamicsError::BlowUp { .. } => CliError::BlowUp(msg),
            DynamicsError::Io(_) => CliError::Io(msg),
            DynamicsError::Model(m) => CliError::from(m),
        }
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn emit(cfg: &RunConfig, record: &ResultRecord) -> Result<(), CliError> {
    match (&cfg.out, cfg.command) {
        (Some(dir), CommandKind::Evolve) => {
            fs::create_dir_all(dir).map_err(io_err)?;
            let name = match cfg.format {
                OutputFormat::Json => "record.json",
                OutputFormat::Csv => "refinement.csv",
            };
            let f = fs::File::create(dir.join(name)).map_err(io_err)?;
            record.write(io::BufWriter::new(f), cfg.format)?;
            if cfg.format == OutputFormat::Csv {
                // The record is always kept alongside the table.
                let f = fs::File::create(dir.join("record.json")).map_err(io_err)?;
                record.write(io::BufWriter::new(f), OutputFormat::Json)?;
            }
            Ok(())
        }
        (Some(path), _) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent).map_err(io_err)?;
            }
            let f = fs::File::create(path).map_err(io_err)?;
            record.write(io::BufWriter::new(f), cfg.format)
        }
        (None, _) => record.write(io::stdout().lock(), cfg.format),
    }
}

/// Parses `args`, runs one command and returns the process exit code.
pub fn run<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    let (kind, flags) = cli.command.split();
    let cfg = match RunConfig::resolve(kind, flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    if let Some(jobs) = cfg.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            log::warn!("thread pool already initialized: {e}");
        }
    }

    let start = Instant::now();
    let outcome = execute(&cfg);
    let wall_time_s = start.elapsed().as_secs_f64();
    let (results, mut errors, failure) = match outcome {
        Ok((r, notes)) => (Some(r), notes, None),
        Err(e) => (None, Vec::new(), Some(e)),
    };
    if let Some(e) = &failure {
        errors.push(e.to_string());
    }
    let record = ResultRecord {
        provenance: provenance(&cfg),
        inputs: cfg.clone(),
        results,
        errors,
        wall_time_s,
    };
    if let Err(e) = emit(&cfg, &record) {
        eprintln!("error: {e}");
        return e.exit_code();
    }
    match failure {
        Some(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        None => 0,
    }
}
