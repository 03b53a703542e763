//! Command-line front end for `modtherm`: evaluation, verification suites,
//! benchmarks and tables.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

pub mod bench;
pub mod eval;
pub mod output;
pub mod table;
pub mod verify;

use output::{emit, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] modtherm::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage and input problems, 3 when a computation failed to converge
    /// or contradicted itself.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(modtherm::Error::Convergence { .. } | modtherm::Error::Inconsistency(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "modtherm", version, about = "Eisenstein series, Epstein zeta functions and thermal free energies")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity.
    Eval {
        quantity: String,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare an accelerated expansion with direct summation.
    Bench {
        target: String,
        /// Binary form `a,b,c` for kober-vs-direct.
        #[arg(long, value_parser = parse_form)]
        form: Option<[f64; 3]>,
        #[arg(long)]
        s: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a reference table.
    Table {
        name: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    #[arg(long)]
    pub t: Option<u32>,
    /// Point in the right half-plane, `re` or `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub b: Option<Complex64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub xi: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub w: Option<f64>,
    #[arg(long)]
    pub u: Option<f64>,
    #[arg(long)]
    pub p: Option<u32>,
    /// Moment order.
    #[arg(long)]
    pub k: Option<u32>,
    /// Binary form `a,b,c` for `a m^2 + 2 b m n + c n^2`.
    #[arg(long, value_parser = parse_form)]
    pub form: Option<[f64; 3]>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Spectrum JSON file for the mode-sum quantities.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_floats(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("bad number {p:?}: {e}")))
        .collect()
}

pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    match parse_floats(text)?.as_slice() {
        [re] => Ok(Complex64::new(*re, 0.0)),
        [re, im] => Ok(Complex64::new(*re, *im)),
        _ => Err("expected re or re,im".into()),
    }
}

pub fn parse_form(text: &str) -> Result<[f64; 3], String> {
    match parse_floats(text)?.as_slice() {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err("expected a,b,c".into()),
    }
}

/// Run a parsed command and return the process exit code.
pub fn run(cli: Cli) -> CliResult<u8> {
    match cli.command {
        Command::Eval { quantity, params, output } => {
            let record = eval::evaluate(&quantity, &params)?;
            emit(&[record], output.format.unwrap_or(Format::Json), output.out.as_deref())?;
            Ok(0)
        }
        Command::Verify { suite, output } => {
            let checks = verify::run(&suite)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            let records: Vec<_> = checks.iter().map(verify::Check::to_node).collect();
            emit(&records, output.format.unwrap_or(Format::Json), output.out.as_deref())?;
            eprintln!("{} of {} checks passed", checks.len() - failed, checks.len());
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Bench { target, form, s, output } => {
            let rows = bench::run(&target, form, s)?;
            emit(&rows, output.format.unwrap_or(Format::Csv), output.out.as_deref())?;
            Ok(0)
        }
        Command::Table { name, output } => {
            let rows = table::build(&name)?;
            emit(&rows, output.format.unwrap_or(Format::Csv), output.out.as_deref())?;
            Ok(0)
        }
    }
}
