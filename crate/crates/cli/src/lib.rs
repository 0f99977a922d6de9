//! The `svf` command line: evaluate, verify, bench.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 pole or degenerate
//! input on `eval`, 3 identity failures on `verify`.

pub mod bench;
pub mod eval;
pub mod params;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use svf_core::verify::{run_all, run_suite, Suite, VerifyConfig};

use crate::bench::{run_bench, write_csv, SizeRange};
use crate::eval::{evaluate, EvalResult, Method, Quantity};
use crate::params::ParamFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Largest `--max-n` accepted by `verify`.
pub const MAX_VERIFY_SIZE: usize = 12;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Singular(svf_core::Error),
    Io(std::io::Error),
}

impl From<svf_core::Error> for CliError {
    fn from(e: svf_core::Error) -> Self {
        if e.is_singular() {
            CliError::Singular(e)
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Exact six-vertex partition functions and identity checks.
#[derive(Debug, Parser)]
#[command(name = "svf", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity from a JSON parameter file
    Eval {
        #[arg(value_enum)]
        quantity: Quantity,
        /// Defaults to the first method listed for the quantity
        #[arg(long, value_enum)]
        method: Option<Method>,
        #[arg(long)]
        params: PathBuf,
        /// Also print a rounded decimal
        #[arg(long)]
        float: bool,
        /// Decimal places for --float
        #[arg(long, default_value_t = 12, requires = "float")]
        digits: usize,
    },
    /// Run randomized exact identity suites
    Verify {
        /// Suite name, or `all`
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 25)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
    /// Time contraction against closed forms
    Bench {
        #[arg(long, value_enum)]
        quantity: Quantity,
        /// Inclusive range `A..B`
        #[arg(long)]
        sizes: SizeRange,
        #[arg(long, value_enum, default_value = "contraction")]
        method: Method,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct SingularReport<'a> {
    error: &'static str,
    factor: Option<&'a str>,
    context: Option<&'a str>,
    message: String,
}

/// Parses `args` (program name first) and runs the command. Reports go to
/// `out`, diagnostics to `err`; the return value is the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are not errors
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(CliError::Singular(e)) => {
            let (kind, factor, context) = match &e {
                svf_core::Error::Pole { factor, context } => ("pole", Some(factor.as_str()), Some(*context)),
                svf_core::Error::Degenerate { factor, context } => {
                    ("degenerate", Some(factor.as_str()), Some(*context))
                }
                _ => ("division-by-zero", None, None),
            };
            let report = SingularReport {
                error: kind,
                factor,
                context,
                message: e.to_string(),
            };
            let _ = writeln!(out, "{}", to_json(&report));
            EXIT_SINGULAR
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval {
            quantity,
            method,
            params,
            float,
            digits,
        } => {
            let method = quantity.resolve_method(method)?;
            let file = ParamFile::load(&params)?;
            let value = evaluate(quantity, method, &file)?;
            let result = EvalResult {
                quantity,
                method,
                float: float.then(|| value.to_decimal(digits)),
                value,
                params: &file,
            };
            writeln!(out, "{}", to_json(&result))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            max_n,
        } => {
            if !(1..=MAX_VERIFY_SIZE).contains(&max_n) {
                return Err(CliError::Input(format!(
                    "--max-n must lie in 1..={MAX_VERIFY_SIZE}, got {max_n}"
                )));
            }
            let config = VerifyConfig { trials, seed, max_n };
            let passed = if suite == "all" {
                let report = run_all(&config);
                writeln!(out, "{}", to_json(&report))?;
                report.passed()
            } else {
                let suite = Suite::from_name(&suite).ok_or_else(|| {
                    let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                    CliError::Input(format!(
                        "unknown suite {suite:?}; expected all or one of: {}",
                        names.join(", ")
                    ))
                })?;
                let report = run_suite(suite, &config);
                writeln!(out, "{}", to_json(&report))?;
                report.passed()
            };
            Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Bench {
            quantity,
            sizes,
            method,
            out: path,
        } => {
            let rows = run_bench(quantity, sizes, method)?;
            match path {
                Some(path) => {
                    let mut file = std::fs::File::create(&path)
                        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", path.display())))?;
                    write_csv(&rows, &mut file)?;
                }
                None => write_csv(&rows, out)?,
            }
            Ok(EXIT_OK)
        }
    }
}
