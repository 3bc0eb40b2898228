//! `qmittag`: evaluate, tabulate, verify and scan q-Mittag-Leffler functions.

mod commands;
mod error;
mod targets;
mod value;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::targets::Bindings;

#[derive(Parser)]
#[command(name = "qmittag", version, about = "Extended q-Mittag-Leffler functions and q-calculus numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point and print a JSON record.
    Eval {
        /// Function identifier, e.g. q_gamma or q_ml_extended.
        target: String,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate a function over a grid of one parameter.
    Table {
        target: String,
        /// Parameter to sweep.
        #[arg(long)]
        sweep: String,
        #[arg(long, allow_hyphen_values = true)]
        start: f64,
        #[arg(long, allow_hyphen_values = true)]
        stop: f64,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "linear")]
        grid: Grid,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        common: Common,
    },
    /// Run the randomized identity suite and print a report.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Draws per identity; each identity has its own default otherwise.
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Empirical convergence scan of the extended series along |u| = fraction * radius.
    Scan {
        /// Comma-separated fractions of the convergence radius.
        #[arg(long, value_delimiter = ',', default_value = "0,0.25,0.5,0.75,0.9,0.99,1.02")]
        fractions: Vec<f64>,
        #[command(flatten)]
        params: ParamFlags,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Linear,
    Log,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Absolute and relative truncation tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_terms: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

macro_rules! param_flags {
    ($($name:ident),*) => {
        /// Function parameters. Complex values use `a+bi` syntax.
        #[derive(Args)]
        struct ParamFlags {
            $(
                #[arg(long, allow_hyphen_values = true)]
                $name: Option<String>,
            )*
        }

        impl ParamFlags {
            fn bindings(&self) -> Bindings {
                let mut b = Bindings::default();
                $(
                    if let Some(v) = &self.$name {
                        b.set(stringify!($name), v.clone());
                    }
                )*
                b
            }
        }
    };
}

param_flags!(q, u, eta, kappa, sigma, c, nu, mu, lambda, m, order, s, t, x, xi, zeta, rho, tau, kind);

impl Common {
    fn truncation(&self) -> Result<qmittag::Truncation, CliError> {
        let d = qmittag::Truncation::default();
        let tol = self.tol;
        Ok(qmittag::Truncation::new(
            tol.unwrap_or(d.abs_tol()),
            tol.unwrap_or(d.rel_tol()),
            self.max_terms.unwrap_or(d.max_terms()),
        )?)
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            let name = f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            Err(CliError::Usage(format!("--format {name} is not supported by this command")))
        }
    }

    fn emit(&self, text: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => std::fs::write(path, text)?,
            None => std::io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval { target, params, common } => {
            let format = common.format(Format::Json, &[Format::Json, Format::Csv])?;
            let out = commands::eval(&target, &params.bindings(), &common.truncation()?, format)?;
            common.emit(&out)
        }
        Command::Table { target, sweep, start, stop, count, grid, params, common } => {
            let format = common.format(Format::Csv, &[Format::Csv, Format::Json])?;
            let spec = commands::TableSpec { target, sweep, start, stop, count, grid };
            let (out, all_failed) = commands::table(&spec, &params.bindings(), &common.truncation()?, format)?;
            common.emit(&out)?;
            if all_failed {
                return Err(CliError::Numerical(qmittag::QError::DomainError(
                    "every row of the table failed".into(),
                )));
            }
            Ok(())
        }
        Command::Verify { seed, trials, common } => {
            let format = common.format(Format::Text, &[Format::Text, Format::Json])?;
            let (out, pass) = commands::verify(seed, trials, format)?;
            common.emit(&out)?;
            if pass {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
        Command::Scan { fractions, params, common } => {
            let format = common.format(Format::Csv, &[Format::Csv, Format::Json])?;
            let out = commands::scan(&fractions, &params.bindings(), &common.truncation()?, format)?;
            common.emit(&out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::VerifyFailed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
