//! Command-line front end: reads game or coefficient documents as JSON,
//! runs transforms, approximations, index computations, evaluations, and a
//! verification battery, and writes structured results to standard output.
//!
//! Exit status: 0 on success, 2 on parse/validation errors, 1 when the
//! `verify` battery reports a failure.

mod commands;
mod document;
mod rational;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::VerifyOptions;
use crate::document::{parse_document, Document};

#[derive(Debug)]
pub enum CliError {
    /// Bad input or arguments; exits with status 2.
    Validation(String),
    /// The verification battery found a failing check; the report is still
    /// printed and the process exits with status 1.
    Verification(String),
}

#[derive(Parser)]
#[command(
    name = "lovasz",
    version,
    about = "Exact least-squares approximation of Lovász extensions and the induced interaction indices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Input document (JSON); standard input when omitted.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum ApproxMethod {
    /// Closed-form projection coefficients.
    Closed,
    /// Degree-by-degree recurrence chain.
    Recursive,
    /// Exact dense normal-equations solve (n ≤ 10).
    Oracle,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum IndexChoice {
    /// Banzhaf interaction index.
    Banzhaf,
    /// Interaction index induced by the min-polynomial approximations.
    Im,
    /// Shapley power index (per player).
    ShapleyPower,
    /// Banzhaf power index (per player).
    BanzhafPower,
    /// Power restriction of the im index (per player).
    ImPower,
}

impl IndexChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            IndexChoice::Banzhaf => "banzhaf",
            IndexChoice::Im => "im",
            IndexChoice::ShapleyPower => "shapley-power",
            IndexChoice::BanzhafPower => "banzhaf-power",
            IndexChoice::ImPower => "im-power",
        }
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum EvalForm {
    /// Min-polynomial (Lovász extension) evaluation.
    Lovasz,
    /// Multilinear polynomial evaluation.
    Multilinear,
}

#[derive(Subcommand)]
enum Command {
    /// Convert game values to Möbius coefficients.
    Mobius(InputArg),
    /// Convert Möbius coefficients back to game values.
    Zeta(InputArg),
    /// Best bounded-degree approximation of the Lovász extension.
    Approx {
        #[command(flatten)]
        input: InputArg,
        /// Degree bound.
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = ApproxMethod::Closed)]
        method: ApproxMethod,
    },
    /// Power or interaction index values.
    Index {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, value_enum)]
        kind: IndexChoice,
        /// Single coalition such as "1,3"; omit for the full table.
        #[arg(long)]
        subset: Option<String>,
    },
    /// Recover Möbius coefficients from a full "im" interaction table.
    Inverse(InputArg),
    /// Evaluate the extension at a point of the unit cube.
    Eval {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated coordinates, e.g. "0.5,0.5,0.5,0.5".
        #[arg(long)]
        point: String,
        #[arg(long, value_enum)]
        form: EvalForm,
    },
    /// Run the verification battery; nonzero exit on any failing check.
    Verify {
        #[command(flatten)]
        input: InputArg,
        /// Degree used for the projection checks.
        #[arg(long)]
        degree: usize,
        /// Monte Carlo samples per inner-product check.
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        /// Seed for all randomness in the battery.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Perturb one projected coefficient to force an orthogonality
        /// failure (negative control).
        #[arg(long, hide = true)]
        debug_corrupt: bool,
    },
}

fn read_input(arg: &InputArg) -> Result<Document, CliError> {
    let text = match &arg.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| {
            CliError::Validation(format!("cannot read {}: {e}", path.display()))
        })?,
        None => {
            let mut buffer = String::new();
            std::io::stdin()
                .read_to_string(&mut buffer)
                .map_err(|e| CliError::Validation(format!("cannot read standard input: {e}")))?;
            buffer
        }
    };
    parse_document(&text).map_err(CliError::Validation)
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Mobius(input) => commands::cmd_mobius(&read_input(&input)?),
        Command::Zeta(input) => commands::cmd_zeta(&read_input(&input)?),
        Command::Approx {
            input,
            degree,
            method,
        } => commands::cmd_approx(&read_input(&input)?, degree, method),
        Command::Index {
            input,
            kind,
            subset,
        } => commands::cmd_index(&read_input(&input)?, kind, subset.as_deref()),
        Command::Inverse(input) => commands::cmd_inverse(&read_input(&input)?),
        Command::Eval { input, point, form } => {
            commands::cmd_eval(&read_input(&input)?, &point, form)
        }
        Command::Verify {
            input,
            degree,
            samples,
            seed,
            debug_corrupt,
        } => commands::cmd_verify(
            &read_input(&input)?,
            &VerifyOptions {
                degree,
                samples,
                seed,
                corrupt: debug_corrupt,
            },
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(CliError::Validation(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Verification(report)) => {
            print!("{report}");
            ExitCode::from(1)
        }
    }
}
