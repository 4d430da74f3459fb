//! `cstar`: compute spectra, classes, functional calculus, quotients and
//! characters of finite commutative C*-algebra elements, or verify the laws
//! of the theory on generated instances.

mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::Calculus;
use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "cstar", version, about = "Finite commutative C*-algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Numerical tolerance
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Seed for generated instances
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest space size enumerated by `verify`
    #[arg(long, global = true, default_value_t = 8)]
    max_size: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct Input {
    /// Path to an interchange document
    #[arg(long)]
    input: Option<String>,

    /// Inline interchange document
    #[arg(long, conflicts_with = "input")]
    doc: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the spectrum of the element
    Spectrum(Input),
    /// Report self-adjoint, unitary, projection and positive flags
    Classify(Input),
    /// Apply a polynomial or a named function to the element
    Calculus {
        #[command(flatten)]
        input: Input,
        /// Ascending coefficients, each `re` or `re:im`, e.g. `1,0,2` for 1 + 2z^2
        #[arg(long, conflicts_with = "function", required_unless_present = "function", allow_hyphen_values = true)]
        poly: Option<String>,
        /// One of exp, log, sqrt, sin, cos, abs, conj, inv
        #[arg(long)]
        function: Option<String>,
    },
    /// Project the element to the quotient by the ideal vanishing on the given labels
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Comma-separated labels of the closed set
        #[arg(long, value_delimiter = ',', required = true)]
        zero_set: Vec<String>,
    },
    /// Evaluate every character on the element
    Characters(Input),
    /// Run the law suite; an optional document adds its algebra as an instance
    Verify(Input),
}

#[derive(Debug)]
pub enum Failure {
    Invalid(String),
    Law(String),
}

impl From<cstar_core::Error> for Failure {
    fn from(e: cstar_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn run(cli: &Cli, report: &mut Report) -> Result<(), Failure> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Invalid(format!("--tol must be positive, got {}", cli.tol)));
    }
    if cli.max_size == 0 {
        return Err(Failure::Invalid("--max-size must be at least 1".into()));
    }
    let load = |i: &Input| commands::load(i.input.as_deref(), i.doc.as_deref());
    match &cli.command {
        Command::Spectrum(i) => commands::spectrum_cmd(&load(i)?, cli.tol, report),
        Command::Classify(i) => commands::classify_cmd(&load(i)?, cli.tol, report),
        Command::Calculus { input, poly, function } => {
            let how = match (poly, function) {
                (Some(p), _) => Calculus::Polynomial(commands::parse_polynomial(p)?),
                (None, Some(f)) => Calculus::Named(f.clone()),
                (None, None) => unreachable!("clap requires one of them"),
            };
            commands::calculus_cmd(&load(input)?, &how, cli.tol, report)?;
        }
        Command::Quotient { input, zero_set } => commands::quotient_cmd(&load(input)?, zero_set, report)?,
        Command::Characters(i) => commands::characters_cmd(&load(i)?, report)?,
        Command::Verify(i) => {
            let extra = match (&i.input, &i.doc) {
                (None, None) => None,
                _ => Some(load(i)?),
            };
            let suite = verify::run(cli.seed, cli.max_size, cli.tol, extra.as_ref());
            let summaries = suite.summaries();
            for s in &summaries {
                report.emit(
                    || format!("[{}] {} (max defect {:.3e}): {}", if s.pass { "PASS" } else { "FAIL" }, s.law, s.defect, s.instance),
                    || json!({"law": s.law, "instance": s.instance, "defect": if s.defect.is_finite() { json!(s.defect) } else { json!(null) }, "pass": s.pass}),
                );
            }
            if let Some(bad) = summaries.iter().find(|s| !s.pass) {
                return Err(Failure::Law(format!("law {} failed; witness: {}", bad.law, bad.instance)));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(cli.format);
    let outcome = run(&cli, &mut report);
    report.print();
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Law(msg)) => {
            eprintln!("cstar: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("cstar: invalid input: {msg}");
            ExitCode::from(2)
        }
    }
}
