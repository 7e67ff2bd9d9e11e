//! `clf`: sequence tables, coefficient tables, validation reports and
//! remainder studies for the Catalan-Larcombe-French numbers.
//!
//! Exit status is 0 on success, 1 when a validation check fails and 2 on a
//! usage error.

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use clf_core::validate::Method;
use clf_core::Error;

use commands::{Outcome, Which};
use output::Format;

#[derive(Parser)]
#[command(
    name = "clf",
    version,
    about = "Catalan-Larcombe-French numbers and the ratio f(n)"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// P_n, f(n) and F_n for n = 0..=n-max, each identity-checked.
    Seq {
        #[arg(long)]
        n_max: u64,
    },
    /// f(n) by one or more routes.
    F {
        #[arg(long)]
        n: u64,
        /// Route to use; repeat for several. Defaults to all.
        #[arg(long, value_parser = parse_method)]
        method: Vec<Method>,
    },
    /// Coefficient tables of the large-n expansion.
    Coeffs {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Compare numeric routes with the exact f(n) for n = 0..=n-max.
    Validate {
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Route to check; repeat for several. Defaults to all.
        #[arg(long, value_parser = parse_method)]
        method: Vec<Method>,
    },
    /// Remainder of the truncated expansion and its empirical order.
    Remainder {
        #[arg(long)]
        order: usize,
        /// Comma-separated list of n, each at least 2.
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn or_all(methods: Vec<Method>) -> Vec<Method> {
    if methods.is_empty() {
        Method::ALL.to_vec()
    } else {
        let mut m = methods;
        m.sort();
        m.dedup();
        m
    }
}

fn run(cli: Cli) -> clf_core::Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Seq { n_max } => commands::seq(n_max, format),
        Command::F { n, method } => commands::f(n, &or_all(method), format),
        Command::Coeffs { order, which } => commands::coeffs(order, which, format),
        Command::Validate { n_max, tol, method } => {
            commands::validate(n_max, tol, &or_all(method), format)
        }
        Command::Remainder { order, n_list } => commands::remainder(order, &n_list, format),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::UnsupportedOrder { .. } | Error::Domain(_) | Error::InvalidSpec(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.envelope.render().as_bytes())
                .is_err()
            {
                return ExitCode::from(1);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("clf: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
