//! `genfree`: verification suites and one-off computations for generalized
//! free products, with JSON or plain-text reports.
//!
//! Exit codes: 0 pass, 1 failed check, 2 usage or parse error, 3 resource
//! ceiling hit, 4 internal invariant violated.

mod algebra;
mod grouph_cmd;
mod report;
mod words_cmd;

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Debug, Parser)]
#[command(name = "genfree", version, about = "Exact computations for generalized free products")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Shorthand for `--format plain`.
    #[arg(long, global = true)]
    plain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Primitive words, cyclic classes and the admissible-set sieve.
    Words(words_cmd::WordsArgs),
    /// The group H, the map f, its kernel and the syzygy descent.
    Grouph(grouph_cmd::GrouphArgs),
    /// Normal forms, gradings, double cosets and nil objects.
    Algebra(algebra::AlgebraArgs),
}

fn main() {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let mut report = Report::new(echo);
    let outcome = match &cli.command {
        Command::Words(a) => words_cmd::run(a, &mut report),
        Command::Grouph(a) => grouph_cmd::run(a, &mut report),
        Command::Algebra(a) => algebra::run(a, &mut report),
    };
    let code = report.finish(outcome);
    let text = if cli.plain || cli.format == Format::Plain { report.to_plain() } else { report.to_json() + "\n" };
    // a closed pipe downstream is not an error of ours
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    std::process::exit(code);
}
