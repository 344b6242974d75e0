use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lexikit_core::{Basis, Error, SearchBudget};

mod commands;
mod render;

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "lexikit", version, about = "Greedy p-ary lexicographic codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Omit the timing field so output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Largest coordinate index (exclusive) a search may touch.
    #[arg(
        long,
        global = true,
        env = "LEXIKIT_MAX_TOP_INDEX",
        default_value_t = SearchBudget::DEFAULT_MAX_INDEX
    )]
    max_top_index: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Lex,
    Bminus,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Engine {
    Search,
    Naive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Simplex,
    SolomonStiffler,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    #[value(name = "thm1.4")]
    TernaryD6,
    #[value(name = "p5d2")]
    P5d2,
    #[value(name = "p5d5")]
    P5d5,
}

#[derive(Args, Debug, Clone)]
pub struct CodeArgs {
    /// Prime field size.
    #[arg(long)]
    p: u32,
    /// Minimum distance.
    #[arg(long)]
    d: usize,
    /// `std` or `mod:XI,ETA`.
    #[arg(long, default_value = "std")]
    basis: Basis,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a greedy or B-greedy code and list its words.
    Gen {
        #[command(flatten)]
        code: CodeArgs,
        /// The code has p^k words.
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Lex)]
        variant: VariantArg,
        /// Delete coordinates that are zero in every word.
        #[arg(long)]
        res: bool,
        #[arg(long, value_enum, default_value_t = Engine::Search, hide = true)]
        engine: Engine,
    },
    /// Largest k for which the greedy code with p^k words is linear.
    Lindim {
        #[command(flatten)]
        code: CodeArgs,
        /// Stop after this many dimensions (default 7 for p <= 3, 3 otherwise).
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Parameters, linearity, Griesmer gap and column profile of a code.
    Analyze {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Lex)]
        variant: VariantArg,
        /// Compare the column profile with the pi_d target.
        #[arg(long)]
        pi_check: bool,
        /// Include the weight distribution.
        #[arg(long)]
        weights: bool,
    },
    /// Verify a predicted code family for B-greedy generators.
    Check {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
        /// Repetition count (simplex).
        #[arg(long)]
        d_prime: Option<usize>,
        /// Quotient in d' = p*q + r (solomon-stiffler).
        #[arg(long)]
        q: Option<usize>,
        /// Remainder in d' = p*q + r (solomon-stiffler).
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value = "std")]
        basis: Basis,
    },
    /// Linear dimension over a named grid of bases, one row per basis.
    Table {
        #[arg(long, value_enum)]
        name: TableName,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn exit_code(e: &Failure) -> u8 {
    match e {
        Failure::Usage(_) => 2,
        Failure::Core(Error::SearchBudgetExceeded { .. }) => 3,
        Failure::Core(Error::HypothesisViolated(_)) => 4,
        Failure::Core(
            Error::NotPrime(_)
            | Error::DegenerateBasis(_)
            | Error::DistanceTooSmall(_)
            | Error::ResidueOutOfRange { .. }
            | Error::Invalid(_),
        ) => 2,
        Failure::Core(_) | Failure::Failed(_) => 1,
        Failure::Rows { budget: true } => 3,
        Failure::Rows { budget: false } => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let budget = SearchBudget::new(cli.max_top_index);
    let start = Instant::now();
    let result = match cli.command {
        Command::Gen { code, k, variant, res, engine } => {
            commands::run_generate(&code, budget, k, variant, res, engine)
        }
        Command::Lindim { code, cap } => commands::run_lindim(&code, budget, cap),
        Command::Analyze { code, k, variant, pi_check, weights } => {
            commands::run_analyze(&code, budget, k, variant, pi_check, weights)
        }
        Command::Check { family, p, k, d_prime, q, r, basis } => {
            commands::run_check(family, p, k, d_prime, q, r, basis, budget)
        }
        Command::Table { name, jobs } => commands::run_table(name, jobs, budget),
    };
    let timing = (!cli.no_timing).then(|| start.elapsed());
    let (report, status) = match result {
        Ok(report) => (Some(report), None),
        Err((partial, failure)) => (partial, Some(failure)),
    };
    if let Some(report) = &report {
        print!("{}", render::render(report, cli.format, timing));
    }
    match status {
        None => ExitCode::SUCCESS,
        Some(failure) => {
            if let Some(msg) = failure.message() {
                eprintln!("lexikit: {msg}");
            }
            ExitCode::from(exit_code(&failure))
        }
    }
}
