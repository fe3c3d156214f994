//! `hapdisc`: generate sequences, measure HAP discrepancy, search for
//! extremal sequences and run the numerical experiments from the command
//! line. Exit codes: 0 success, 1 a checked property fails, 2 bad input,
//! 3 a resource cap stopped a search.

mod commands;
mod output;
mod seqfile;
mod specs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Cap(String),
}

impl From<hapdisc::Error> for CliError {
    fn from(e: hapdisc::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }
}

/// What a subcommand produced, and the exit code to report after writing it.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

#[derive(Debug, Parser)]
#[command(name = "hapdisc", version, about = "Discrepancy along homogeneous arithmetic progressions")]
pub struct Cli {
    /// Master seed; every random choice is drawn from a named stream derived from it.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Construction {
    /// A Dirichlet character (--q, --index).
    Character,
    /// The Borwein-Choi-Coons function: the Legendre symbol mod --q lifted with value +1 at q.
    Bcc,
    /// As bcc with value −1 at q.
    BccVariant,
    /// f(3^a m) = χ₃(m) e_a, written sparsely as n,coordinate,re,im CSV rows.
    VectorBcc,
    /// The random ternary model with --k random signs.
    RandomBcc,
    /// f(j·D! + k) = (−1)^j f(k).
    FactorialAlt,
    /// χ₂·h for the prime-power overrides in --overrides.
    Chi2Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GrowthConstruction {
    Bcc,
    BccVariant,
    VectorBcc,
    Constant,
    FactorialAlt,
    Character,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModeArg {
    General,
    Cm,
}

impl From<ModeArg> for hapdisc::search::Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::General => hapdisc::search::Mode::General,
            ModeArg::Cm => hapdisc::search::Mode::CompletelyMultiplicative,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Materialise a construction as a seqfile.
    Gen {
        #[arg(value_enum)]
        construction: Construction,
        /// Number of terms.
        #[arg(long = "N", alias = "n")]
        n: Option<u64>,
        /// Modulus (character) or base prime (bcc, bcc-variant).
        #[arg(long, default_value_t = 3)]
        q: u64,
        /// Position of the character in enumeration order (0 is principal).
        #[arg(long, default_value_t = 1)]
        index: usize,
        /// Number of random signs (random-bcc).
        #[arg(long, default_value_t = 6)]
        k: usize,
        /// Overrides h(p^j) = ±1 as p:j:sign, comma separated (chi2-family).
        #[arg(long, default_value = "")]
        overrides: String,
    },
    /// HAP discrepancy of a seqfile.
    Disc {
        file: PathBuf,
        /// Also list the supremum along each difference d.
        #[arg(long)]
        per_d: bool,
    },
    /// Discrepancy at several lengths, with normalised columns.
    Growth {
        #[arg(value_enum)]
        construction: GrowthConstruction,
        /// Lengths, comma separated.
        #[arg(long = "Ns", alias = "ns", value_delimiter = ',')]
        ns: Vec<u64>,
        /// Alternatively, lengths base^1, …, base^k-max.
        #[arg(long)]
        base: Option<u64>,
        #[arg(long)]
        k_max: Option<u32>,
        /// Base of the logarithm in the normalised columns.
        #[arg(long, default_value_t = std::f64::consts::E)]
        log_base: f64,
        /// Modulus and index for the character construction.
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        index: usize,
    },
    /// Depth-first search for the longest sequence with discrepancy ≤ C.
    Search {
        #[arg(long = "C", alias = "bound")]
        bound: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::General)]
        mode: ModeArg,
        #[arg(long, default_value_t = hapdisc::search::DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long, default_value_t = hapdisc::search::DEFAULT_NODE_LIMIT)]
        node_limit: u64,
        /// Seconds.
        #[arg(long, default_value_t = hapdisc::search::DEFAULT_TIME_LIMIT.as_secs())]
        time_limit: u64,
        /// Write the witness as a seqfile here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// DIMACS CNF whose models are the length-N sequences of discrepancy ≤ C.
    Cnf {
        #[arg(long = "N", alias = "n")]
        n: usize,
        #[arg(long = "C", alias = "bound")]
        bound: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::General)]
        mode: ModeArg,
    },
    /// Check that a ±1 seqfile has discrepancy ≤ C (exit 1 if not).
    Verify {
        file: PathBuf,
        #[arg(long = "C", alias = "bound")]
        bound: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::General)]
        mode: ModeArg,
    },
    /// Pretentious distance D(f, g; X), and the triangle residual with --h.
    Pretend {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        x: f64,
    },
    /// Euler product ∏_{p ≤ P} (1 − h(p)/p^s)^{-1} at s = 1 + 1/log X.
    Series {
        #[arg(long, default_value = "one")]
        h: String,
        #[arg(long)]
        x: f64,
        /// Prime cutoff P (defaults to X).
        #[arg(long)]
        truncation: Option<f64>,
    },
    /// Logarithmic correlation and window variance of a seqfile.
    Corr {
        file: PathBuf,
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 1)]
        h1: usize,
        #[arg(long, default_value_t = 2)]
        h2: usize,
        /// Window length H for the variance column.
        #[arg(long, default_value_t = 1)]
        window: usize,
    },
    /// The frequency distribution ‖F̂(ξ)‖² and one sample of g_X.
    Reduce {
        #[arg(long)]
        construction: String,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long = "M", alias = "modulus")]
        modulus: usize,
    },
    /// Both sides of the second-moment identity for F.
    Identity {
        /// A named sequence, or `random:<D>` for random unit vectors.
        #[arg(long)]
        construction: String,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        #[arg(long = "M", alias = "modulus")]
        modulus: usize,
        #[arg(long)]
        n: u64,
    },
    /// Monte Carlo second moment of the random ternary model.
    Mc {
        #[arg(long, value_delimiter = ',')]
        n: Vec<u64>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
    },
    /// The adversarial prefix of the random ternary model.
    Adversary {
        /// Signs ε_0, …, ε_k (ε_0 = +1); drawn from the seed when absent.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        eps: Vec<String>,
        #[arg(long, default_value_t = 12)]
        k: usize,
    },
    /// Positive semi-definiteness of ∑ c (x_d + ⋯ + x_md)² − ∑ b_n x_n².
    Qform {
        #[arg(long = "N", alias = "n")]
        n: usize,
        /// Weights m:d:c, comma separated.
        #[arg(long, value_delimiter = ',')]
        c: Vec<String>,
        /// b_1, …, b_N (or a single value used for all n).
        #[arg(long, value_delimiter = ',')]
        b: Vec<f64>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        allow_large: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => std::fs::write(path, &out.text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{}", out.text),
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hapdisc: {e}");
            ExitCode::from(e.code())
        }
    }
}
