use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "flagcoh",
    version,
    about = "Exact homology, character and filtration computations in positive characteristic"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Write the verdict stream as JSON
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Write dimension tables as CSV
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,

    /// Worker threads (default: all cores; 1 runs sequentially)
    #[arg(long, global = true, value_name = "N")]
    pub parallel: Option<usize>,

    /// Record wall-clock time per verdict (makes JSON non-reproducible)
    #[arg(long, global = true)]
    pub timing: bool,

    /// Suppress the table on standard output
    #[arg(long, global = true)]
    pub quiet: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// The binomial chain complexes C(w)
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Stable cohomology of hooks
    #[command(subcommand)]
    Stable(StableCmd),
    /// Cohomology of divided powers via the incidence correspondence
    #[command(subcommand)]
    Incidence(IncidenceCmd),
    /// Determinantal ideals of 2 x n matrices
    #[command(subcommand)]
    Det(DetCmd),
    /// Character ring constructors
    #[command(subcommand)]
    Char(CharCmd),
    /// Run a grid of commands from a TOML file
    Sweep {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum ComplexCmd {
    /// Homology dimensions over F_p
    Homology {
        /// Comma-separated w0,...,wd
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        prime: u64,
    },
    /// Brute-force homology of C(1^{d+1}) against the closed formula
    Theorem {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// C(w0, 1^d) against C(-w0-2d, 1^d) and its Lucas shift
    Involution {
        #[arg(long, allow_negative_numbers = true)]
        w0: i64,
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Consequences of the short exact sequence splitting edge i+1
    SesCheck {
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        split: usize,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum StableCmd {
    /// H^j_st for the hook attached to (w0, 1^d)
    Hook {
        #[arg(long)]
        w0: i64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        prime: u64,
    },
    /// Homology of C(w0, 1^d) against C(w0 + p^r, 1^d)
    Periodicity {
        #[arg(long, allow_negative_numbers = true)]
        w0: i64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        r: u32,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum IncidenceFormula {
    H1Theorem,
    SmallWeights,
    Char2,
}

impl IncidenceFormula {
    pub fn name(self) -> &'static str {
        match self {
            IncidenceFormula::H1Theorem => "h1-theorem",
            IncidenceFormula::SmallWeights => "small-weights",
            IncidenceFormula::Char2 => "char2",
        }
    }
}

#[derive(Subcommand, Debug, Clone)]
pub enum IncidenceCmd {
    /// Characters of H^0 and H^1 of D^d R(e) on P^{n-1}
    Chars {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        e: i64,
        #[arg(long)]
        prime: u64,
        /// Compare H^1 against a closed formula
        #[arg(long, value_enum)]
        compare: Option<IncidenceFormula>,
        /// Compare dimensions only
        #[arg(long)]
        dims_only: bool,
        /// Scan every multidegree instead of one per orbit
        #[arg(long)]
        no_symmetry: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum DetCmd {
    /// Character of (I^i / I^{i+1}) in bidegree (a, b)
    Filtration {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        prime: u64,
        /// Work in k[x, y] instead of the quotient by p-th powers
        #[arg(long)]
        classical: bool,
        /// Compare against the two-row Schur polynomial
        #[arg(long)]
        compare: bool,
    },
    /// Leading monomials of (I^b)_(a,b) against tableau monomials
    LeadTerms {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        classical: bool,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CharCmd {
    /// Nim polynomial N_m
    Nim {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: usize,
    },
    /// s_(a,b), or the q-truncated version
    Schur {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: usize,
    },
}
