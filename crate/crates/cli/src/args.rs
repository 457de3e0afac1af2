use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Certify A_n spin chains and spin ladders, and build, analyse and
/// simulate the Markov chains derived from them.
///
/// State indices in all output are 1-based with site 1 most significant.
/// Exit status: 0 when every check passes, 1 when a check fails, 2 on
/// invalid flags or a size guard.
#[derive(Debug, Parser)]
#[command(name = "lattice-markov", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full identity suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[command(flatten)]
        model: ModelArgs,
        /// Tolerance for algebraic identities [default: 1e-10 for A_n, 1e-8 for ladder identities]
        #[arg(long, allow_hyphen_values = true)]
        tol: Option<f64>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an operator or chain matrix.
    Build {
        #[arg(value_enum)]
        target: Model,
        #[arg(long, value_enum)]
        kind: BuildKind,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalues of the chain Hamiltonian (A_n) or of the summed
    /// symmetric ladder operator.
    Spectrum {
        #[arg(value_enum)]
        target: Model,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1e-10, allow_hyphen_values = true)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chain matrix with its absorbing states and closed sets.
    Markov {
        #[arg(value_enum)]
        target: Model,
        #[arg(long, value_enum, default_value_t = ChainArg::P)]
        kind: ChainArg,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample one trajectory and summarize its occupation.
    Simulate {
        #[arg(value_enum)]
        target: Model,
        #[arg(long, value_enum, default_value_t = ChainArg::Q)]
        kind: ChainArg,
        #[command(flatten)]
        model: ModelArgs,
        /// Initial state, 1-based.
        #[arg(long)]
        init: usize,
        /// Steps for a transition matrix.
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        /// Time horizon for an intensity matrix.
        #[arg(long, default_value_t = 1000.0)]
        tmax: f64,
        #[arg(long, env = "LATTICE_MARKOV_SEED", default_value_t = 0)]
        seed: u64,
        /// Fraction of steps or time discarded before counting occupation.
        #[arg(long, default_value_t = 0.1)]
        burn_in: f64,
        /// Write the trajectory CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Rank of A_n.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Number of sites (A_n) or rungs (ladder).
    #[arg(short = 'L', long = "L", default_value_t = 3)]
    pub sites: usize,
    #[arg(long, default_value_t = 16.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// First-family parameters, used by `--kind H0`.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub d: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub f: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    An,
    Ladder,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    An,
    Ladder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    /// Chain Hamiltonian (A_n) or the two-rung operator at (a, b, c) (ladder).
    #[value(name = "H")]
    H,
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
    /// Two-site Temperley-Lieb generator (A_n only).
    #[value(name = "E")]
    E,
    /// Two-rung operator with non-negative entries (ladder only).
    #[value(name = "Hpp")]
    Hpp,
    /// First ladder family at (d, f).
    #[value(name = "H0")]
    H0,
    /// Fixed-coefficient ladder operator.
    #[value(name = "Hladder")]
    Hladder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChainArg {
    #[value(name = "P")]
    P,
    #[value(name = "Q")]
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}
