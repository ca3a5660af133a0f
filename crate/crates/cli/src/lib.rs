//! Driver for the `iqschur` command line: argument parsing, guardrails,
//! JSON input and output, and the table cache.

pub mod cache;
mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use iqschur::tables::{TableBasis, TableRoute};

pub use commands::{run, Outcome};
pub use report::{Check, Report};

pub const MAX_N: usize = 4;
pub const MAX_R: usize = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("refusing (n, r) = ({n}, {r}): limits are 1 <= n <= {MAX_N}, 0 <= r <= {MAX_R}; pass --unsafe-scale to override")]
    Scale { n: usize, r: usize },
    #[error(transparent)]
    Core(#[from] iqschur::Error),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

pub mod exit {
    pub const PASS: i32 = 0;
    /// Unexpected internal failure, including cache corruption that could not be repaired.
    pub const INTERNAL: i32 = 1;
    pub const VERIFICATION_FAILED: i32 = 2;
    pub const INPUT: i32 = 3;
    pub const SCALE: i32 = 4;
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use iqschur::Error as E;
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Scale { .. } => exit::SCALE,
            CliError::Core(
                E::Malformed(_) | E::Domain(_) | E::NotCentroSymmetric | E::NotSignedPermutation | E::Misuse(_),
            ) => exit::INPUT,
            CliError::Core(_) | CliError::Cache(_) | CliError::Output(_) => exit::INTERNAL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "iqschur",
    version,
    about = "Structure constants and dualities for the i-quantum Schur algebras of type B"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: JobConfig,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Debug, Args)]
pub struct JobConfig {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    /// Table cache directory (default: `<tmp>/iqschur-cache`).
    #[arg(long, global = true, env = cache::CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Neither read nor write the table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Allow n > 4 or r > 4.
    #[arg(long, global = true)]
    pub unsafe_scale: bool,
}

impl JobConfig {
    pub fn cache_dir(&self) -> PathBuf {
        self.cache_dir.clone().unwrap_or_else(|| std::env::temp_dir().join("iqschur-cache"))
    }

    pub fn guard(&self, n: usize, r: usize) -> Result<(), CliError> {
        if n == 0 {
            return Err(CliError::Input("n must be at least 1".into()));
        }
        if !self.unsafe_scale && (n > MAX_N || r > MAX_R) {
            return Err(CliError::Scale { n, r });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    Normalized,
    Standard,
}

impl From<BasisArg> for TableBasis {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::Normalized => TableBasis::Normalized,
            BasisArg::Standard => TableBasis::Standard,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Oracle,
    Formula,
}

impl From<RouteArg> for TableRoute {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Oracle => TableRoute::Oracle,
            RouteArg::Formula => TableRoute::Formula,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct Rank {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: usize,
}

/// Element arguments accept inline JSON, a file path, or `-` for stdin.
#[derive(Clone, Debug, Subcommand)]
pub enum Verb {
    /// Product of two elements of S(n, r) given in the basis [A].
    Mul {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value = "oracle")]
        route: RouteArg,
        /// Basis of the printed product.
        #[arg(long, value_enum, default_value = "normalized")]
        basis: BasisArg,
    },
    /// The element A(j, r) of S(n, r).
    Ajr {
        /// Zero-diagonal matrix as JSON.
        #[arg(long)]
        a: String,
        /// Weight, comma separated: reduced (n+1 entries) or raw (2n+1 entries).
        #[arg(long, allow_hyphen_values = true)]
        j: String,
        #[arg(long)]
        r: usize,
    },
    /// Product in the stabilized algebra.
    StabMul {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The monomial m^{A, j} and its triangular expansion.
    ExpandMonomial {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "")]
        j: String,
    },
    /// Writes [A] through integral monomials, or A(j) through generators when `--j` is given.
    Expand {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        j: Option<String>,
    },
    /// Runs one verification sweep; exit 2 if any check fails.
    Verify {
        #[command(subcommand)]
        what: VerifyVerb,
    },
    /// Lists index sets.
    Enumerate {
        #[command(subcommand)]
        what: EnumerateVerb,
    },
    /// Writes structure-constant tables as JSON.
    Dump {
        #[command(subcommand)]
        what: DumpVerb,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum VerifyVerb {
    /// Defining relations through the stabilized algebra, plus the closing coefficient table.
    Relations {
        #[arg(long)]
        n: usize,
    },
    /// Formula-route multiplication table against the double-coset oracle.
    Formulas {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, value_enum, default_value = "normalized")]
        basis: BasisArg,
    },
    /// Hecke module relations, commutation, and the commutant dimension.
    Duality {
        #[command(flatten)]
        rank: Rank,
        /// Random specializations for the commutant rank.
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Also eliminate exactly over Q(v).
        #[arg(long)]
        exact: bool,
    },
    /// The tensor-space map intertwines the i-quantum action with the twisted Schur action (needs n >= r).
    Intertwiner {
        #[command(flatten)]
        rank: Rank,
    },
    /// Unitriangularity and integrality of the integral monomials.
    Integrality {
        #[command(flatten)]
        rank: Rank,
    },
    /// Binomial products of the diagonal generators against the idempotents.
    // `lemma63` is the verb name scripts use.
    #[command(alias = "lemma63")]
    Idempotents {
        #[command(flatten)]
        rank: Rank,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum EnumerateVerb {
    /// Centro-symmetric matrices indexing the basis of S(n, r).
    Xi {
        #[command(flatten)]
        rank: Rank,
    },
}

#[derive(Clone, Debug, Subcommand)]
pub enum DumpVerb {
    /// Products of all composable basis pairs; cached by content hash.
    Table {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, value_enum, default_value = "normalized")]
        basis: BasisArg,
        #[arg(long, value_enum, default_value = "oracle")]
        route: RouteArg,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}
