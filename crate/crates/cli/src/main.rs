//! `sandwich`: command-line front end.
//!
//! Exit codes: 0 yes / sat / holds, 1 no / unsat / fails, 2 usage or input
//! error, 3 unknown or budget exhausted. Lines starting with `::` are the
//! machine-readable part of the output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod crosscheck;

/// Default seed of the randomized suites.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Environment variable holding the default search budget.
pub const BUDGET_ENV: &str = "SANDWICH_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "sandwich", version, about = "Build, solve and certify promise-CSP sandwiches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the two sandwich families.
    #[command(subcommand)]
    Construct(Construct),
    /// Search for a homomorphism (lexicographically least).
    Hom {
        /// Structure or instance file.
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Compute the core of a small structure.
    Core {
        #[arg(long = "in")]
        input: PathBuf,
        /// Largest domain accepted.
        #[arg(long, default_value_t = sandwich::DEFAULT_CORE_LIMIT)]
        limit: usize,
    },
    /// Search for a cyclic polymorphism A^p -> B.
    CyclicPolym {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        p: usize,
        /// Node and selection limit (default from SANDWICH_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        /// Accept a composite arity.
        #[arg(long)]
        allow_composite: bool,
    },
    /// Check an obstruction witness
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Polynomial-time solvers
    #[command(subcommand)]
    Solve(SolveCmd),
    /// Decide PCSP(A, B) on an instance through an affine sandwiched C.
    Pcsp {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        via: PathBuf,
        #[arg(long)]
        instance: PathBuf,
    },
    /// Brute-force claim checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Write or check no-small-sandwich certificates
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Undirected graph CSP classification
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Digraph CSP tools
    #[command(subcommand)]
    Digraph(DigraphCmd),
    /// Seeded randomized agreement suites for the polynomial solvers.
    Crosscheck {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Cases per suite.
        #[arg(long, default_value_t = 300)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Tables `[n]^p -> [.]`: projections, non-cyclic tables, linear tables.
    Thm1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// Enumerate intensional relations up to this many tuples.
        #[arg(long, default_value_t = sandwich::DEFAULT_MATERIALIZE_THRESHOLD)]
        materialize: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The ternary second-difference family over a prime p.
    Thm2 {
        #[arg(long)]
        p: usize,
        /// Accept p = 3 and p = 5.
        #[arg(long)]
        allow_small: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    /// Check an obstruction witness; prints a certificate when valid.
    Verify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SolveCmd {
    /// Solve an instance over an affine structure by Gaussian elimination.
    Affine {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        instance: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Properties of cyclic tables `(sum a_i x_i mod p) mod n`.
    Lemma32(NP),
    /// Nullspace, particular solution, shift and constant-tuple claims.
    Thm2Claims {
        #[arg(long)]
        p: usize,
    },
    /// The maps g and h of the first family.
    Thm31(NP),
    /// Symmetric structures map into the symmetric part.
    Lemma41 {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
}

#[derive(Args, Debug)]
struct NP {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
}

#[derive(Subcommand, Debug)]
enum CertifyCmd {
    /// Certificate that no structure smaller than p between A and B is tractable.
    NoSmallSandwich {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long, conflicts_with = "exhaustive", required_unless_present = "exhaustive")]
        witness: Option<PathBuf>,
        /// Use an exhaustive cyclic search as evidence.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a certificate file from its text alone.
    Check {
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Classify CSP(G) for a symmetric graph.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DigraphCmd {
    /// Largest smooth induced subgraph.
    SmoothPart {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Classify CSP(G) for a smooth digraph via its core.
    Classify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Decide X -> T for a disjoint union of directed cycles T.
    SolveCycles {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
}

/// What a command concluded; mapped to the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    /// Precondition of a check not met by the input.
    Input,
    Unknown,
}

impl Verdict {
    fn code(self) -> u8 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Input => 2,
            Verdict::Unknown => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(v) => ExitCode::from(v.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .downcast_ref::<sandwich::Error>()
                .is_some_and(|e| matches!(e, sandwich::Error::Budget(_)));
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}
