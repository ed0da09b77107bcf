//! `colkit`: JSON in, JSON out front-end for the colkit library.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 input error, 3 invariant violation.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "colkit", version, about = "Subspace lattices, collineations and their decompositions")]
pub struct Cli {
    /// Seed for every sampled quantity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Write a DOT Hasse diagram here (lattice verbs only).
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Scalar field; `auto` picks ℚ(i) when any input holds an {"re", "im"} object.
    #[arg(long, global = true, value_enum, default_value_t = Field::Auto)]
    pub field: Field,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Field {
    Auto,
    Rational,
    Gaussian,
}

#[derive(Args, Debug)]
pub struct LatticeArg {
    /// Lattice JSON `{"ambient": n, "nodes": [...]}`; nodes are closed under ∧ and ∨.
    #[arg(long)]
    pub lattice: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Close a family of subspaces under intersection and span.
    Closure {
        #[command(flatten)]
        input: LatticeArg,
        /// Abort when the closure exceeds this many nodes.
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// The algebra of operators leaving every node invariant.
    Alg {
        #[command(flatten)]
        input: LatticeArg,
    },
    /// Commutant of an algebra or of a list of matrices.
    Commutant {
        #[arg(long, conflicts_with = "matrices", required_unless_present = "matrices")]
        algebra: Option<PathBuf>,
        /// JSON array of matrices.
        #[arg(long)]
        matrices: Option<PathBuf>,
        /// Return the bicommutant instead.
        #[arg(long)]
        double: bool,
    },
    /// Test whether a matrix permutes the lattice.
    Collineate {
        #[command(flatten)]
        input: LatticeArg,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Automorphisms of the lattice order.
    Aut {
        #[command(flatten)]
        input: LatticeArg,
    },
    /// Shape of the lattice: chain, diamond, medial, multi-chain, ...
    Classify {
        #[command(flatten)]
        input: LatticeArg,
    },
    /// Build and verify a double-triangle realization.
    RealizeMedial {
        /// Descriptor `{"m", "v3", "v1"}`.
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        medial: Option<PathBuf>,
        /// Random realization with `m × m` blocks.
        #[arg(long)]
        random: Option<usize>,
        /// Entry height for `--random`.
        #[arg(long, default_value_t = 8)]
        height: i64,
        #[arg(long, value_enum, default_value_t = Kind::DoubleTriangle)]
        kind: Kind,
    },
    /// Factor a collineation of a medial realization as `a·w`.
    Decompose {
        #[arg(long)]
        medial: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::DoubleTriangle)]
        kind: Kind,
    },
    /// Annihilator lattice, with the node correspondence.
    Perp {
        #[command(flatten)]
        input: LatticeArg,
    },
    /// Test whether `m∘conj` permutes the lattice.
    ConjTest {
        #[command(flatten)]
        input: LatticeArg,
        /// Conjugate operator `{"matrix", "form": "m∘conj"}`.
        #[arg(long)]
        conjugate: PathBuf,
    },
    /// Volterra nest operators `V_φ` for piecewise-linear `φ`.
    Volterra {
        #[command(subcommand)]
        action: VolterraVerb,
    },
    /// Shift `Wˢ` on the bilateral shift nest or its half `k ≥ 0`.
    ShiftNest {
        #[arg(long, value_enum, default_value_t = ShiftFamilyArg::Full)]
        family: ShiftFamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Search for a vector whose cyclic subspace lies outside the lattice.
    ProbeReflexive {
        #[command(flatten)]
        input: LatticeArg,
        #[arg(long, default_value_t = 64)]
        trials: usize,
        /// Enumerate all integer vectors of this height instead (ambient ≤ 3).
        #[arg(long)]
        exhaustive: Option<i64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Kind {
    Diamond,
    DoubleTriangle,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum ShiftFamilyArg {
    Full,
    Half,
}

#[derive(Subcommand, Debug)]
pub enum VolterraVerb {
    /// Split the collineation with cut action `t ↦ φ(t)` into Grp and complement factors.
    Decompose {
        #[arg(long)]
        phi: PathBuf,
    },
    /// Apply `V_φ` to a step function.
    Apply {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        step: PathBuf,
    },
    /// Image of the cut `𝒩_t` under `V_φ`.
    Cut {
        #[arg(long)]
        phi: PathBuf,
        #[arg(long)]
        t: String,
    },
    /// Difference-quotient report for a Cantor-function approximant.
    Cantor {
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, default_value_t = 1000)]
        pairs: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
