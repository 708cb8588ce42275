use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "topocode", version, about = "Graph labelings, Topcode-matrices, number-based strings and key bundles")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for randomized steps.
    #[arg(long, global = true, env = "TOPOCODE_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a labeling against a labeling family.
    Verify(VerifyArgs),
    /// Search for a labeling of a small graph.
    Search(SearchArgs),
    /// Transform a labeling into another one.
    Transform(TransformArgs),
    /// Topcode-matrix operations.
    #[command(subcommand)]
    Matrix(MatrixCommand),
    /// Read a number-based string off a Topcode-matrix.
    GenString(GenStringArgs),
    /// Cut a digit string back into Topcode-matrices.
    Pnbspp(PnbsppArgs),
    /// Extend a labeling to a graph with added leaves.
    Rla(RlaArgs),
    /// Degree-sequence tools.
    #[command(subcommand)]
    Degseq(DegseqCommand),
    /// Every-zero graphic groups.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Grow a self-similar tree.
    Selfsim(SelfsimArgs),
    /// Key bundles and authentication.
    #[command(subcommand)]
    Auth(AuthCommand),
    /// Print a graph in DOT form.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Family to check; defaults to the labeling's own kind.
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub labeling: PathBuf,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub graph: PathBuf,
    /// Labeling parameter as `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Largest number of search nodes.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TransformOp {
    Dual,
    SetDual,
    Reciprocal,
    Equivalent,
    Join,
    KdSequential,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long)]
    pub op: TransformOp,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub labeling: PathBuf,
    /// `vertex`, `edge` or `total` (dual).
    #[arg(long, default_value = "total")]
    pub scope: String,
    /// Set-dual variant such as `f-dual` or `h-star-set-y`.
    #[arg(long)]
    pub variant: Option<String>,
    /// `x`, `y` or `total` (reciprocal).
    #[arg(long, default_value = "total")]
    pub part: String,
    /// `keep`, `complement` or `recompute` (reciprocal).
    #[arg(long, default_value = "recompute")]
    pub edges: String,
    /// Target kind (equivalent).
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,
    /// Second graph (join).
    #[arg(long)]
    pub graph_b: Option<PathBuf>,
    /// Second labeling (join).
    #[arg(long)]
    pub labeling_b: Option<PathBuf>,
    /// `bridge`, `coincide-x`, `coincide-y` or `edge-coincide` (join).
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub k: i64,
    #[arg(long, default_value_t = 1)]
    pub d: i64,
}

#[derive(Debug, Subcommand)]
pub enum MatrixCommand {
    /// Combine or rewrite matrices.
    Op(MatrixOpArgs),
    /// The Topcode-matrix of a colored graph.
    FromGraph {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
    },
    /// Degree sequence and graphicability of a matrix.
    Info {
        #[arg(long)]
        a: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixOp {
    UnionSum,
    Union,
    Intersect,
    Difference,
    Subtract,
    Coincide,
    StandardForm,
    Reciprocal,
    Dual,
    Scale,
}

#[derive(Debug, Args)]
pub struct MatrixOpArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Common sub-matrix (coincide).
    #[arg(long)]
    pub h: Option<PathBuf>,
    #[arg(long)]
    pub op: MatrixOp,
    /// `recompute` or `complement` (dual).
    #[arg(long, default_value = "complement")]
    pub dual_edges: String,
    #[arg(long, default_value_t = 1)]
    pub factor: i64,
}

#[derive(Debug, Args)]
pub struct GenStringArgs {
    /// Traversal such as `vo1`, `vo2-r` or `vo3i`.
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub matrix: PathBuf,
    /// Print concatenated digits (the default).
    #[arg(long, conflicts_with = "tokens")]
    pub digits: bool,
    /// Print comma-separated tokens.
    #[arg(long)]
    pub tokens: bool,
}

#[derive(Debug, Args)]
pub struct PnbsppArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub string: String,
    /// Cell order used to place segments into the matrix.
    #[arg(long, default_value = "vo1")]
    pub algo: String,
    /// Only report matrices equal to this one up to column and XY exchanges.
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long, default_value_t = topocode::strings::PNBSPP_DEFAULT_BOUND)]
    pub bound: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RlaAlgo {
    OddGraceful,
    KdHarmonious,
    KdElegant,
    KdGracefulTotal,
    EImage,
    StronglyEdgeMagic,
}

#[derive(Debug, Args)]
pub struct RlaArgs {
    #[arg(long)]
    pub algo: RlaAlgo,
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub labeling: PathBuf,
    /// Leaf plan JSON `{"counts":[...]}`.
    #[arg(long, conflicts_with = "m", required_unless_present = "m")]
    pub plan: Option<PathBuf>,
    /// Number of leaves to place at random with the seed.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum DegseqCommand {
    /// Erdős–Gallai test.
    Check {
        #[arg(long)]
        seq: String,
    },
    /// Apply one degree-sequence operation.
    Transform {
        #[arg(long)]
        seq: String,
        #[arg(long)]
        other: Option<String>,
        /// Operation name for parameterless ops, or its JSON object.
        #[arg(long)]
        op: String,
    },
    /// Shifted colorings of a Cds-matrix.
    Group {
        #[arg(long)]
        degrees: String,
        #[arg(long)]
        colors: String,
        #[arg(long)]
        modulus: Option<i64>,
        /// `I,J,ZERO`, 1-based.
        #[arg(long)]
        add: Option<String>,
    },
    /// One lattice element from base sequences and coefficients.
    Lattice {
        /// Base sequences separated by `;`.
        #[arg(long)]
        base: String,
        #[arg(long)]
        coeffs: String,
        #[arg(long, default_value = "linear-sum")]
        op: String,
    },
}

#[derive(Debug, Args)]
pub struct GroupSource {
    #[arg(long)]
    pub graph: PathBuf,
    /// Base vertex colors in `1..=modulus`, comma-separated.
    #[arg(long)]
    pub colors: String,
    #[arg(long)]
    pub modulus: i64,
    #[arg(long, default_value = "plain-sum")]
    pub rule: String,
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// List every element of the group.
    Build(GroupSource),
    /// `S_i + S_j` with zero `S_zero`, all 1-based.
    Add {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        zero: usize,
    },
    /// Shift orbits of colored spanning trees of `K_n`.
    ClassifyKn {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SelfsimAlgo {
    A,
    B,
    C,
}

#[derive(Debug, Args)]
pub struct SelfsimArgs {
    #[arg(long)]
    pub algo: SelfsimAlgo,
    #[arg(long)]
    pub base: PathBuf,
    /// Root vertex (algorithm A).
    #[arg(long)]
    pub root: Option<usize>,
    /// Number of iterations.
    #[arg(long)]
    pub t: usize,
    /// Also write the grown tree to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum AuthCommand {
    /// Build a key bundle from a colored graph.
    Derive {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long, default_value = "vo1")]
        algo: String,
    },
    /// Authenticate a public bundle against a private one.
    Verify {
        #[arg(long = "pub")]
        public: PathBuf,
        #[arg(long = "priv")]
        private: PathBuf,
        /// Transform spec JSON; overrides the map flags.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value = "x")]
        x: String,
        #[arg(long, default_value = "w")]
        e: String,
        #[arg(long, default_value = "y")]
        y: String,
        #[arg(long, default_value = "isomorphism")]
        relation: String,
    },
    /// Authenticate a vector of bundle pairs, or a chain of bundles.
    VerifyVector {
        /// Public bundles; in chain mode, the whole chain.
        #[arg(long = "pub", value_delimiter = ',', required = true)]
        public: Vec<PathBuf>,
        #[arg(long = "priv", value_delimiter = ',')]
        private: Vec<PathBuf>,
        /// JSON array with one leg operation per pair.
        #[arg(long)]
        ops: PathBuf,
        /// Thread each private key into the next leg as its public key.
        #[arg(long)]
        chain: bool,
    },
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Label vertices with this labeling's colors.
    #[arg(long)]
    pub labeling: Option<PathBuf>,
}
