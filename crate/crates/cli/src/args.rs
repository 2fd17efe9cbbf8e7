use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "repkit", version, about = "Numerical representation theory of compact groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Trace form, compactness classification and center of a Lie algebra.
    AnalyzeAlgebra(AlgebraArgs),
    /// Residuals of the invariant-integral axioms for a quadrature rule.
    HaarAudit(GroupArgs),
    /// Average a Hermitian form over the group and make the representation unitary.
    Unitarize(RepArgs),
    /// Commutant dimension and invariant-form dimension of a representation.
    Irreducible(RepArgs),
    /// Split a representation into irreducible blocks.
    Decompose(RepArgs),
    /// Character values and their inner products.
    Characters(RepArgs),
    /// Character Gram matrix of a list of irreducible representations.
    Orthogonality(RepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::AnalyzeAlgebra(_) => "analyze-algebra",
            Command::HaarAudit(_) => "haar-audit",
            Command::Unitarize(_) => "unitarize",
            Command::Irreducible(_) => "irreducible",
            Command::Decompose(_) => "decompose",
            Command::Characters(_) => "characters",
            Command::Orthogonality(_) => "orthogonality",
        }
    }

    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::AnalyzeAlgebra(a) => &a.output,
            Command::HaarAudit(a) => &a.output,
            Command::Unitarize(a)
            | Command::Irreducible(a)
            | Command::Decompose(a)
            | Command::Characters(a)
            | Command::Orthogonality(a) => &a.output,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Override the pass/fail tolerance of the command's main residual.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct AlgebraArgs {
    /// Lie algebra JSON file.
    pub path: Option<PathBuf>,
    /// Built-in algebra: su2, sl2r or abelianN (e.g. abelian3).
    #[arg(long, conflicts_with = "path")]
    pub builtin: Option<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct GroupSelection {
    /// Group JSON file.
    #[arg(long, conflicts_with = "builtin")]
    pub group: Option<PathBuf>,
    /// Built-in group: z2, z3, s3, zN, circle (or u1), su2.
    #[arg(long)]
    pub builtin: Option<String>,
    /// Quadrature resolution (circle default 64, su2 default 16; ignored for finite groups).
    #[arg(long)]
    pub resolution: Option<usize>,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[command(flatten)]
    pub group: GroupSelection,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct RepArgs {
    /// Representation JSON files.
    pub paths: Vec<PathBuf>,
    #[command(flatten)]
    pub group: GroupSelection,
    /// Representation JSON file (repeatable).
    #[arg(long = "rep")]
    pub reps: Vec<PathBuf>,
    /// SU(2) irreducible of spin TWO_J/2 (repeatable).
    #[arg(long = "spin", value_name = "TWO_J")]
    pub spins: Vec<u32>,
    /// Circle representation with the given integer weights (repeatable).
    #[arg(long = "weights", value_name = "W1,W2,...", allow_hyphen_values = true)]
    pub weights: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}
