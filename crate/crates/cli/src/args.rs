use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

const CLASSIFY_HELP: &str = "\
Input: UTF-8 CSV, comma separated, LF line endings, header row exactly
`s,g1,g2,g3,w1,w2,w3`, at least 8 rows with strictly increasing s.
Each coordinate of the base curve g and the ruling w is interpolated by a
not-a-knot cubic spline, so first and second derivatives carry O(h^2)
errors; the default tolerances are loosened accordingly.";

/// Stationarity residuals, ruled-surface classification and inversion
/// transport for weighted-area critical surfaces of Lorentz-Minkowski space.
///
/// Exit codes: 0 pass, 1 verification failure, 2 usage or input error.
#[derive(Debug, Parser)]
#[command(name = "lmstat", version, about, long_about)]
pub struct Cli {
    /// TOML file with defaults (alpha, grid, tol, delta, seed, format, out).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan the stationarity residual of a catalog family.
    Verify(VerifyArgs),
    /// Classify a ruled surface given by sampled base curve and ruling.
    #[command(after_long_help = CLASSIFY_HELP)]
    Classify(ClassifyArgs),
    /// Push a catalog family through the inversion p -> p/<p,p>.
    Invert(InvertArgs),
    /// Evaluate one case of the ODE branch analysis.
    Branch(BranchArgs),
    /// Verify every catalog family and reject every negative control.
    ScanCatalog(ScanArgs),
    /// Export a chart grid as OBJ with a per-vertex CSV sidecar.
    Mesh(MeshArgs),
    /// Leading-coefficient check of the lightlike-w' normal form.
    Witness(WitnessArgs),
    /// Far-from-the-cone bound on every spacelike C+ catalog family.
    MaxPrinciple(MaxPrincipleArgs),
}

/// Family id plus parameter overrides; `pr1-3a --n 2 --r 1` equals
/// `pr1-3a?n=2&r=1`.
#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family id, optionally with a `?key=value&...` query.
    pub family: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long)]
    pub part: Option<String>,
    #[arg(long)]
    pub center: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<f64>,
    #[arg(long)]
    pub side: Option<String>,
    #[arg(long)]
    pub s0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    /// Any other parameter, as key=value (repeatable).
    #[arg(long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Weight exponent; defaults to the family's claimed value.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Grid sizes per parameter, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
    /// Residual tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// CSV file with columns s,g1,g2,g3,w1,w2,w3.
    pub input: PathBuf,
    /// Ruling parameter range `lo:hi`.
    #[arg(long, default_value = "-0.5:0.5", allow_hyphen_values = true)]
    pub t: String,
    /// Restrict the base parameter to `lo:hi` (default: the sampled range
    /// trimmed by one sample at each end).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Relative tolerance on the stationarity fit.
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Tolerance of the causal-type tests.
    #[arg(long, default_value_t = 1e-6)]
    pub causal_tol: f64,
}

#[derive(Debug, Args)]
pub struct InvertArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct BranchArgs {
    /// Causal sign of the normalized ruling derivative, 1 or -1.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: f64,
    /// Product alpha * beta.
    #[arg(long, allow_hyphen_values = true)]
    pub k: f64,
    /// Constants c1,c2,c3,c4.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, num_args = 1)]
    pub c: Vec<f64>,
    /// Grid `lo:hi:n` for the sup norms and the projection.
    #[arg(long, default_value = "-1:1:201", allow_hyphen_values = true)]
    pub s_grid: String,
    /// Also run this many seeded random draws for the case.
    #[arg(long)]
    pub sweep: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MeshArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// First parameter `lo:hi:n` (default: the family's domain and grid).
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Second parameter `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub m: f64,
    /// Trial value of alpha * beta.
    #[arg(long, default_value_t = -0.7, allow_hyphen_values = true)]
    pub k: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub d: f64,
}

#[derive(Debug, Args)]
pub struct MaxPrincipleArgs {
    /// Values of delta, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub delta: Option<Vec<f64>>,
}
