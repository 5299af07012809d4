use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "cauchy-lab", version, about = "Cauchy singular integral experiments")]
pub struct Cli {
    /// JSON file whose fields override the flags of the chosen subcommand.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for every sampler.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Add a wall-clock timestamp to the header (breaks byte-identical headers).
    #[arg(long, global = true)]
    pub timestamp: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a numerical self-check suite; exit status 2 if any case fails.
    Verify(VerifyArgs),
    /// Divergence table of the counterexample's Cauchy integral at ζ = 1.
    Tumanov(TumanovArgs),
    /// Sampled Log-Hölder seminorm with a per-band table.
    Seminorm(SeminormArgs),
    /// Evaluate S, Φ or T on a ring of points.
    Operators(OperatorArgs),
    /// Product-domain ∂̄ solver.
    Dbar {
        #[command(subcommand)]
        action: DbarCommand,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Verify(_) => "verify",
            Self::Tumanov(_) => "tumanov",
            Self::Seminorm(_) => "seminorm",
            Self::Operators(_) => "operators",
            Self::Dbar { action } => match action {
                DbarCommand::Solve(_) => "dbar solve",
                DbarCommand::Residual(_) => "dbar residual",
                DbarCommand::Witness(_) => "dbar witness",
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Cauchy,
    Pv,
    Plemelj,
    Area,
    /// Bounds on the log-weighted integrals near zero and up to the cut-off.
    LogWeight,
    All,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TumanovArgs {
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    /// Deepest dyadic level `j` of `λ = 2^{-j}`.
    #[arg(long = "J", default_value_t = 12)]
    #[serde(rename = "J")]
    pub j_max: u32,
    /// Log exponents, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 0.5, 1.0])]
    pub mu: Vec<f64>,
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleFunction {
    /// `x` on `[0, 1/2]`.
    Identity,
    /// `|λ|^{1/2}` on the unit disc.
    SqrtAbs,
    /// `λ ↦ Sf(1, λ)` of the counterexample, `λ ∈ [0, 1/2]`.
    TumanovS,
    /// `(ξ - 1)^{1/2} log(ξ - 1)` on the unit disc.
    Branch,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeminormArgs {
    #[arg(long, value_enum, default_value_t = SampleFunction::Identity)]
    pub function: SampleFunction,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub nu: f64,
    /// Number of sampled pairs.
    #[arg(long, default_value_t = 1024)]
    pub budget: usize,
    /// Number of dyadic `|h|` bands.
    #[arg(long, default_value_t = 20)]
    pub bands: usize,
    #[arg(long, default_value_t = 0.5)]
    pub h_cap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// Interior Cauchy integral.
    S,
    /// Boundary value `PV + f/2`.
    Phi,
    /// Solid Cauchy transform on the unit disc.
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DataFunction {
    One,
    Z,
    Zbar,
    ZbarPlusZ2,
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Curve {
    Circle,
    Ellipse,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorArgs {
    #[arg(long, value_enum, default_value_t = OperatorKind::S)]
    pub op: OperatorKind,
    #[arg(long, value_enum, default_value_t = DataFunction::ZbarPlusZ2)]
    pub function: DataFunction,
    #[arg(long, value_enum, default_value_t = Curve::Circle)]
    pub domain: Curve,
    /// Boundary nodes.
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    /// Number of evaluation points.
    #[arg(long, default_value_t = 16)]
    pub points: usize,
    /// Radius fraction of the interior evaluation ring.
    #[arg(long, default_value_t = 0.5)]
    pub ring: f64,
    #[arg(long, default_value_t = 256)]
    pub rays: usize,
    #[arg(long, default_value_t = 64)]
    pub radial: usize,
}

#[derive(Debug, Subcommand)]
pub enum DbarCommand {
    /// Solve on the bidisc and write the sampled solution.
    Solve(DbarArgs),
    /// Finite-difference residual of the solution.
    Residual(DbarArgs),
    /// Contour-integral witness of the branch-point example.
    Witness(WitnessArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    /// `1·dz̄₁`.
    Unit,
    /// `z̄₂dz̄₁ + z̄₁dz̄₂`.
    Separable,
    /// `(z₁-1)^{k+α}log^ν(z₁-1) dz̄₂`.
    Example,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DbarArgs {
    #[arg(long, value_enum, default_value_t = FormKind::Separable)]
    pub form: FormKind,
    /// Radii of the two centred discs, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 1.0])]
    pub radii: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    #[arg(long, default_value_t = 256)]
    pub contour_nodes: usize,
    #[arg(long, default_value_t = 64)]
    pub rays: usize,
    #[arg(long, default_value_t = 64)]
    pub radial: usize,
    /// Distance of residual test nodes from each boundary circle.
    #[arg(long, default_value_t = 0.2)]
    pub clearance: f64,
    /// Finite-difference step.
    #[arg(long, default_value_t = 1e-3)]
    pub h: f64,
    /// Rings and rays per disc of the solve grid and of the residual nodes.
    #[arg(long, default_value_t = 1)]
    pub grid_rings: usize,
    #[arg(long, default_value_t = 4)]
    pub grid_rays: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessArgs {
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub nu: f64,
    /// Nodes on `|z₂| = 1/2`.
    #[arg(long, default_value_t = 16)]
    pub m: usize,
    #[arg(long, default_value_t = 256)]
    pub contour_nodes: usize,
    #[arg(long, default_value_t = 32)]
    pub rays: usize,
    #[arg(long, default_value_t = 16)]
    pub radial: usize,
    /// Also sample `ξ = 1 - 2^{-j}` for `j = 3..=approach` (0 to skip).
    #[arg(long, default_value_t = 0)]
    pub approach: u32,
}
