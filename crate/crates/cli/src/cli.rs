use clap::{Args, Parser, Subcommand, ValueEnum};
use quasi_core::condition::Family;
use quasi_core::ring::Rational;

#[derive(Debug, Parser)]
#[command(name = "quasi", version, about = "Exact checks of contractive conditions on two fixed-point-free maps")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Worker threads for grid work; 1 runs sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
pub enum Command {
    /// Verify one of the counterexample statements.
    Verify(VerifyArgs),
    /// Brute-force a condition on one example without a target constant.
    Scan(ScanArgs),
    /// Report which example defeats a relaxation term.
    Classify(SpecArgs),
    /// List every relaxation term under the given caps.
    Enumerate(CapArgs),
    /// Run Picard iteration.
    Iterate(IterateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Claim1,
    Claim2,
    Lemma1,
    Lemma2,
    Theorem,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: Target,

    /// Power in `D = d(T^(k+1) x, T^k y)` (claim1).
    #[arg(long, default_value_t = 2)]
    pub k: u32,

    #[command(flatten)]
    pub spec: OptSpecArgs,

    /// Largest exponent on the grid (for lemmas, the cap on u and v).
    #[arg(long, default_value_t = 12)]
    pub max_exp: u64,

    #[arg(long, default_value_t = 8)]
    pub a_max: u32,

    #[arg(long, default_value_t = 8)]
    pub b_max: u32,
}

#[derive(Debug, Args)]
pub struct OptSpecArgs {
    /// Relaxation family: xy-a3, xy-b2, xx or yy.
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,

    #[arg(long)]
    pub a: Option<u32>,

    #[arg(long)]
    pub b: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Relaxation family: xy-a3, xy-b2, xx or yy.
    #[arg(long, value_parser = parse_family)]
    pub family: Family,

    #[arg(long)]
    pub a: u32,

    #[arg(long)]
    pub b: u32,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    #[arg(long)]
    pub a_max: u32,

    #[arg(long)]
    pub b_max: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleArg {
    Pow2,
    Zeta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConditionArg {
    C1,
    C2,
    C3,
    Cx,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub example: ExampleArg,

    #[arg(long, value_enum)]
    pub condition: ConditionArg,

    /// Use `D = d(T^(k+1) x, T^k y)` for cx.
    #[arg(long, conflicts_with_all = ["family", "a", "b"])]
    pub k: Option<u32>,

    #[command(flatten)]
    pub spec: OptSpecArgs,

    #[arg(long)]
    pub max_exp: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    /// `x -> alpha x + beta` on the rationals.
    DemoBanach,
    /// `T(x) = 2x` on powers of two; x0 is an exponent.
    Pow2,
    /// `T(x) = zx` on powers of z; x0 is an exponent.
    Zeta,
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    #[arg(long, value_enum)]
    pub map: MapArg,

    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Option<Rational>,

    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub beta: Option<Rational>,

    /// Starting point: a rational for demo-banach, an exponent otherwise.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: String,

    #[arg(long, value_parser = parse_rational)]
    pub tol_sq: Rational,

    #[arg(long)]
    pub max_iter: u64,

    #[arg(long, value_parser = parse_rational)]
    pub divergence_factor: Option<Rational>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: quasi_core::Error| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: quasi_core::Error| e.to_string())
}
