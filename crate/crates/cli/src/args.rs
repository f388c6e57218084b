use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nse_core::evolve::Method;
use nse_core::models::{Family, ModelSpec, PhysicalConstants};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "nse",
    version,
    about = "Nonlinear Schrödinger models built from linear ground states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the model catalog.
    List,
    /// Emit potential, profile or nonlinearity samples as CSV.
    Curve(CurveArgs),
    /// Run verification suites and print JSON reports.
    Verify(VerifyArgs),
    /// Evolve a (boosted) ground state in time.
    Evolve(EvolveArgs),
    /// Collide two boosted solitons head on.
    Collide(CollideArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Gausson,
    TrappedGausson,
    Cosh1d,
    #[value(name = "coshNd", alias = "coshnd")]
    CoshNd,
    PowerLaw,
    Tan2,
    SoftenedDelta,
    Coulomb,
}

/// Model selection; parameters not used by the chosen family are ignored.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Option<FamilyName>,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long = "dim", visible_alias = "N", default_value_t = 1)]
    pub dim: u32,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    pub omega1: f64,
    #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2)]
    pub omega2: f64,
    /// Power-law exponent; also the single λ of the uncertainty suite.
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "L", visible_alias = "l", default_value_t = 1.0)]
    pub l: f64,
    #[arg(long, default_value_t = 2.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b0: f64,
    #[arg(long = "aB", visible_alias = "ab", default_value_t = 1.0)]
    pub a_b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
}

impl ModelArgs {
    pub fn constants(&self) -> PhysicalConstants {
        PhysicalConstants {
            hbar: self.hbar,
            mass: self.mass,
        }
    }

    pub fn family(&self, name: FamilyName) -> Family {
        match name {
            FamilyName::Gausson => Family::Gausson {
                omega: self.omega,
                dim: self.dim,
            },
            FamilyName::TrappedGausson => Family::TrappedGausson {
                omega1: self.omega1,
                omega2: self.omega2,
            },
            FamilyName::Cosh1d => Family::Cosh1D { a: self.a },
            FamilyName::CoshNd => Family::CoshND {
                a: self.a,
                dim: self.dim,
            },
            FamilyName::PowerLaw => Family::PowerLaw {
                a: self.a,
                lambda: self.lambda.unwrap_or(1.0),
            },
            FamilyName::Tan2 => Family::TanSquared {
                l: self.l,
                beta: self.beta,
            },
            FamilyName::SoftenedDelta => Family::SoftenedDelta { a: self.a, b0: self.b0 },
            FamilyName::Coulomb => Family::Coulomb { a_b: self.a_b },
        }
    }

    /// The selected model, if any.
    pub fn spec(&self) -> Result<Option<ModelSpec>, CliError> {
        self.model
            .map(|name| ModelSpec::with_constants(self.family(name), self.constants()).map_err(CliError::usage))
            .transpose()
    }

    pub fn required_spec(&self) -> Result<ModelSpec, CliError> {
        self.spec()?
            .ok_or_else(|| CliError::Usage("--model is required for this command".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Potential,
    Profile,
    Nonlinearity,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub what: Quantity,
    /// Lower abscissa in plot units (r/length scale, or φ).
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// Upper abscissa in plot units.
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Residual,
    Invert,
    Norm,
    Uncertainty,
    Limits,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LimitName {
    SoftenedDelta,
    DeltaCusp,
    Tan2,
    TrappedGausson,
    Localization,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Limit identity to run (limits suite); all reference cases when absent.
    #[arg(long, value_enum)]
    pub case: Option<LimitName>,
    /// Comma-separated λ values for the uncertainty suite.
    #[arg(long = "lambdas", value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodName {
    SplitStep,
    CrankNicolson,
}

impl From<MethodName> for Method {
    fn from(m: MethodName) -> Self {
        match m {
            MethodName::SplitStep => Method::SplitStep,
            MethodName::CrankNicolson => Method::CrankNicolson,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Total time; rounded to a whole number of steps.
    #[arg(long)]
    pub time: Option<f64>,
    /// Grid points (periodic) or interior points (walled box).
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Periodic window `lo:hi`; sized from the profile tail when absent.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_span)]
    pub xspan: Option<(f64, f64)>,
    /// Number of recorded frames after the initial one.
    #[arg(long, default_value_t = 10)]
    pub frames: usize,
    #[arg(long, default_value_t = nse_core::evolve::DEFAULT_AMPLITUDE_FLOOR)]
    pub amplitude_floor: f64,
    #[arg(long, default_value = "nse-out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub step: StepArgs,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub velocity: f64,
    /// Defaults to Crank-Nicolson for tan2 and split-step otherwise.
    #[arg(long, value_enum)]
    pub method: Option<MethodName>,
}

#[derive(Debug, Args)]
pub struct CollideArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[command(flatten)]
    pub step: StepArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub v1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub v2: f64,
    #[arg(long = "sep")]
    pub separation: f64,
    /// Post-collision correlation required for exit code 0.
    #[arg(long, default_value_t = 0.999)]
    pub min_correlation: f64,
}

fn parse_span(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: f64 = lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?;
    let hi: f64 = hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err(format!("empty span {lo}:{hi}"));
    }
    Ok((lo, hi))
}
