//! Catalog of exactly solvable families.
//!
//! Each family pairs a linear potential `U` whose ground state
//! `Ψ₀ = c₀ φ₀(r) e^{-iE₀t/ħ}` is known in closed form with the nonlinear
//! term `F[Ψ*Ψ] = A·G(|Ψ|/c₀)` obtained by writing `U` as a function of
//! `φ₀`. With `φ₀(0) = 1` and `φ₀` decreasing, `A·G(φ₀(r)) + U_ext(r) = U(r)`
//! holds pointwise, so `Ψ₀` solves both equations.
//!
//! Scale conventions: for the `1/cosh` families `A = ħ²/(m a²)` and `G`
//! carries the dimensionless shape (`G = −φ²` in one dimension). Written
//! in terms of `|Ψ|²` this is `F = −(2ħ²/(m a))|Ψ|²`. The power-law family
//! uses `A = (1+λ)/(2λ²)·ħ²/(m a²)` with `G = −φ^{2λ}`, which reduces to the
//! one-dimensional `1/cosh` case at `λ = 1`.

use std::collections::BTreeMap;
use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::field::{ComplexField, Grid};
use crate::numerics::{ln_cosh, log_gamma, zeta, NumericsError, Quadrature};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("x = {x} lies on or beyond the infinite wall")]
    InfiniteWall { x: f64 },
    #[error("potential is singular at r = {r}")]
    Singular { r: f64 },
    #[error("grid point x = {x} lies outside the support")]
    OutsideSupport { x: f64 },
    #[error("shape function evaluated at phi = {phi}, outside (0, 1]")]
    ShapeDomain { phi: f64 },
    #[error("{0} has no grid-representable nonlinearity")]
    NoNonlinearity(&'static str),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// `ħ` and `m`; both default to 1 (dimensionless working units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mass: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self { hbar: 1.0, mass: 1.0 }
    }
}

impl PhysicalConstants {
    /// `ħ²/m`, the combination every kinetic-energy scale is built from.
    pub fn hbar2_over_m(&self) -> f64 {
        self.hbar * self.hbar / self.mass
    }
}

/// The eight solvable families and their physical parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// Harmonic oscillator → logarithmic nonlinearity.
    Gausson { omega: f64, dim: u32 },
    /// Harmonic oscillator split into a kept trap `Ω₁` and a rewritten part `Ω₂`; `N = 3`.
    TrappedGausson { omega1: f64, omega2: f64 },
    /// `1/cosh²` well → cubic nonlinearity.
    Cosh1D { a: f64 },
    /// `1/cosh` ground state in `N` dimensions.
    CoshND { a: f64, dim: u32 },
    /// `1/cosh^{1/λ}` ground state → `|Ψ|^{2λ}` nonlinearity.
    PowerLaw { a: f64, lambda: f64 },
    /// `tan²` well with infinite walls at `|x| = πL/2`.
    TanSquared { l: f64, beta: f64 },
    /// Regularized attractive delta; `b0 = 0` is the singular limit.
    SoftenedDelta { a: f64, b0: f64 },
    /// Hydrogen-like Coulomb problem, `N = 3`.
    Coulomb { a_b: f64 },
}

/// One row of the family catalog.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub parameters: &'static [&'static str],
    pub dimension: &'static str,
    pub construction: &'static str,
}

pub const CATALOG: [CatalogEntry; 8] = [
    CatalogEntry {
        name: "gausson",
        parameters: &["omega", "N"],
        dimension: "N >= 1",
        construction: "harmonic oscillator -> logarithmic nonlinearity G = -ln(phi^2)",
    },
    CatalogEntry {
        name: "trapped-gausson",
        parameters: &["omega1", "omega2"],
        dimension: "3",
        construction: "partial rewrite of the oscillator: trap omega1 kept, omega2 -> log nonlinearity",
    },
    CatalogEntry {
        name: "cosh1d",
        parameters: &["a"],
        dimension: "1",
        construction: "1/cosh^2 well -> cubic nonlinearity G = -phi^2",
    },
    CatalogEntry {
        name: "coshNd",
        parameters: &["a", "N"],
        dimension: "N >= 1",
        construction: "1/cosh ground state in N dimensions, zeta-function normalization",
    },
    CatalogEntry {
        name: "power-law",
        parameters: &["a", "lambda"],
        dimension: "1",
        construction: "1/cosh^(1/lambda) ground state -> power-law nonlinearity G = -phi^(2 lambda)",
    },
    CatalogEntry {
        name: "tan2",
        parameters: &["L", "beta"],
        dimension: "1 (box |x| < pi L/2)",
        construction: "piecewise tan^2 well -> G = beta(beta-1)(phi^(-2/beta) - 1)",
    },
    CatalogEntry {
        name: "softened-delta",
        parameters: &["a", "b0"],
        dimension: "1",
        construction: "regularized delta well, delta-potential limit at b0 -> 0",
    },
    CatalogEntry {
        name: "coulomb",
        parameters: &["aB"],
        dimension: "3",
        construction: "Coulomb potential -> G = 1/ln(phi^2)",
    },
];

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gausson { .. } => "gausson",
            Family::TrappedGausson { .. } => "trapped-gausson",
            Family::Cosh1D { .. } => "cosh1d",
            Family::CoshND { .. } => "coshNd",
            Family::PowerLaw { .. } => "power-law",
            Family::TanSquared { .. } => "tan2",
            Family::SoftenedDelta { .. } => "softened-delta",
            Family::Coulomb { .. } => "coulomb",
        }
    }

    /// Space dimension `N`.
    pub fn dim(&self) -> u32 {
        match *self {
            Family::Gausson { dim, .. } | Family::CoshND { dim, .. } => dim,
            Family::TrappedGausson { .. } | Family::Coulomb { .. } => 3,
            _ => 1,
        }
    }
}

/// A family with its parameters and physical constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelSpec {
    pub family: Family,
    pub constants: PhysicalConstants,
}

fn positive(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter {
            name,
            value,
            reason: "must be non-negative and finite",
        })
    }
}

fn dimension(dim: u32) -> Result<(), ModelError> {
    if dim >= 1 {
        Ok(())
    } else {
        Err(ModelError::InvalidParameter {
            name: "N",
            value: dim as f64,
            reason: "space dimension must be at least 1",
        })
    }
}

fn sech2(y: f64) -> f64 {
    let s = 1.0 / y.cosh();
    s * s
}

/// `tanh(y)/y`, continuous through `y = 0`.
fn tanh_over(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        let y2 = y * y;
        1.0 - y2 / 3.0 + 2.0 * y2 * y2 / 15.0
    } else {
        y.tanh() / y
    }
}

impl ModelSpec {
    pub fn new(family: Family) -> Result<Self, ModelError> {
        Self::with_constants(family, PhysicalConstants::default())
    }

    pub fn with_constants(family: Family, constants: PhysicalConstants) -> Result<Self, ModelError> {
        let spec = Self { family, constants };
        spec.validate()?;
        Ok(spec)
    }

    pub fn gausson(omega: f64, dim: u32) -> Result<Self, ModelError> {
        Self::new(Family::Gausson { omega, dim })
    }

    pub fn trapped_gausson(omega1: f64, omega2: f64) -> Result<Self, ModelError> {
        Self::new(Family::TrappedGausson { omega1, omega2 })
    }

    pub fn cosh_1d(a: f64) -> Result<Self, ModelError> {
        Self::new(Family::Cosh1D { a })
    }

    pub fn cosh_nd(a: f64, dim: u32) -> Result<Self, ModelError> {
        Self::new(Family::CoshND { a, dim })
    }

    pub fn power_law(a: f64, lambda: f64) -> Result<Self, ModelError> {
        Self::new(Family::PowerLaw { a, lambda })
    }

    pub fn tan_squared(l: f64, beta: f64) -> Result<Self, ModelError> {
        Self::new(Family::TanSquared { l, beta })
    }

    pub fn softened_delta(a: f64, b0: f64) -> Result<Self, ModelError> {
        Self::new(Family::SoftenedDelta { a, b0 })
    }

    pub fn coulomb(a_b: f64) -> Result<Self, ModelError> {
        Self::new(Family::Coulomb { a_b })
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        positive("hbar", self.constants.hbar)?;
        positive("mass", self.constants.mass)?;
        match self.family {
            Family::Gausson { omega, dim } => {
                positive("omega", omega)?;
                dimension(dim)
            }
            Family::TrappedGausson { omega1, omega2 } => {
                non_negative("omega1", omega1)?;
                non_negative("omega2", omega2)?;
                positive("omega", omega1.hypot(omega2))
            }
            Family::Cosh1D { a } => positive("a", a),
            Family::CoshND { a, dim } => {
                positive("a", a)?;
                dimension(dim)
            }
            Family::PowerLaw { a, lambda } => {
                positive("a", a)?;
                positive("lambda", lambda)
            }
            Family::TanSquared { l, beta } => {
                positive("L", l)?;
                if beta > 1.0 && beta.is_finite() {
                    Ok(())
                } else {
                    Err(ModelError::InvalidParameter {
                        name: "beta",
                        value: beta,
                        reason: "must exceed 1",
                    })
                }
            }
            Family::SoftenedDelta { a, b0 } => {
                positive("a", a)?;
                non_negative("b0", b0)
            }
            Family::Coulomb { a_b } => positive("aB", a_b),
        }
    }

    pub fn dim(&self) -> u32 {
        self.family.dim()
    }

    /// Parameter echo keyed by the CLI flag names.
    pub fn params(&self) -> BTreeMap<String, f64> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: f64| {
            p.insert(k.to_string(), v);
        };
        match self.family {
            Family::Gausson { omega, dim } => {
                put("omega", omega);
                put("N", dim as f64);
            }
            Family::TrappedGausson { omega1, omega2 } => {
                put("omega1", omega1);
                put("omega2", omega2);
            }
            Family::Cosh1D { a } => put("a", a),
            Family::CoshND { a, dim } => {
                put("a", a);
                put("N", dim as f64);
            }
            Family::PowerLaw { a, lambda } => {
                put("a", a);
                put("lambda", lambda);
            }
            Family::TanSquared { l, beta } => {
                put("L", l);
                put("beta", beta);
            }
            Family::SoftenedDelta { a, b0 } => {
                put("a", a);
                put("b0", b0);
            }
            Family::Coulomb { a_b } => put("aB", a_b),
        }
        put("hbar", self.constants.hbar);
        put("mass", self.constants.mass);
        p
    }

    /// Total harmonic frequency of the (trapped) Gausson families.
    fn omega_total(&self) -> Option<f64> {
        match self.family {
            Family::Gausson { omega, .. } => Some(omega),
            Family::TrappedGausson { omega1, omega2 } => Some(omega1.hypot(omega2)),
            _ => None,
        }
    }

    /// The linear potential `U(r)`; for `N = 1` the argument is the signed
    /// coordinate `x`.
    pub fn potential(&self, r: f64) -> Result<f64, ModelError> {
        let h2m = self.constants.hbar2_over_m();
        let m = self.constants.mass;
        let ar = r.abs();
        let u = match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => {
                let w = self.omega_total().unwrap_or_default();
                0.5 * m * w * w * r * r
            }
            Family::Cosh1D { a } => -h2m / (a * a) * sech2(r / a),
            Family::CoshND { a, dim } => {
                let y = ar / a;
                -h2m / (a * a) * (sech2(y) + 0.5 * (dim as f64 - 1.0) * tanh_over(y))
            }
            Family::PowerLaw { a, lambda } => -(1.0 + lambda) / (2.0 * lambda * lambda) * h2m / (a * a) * sech2(r / a),
            Family::TanSquared { l, beta } => {
                if ar >= 0.5 * PI * l {
                    return Err(ModelError::InfiniteWall { x: r });
                }
                let t = (r / l).tan();
                h2m / (2.0 * l * l) * beta * (beta - 1.0) * t * t
            }
            Family::SoftenedDelta { a, b0 } => {
                if b0 == 0.0 {
                    if r == 0.0 {
                        return Err(ModelError::Singular { r });
                    }
                    0.0
                } else {
                    let s2 = r * r + b0 * b0;
                    -h2m * b0 * b0 / (2.0 * a) * (1.0 / (s2 * s2.sqrt()) + 1.0 / (a * s2))
                }
            }
            Family::Coulomb { a_b } => {
                if ar == 0.0 {
                    return Err(ModelError::Singular { r });
                }
                -h2m / (a_b * ar)
            }
        };
        Ok(u)
    }

    /// Closed-form `c₀`, where one exists.
    pub fn analytic_norm_constant(&self) -> Result<Option<f64>, ModelError> {
        let hbar = self.constants.hbar;
        let m = self.constants.mass;
        let c0 = match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => {
                let w = self.omega_total().unwrap_or_default();
                (m * w / (PI * hbar)).powf(self.dim() as f64 / 4.0)
            }
            Family::Cosh1D { a } => 1.0 / (2.0 * a).sqrt(),
            Family::CoshND { a, dim } => cosh_nd_norm(a, dim)?,
            Family::PowerLaw { a, lambda } => {
                let ratio = (log_gamma(0.5 + 1.0 / lambda)? - log_gamma(1.0 / lambda)?).exp();
                (ratio / (PI.sqrt() * a)).sqrt()
            }
            Family::TanSquared { l, beta } => {
                let ratio = (log_gamma(beta)? - log_gamma(beta + 0.5)?).exp();
                (beta * ratio / (PI.sqrt() * l)).sqrt()
            }
            Family::SoftenedDelta { a, b0 } => {
                if b0 == 0.0 {
                    1.0 / a.sqrt()
                } else {
                    return Ok(None);
                }
            }
            Family::Coulomb { a_b } => 1.0 / (PI * a_b.powi(3)).sqrt(),
        };
        Ok(Some(c0))
    }

    pub fn length_scale(&self) -> f64 {
        match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => {
                let w = self.omega_total().unwrap_or_default();
                (2.0 * self.constants.hbar / (self.constants.mass * w)).sqrt()
            }
            Family::Cosh1D { a }
            | Family::CoshND { a, .. }
            | Family::PowerLaw { a, .. }
            | Family::SoftenedDelta { a, .. } => a,
            Family::TanSquared { l, .. } => l,
            Family::Coulomb { a_b } => a_b,
        }
    }

    pub fn support(&self) -> Support {
        match self.family {
            Family::TanSquared { l, .. } => Support::Box {
                half_width: 0.5 * PI * l,
            },
            _ => Support::Unbounded,
        }
    }

    pub fn energy(&self) -> f64 {
        let hbar = self.constants.hbar;
        let h2m = self.constants.hbar2_over_m();
        match self.family {
            Family::Gausson { omega, dim } => 0.5 * dim as f64 * hbar * omega,
            Family::TrappedGausson { .. } => 1.5 * hbar * self.omega_total().unwrap_or_default(),
            Family::Cosh1D { a } | Family::CoshND { a, .. } => -h2m / (2.0 * a * a),
            Family::PowerLaw { a, lambda } => -h2m / (2.0 * lambda * lambda * a * a),
            Family::TanSquared { l, beta } => h2m * beta / (2.0 * l * l),
            Family::SoftenedDelta { a, .. } => -h2m / (2.0 * a * a),
            Family::Coulomb { a_b } => -h2m / (2.0 * a_b * a_b),
        }
    }

    /// `c₀ = [S_N ∫₀^R r^{N−1} φ₀² dr]^{−1/2}` with `S_N = 2π^{N/2}/Γ(N/2)`.
    pub fn norm_constant_numeric(&self) -> Result<f64, ModelError> {
        let gs = self.ground_state_with_norm(1.0);
        let n = self.dim() as f64;
        let surface = 2.0 * PI.powf(0.5 * n) / log_gamma(0.5 * n)?.exp();
        let hi = match self.support() {
            Support::Box { half_width } => half_width,
            Support::Unbounded => f64::INFINITY,
        };
        let ipow = self.dim() as i32 - 1;
        let q = Quadrature::with_rel_tol(1e-13).max_evaluations(500_000);
        let result = q.integrate(
            |r| {
                let p = gs.profile(r);
                r.powi(ipow) * p * p
            },
            0.0,
            hi,
        )?;
        Ok(1.0 / (surface * result.value).sqrt())
    }

    fn ground_state_with_norm(&self, norm_const: f64) -> GroundState {
        GroundState {
            family: self.family,
            constants: self.constants,
            energy: self.energy(),
            norm_const,
            length_scale: self.length_scale(),
            support: self.support(),
        }
    }

    /// Ground state with the closed-form `c₀`, or the quadrature value when
    /// no closed form is known (softened delta with `b0 > 0`).
    pub fn ground_state(&self) -> Result<GroundState, ModelError> {
        self.validate()?;
        let c0 = match self.analytic_norm_constant()? {
            Some(c0) => c0,
            None => self.norm_constant_numeric()?,
        };
        Ok(self.ground_state_with_norm(c0))
    }

    pub fn nonlinearity(&self) -> Result<Nonlinearity, ModelError> {
        let gs = self.ground_state()?;
        Nonlinearity::for_ground_state(self, &gs)
    }

    /// Ground state and nonlinearity together.
    pub fn build(&self) -> Result<Model, ModelError> {
        let ground = self.ground_state()?;
        let nonlinearity = Nonlinearity::for_ground_state(self, &ground)?;
        Ok(Model {
            spec: *self,
            ground,
            nonlinearity,
        })
    }
}

fn cosh_nd_norm(a: f64, dim: u32) -> Result<f64, ModelError> {
    let n = dim as f64;
    Ok(match dim {
        1 => 1.0 / (2.0 * a).sqrt(),
        // (2^N − 4) ζ(N − 1) → 4 ln 2 at N = 2
        2 => 1.0 / (a * (2.0 * PI * LN_2).sqrt()),
        _ => {
            let ln_c2 = (n - 1.0) * 4.0f64.ln() + log_gamma(0.5 * n + 1.0)?
                - (2.0f64.powf(n) - 4.0).ln()
                - n.ln()
                - log_gamma(n)?
                - 0.5 * n * PI.ln()
                - zeta(n - 1.0)?.ln()
                - n * a.ln();
            (0.5 * ln_c2).exp()
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Support {
    Unbounded,
    Box { half_width: f64 },
}

impl Support {
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            Support::Unbounded => true,
            Support::Box { half_width } => x.abs() <= half_width * (1.0 + 1e-12),
        }
    }
}

/// `φ₀`, `E₀`, `c₀` and the natural length of one family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroundState {
    pub family: Family,
    pub constants: PhysicalConstants,
    pub energy: f64,
    pub norm_const: f64,
    pub length_scale: f64,
    pub support: Support,
}

impl GroundState {
    /// `φ₀(r)` with `φ₀(0) = 1`; zero outside a box support.
    pub fn profile(&self, r: f64) -> f64 {
        let x = r.abs();
        match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => {
                let b = self.length_scale;
                (-(x * x) / (b * b)).exp()
            }
            Family::Cosh1D { a } | Family::CoshND { a, .. } => 1.0 / (x / a).cosh(),
            Family::PowerLaw { a, lambda } => (-ln_cosh(x / a) / lambda).exp(),
            Family::TanSquared { l, beta } => {
                if x >= 0.5 * PI * l {
                    0.0
                } else {
                    (x / l).cos().powf(beta)
                }
            }
            Family::SoftenedDelta { a, b0 } => ((b0 - x.hypot(b0)) / a).exp(),
            Family::Coulomb { a_b } => (-x / a_b).exp(),
        }
    }

    /// `dφ₀/dx` (signed coordinate for `N = 1`, radial derivative otherwise).
    pub fn profile_derivative(&self, r: f64) -> f64 {
        let p = self.profile(r);
        match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => {
                let b = self.length_scale;
                -2.0 * r / (b * b) * p
            }
            Family::Cosh1D { a } | Family::CoshND { a, .. } => -(r / a).tanh() / a * p,
            Family::PowerLaw { a, lambda } => -(r / a).tanh() / (lambda * a) * p,
            Family::TanSquared { l, beta } => {
                if r.abs() >= 0.5 * PI * l {
                    0.0
                } else {
                    -beta / l * (r / l).sin() * (r / l).cos().powf(beta - 1.0)
                }
            }
            Family::SoftenedDelta { a, b0 } => {
                if b0 == 0.0 && r == 0.0 {
                    0.0
                } else {
                    -r / (a * r.hypot(b0)) * p
                }
            }
            Family::Coulomb { a_b } => -r.signum() / a_b * p,
        }
    }

    /// `Ψ₀ = c₀ φ₀ e^{−iE₀t/ħ}` on every grid point.
    pub fn sample(&self, grid: &Grid, t: f64) -> Result<ComplexField, ModelError> {
        let phase = Complex64::from_polar(1.0, -self.energy * t / self.constants.hbar);
        let samples = grid
            .positions()
            .into_iter()
            .map(|x| {
                if self.support.contains(x) {
                    Ok(phase * (self.norm_const * self.profile(x)))
                } else {
                    Err(ModelError::OutsideSupport { x })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ComplexField {
            grid: *grid,
            samples,
            time: t,
        })
    }
}

pub fn sample_stationary(spec: &ModelSpec, grid: &Grid, t: f64) -> Result<ComplexField, ModelError> {
    spec.ground_state()?.sample(grid, t)
}

/// `F[Ψ*Ψ] = A·G(|Ψ|/c₀)` plus the residual linear potential `U_ext`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Nonlinearity {
    pub family: Family,
    pub constants: PhysicalConstants,
    /// `A`, an energy.
    pub scale: f64,
    /// `c₀`, fixing the argument convention `φ = |Ψ|/c₀`.
    pub norm_const: f64,
}

impl Nonlinearity {
    pub fn for_ground_state(spec: &ModelSpec, gs: &GroundState) -> Result<Self, ModelError> {
        let h2m = spec.constants.hbar2_over_m();
        let hbar = spec.constants.hbar;
        let scale = match spec.family {
            Family::Gausson { omega, .. } => 0.5 * hbar * omega,
            Family::TrappedGausson { omega1, omega2 } => 0.5 * hbar * omega2 * omega2 / omega1.hypot(omega2),
            Family::Cosh1D { a } | Family::CoshND { a, .. } => h2m / (a * a),
            Family::PowerLaw { a, lambda } => (1.0 + lambda) / (2.0 * lambda * lambda) * h2m / (a * a),
            Family::TanSquared { l, .. } => h2m / (2.0 * l * l),
            Family::SoftenedDelta { a, b0 } => {
                if b0 == 0.0 {
                    return Err(ModelError::NoNonlinearity("softened-delta with b0 = 0"));
                }
                h2m / (2.0 * a * a)
            }
            Family::Coulomb { a_b } => 2.0 * h2m / (a_b * a_b),
        };
        Ok(Self {
            family: spec.family,
            constants: spec.constants,
            scale,
            norm_const: gs.norm_const,
        })
    }

    /// `G(φ)` on its natural domain `0 < φ ≤ 1`.
    pub fn shape(&self, phi: f64) -> Result<f64, ModelError> {
        if phi > 0.0 && phi <= 1.0 {
            Ok(self.shape_extended(phi))
        } else {
            Err(ModelError::ShapeDomain { phi })
        }
    }

    /// The closed-form `G` evaluated without a domain check; time stepping
    /// uses it for `|Ψ|/c₀` slightly above 1 (overlapping solitons).
    pub fn shape_extended(&self, phi: f64) -> f64 {
        match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => -2.0 * phi.ln(),
            Family::Cosh1D { .. } => -phi * phi,
            Family::CoshND { dim, .. } => {
                let nm1 = dim as f64 - 1.0;
                if nm1 == 0.0 {
                    return -phi * phi;
                }
                let eps = 1.0 - phi;
                let ratio = if eps.abs() < 1e-8 {
                    // tanh(y)/y with y² ≈ 2(1 − φ)
                    1.0 - 2.0 * eps / 3.0
                } else {
                    let s = ((1.0 - phi) * (1.0 + phi)).sqrt();
                    s / (s.ln_1p() - phi.ln())
                };
                -phi * phi - 0.5 * nm1 * ratio
            }
            Family::PowerLaw { lambda, .. } => -phi.powf(2.0 * lambda),
            Family::TanSquared { beta, .. } => beta * (beta - 1.0) * (phi.powf(-2.0 / beta) - 1.0),
            Family::SoftenedDelta { a, b0 } => {
                let c = b0 / a;
                let l = phi.ln() - c;
                c * c * (1.0 - l) / (l * l * l)
            }
            Family::Coulomb { .. } => {
                if phi == 1.0 {
                    f64::NEG_INFINITY
                } else {
                    0.5 / phi.ln()
                }
            }
        }
    }

    /// Residual linear potential kept out of the nonlinear rewrite.
    pub fn external_potential(&self, r: f64) -> f64 {
        match self.family {
            Family::TrappedGausson { omega1, .. } => 0.5 * self.constants.mass * omega1 * omega1 * r * r,
            _ => 0.0,
        }
    }

    /// `F` as a function of the amplitude `|Ψ|`.
    pub fn term(&self, amplitude: f64) -> f64 {
        self.scale * self.shape_extended(amplitude / self.norm_const)
    }

    /// `(λ, κ)` when `F = κ |Ψ|^{2λ}` exactly.
    pub fn power_law_form(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::Cosh1D { .. } | Family::CoshND { dim: 1, .. } => {
                Some((1.0, -self.scale / (self.norm_const * self.norm_const)))
            }
            Family::PowerLaw { lambda, .. } => Some((lambda, -self.scale / self.norm_const.powf(2.0 * lambda))),
            _ => None,
        }
    }

    pub fn domain_note(&self) -> &'static str {
        match self.family {
            Family::Gausson { .. } | Family::TrappedGausson { .. } => {
                "G -> +inf logarithmically as phi -> 0 (phi G -> 0); G(1) = 0"
            }
            Family::Cosh1D { .. } | Family::PowerLaw { .. } => "G -> 0 as phi -> 0; G(1) = -1",
            Family::CoshND { .. } => "G -> 0 as phi -> 0; G -> -(N+1)/2 as phi -> 1",
            Family::TanSquared { .. } => "G -> +inf as phi -> 0 (walls); G(1) = 0",
            Family::SoftenedDelta { .. } => "G -> 0 as phi -> 0; G(1) = -a/b0 - 1",
            Family::Coulomb { .. } => "G -> 0 as phi -> 0; G -> -inf as phi -> 1",
        }
    }
}

/// Spec, ground state and nonlinearity of one family, ready for the
/// construction, verification and evolution layers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Model {
    pub spec: ModelSpec,
    pub ground: GroundState,
    pub nonlinearity: Nonlinearity,
}

impl Model {
    pub fn new(spec: &ModelSpec) -> Result<Self, ModelError> {
        spec.build()
    }
}
