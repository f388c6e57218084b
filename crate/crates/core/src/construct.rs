//! The construction run numerically: invert the ground-state profile,
//! read the potential off as a function of `φ`, and compare the tabulated
//! nonlinearity with the closed form.
//!
//! Synthesis sees a family only through [`SolvableModel`], so it cannot
//! special-case any catalog entry.

use serde::Serialize;

use crate::models::{Model, ModelError, ModelSpec, Support};
use crate::numerics::{invert_monotone, NumericsError};

/// Profile values below this threshold fix the truncation radius.
pub const TRUNCATION_PROFILE: f64 = 1e-6;
pub const DEFAULT_PHI_MIN: f64 = 1e-3;
pub const DEFAULT_POINTS: usize = 256;
const MONOTONICITY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructError {
    #[error("phi = {phi} is outside the invertible range [{reachable}, 1]")]
    OutOfRange { phi: f64, reachable: f64 },
    #[error("profile is not strictly decreasing near r = {r}")]
    NotMonotone { r: f64 },
    #[error("invalid synthesis window: phi_min = {phi_min}, n_points = {n_points}")]
    InvalidWindow { phi_min: f64, n_points: usize },
    #[error("no point of the phi window could be inverted")]
    EmptyWindow,
    #[error("nonlinearity scale is zero; nothing to synthesize")]
    ZeroScale,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// What synthesis needs from a solvable linear problem.
pub trait SolvableModel {
    /// `φ₀(r)`, decreasing from `φ₀(0) = 1`.
    fn profile(&self, r: f64) -> f64;
    fn length_scale(&self) -> f64;
    /// Radius of a hard wall, if the support is bounded.
    fn support_radius(&self) -> Option<f64>;
    fn potential(&self, r: f64) -> Result<f64, ModelError>;
    fn external_potential(&self, r: f64) -> f64;
    /// The energy `A` multiplying `G`.
    fn scale(&self) -> f64;
    /// Closed-form `G(φ)`, when one is known.
    fn analytic_shape(&self, phi: f64) -> Option<f64>;
}

impl SolvableModel for Model {
    fn profile(&self, r: f64) -> f64 {
        self.ground.profile(r)
    }

    fn length_scale(&self) -> f64 {
        self.ground.length_scale
    }

    fn support_radius(&self) -> Option<f64> {
        match self.ground.support {
            Support::Box { half_width } => Some(half_width),
            Support::Unbounded => None,
        }
    }

    fn potential(&self, r: f64) -> Result<f64, ModelError> {
        self.spec.potential(r)
    }

    fn external_potential(&self, r: f64) -> f64 {
        self.nonlinearity.external_potential(r)
    }

    fn scale(&self) -> f64 {
        self.nonlinearity.scale
    }

    fn analytic_shape(&self, phi: f64) -> Option<f64> {
        self.nonlinearity.shape(phi).ok()
    }
}

/// Radius where the profile first drops below [`TRUNCATION_PROFILE`],
/// found by doubling from the length scale, or the wall radius.
pub fn truncation_radius<M: SolvableModel + ?Sized>(model: &M) -> f64 {
    if let Some(wall) = model.support_radius() {
        return wall;
    }
    let mut r = model.length_scale();
    for _ in 0..200 {
        if model.profile(r) < TRUNCATION_PROFILE {
            break;
        }
        r *= 2.0;
    }
    r
}

/// `φ₀⁻¹(φ)` by bisection on `[0, r_max]` to `10⁻¹²·length_scale`.
pub fn invert_profile<M: SolvableModel + ?Sized>(model: &M, phi: f64) -> Result<f64, ConstructError> {
    let r_max = truncation_radius(model);
    let reachable = model.profile(r_max);
    if !(phi > 0.0 && phi <= 1.0) || phi < reachable {
        return Err(ConstructError::OutOfRange { phi, reachable });
    }
    if phi == 1.0 {
        return Ok(0.0);
    }
    let tol = 1e-12 * model.length_scale();
    Ok(invert_monotone(|r| model.profile(r), phi, 0.0, r_max, tol)?)
}

/// Checks strict decrease of the profile on `[0, r_max]`.
pub fn check_monotone<M: SolvableModel + ?Sized>(model: &M) -> Result<(), ConstructError> {
    let r_max = truncation_radius(model);
    let mut prev = model.profile(0.0);
    for i in 1..=MONOTONICITY_SAMPLES {
        let r = r_max * i as f64 / MONOTONICITY_SAMPLES as f64;
        let p = model.profile(r);
        if !(p < prev) && p > 0.0 {
            return Err(ConstructError::NotMonotone { r });
        }
        prev = p;
    }
    Ok(())
}

/// Tabulated `G(φ)` read off the potential.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesizedNonlinearity {
    pub phi: Vec<f64>,
    pub g_synth: Vec<f64>,
    /// Closed-form `G` on the same grid, when available.
    pub g_analytic: Option<Vec<f64>>,
    /// Pointwise `|G_synth − G|/|G|`.
    pub rel_dev: Option<Vec<f64>>,
    /// Worst entry of `rel_dev`.
    pub deviation_vs_analytic: Option<f64>,
    /// Set when points at the ends of the window could not be inverted and
    /// were dropped.
    pub window_shrunk: bool,
}

/// `n_points` values in `[φ_min, 1 − φ_min]`, log-spaced toward both ends
/// and meeting at `½`.
pub fn phi_window(phi_min: f64, n_points: usize) -> Vec<f64> {
    let n_lo = n_points / 2;
    let n_hi = n_points - n_lo;
    let mut phi: Vec<f64> = (0..n_lo)
        .map(|i| phi_min * (0.5 / phi_min).powf(i as f64 / (n_lo - 1) as f64))
        .collect();
    phi.extend((1..=n_hi).map(|i| 1.0 - 0.5 * (phi_min / 0.5).powf(i as f64 / n_hi as f64)));
    phi
}

/// `G(φ) = [U(φ₀⁻¹(φ)) − U_ext(φ₀⁻¹(φ))]/A` on [`phi_window`].
pub fn synthesize<M: SolvableModel + ?Sized>(
    model: &M,
    phi_min: f64,
    n_points: usize,
) -> Result<SynthesizedNonlinearity, ConstructError> {
    if !(phi_min > 0.0 && phi_min < 0.5) || n_points < 16 {
        return Err(ConstructError::InvalidWindow { phi_min, n_points });
    }
    let a = model.scale();
    if a == 0.0 {
        return Err(ConstructError::ZeroScale);
    }
    check_monotone(model)?;

    let mut phi = Vec::with_capacity(n_points);
    let mut g_synth = Vec::with_capacity(n_points);
    let mut window_shrunk = false;
    for p in phi_window(phi_min, n_points) {
        let r = match invert_profile(model, p) {
            Ok(r) => r,
            Err(ConstructError::OutOfRange { .. }) => {
                window_shrunk = true;
                continue;
            }
            Err(e) => return Err(e),
        };
        let u = match model.potential(r) {
            Ok(u) => u,
            Err(ModelError::Singular { .. } | ModelError::InfiniteWall { .. }) => {
                window_shrunk = true;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        phi.push(p);
        g_synth.push((u - model.external_potential(r)) / a);
    }
    if phi.is_empty() {
        return Err(ConstructError::EmptyWindow);
    }

    let g_analytic: Option<Vec<f64>> = phi.iter().map(|&p| model.analytic_shape(p)).collect();
    let rel_dev: Option<Vec<f64>> = g_analytic.as_ref().map(|ga| {
        ga.iter()
            .zip(&g_synth)
            .map(|(&exact, &s)| (s - exact).abs() / exact.abs().max(f64::MIN_POSITIVE))
            .collect()
    });
    let deviation_vs_analytic = rel_dev.as_ref().map(|d| d.iter().cloned().fold(0.0, f64::max));
    Ok(SynthesizedNonlinearity {
        phi,
        g_synth,
        g_analytic,
        rel_dev,
        deviation_vs_analytic,
        window_shrunk,
    })
}

/// Worst relative deviation of synthesized against closed-form `G` on the
/// default window.
pub fn verify_method(spec: &ModelSpec) -> Result<f64, ConstructError> {
    let model = spec.build()?;
    let s = synthesize(&model, DEFAULT_PHI_MIN, DEFAULT_POINTS)?;
    s.deviation_vs_analytic
        .ok_or(ConstructError::Model(ModelError::NoNonlinearity(spec.family.name())))
}
