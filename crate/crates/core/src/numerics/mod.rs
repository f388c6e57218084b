//! Numerical foundation: quadrature, special functions, bracketed
//! inversion, the DFT contract and finite-difference stencils.

mod quadrature;
mod roots;
mod special;
mod spectral;
mod stencil;

pub use quadrature::{integrate_adaptive, Quadrature, QuadratureResult};
pub use roots::invert_monotone;
pub use special::{exp_integral_e1, gamma, log_gamma, zeta};
pub use spectral::{dft_forward, dft_inverse, Dft, SpectralGrid};
pub use stencil::{first_derivative, second_derivative, Derivative, Sample};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("{function} is undefined at {arg}")]
    Domain { function: &'static str, arg: f64 },
    #[error("non-finite integrand sample at x = {x}")]
    NonFiniteSample { x: f64 },
    #[error("quadrature did not converge within budget (best {} ± {}, {} evaluations)", best.value, best.abs_error_estimate, best.evaluations)]
    NonConvergence { best: QuadratureResult },
    #[error("relative tolerance {0} must lie in (0, 1)")]
    InvalidTolerance(f64),
    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("target {target} not bracketed by f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { target: f64, f_lo: f64, f_hi: f64 },
    #[error("grid length {0} must be a power of two (and at least 16 for spectral grids)")]
    GridSize(usize),
    #[error("stencil needs at least 5 samples, got {0}")]
    StencilSize(usize),
}

/// `ln cosh x` without overflow for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1.0 {
        let s = (0.5 * ax).sinh();
        (2.0 * s * s).ln_1p()
    } else {
        ax - std::f64::consts::LN_2 + (-2.0 * ax).exp().ln_1p()
    }
}
