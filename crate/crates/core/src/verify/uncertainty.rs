use serde::Serialize;

use super::VerifyError;
use crate::models::{Family, ModelSpec};
use crate::numerics::{ln_cosh, Quadrature};

pub const LAMBDA_RANGE: (f64, f64) = (1e-4, 1e2);

/// Position and momentum spreads of the power-law ground state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub lambda: f64,
    pub dx: f64,
    pub dp: f64,
    pub product_over_hbar: f64,
    /// `⟨E_kin⟩/|E₀|`.
    pub kinetic_ratio: f64,
    /// Small-`λ` forms `a√(λ/2)`, `ħ/(a√(2λ))` and `λ/2`.
    pub dx_asymptote: f64,
    pub dp_asymptote: f64,
    pub kinetic_asymptote: f64,
}

/// `Δx`, `Δp` and `⟨E_kin⟩/|E₀|` of `sech^{1/λ}(x/a)` by quadrature.
///
/// Integrals run in `u = x/(a√(λ/2))`, where the density tends to a unit
/// Gaussian for small `λ`. Moments are ratios of quadratures, so they do
/// not depend on `c₀`; `⟨p²⟩` uses `ħ²∫φ'²` with `φ' = −tanh(x/a)φ/(λa)`.
pub fn uncertainty(spec: &ModelSpec) -> Result<UncertaintyReport, VerifyError> {
    let Family::PowerLaw { a, lambda } = spec.family else {
        return Err(VerifyError::Domain(format!(
            "uncertainty needs the power-law family, got {}",
            spec.family.name()
        )));
    };
    if !(LAMBDA_RANGE.0..=LAMBDA_RANGE.1).contains(&lambda) {
        return Err(VerifyError::Domain(format!(
            "lambda = {lambda} outside [{}, {}]",
            LAMBDA_RANGE.0, LAMBDA_RANGE.1
        )));
    }
    let hbar = spec.constants.hbar;
    let s = (0.5 * lambda).sqrt();
    let density = |u: f64| (-2.0 / lambda * ln_cosh(s * u)).exp();
    let q = Quadrature::with_rel_tol(1e-13).max_evaluations(1_000_000);
    let i0 = q.integrate(density, 0.0, f64::INFINITY)?.value;
    let i2 = q.integrate(|u| u * u * density(u), 0.0, f64::INFINITY)?.value;
    let it = q
        .integrate(|u| (s * u).tanh().powi(2) * density(u), 0.0, f64::INFINITY)?
        .value;

    let length = a * s;
    let dx = length * (i2 / i0).sqrt();
    let kinetic_ratio = it / i0;
    let dp = hbar / (lambda * a) * kinetic_ratio.sqrt();
    Ok(UncertaintyReport {
        lambda,
        dx,
        dp,
        product_over_hbar: dx * dp / hbar,
        kinetic_ratio,
        dx_asymptote: length,
        dp_asymptote: hbar / (a * (2.0 * lambda).sqrt()),
        kinetic_asymptote: 0.5 * lambda,
    })
}

/// `n` log-spaced values from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (l + (h - l) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// [`uncertainty`] for each `λ` at the model's `a` and constants.
pub fn heisenberg_scan(spec: &ModelSpec, lambdas: &[f64]) -> Result<Vec<UncertaintyReport>, VerifyError> {
    let Family::PowerLaw { a, .. } = spec.family else {
        return Err(VerifyError::Domain("heisenberg scan needs the power-law family".into()));
    };
    lambdas
        .iter()
        .map(|&lambda| {
            let s = ModelSpec::with_constants(Family::PowerLaw { a, lambda }, spec.constants)?;
            uncertainty(&s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn sech_closed_moments() {
        // ⟨x²⟩ = π²a²/12, ⟨p²⟩ = ħ²/(3a²)
        let r = uncertainty(&ModelSpec::power_law(1.0, 1.0).unwrap()).unwrap();
        assert_relative_eq!(r.dx, PI / 12f64.sqrt(), max_relative = 1e-10);
        assert_relative_eq!(r.dp, 1.0 / 3f64.sqrt(), max_relative = 1e-10);
        assert_relative_eq!(r.product_over_hbar, PI / 6.0, max_relative = 1e-10);
    }

    #[test]
    fn scaling_with_a_and_hbar() {
        let base = uncertainty(&ModelSpec::power_law(1.0, 0.3).unwrap()).unwrap();
        let spec = ModelSpec::with_constants(
            Family::PowerLaw { a: 2.5, lambda: 0.3 },
            crate::models::PhysicalConstants { hbar: 0.7, mass: 3.0 },
        )
        .unwrap();
        let r = uncertainty(&spec).unwrap();
        assert_relative_eq!(r.dx, 2.5 * base.dx, max_relative = 1e-12);
        assert_relative_eq!(r.dp, 0.7 / 2.5 * base.dp, max_relative = 1e-12);
        assert_relative_eq!(r.kinetic_ratio, base.kinetic_ratio, max_relative = 1e-12);
    }

    #[test]
    fn small_lambda_against_oracle() {
        // Oracle: 30-digit quadrature at λ = 0.01.
        let r = uncertainty(&ModelSpec::power_law(1.0, 0.01).unwrap()).unwrap();
        assert_relative_eq!(r.dx, 0.070_887_8, max_relative = 1e-5);
        assert_relative_eq!(r.dp, 7.053_456, max_relative = 1e-6);
        assert!(r.product_over_hbar - 0.5 > 0.0);
    }

    #[test]
    fn out_of_range() {
        assert!(uncertainty(&ModelSpec::power_law(1.0, 1e-5).unwrap()).is_err());
        assert!(uncertainty(&ModelSpec::cosh_1d(1.0).unwrap()).is_err());
    }

    #[test]
    fn log_space_ends() {
        let v = log_space(1e-4, 2.0, 40);
        assert_eq!(v.len(), 40);
        assert_eq!(v[0], 1e-4);
        assert_eq!(v[39], 2.0);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
