//! Checks that need no time stepping: grid residuals of the stationary and
//! boosted solutions, position/momentum spreads of the power-law family,
//! and the singular-limit identities.

mod limits;
mod residual;
mod suite;
mod uncertainty;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::construct::ConstructError;
use crate::models::ModelError;
use crate::numerics::NumericsError;

pub use limits::{
    ei_convention_values, limit_delta_cusp, limit_softened_delta_g_integral, limit_softened_delta_potential_integral,
    limit_tan2, limit_trapped_gausson, localization_scan, EiConvention, LocalizationPoint,
};
pub use residual::{
    documented_resolution, residual_boosted, residual_stationary, residual_stationary_perturbed, Perturbation,
    ResidualReport,
};
pub use suite::{
    all_cases, boosted_cases, default_specs, invert_case, limit_cases, norm_case, residual_cases, uncertainty_cases,
    LimitCase, CERTIFICATION_BOUND, CONTROL_BOUND, NORM_BOUND, RESIDUAL_BOUND,
};
pub use uncertainty::{heisenberg_scan, log_space, uncertainty, UncertaintyReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Sampling window of a grid-based check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridMeta {
    pub points: usize,
    pub spacing: f64,
    pub window: (f64, f64),
}

/// `|measured − expected| / |expected|`, or the absolute deviation when
/// `expected` is exactly zero.
pub fn rel_dev(measured: f64, expected: f64) -> f64 {
    let d = (measured - expected).abs();
    if expected == 0.0 {
        d
    } else {
        d / expected.abs()
    }
}

/// How a case decides `pass`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "kebab-case")]
pub enum Criterion {
    /// `rel_dev < bound`.
    RelDev(f64),
    /// `|measured − expected| < bound`.
    AbsDev(f64),
    /// `measured < bound`.
    Below(f64),
    /// `measured > bound`.
    Above(f64),
    /// `lo ≤ measured ≤ hi`.
    Between(f64, f64),
    /// `measured == expected`.
    Exact,
}

impl Criterion {
    pub fn holds(&self, measured: f64, expected: f64) -> bool {
        match *self {
            Criterion::RelDev(tol) => rel_dev(measured, expected) < tol,
            Criterion::AbsDev(tol) => (measured - expected).abs() < tol,
            Criterion::Below(bound) => measured < bound,
            Criterion::Above(bound) => measured > bound,
            Criterion::Between(lo, hi) => (lo..=hi).contains(&measured),
            Criterion::Exact => measured == expected,
        }
    }
}

/// One verification outcome in the shared JSON layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: String,
    pub family: String,
    pub params: BTreeMap<String, f64>,
    pub measured: f64,
    pub expected: f64,
    pub rel_dev: f64,
    pub grid_meta: Option<GridMeta>,
    pub tolerance: Criterion,
    pub pass: bool,
    pub notes: String,
}

impl CaseReport {
    pub fn new(
        case: impl Into<String>,
        family: impl Into<String>,
        params: BTreeMap<String, f64>,
        measured: f64,
        expected: f64,
        tolerance: Criterion,
    ) -> Self {
        Self {
            case: case.into(),
            family: family.into(),
            params,
            measured,
            expected,
            rel_dev: rel_dev(measured, expected),
            grid_meta: None,
            tolerance,
            pass: tolerance.holds(measured, expected),
            notes: String::new(),
        }
    }

    pub fn with_grid(mut self, grid: GridMeta) -> Self {
        self.grid_meta = Some(grid);
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    /// A case whose computation itself failed.
    pub fn failed(case: impl Into<String>, family: impl Into<String>, error: impl std::fmt::Display) -> Self {
        Self {
            case: case.into(),
            family: family.into(),
            params: BTreeMap::new(),
            measured: f64::NAN,
            expected: f64::NAN,
            rel_dev: f64::NAN,
            grid_meta: None,
            tolerance: Criterion::Exact,
            pass: false,
            notes: format!("error: {error}"),
        }
    }
}

/// Same-shape report for limit identities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitReport {
    pub case: String,
    pub measured: f64,
    pub expected: f64,
    pub rel_dev: f64,
    pub notes: String,
}

impl LimitReport {
    pub fn new(case: impl Into<String>, measured: f64, expected: f64, notes: impl Into<String>) -> Self {
        Self {
            case: case.into(),
            measured,
            expected,
            rel_dev: rel_dev(measured, expected),
            notes: notes.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria() {
        assert!(Criterion::RelDev(1e-3).holds(1.0005, 1.0));
        assert!(!Criterion::RelDev(1e-4).holds(1.0005, 1.0));
        assert!(Criterion::Below(1e-6).holds(5e-7, 0.0));
        assert!(Criterion::Above(0.5).holds(0.6, 0.0));
        assert!(Criterion::Exact.holds(-2.0, -2.0));
        assert!(!Criterion::RelDev(1.0).holds(f64::NAN, 1.0));
        assert_eq!(rel_dev(0.0, 0.0), 0.0);
    }

    #[test]
    fn report_json_layout() {
        let r = CaseReport::new("c", "cosh1d", BTreeMap::new(), 1.0, 1.0, Criterion::RelDev(1e-6));
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "case",
            "family",
            "params",
            "measured",
            "expected",
            "rel_dev",
            "grid_meta",
            "pass",
            "notes",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["tolerance"]["kind"], "rel-dev");
    }
}
