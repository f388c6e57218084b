//! Catalog-wide case lists in the shared report layout; the CLI and the
//! acceptance run both draw from here.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::limits::{
    limit_delta_cusp, limit_softened_delta_g_integral, limit_softened_delta_potential_integral, limit_tan2,
    limit_trapped_gausson, localization_scan,
};
use super::residual::{documented_resolution, residual_boosted, residual_stationary, residual_stationary_perturbed};
use super::uncertainty::{heisenberg_scan, log_space, uncertainty};
use super::{CaseReport, Criterion, LimitReport, Perturbation, VerifyError};
use crate::construct::{synthesize, DEFAULT_PHI_MIN, DEFAULT_POINTS};
use crate::field::UniformGrid;
use crate::models::{Family, ModelSpec, PhysicalConstants};

pub const RESIDUAL_BOUND: f64 = 1e-6;
pub const CONTROL_BOUND: f64 = 1e-4;
pub const CERTIFICATION_BOUND: f64 = 1e-6;
pub const NORM_BOUND: f64 = 1e-8;
/// Point counts for the `dx → dx/2` ratio: `n` and `2n − 1` share endpoints.
const RATIO_POINTS: usize = 1025;

/// The catalog at its reference parameters (`ħ = m = 1`, unit lengths and
/// frequency, `β = 2`, `λ ∈ {½, 1, 2}`, `N ∈ {1, 2, 3}`).
pub fn default_specs() -> Vec<ModelSpec> {
    let half = 0.5f64.sqrt();
    let mut specs = Vec::new();
    for dim in 1..=3 {
        specs.push(ModelSpec::gausson(1.0, dim).unwrap());
    }
    specs.push(ModelSpec::trapped_gausson(half, half).unwrap());
    specs.push(ModelSpec::cosh_1d(1.0).unwrap());
    for dim in 2..=3 {
        specs.push(ModelSpec::cosh_nd(1.0, dim).unwrap());
    }
    for lambda in [0.5, 1.0, 2.0] {
        specs.push(ModelSpec::power_law(1.0, lambda).unwrap());
    }
    specs.push(ModelSpec::tan_squared(1.0, 2.0).unwrap());
    specs.push(ModelSpec::softened_delta(1.0, 1.0).unwrap());
    specs.push(ModelSpec::coulomb(1.0).unwrap());
    specs
}

fn label(spec: &ModelSpec) -> String {
    let params: Vec<String> = spec
        .params()
        .iter()
        .filter(|(k, _)| *k != "hbar" && *k != "mass")
        .map(|(k, v)| format!("{k}={v}"))
        .collect();
    format!("{}[{}]", spec.family.name(), params.join(","))
}

fn guard(case: &str, spec: &ModelSpec, r: Result<CaseReport, VerifyError>) -> CaseReport {
    r.unwrap_or_else(|e| {
        let mut f = CaseReport::failed(case, spec.family.name(), e);
        f.params = spec.params();
        f
    })
}

/// Residual at the documented resolution, the three 1% negative controls
/// and the second-order convergence ratio.
pub fn residual_cases(spec: &ModelSpec) -> Vec<CaseReport> {
    let name = spec.family.name();
    let l = label(spec);
    let (window, n) = documented_resolution(spec);
    let mut out = Vec::new();

    out.push(guard(
        &format!("residual {l}"),
        spec,
        (|| {
            let r = residual_stationary(spec, window, n)?;
            Ok(CaseReport::new(
                format!("residual {l}"),
                name,
                r.params,
                r.l2_rel,
                0.0,
                Criterion::Below(RESIDUAL_BOUND),
            )
            .with_grid(r.grid)
            .with_notes(format!("max_rel = {:.3e}", r.max_rel)))
        })(),
    ));

    for (what, p) in [
        (
            "E0",
            Perturbation {
                energy: 0.01,
                ..Default::default()
            },
        ),
        (
            "A",
            Perturbation {
                scale: 0.01,
                ..Default::default()
            },
        ),
        (
            "c0",
            Perturbation {
                norm: 0.01,
                ..Default::default()
            },
        ),
    ] {
        let case = format!("residual-control {what}+1% {l}");
        out.push(guard(
            &case,
            spec,
            (|| {
                let r = residual_stationary_perturbed(spec, window, n, &p)?;
                Ok(CaseReport::new(
                    case.clone(),
                    name,
                    r.params,
                    r.l2_rel,
                    0.0,
                    Criterion::Above(CONTROL_BOUND),
                )
                .with_grid(r.grid))
            })(),
        ));
    }

    let case = format!("residual-order {l}");
    out.push(guard(
        &case,
        spec,
        (|| {
            let coarse = residual_stationary(spec, window, RATIO_POINTS)?;
            let fine = residual_stationary(spec, window, 2 * RATIO_POINTS - 1)?;
            Ok(CaseReport::new(
                case.clone(),
                name,
                spec.params(),
                coarse.l2_rel / fine.l2_rel,
                4.0,
                Criterion::Between(3.0, 5.0),
            )
            .with_grid(fine.grid)
            .with_notes(format!(
                "l2_rel {:.3e} -> {:.3e} under dx -> dx/2",
                coarse.l2_rel, fine.l2_rel
            )))
        })(),
    ));
    out
}

/// Boosted residuals at `v = 0.5 ħ/(ma)`, `t = 3 ma²/ħ` for the 1D
/// `1/cosh` and power-law families.
pub fn boosted_cases() -> Vec<CaseReport> {
    let specs = [
        ModelSpec::cosh_1d(1.0).unwrap(),
        ModelSpec::power_law(1.0, 0.5).unwrap(),
    ];
    specs
        .iter()
        .map(|spec| {
            let case = format!("boosted-residual {}", label(spec));
            guard(
                &case,
                spec,
                (|| {
                    let a = spec.length_scale();
                    let h2m = spec.constants.hbar2_over_m();
                    let v = 0.5 * h2m / (spec.constants.hbar * a);
                    let t = 3.0 * a * a / h2m;
                    let grid = UniformGrid::new(-30.0 * a, 30.0 * a, 1 << 16).unwrap();
                    let r = residual_boosted(spec, v, t, &grid)?;
                    Ok(CaseReport::new(
                        case.clone(),
                        spec.family.name(),
                        r.params,
                        r.l2_rel,
                        0.0,
                        Criterion::Below(RESIDUAL_BOUND),
                    )
                    .with_grid(r.grid))
                })(),
            )
        })
        .collect()
}

/// Synthesized against closed-form `G` on `φ ∈ [10⁻³, 1 − 10⁻³]`.
pub fn invert_case(spec: &ModelSpec) -> CaseReport {
    let case = format!("invert {}", label(spec));
    guard(
        &case,
        spec,
        (|| {
            let model = spec.build()?;
            let s = synthesize(&model, DEFAULT_PHI_MIN, DEFAULT_POINTS)?;
            let dev = s.deviation_vs_analytic.unwrap_or(f64::NAN);
            Ok(CaseReport::new(
                case.clone(),
                spec.family.name(),
                spec.params(),
                dev,
                0.0,
                Criterion::Below(CERTIFICATION_BOUND),
            )
            .with_notes(format!(
                "{} phi points{}",
                s.phi.len(),
                if s.window_shrunk { ", window shrunk" } else { "" }
            )))
        })(),
    )
}

/// Closed-form against quadrature `c₀`; `None` when no closed form exists.
pub fn norm_case(spec: &ModelSpec) -> Option<CaseReport> {
    let case = format!("norm {}", label(spec));
    let analytic = match spec.analytic_norm_constant() {
        Ok(Some(c0)) => c0,
        Ok(None) => return None,
        Err(e) => return Some(guard(&case, spec, Err(e.into()))),
    };
    Some(guard(
        &case,
        spec,
        (|| {
            let numeric = spec.norm_constant_numeric()?;
            Ok(CaseReport::new(
                case.clone(),
                spec.family.name(),
                spec.params(),
                numeric,
                analytic,
                Criterion::RelDev(NORM_BOUND),
            ))
        })(),
    ))
}

/// Small-`λ` asymptotics at `λ_list`, the `λ = 1` closed moments, and the
/// Heisenberg margin over a 40-point log scan of `[10⁻⁴, 2]`.
pub fn uncertainty_cases(a: f64, lambdas: &[f64], constants: PhysicalConstants) -> Vec<CaseReport> {
    let mut out = Vec::new();
    let hbar = constants.hbar;
    for &lambda in lambdas {
        let spec = match ModelSpec::with_constants(Family::PowerLaw { a, lambda }, constants) {
            Ok(s) => s,
            Err(e) => {
                out.push(CaseReport::failed(
                    format!("uncertainty lambda={lambda}"),
                    "power-law",
                    e,
                ));
                continue;
            }
        };
        match uncertainty(&spec) {
            Ok(r) => {
                let p = spec.params();
                out.push(CaseReport::new(
                    format!("uncertainty-dx lambda={lambda}"),
                    "power-law",
                    p.clone(),
                    r.dx,
                    r.dx_asymptote,
                    Criterion::RelDev(0.02),
                ));
                out.push(CaseReport::new(
                    format!("uncertainty-dp lambda={lambda}"),
                    "power-law",
                    p.clone(),
                    r.dp,
                    r.dp_asymptote,
                    Criterion::RelDev(0.02),
                ));
                out.push(CaseReport::new(
                    format!("uncertainty-kinetic lambda={lambda}"),
                    "power-law",
                    p.clone(),
                    r.kinetic_ratio,
                    r.kinetic_asymptote,
                    Criterion::RelDev(0.05),
                ));
                out.push(CaseReport::new(
                    format!("uncertainty-heisenberg lambda={lambda}"),
                    "power-law",
                    p,
                    r.product_over_hbar - 0.5,
                    0.0,
                    Criterion::Above(0.0),
                ));
            }
            Err(e) => out.push(CaseReport::failed(
                format!("uncertainty lambda={lambda}"),
                "power-law",
                e,
            )),
        }
    }

    let sech = ModelSpec::with_constants(Family::PowerLaw { a, lambda: 1.0 }, constants).unwrap();
    out.push(match uncertainty(&sech) {
        Ok(r) => CaseReport::new(
            "uncertainty-closed-moments lambda=1",
            "power-law",
            sech.params(),
            r.dx * r.dp,
            hbar * PI / 6.0,
            Criterion::RelDev(1e-6),
        )
        .with_notes("<x^2> = pi^2 a^2/12, <p^2> = hbar^2/(3 a^2)"),
        Err(e) => CaseReport::failed("uncertainty-closed-moments lambda=1", "power-law", e),
    });

    let scan = log_space(1e-4, 2.0, 40);
    out.push(match heisenberg_scan(&sech, &scan) {
        Ok(reports) => {
            let margin = reports
                .iter()
                .map(|r| r.product_over_hbar - 0.5)
                .fold(f64::INFINITY, f64::min);
            let monotone = reports.windows(2).all(|w| w[1].dx > w[0].dx && w[1].dp < w[0].dp);
            let mut params = BTreeMap::new();
            params.insert("a".into(), a);
            CaseReport::new(
                "uncertainty-heisenberg-scan lambda in [1e-4, 2], 40 points",
                "power-law",
                params,
                margin,
                0.0,
                Criterion::Above(0.0),
            )
            .with_notes(format!(
                "minimum of dx dp/hbar - 1/2; dx decreasing and dp increasing as lambda decreases: {monotone}"
            ))
        }
        Err(e) => CaseReport::failed("uncertainty-heisenberg-scan", "power-law", e),
    });
    out
}

/// Which singular-limit identities to run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitCase {
    SoftenedDelta { a: f64, b0: f64 },
    DeltaCusp { a: f64 },
    Tan2 { l: f64 },
    TrappedGausson { omega: f64 },
    Localization { a: f64 },
}

impl LimitCase {
    /// The reference parameter sets.
    pub fn defaults() -> Vec<LimitCase> {
        vec![
            LimitCase::SoftenedDelta { a: 1.0, b0: 1.0 },
            LimitCase::SoftenedDelta { a: 1.0, b0: 1e-3 },
            LimitCase::SoftenedDelta { a: 2.0, b0: 0.5 },
            LimitCase::SoftenedDelta { a: 1.0, b0: 10.0 },
            LimitCase::DeltaCusp { a: 1.0 },
            LimitCase::Tan2 { l: 1.0 },
            LimitCase::TrappedGausson { omega: 1.0 },
            LimitCase::Localization { a: 1.0 },
        ]
    }
}

fn from_limit(family: &str, params: BTreeMap<String, f64>, r: LimitReport, criterion: Criterion) -> CaseReport {
    CaseReport::new(r.case, family, params, r.measured, r.expected, criterion).with_notes(r.notes)
}

fn params_of(pairs: &[(&str, f64)], constants: PhysicalConstants) -> BTreeMap<String, f64> {
    let mut p: BTreeMap<String, f64> = pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    p.insert("hbar".into(), constants.hbar);
    p.insert("mass".into(), constants.mass);
    p
}

pub fn limit_cases(case: LimitCase, constants: PhysicalConstants) -> Vec<CaseReport> {
    let run = || -> Result<Vec<CaseReport>, VerifyError> {
        Ok(match case {
            LimitCase::SoftenedDelta { a, b0 } => {
                let spec = ModelSpec::with_constants(Family::SoftenedDelta { a, b0 }, constants)?;
                let p = spec.params();
                let u = limit_softened_delta_potential_integral(&spec)?;
                let (g, _) = limit_softened_delta_g_integral(&spec)?;
                vec![
                    from_limit("softened-delta", p.clone(), u, Criterion::RelDev(1e-8)),
                    from_limit("softened-delta", p, g, Criterion::RelDev(1e-6)),
                ]
            }
            LimitCase::DeltaCusp { a } => {
                let p = params_of(&[("a", a), ("b0", 0.0)], constants);
                let r = limit_delta_cusp(a, constants)?;
                let criteria = [
                    Criterion::Exact,
                    Criterion::Below(1e-10),
                    // φ_b₀ − φ₀ ≤ e^{b₀/a} − 1 at b₀ = 0.01a
                    Criterion::Below(0.01f64.exp_m1() * (1.0 + 1e-9)),
                    Criterion::Exact,
                ];
                r.into_iter()
                    .zip(criteria)
                    .map(|(r, c)| from_limit("softened-delta", p.clone(), r, c))
                    .collect()
            }
            LimitCase::Tan2 { l } => {
                let p = params_of(&[("L", l)], constants);
                let r = limit_tan2(l, 1e3, 1.0 + 1e-6, constants)?;
                // β = 10³ bound pinned from the oracle maximum 6.19e-4
                let criteria = [Criterion::Below(1e-3), Criterion::Below(1e-5), Criterion::Exact];
                r.into_iter()
                    .zip(criteria)
                    .map(|(r, c)| from_limit("tan2", p.clone(), r, c))
                    .collect()
            }
            LimitCase::TrappedGausson { omega } => {
                let p = params_of(&[("omega", omega)], constants);
                limit_trapped_gausson(omega, &[0.1, 0.5, 0.9], constants)?
                    .into_iter()
                    .map(|r| {
                        let c = if r.case.starts_with("trapped-endpoint") {
                            Criterion::Exact
                        } else {
                            Criterion::AbsDev(1e-10 * r.expected.abs().max(1.0))
                        };
                        from_limit("trapped-gausson", p.clone(), r, c)
                    })
                    .collect()
            }
            LimitCase::Localization { a } => {
                let lambdas = [1.0, 0.3, 0.1, 0.03, 0.01];
                let pts = localization_scan(a, &lambdas, constants)?;
                let mut out: Vec<CaseReport> = pts
                    .iter()
                    .map(|pt| {
                        CaseReport::new(
                            format!("localization-mass lambda={}", pt.lambda),
                            "power-law",
                            params_of(&[("a", a), ("lambda", pt.lambda)], constants),
                            pt.mass,
                            1.0,
                            Criterion::AbsDev(1e-8),
                        )
                    })
                    .collect();
                out.push(
                    CaseReport::new(
                        "localization-half-mass lambda=1",
                        "power-law",
                        params_of(&[("a", a), ("lambda", 1.0)], constants),
                        pts[0].half_mass_radius,
                        a * 0.5f64.atanh(),
                        Criterion::RelDev(1e-8),
                    )
                    .with_notes("x50 = a artanh(1/2) from tanh(x/a) = 1/2"),
                );
                let shrinking = pts.windows(2).all(|w| w[1].half_mass_radius < w[0].half_mass_radius);
                let radii: Vec<String> = pts
                    .iter()
                    .map(|p| format!("{}:{:.6e}", p.lambda, p.half_mass_radius))
                    .collect();
                out.push(
                    CaseReport::new(
                        "localization-shrinks",
                        "power-law",
                        params_of(&[("a", a)], constants),
                        if shrinking { 1.0 } else { 0.0 },
                        1.0,
                        Criterion::Exact,
                    )
                    .with_notes(format!("half-mass radius by lambda: {}", radii.join(", "))),
                );
                out
            }
        })
    };
    run().unwrap_or_else(|e| vec![CaseReport::failed(format!("{case:?}"), "limits", e)])
}

/// Every non-evolution case at the reference parameters, in a fixed order.
pub fn all_cases() -> Vec<CaseReport> {
    let specs = default_specs();
    let constants = PhysicalConstants::default();
    let mut out = Vec::new();
    for spec in &specs {
        out.push(invert_case(spec));
    }
    out.extend(specs.iter().filter_map(norm_case));
    for spec in &specs {
        out.extend(residual_cases(spec));
    }
    out.extend(boosted_cases());
    out.extend(uncertainty_cases(1.0, &[0.1, 0.03, 0.01], constants));
    for case in LimitCase::defaults() {
        out.extend(limit_cases(case, constants));
    }
    out
}
