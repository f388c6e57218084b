//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::ExitCode;

use nse_core::construct::verify_method;
use nse_core::evolve::{boost, collide, evolve, EvolutionConfig, Method, Reference};
use nse_core::field::Grid;
use nse_core::models::{ModelSpec, PhysicalConstants};
use nse_core::numerics::SpectralGrid;
use nse_core::verify::{
    boosted_cases, default_specs, limit_cases, norm_case, rel_dev, residual_cases, uncertainty_cases, CaseReport,
    Criterion, LimitCase, CERTIFICATION_BOUND,
};

type Check = Box<dyn Fn() -> Outcome>;

struct Outcome {
    cases: Vec<CaseReport>,
}

impl Outcome {
    fn pass(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.pass)
    }
}

fn check(name: impl Into<String>, measured: f64, expected: f64, criterion: Criterion) -> CaseReport {
    CaseReport::new(name, "", BTreeMap::new(), measured, expected, criterion)
}

fn certification_specs() -> Vec<ModelSpec> {
    let mut specs = default_specs();
    specs.push(ModelSpec::cosh_nd(1.0, 1).unwrap());
    specs
}

fn construction() -> Outcome {
    let cases = certification_specs()
        .iter()
        .map(|s| match verify_method(s) {
            Ok(dev) => check(
                format!("certify {:?}", s.family),
                dev,
                0.0,
                Criterion::Below(CERTIFICATION_BOUND),
            ),
            Err(e) => CaseReport::failed(format!("certify {:?}", s.family), s.family.name(), e),
        })
        .collect();
    Outcome { cases }
}

fn normalization() -> Outcome {
    let mut cases: Vec<CaseReport> = certification_specs().iter().filter_map(norm_case).collect();
    let n3 = ModelSpec::cosh_nd(1.0, 3).unwrap();
    let n2 = ModelSpec::cosh_nd(1.0, 2).unwrap();
    cases.push(check(
        "coshNd N=3 closed form",
        n3.analytic_norm_constant().unwrap().unwrap(),
        (3.0 / PI.powi(3)).sqrt(),
        Criterion::RelDev(1e-12),
    ));
    cases.push(check(
        "coshNd N=2 closed form",
        n2.analytic_norm_constant().unwrap().unwrap(),
        1.0 / (2.0 * PI * 2f64.ln()).sqrt(),
        Criterion::RelDev(1e-12),
    ));
    Outcome { cases }
}

fn residuals() -> Outcome {
    Outcome {
        cases: default_specs().iter().flat_map(residual_cases).collect(),
    }
}

fn closed_moments(c: &CaseReport) -> bool {
    c.case.starts_with("uncertainty-closed-moments")
}

fn uncertainty() -> (Outcome, Outcome) {
    let all = uncertainty_cases(1.0, &[0.1, 0.03, 0.01], PhysicalConstants::default());
    let (moments, rest): (Vec<_>, Vec<_>) = all.into_iter().partition(closed_moments);
    (Outcome { cases: rest }, Outcome { cases: moments })
}

fn limits(cases: &[LimitCase]) -> Outcome {
    Outcome {
        cases: cases
            .iter()
            .flat_map(|&c| limit_cases(c, PhysicalConstants::default()))
            .collect(),
    }
}

/// Cosh1D at v = 0.5 to T = 10 on 4096 points over [−40, 40].
fn travelling(dt: f64) -> (f64, f64) {
    let model = ModelSpec::cosh_1d(1.0).unwrap().build().unwrap();
    let grid = Grid::Spectral(SpectralGrid::new(4096, -40.0, 40.0).unwrap());
    let init = boost(&model.ground, &grid, 0.5, 0.0);
    let steps = (10.0 / dt).round() as usize;
    let cfg = EvolutionConfig::new(dt, steps, Method::SplitStep);
    let (out, diag) = evolve(&model, &init, &cfg, Some(Reference { velocity: 0.5, x0: 0.0 })).unwrap();
    let err = diag.last().and_then(|d| d.l2_err_vs_reference).unwrap_or(f64::NAN);
    (err, rel_dev(out.mass(), init.mass()))
}

fn evolution() -> Outcome {
    let (err, drift) = travelling(1e-3);
    let (coarse, _) = travelling(0.02);
    let (fine, _) = travelling(0.01);
    let model = ModelSpec::cosh_1d(1.0).unwrap().build().unwrap();
    let grid = SpectralGrid::new(4096, -50.0, 50.0).unwrap();
    let cfg = EvolutionConfig::new(1e-3, 40_000, Method::SplitStep).record_every(4000);
    let mut cases = vec![
        check("travelling l2 error", err, 0.0, Criterion::Below(1e-4)),
        check("travelling mass drift", drift, 0.0, Criterion::Below(1e-12)),
        check("strang order ratio", coarse / fine, 4.0, Criterion::Between(3.0, 5.0)),
    ];
    match collide(&model, 0.5, -0.5, 20.0, grid, &cfg) {
        Ok(r) => {
            cases.push(check(
                "collision resolved",
                f64::from(u8::from(!r.inconclusive)),
                1.0,
                Criterion::Exact,
            ));
            let worst = r.post_correlation.iter().copied().fold(f64::INFINITY, f64::min);
            cases.push(check("collision correlation", worst, 1.0, Criterion::Above(0.999)));
            cases.push(check(
                "collision mass drift",
                r.mass_drift,
                0.0,
                Criterion::Below(1e-10),
            ));
        }
        Err(e) => cases.push(CaseReport::failed("collision", "cosh1d", e)),
    }
    Outcome { cases }
}

fn report(number: usize, title: &str, outcome: &Outcome) -> bool {
    let pass = outcome.pass();
    println!(
        "{} criterion {number:>2}: {title} ({} checks)",
        if pass { "PASS" } else { "FAIL" },
        outcome.cases.len()
    );
    for c in outcome.cases.iter().filter(|c| !c.pass) {
        println!(
            "       {}: measured {:.6e}, expected {:.6e}, rel_dev {:.3e}, bound {:?}",
            c.case, c.measured, c.expected, c.rel_dev, c.tolerance
        );
    }
    pass
}

fn main() -> ExitCode {
    let (spreads, moments) = uncertainty();
    let criteria: Vec<(&str, Check)> = vec![
        ("synthesized G matches the closed form", Box::new(construction)),
        ("analytic and quadrature normalizations agree", Box::new(normalization)),
        (
            "stationary residuals, controls and convergence order",
            Box::new(residuals),
        ),
        ("boosted residuals", Box::new(|| Outcome { cases: boosted_cases() })),
        (
            "small-lambda spreads, Heisenberg scan, kinetic ratio",
            Box::new(move || Outcome {
                cases: spreads.cases.clone(),
            }),
        ),
        (
            "lambda = 1 closed moments",
            Box::new(move || Outcome {
                cases: moments.cases.clone(),
            }),
        ),
        (
            "softened-delta identities and delta cusp",
            Box::new(|| {
                limits(&[
                    LimitCase::SoftenedDelta { a: 1.0, b0: 1.0 },
                    LimitCase::SoftenedDelta { a: 1.0, b0: 1e-3 },
                    LimitCase::SoftenedDelta { a: 2.0, b0: 0.5 },
                    LimitCase::DeltaCusp { a: 1.0 },
                ])
            }),
        ),
        (
            "tan2 limits and box energy",
            Box::new(|| limits(&[LimitCase::Tan2 { l: 1.0 }])),
        ),
        ("split-step propagation and head-on collision", Box::new(evolution)),
        (
            "trapped-Gausson decomposition",
            Box::new(|| limits(&[LimitCase::TrappedGausson { omega: 1.0 }])),
        ),
    ];
    let mut passed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        if report(i + 1, title, &run()) {
            passed += 1;
        }
    }
    println!("{passed}/{} criteria passed", criteria.len());
    if passed == criteria.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
