use nse_core::models::{Family, ModelSpec};
use nse_core::verify::{
    boosted_cases, default_specs, invert_case, limit_cases, norm_case, residual_cases, uncertainty_cases, CaseReport,
    LimitCase,
};
use rayon::prelude::*;

use crate::args::{LimitName, Suite, VerifyArgs};
use crate::output::{emit_json, sidecar_for, RunClock};
use crate::CliError;

type Job = Box<dyn Fn() -> Vec<CaseReport> + Send + Sync>;

const DEFAULT_LAMBDAS: [f64; 3] = [0.1, 0.03, 0.01];

fn per_spec(specs: &[ModelSpec], f: fn(&ModelSpec) -> Vec<CaseReport>) -> Vec<Job> {
    specs
        .iter()
        .map(|s| {
            let s = *s;
            Box::new(move || f(&s)) as Job
        })
        .collect()
}

fn invert_jobs(specs: &[ModelSpec]) -> Vec<Job> {
    per_spec(specs, |s| vec![invert_case(s)])
}

fn norm_jobs(specs: &[ModelSpec]) -> Vec<Job> {
    per_spec(specs, |s| norm_case(s).into_iter().collect())
}

fn residual_jobs(specs: &[ModelSpec], with_boosts: bool) -> Vec<Job> {
    let mut jobs = per_spec(specs, residual_cases);
    if with_boosts {
        jobs.push(Box::new(boosted_cases));
    }
    jobs
}

fn uncertainty_jobs(args: &VerifyArgs) -> Result<Vec<Job>, CliError> {
    let spec = args.model.spec()?;
    if let Some(s) = spec {
        if !matches!(s.family, Family::PowerLaw { .. }) {
            return Err(CliError::Usage(
                "the uncertainty suite applies to the power-law family".into(),
            ));
        }
    }
    let lambdas = match (&args.lambdas, args.model.lambda) {
        (Some(list), _) => list.clone(),
        (None, Some(l)) => vec![l],
        (None, None) => DEFAULT_LAMBDAS.to_vec(),
    };
    let (a, constants) = (args.model.a, args.model.constants());
    Ok(vec![Box::new(move || uncertainty_cases(a, &lambdas, constants))])
}

fn limit_jobs(cases: Vec<LimitCase>, args: &VerifyArgs) -> Vec<Job> {
    let constants = args.model.constants();
    cases
        .into_iter()
        .map(|c| Box::new(move || limit_cases(c, constants)) as Job)
        .collect()
}

fn selected_limit(args: &VerifyArgs) -> Vec<LimitCase> {
    let m = &args.model;
    match args.case {
        None => LimitCase::defaults(),
        Some(LimitName::SoftenedDelta) => vec![LimitCase::SoftenedDelta { a: m.a, b0: m.b0 }],
        Some(LimitName::DeltaCusp) => vec![LimitCase::DeltaCusp { a: m.a }],
        Some(LimitName::Tan2) => vec![LimitCase::Tan2 { l: m.l }],
        Some(LimitName::TrappedGausson) => vec![LimitCase::TrappedGausson { omega: m.omega }],
        Some(LimitName::Localization) => vec![LimitCase::Localization { a: m.a }],
    }
}

fn jobs(args: &VerifyArgs) -> Result<Vec<Job>, CliError> {
    let chosen = args.model.spec()?;
    let specs = match chosen {
        Some(s) => vec![s],
        None => default_specs(),
    };
    Ok(match args.suite {
        Suite::Invert => invert_jobs(&specs),
        Suite::Norm => {
            if let Some(s) = chosen {
                if s.analytic_norm_constant().map_err(CliError::usage)?.is_none() {
                    return Err(CliError::Usage(format!(
                        "{} has no closed-form normalization to compare against",
                        s.family.name()
                    )));
                }
            }
            norm_jobs(&specs)
        }
        Suite::Residual => residual_jobs(&specs, chosen.is_none()),
        Suite::Uncertainty => uncertainty_jobs(args)?,
        Suite::Limits => limit_jobs(selected_limit(args), args),
        Suite::All => {
            let mut all = invert_jobs(&specs);
            all.extend(norm_jobs(&specs));
            all.extend(residual_jobs(&specs, true));
            let constants = args.model.constants();
            all.push(Box::new(move || uncertainty_cases(1.0, &DEFAULT_LAMBDAS, constants)));
            all.extend(limit_jobs(LimitCase::defaults(), args));
            all
        }
    })
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let clock = RunClock::start();
    let jobs = jobs(args)?;
    // collect() keeps job order, so output does not depend on scheduling
    let reports: Vec<CaseReport> = jobs.par_iter().flat_map_iter(|job| job()).collect();
    emit_json(args.out.as_deref(), &reports)?;
    if let Some(out) = &args.out {
        clock.write_sidecar(&sidecar_for(out), &[out])?;
    }
    let failed: Vec<&CaseReport> = reports.iter().filter(|r| !r.pass).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        let names: Vec<String> = failed
            .iter()
            .map(|r| {
                format!(
                    "  {} [{}]: measured {:e}, expected {:e}",
                    r.case, r.family, r.measured, r.expected
                )
            })
            .collect();
        Err(CliError::Verification(format!(
            "{} of {} cases failed:\n{}",
            failed.len(),
            reports.len(),
            names.join("\n")
        )))
    }
}
