use nse_core::models::{Family, ModelSpec, Support};

use crate::args::{CurveArgs, Quantity};
use crate::output::{sidecar_for, RunClock, Table};
use crate::CliError;

/// Abscissa range in plot units when none is given.
fn default_range(spec: &ModelSpec, what: Quantity) -> (f64, f64) {
    match what {
        Quantity::Nonlinearity => match spec.family {
            // G diverges at φ = 1
            Family::Coulomb { .. } => (1e-3, 1.0 - 1e-3),
            _ => (1e-3, 1.0),
        },
        Quantity::Potential | Quantity::Profile => {
            let lo = match (what, spec.family) {
                (Quantity::Potential, Family::Coulomb { .. }) => 0.05,
                _ => 0.0,
            };
            let hi = match spec.support() {
                // the potential is infinite on the wall itself
                Support::Box { half_width } if what == Quantity::Potential => 0.99 * half_width / spec.length_scale(),
                Support::Box { half_width } => half_width / spec.length_scale(),
                Support::Unbounded => 5.0,
            };
            (lo, hi)
        }
    }
}

pub fn run(args: &CurveArgs) -> Result<(), CliError> {
    let clock = RunClock::start();
    let spec = args.model.required_spec()?;
    let model = spec.build().map_err(CliError::usage)?;
    let (def_lo, def_hi) = default_range(&spec, args.what);
    let (lo, hi) = (args.from.unwrap_or(def_lo), args.to.unwrap_or(def_hi));
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(CliError::Usage(format!("invalid range {lo}..{hi}")));
    }
    if args.points < 2 {
        return Err(CliError::Usage("--points must be at least 2".into()));
    }
    let length = spec.length_scale();
    let e0 = spec.energy().abs();
    let nl = &model.nonlinearity;

    let xs: Vec<f64> = (0..args.points)
        .map(|i| lo + (hi - lo) * i as f64 / (args.points - 1) as f64)
        .collect();
    let ys = xs
        .iter()
        .map(|&x| match args.what {
            Quantity::Potential => spec.potential(x * length).map(|u| u / e0),
            Quantity::Profile => Ok(model.ground.profile(x * length)),
            Quantity::Nonlinearity => nl.shape(x),
        })
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| CliError::Usage(format!("invalid range {lo}..{hi}: {e}")))?;

    let header = match args.what {
        Quantity::Potential => ["r_over_length", "U_over_absE0"],
        Quantity::Profile => ["r_over_length", "phi0"],
        Quantity::Nonlinearity => ["phi", "G"],
    };
    let mut table = Table::create(args.out.as_deref(), &header)?;
    for (x, y) in xs.iter().zip(&ys) {
        table.row(&[*x, *y])?;
    }
    table.finish()?;
    if let Some(out) = &args.out {
        clock.write_sidecar(&sidecar_for(out), &[out])?;
    }
    Ok(())
}
