use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use nse_core::evolve::{
    boosted_state, check_evolvable, collide, default_grid, evolve, CollisionReport, Diagnostic, EvolutionConfig,
    EvolveError, Method, Reference,
};
use nse_core::field::{BoxGrid, ComplexField, Grid};
use nse_core::models::{Family, Model, Support};
use nse_core::numerics::SpectralGrid;
use serde::Serialize;

use crate::args::{CollideArgs, EvolveArgs, StepArgs};
use crate::output::{ensure_dir, num, write_json, RunClock, Table};
use crate::CliError;

const DEFAULT_TIME: f64 = 10.0;

fn evolve_error(e: EvolveError) -> CliError {
    match e {
        EvolveError::Config(_) | EvolveError::Precondition(_) | EvolveError::Model(_) => CliError::usage(e),
        _ => CliError::Abort(e.to_string()),
    }
}

fn step_count(step: &StepArgs, time: f64) -> Result<usize, CliError> {
    if !(step.dt > 0.0 && time > 0.0) {
        return Err(CliError::Usage(format!(
            "need dt > 0 and time > 0, got {} and {time}",
            step.dt
        )));
    }
    let steps = (time / step.dt).round() as usize;
    if steps == 0 {
        return Err(CliError::Usage("time is shorter than one step".into()));
    }
    Ok(steps)
}

fn config(step: &StepArgs, steps: usize, method: Method) -> Result<EvolutionConfig, CliError> {
    if step.frames == 0 {
        return Err(CliError::Usage("--frames must be positive".into()));
    }
    let mut cfg = EvolutionConfig::new(step.dt, steps, method).record_every((steps / step.frames).max(1));
    cfg.amplitude_floor = step.amplitude_floor;
    cfg.validate().map_err(evolve_error)?;
    Ok(cfg)
}

fn periodic_grid(step: &StepArgs, model: &Model, travel: f64) -> Result<SpectralGrid, CliError> {
    match step.xspan {
        Some((lo, hi)) => SpectralGrid::new(step.grid, lo, hi).map_err(CliError::usage),
        None => default_grid(&model.ground, travel, step.grid).map_err(CliError::usage),
    }
}

#[derive(Serialize)]
struct GridSummary {
    kind: &'static str,
    points: usize,
    window: (f64, f64),
}

impl GridSummary {
    fn of(grid: &Grid) -> Self {
        let n = grid.len();
        Self {
            kind: match grid {
                Grid::Spectral(_) => "periodic",
                Grid::Box(_) => "walled",
                Grid::Uniform(_) => "uniform",
            },
            points: n,
            window: (grid.x(0), grid.x(n - 1)),
        }
    }
}

#[derive(Serialize)]
struct EvolveSummary {
    family: &'static str,
    params: BTreeMap<String, f64>,
    method: Method,
    velocity: f64,
    dt: f64,
    steps: usize,
    total_time: f64,
    grid: GridSummary,
    final_time: f64,
    l2_err: Option<f64>,
    max_l2_err: Option<f64>,
    mass_initial: f64,
    mass_final: f64,
    mass_drift: f64,
    peak_final: f64,
    aborted: bool,
}

struct Outputs {
    dir: PathBuf,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self, CliError> {
        ensure_dir(dir)?;
        Ok(Self { dir: dir.to_path_buf() })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }
}

fn write_snapshots(path: &Path, frames: &[ComplexField]) -> Result<(), CliError> {
    let mut t = Table::create(Some(path), &["frame", "t", "x", "re", "im", "abs2"])?;
    for (k, f) in frames.iter().enumerate() {
        for (j, z) in f.samples.iter().enumerate() {
            t.raw(&[
                k.to_string(),
                num(f.time),
                num(f.grid.x(j)),
                num(z.re),
                num(z.im),
                num(z.norm_sqr()),
            ])?;
        }
    }
    t.finish()
}

fn write_diagnostics(path: &Path, diagnostics: &[Diagnostic]) -> Result<(), CliError> {
    let mut t = Table::create(Some(path), &["t", "mass", "peak_x", "l2_err_vs_reference"])?;
    for d in diagnostics {
        t.raw(&[
            num(d.t),
            num(d.mass),
            num(d.peak_x),
            d.l2_err_vs_reference.map(num).unwrap_or_default(),
        ])?;
    }
    t.finish()
}

pub fn run_evolve(args: &EvolveArgs) -> Result<(), CliError> {
    let clock = RunClock::start();
    let spec = args.model.required_spec()?;
    let model = spec.build().map_err(CliError::usage)?;
    let walled = matches!(spec.family, Family::TanSquared { .. });
    let method: Method = args.method.map(Into::into).unwrap_or(if walled {
        Method::CrankNicolson
    } else {
        Method::SplitStep
    });
    let time = args.step.time.unwrap_or(DEFAULT_TIME);
    let steps = step_count(&args.step, time)?;
    let cfg = config(&args.step, steps, method)?;
    let v = args.velocity;

    let grid = match (method, model.ground.support) {
        (Method::CrankNicolson, Support::Box { half_width }) => {
            if v != 0.0 {
                return Err(CliError::Usage(
                    "the walled box admits no boost; use --velocity 0".into(),
                ));
            }
            Grid::Box(
                BoxGrid::new(half_width, args.step.grid)
                    .ok_or_else(|| CliError::Usage("box grid needs at least one interior point".into()))?,
            )
        }
        _ => Grid::Spectral(periodic_grid(&args.step, &model, v * cfg.total_time())?),
    };
    check_evolvable(&model, method, &grid).map_err(evolve_error)?;

    let reference = Reference { velocity: v, x0: 0.0 };
    let initial = boosted_state(&model.ground, &grid, v, 0.0, 0.0);
    let out = Outputs::new(&args.step.out_dir)?;
    let (snap_path, diag_path, summary_path) = (
        out.path("snapshots.csv"),
        out.path("diagnostics.csv"),
        out.path("summary.json"),
    );

    let mut frames = vec![initial.clone()];
    let mut diagnostics: Vec<Diagnostic> = Vec::new();
    let mut field = initial.clone();
    let mut done = 0;
    let mut aborted = None;
    while done < steps {
        let chunk = cfg.record_every.min(steps - done);
        let chunk_cfg = EvolutionConfig {
            steps: chunk,
            record_every: chunk,
            ..cfg
        };
        match evolve(&model, &field, &chunk_cfg, Some(reference)) {
            Ok((next, diag)) => {
                let skip = usize::from(!diagnostics.is_empty());
                diagnostics.extend(diag.into_iter().skip(skip));
                field = next;
                frames.push(field.clone());
                done += chunk;
            }
            Err(EvolveError::NumericalAbort {
                step,
                time,
                last_good,
                diagnostics: diag,
            }) => {
                let skip = usize::from(!diagnostics.is_empty());
                diagnostics.extend(diag.into_iter().skip(skip));
                field = *last_good;
                frames.push(field.clone());
                aborted = Some((done + step, time));
                break;
            }
            Err(e) => return Err(evolve_error(e)),
        }
    }

    let errs: Vec<f64> = diagnostics.iter().filter_map(|d| d.l2_err_vs_reference).collect();
    let summary = EvolveSummary {
        family: spec.family.name(),
        params: spec.params(),
        method,
        velocity: v,
        dt: cfg.dt,
        steps,
        total_time: cfg.total_time(),
        grid: GridSummary::of(&grid),
        final_time: field.time,
        l2_err: errs.last().copied(),
        max_l2_err: errs.iter().copied().reduce(f64::max),
        mass_initial: initial.mass(),
        mass_final: field.mass(),
        mass_drift: (field.mass() - initial.mass()).abs() / initial.mass(),
        peak_final: field.peak_position(),
        aborted: aborted.is_some(),
    };
    write_snapshots(&snap_path, &frames)?;
    write_diagnostics(&diag_path, &diagnostics)?;
    write_json(&summary_path, &summary)?;
    clock.write_sidecar(&out.path("run_meta.json"), &[&snap_path, &diag_path, &summary_path])?;
    println!("{}", crate::output::to_json(&summary)?);

    match aborted {
        Some((step, time)) => Err(CliError::Abort(format!(
            "non-finite field at step {step} (t = {time:e}); diagnostics in {}",
            diag_path.display()
        ))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct CollideSummary<'a> {
    family: &'static str,
    params: BTreeMap<String, f64>,
    v1: f64,
    v2: f64,
    separation: f64,
    dt: f64,
    steps: usize,
    total_time: f64,
    grid: GridSummary,
    min_correlation: f64,
    pass: bool,
    #[serde(flatten)]
    report: &'a CollisionReport,
}

pub fn run_collide(args: &CollideArgs) -> Result<(), CliError> {
    let clock = RunClock::start();
    let spec = args.model.required_spec()?;
    let model = spec.build().map_err(CliError::usage)?;
    let (v1, v2, sep) = (args.v1, args.v2, args.separation);
    let time = match args.step.time {
        Some(t) => t,
        // long enough for each soliton to reach the other's start
        None if v1 != v2 => 2.0 * sep / (v1 - v2).abs(),
        None => DEFAULT_TIME,
    };
    let steps = step_count(&args.step, time)?;
    let cfg = config(&args.step, steps, Method::SplitStep)?;
    let t = cfg.total_time();
    let extent = [0.5 * sep, (-0.5 * sep + v1 * t).abs(), (0.5 * sep + v2 * t).abs()]
        .into_iter()
        .fold(0.0, f64::max);
    let grid = periodic_grid(&args.step, &model, extent)?;

    let out = Outputs::new(&args.step.out_dir)?;
    let report = match collide(&model, v1, v2, sep, grid, &cfg) {
        Ok(r) => r,
        Err(EvolveError::NumericalAbort {
            step, time, last_good, ..
        }) => {
            let path = out.path("last_good.csv");
            write_snapshots(&path, std::slice::from_ref(&*last_good))?;
            return Err(CliError::Abort(format!(
                "non-finite field at step {step} (t = {time:e}); last finite snapshot in {}",
                path.display()
            )));
        }
        Err(e) => return Err(evolve_error(e)),
    };
    let pass = !report.inconclusive && report.post_correlation.iter().all(|&c| c > args.min_correlation);

    let (traj_path, snap_path, summary_path) = (
        out.path("trajectories.csv"),
        out.path("snapshots.csv"),
        out.path("summary.json"),
    );
    let mut table = Table::create(Some(&traj_path), &["t", "left", "right"])?;
    for p in &report.trajectories {
        table.row(&[p.t, p.left, p.right])?;
    }
    table.finish()?;
    write_snapshots(&snap_path, std::slice::from_ref(&report.final_field))?;
    let summary = CollideSummary {
        family: spec.family.name(),
        params: spec.params(),
        v1,
        v2,
        separation: sep,
        dt: cfg.dt,
        steps,
        total_time: t,
        grid: GridSummary::of(&Grid::Spectral(grid)),
        min_correlation: args.min_correlation,
        pass,
        report: &report,
    };
    write_json(&summary_path, &summary)?;
    clock.write_sidecar(&out.path("run_meta.json"), &[&traj_path, &snap_path, &summary_path])?;
    println!("{}", crate::output::to_json(&summary)?);

    if pass {
        Ok(())
    } else if report.inconclusive {
        Err(CliError::Verification(
            "lobes not separated after the run; result inconclusive".into(),
        ))
    } else {
        Err(CliError::Verification(format!(
            "post-collision correlation {:?} below {}",
            report.post_correlation, args.min_correlation
        )))
    }
}
