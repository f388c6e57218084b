//! One-dimensional time evolution: Strang split-step on periodic grids,
//! Crank–Nicolson in the walled `tan²` box, Galilean boosts and two-soliton
//! collisions.

mod boost;
mod collide;
mod crank_nicolson;
mod split_step;

use serde::Serialize;

use crate::field::{ComplexField, Grid};
use crate::models::{Family, Model, ModelError, Nonlinearity};
use crate::numerics::NumericsError;

pub use boost::{boost, boosted_state, default_grid, galilean_transform, momentum_expectation, shift};
pub use collide::{collide, CollisionReport};
pub use crank_nicolson::CrankNicolson;
pub use split_step::SplitStep;

pub const DEFAULT_AMPLITUDE_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvolveError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("non-finite field at step {step} (t = {time:e}); last finite snapshot kept")]
    NumericalAbort {
        step: usize,
        time: f64,
        last_good: Box<ComplexField>,
        diagnostics: Vec<Diagnostic>,
    },
    #[error("tridiagonal solve broke down at row {row} (pivot {pivot:e})")]
    SolverBreakdown { row: usize, pivot: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SplitStep,
    CrankNicolson,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub steps: usize,
    pub method: Method,
    /// Lowest `|Ψ|/c₀` passed to `G`.
    pub amplitude_floor: f64,
    /// Diagnostics are taken every this many steps, plus at the end.
    pub record_every: usize,
}

impl EvolutionConfig {
    pub fn new(dt: f64, steps: usize, method: Method) -> Self {
        Self {
            dt,
            steps,
            method,
            amplitude_floor: DEFAULT_AMPLITUDE_FLOOR,
            record_every: steps.max(1),
        }
    }

    pub fn record_every(mut self, every: usize) -> Self {
        self.record_every = every;
        self
    }

    pub fn total_time(&self) -> f64 {
        self.dt * self.steps as f64
    }

    pub fn validate(&self) -> Result<(), EvolveError> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(EvolveError::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if self.steps == 0 || self.record_every == 0 {
            return Err(EvolveError::Config("steps and record_every must be positive".into()));
        }
        if !(self.amplitude_floor > 0.0) {
            return Err(EvolveError::Config("amplitude floor must be positive".into()));
        }
        Ok(())
    }
}

/// Rejects families without a 1D evolution and pairs the method with the
/// right domain.
pub fn check_evolvable(model: &Model, method: Method, grid: &Grid) -> Result<(), EvolveError> {
    let family = model.spec.family;
    let boxed = matches!(family, Family::TanSquared { .. });
    match family {
        Family::Gausson { dim: 1, .. }
        | Family::Cosh1D { .. }
        | Family::CoshND { dim: 1, .. }
        | Family::PowerLaw { .. }
        | Family::TanSquared { .. } => {}
        Family::SoftenedDelta { b0, .. } if b0 > 0.0 => {}
        _ => {
            return Err(EvolveError::Precondition(format!(
                "{} has no 1D evolution (N = {})",
                family.name(),
                family.dim()
            )))
        }
    }
    match (method, grid, boxed) {
        (Method::SplitStep, Grid::Spectral(_), false) => Ok(()),
        (Method::CrankNicolson, Grid::Box(g), true) => {
            let wall = match model.ground.support {
                crate::models::Support::Box { half_width } => half_width,
                _ => unreachable!(),
            };
            if (g.half_width - wall).abs() > 1e-12 * wall {
                return Err(EvolveError::Config(format!(
                    "box half width {} must equal the wall position {wall}",
                    g.half_width
                )));
            }
            Ok(())
        }
        (Method::SplitStep, _, true) => Err(EvolveError::Config(
            "split-step needs a periodic grid; the tan2 family is walled, use Crank-Nicolson".into(),
        )),
        (Method::CrankNicolson, _, false) => Err(EvolveError::Config(
            "Crank-Nicolson is reserved for the walled tan2 family".into(),
        )),
        _ => Err(EvolveError::Config("method and grid kind do not match".into())),
    }
}

/// `U_ext + A·G(max(|Ψ|/c₀, floor))`.
pub(crate) fn local_potential(nl: &Nonlinearity, x: f64, amplitude: f64, floor: f64) -> f64 {
    let phi = (amplitude / nl.norm_const).max(floor);
    nl.external_potential(x) + nl.scale * nl.shape_extended(phi)
}

/// Advances a field by one step.
pub trait Stepper {
    fn step(&mut self, field: &mut ComplexField) -> Result<(), EvolveError>;
}

/// Builds the stepper that matches `config.method`.
pub fn stepper(model: &Model, grid: &Grid, config: &EvolutionConfig) -> Result<Box<dyn Stepper>, EvolveError> {
    config.validate()?;
    check_evolvable(model, config.method, grid)?;
    Ok(match (config.method, grid) {
        (Method::SplitStep, Grid::Spectral(g)) => Box::new(SplitStep::new(model, g, config)?),
        (Method::CrankNicolson, Grid::Box(g)) => Box::new(CrankNicolson::new(model, g, config)),
        _ => unreachable!("checked above"),
    })
}

/// One step of the configured method.
pub fn step(field: &ComplexField, model: &Model, config: &EvolutionConfig) -> Result<ComplexField, EvolveError> {
    let mut s = stepper(model, &field.grid, config)?;
    let mut out = field.clone();
    s.step(&mut out)?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Diagnostic {
    pub t: f64,
    pub mass: f64,
    pub peak_x: f64,
    /// Relative L² distance to the boosted reference, when one is given.
    pub l2_err_vs_reference: Option<f64>,
}

/// Analytic comparison state: the ground state moving at `velocity` from
/// `x0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reference {
    pub velocity: f64,
    pub x0: f64,
}

fn diagnose(model: &Model, field: &ComplexField, reference: Option<Reference>) -> Diagnostic {
    let l2 = reference.map(|r| {
        let exact = boosted_state(&model.ground, &field.grid, r.velocity, field.time, r.x0);
        field.relative_distance(&exact)
    });
    Diagnostic {
        t: field.time,
        mass: field.mass(),
        peak_x: field.peak_position(),
        l2_err_vs_reference: l2,
    }
}

/// Runs `config.steps` steps, recording diagnostics; a non-finite sample
/// aborts with the last finite snapshot.
pub fn evolve(
    model: &Model,
    initial: &ComplexField,
    config: &EvolutionConfig,
    reference: Option<Reference>,
) -> Result<(ComplexField, Vec<Diagnostic>), EvolveError> {
    let mut s = stepper(model, &initial.grid, config)?;
    if !initial.is_finite() {
        return Err(EvolveError::Precondition("initial field has non-finite samples".into()));
    }
    let mut field = initial.clone();
    let mut diagnostics = vec![diagnose(model, &field, reference)];
    let mut last_good = field.clone();
    for n in 1..=config.steps {
        s.step(&mut field)?;
        field.time = initial.time + n as f64 * config.dt;
        if !field.is_finite() {
            return Err(EvolveError::NumericalAbort {
                step: n,
                time: field.time,
                last_good: Box::new(last_good),
                diagnostics,
            });
        }
        if n % config.record_every == 0 || n == config.steps {
            diagnostics.push(diagnose(model, &field, reference));
        }
        last_good.clone_from(&field);
    }
    Ok((field, diagnostics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BoxGrid;
    use crate::models::ModelSpec;
    use crate::numerics::SpectralGrid;

    #[test]
    fn config_validation() {
        assert!(EvolutionConfig::new(0.0, 10, Method::SplitStep).validate().is_err());
        assert!(EvolutionConfig::new(1e-3, 0, Method::SplitStep).validate().is_err());
        assert!(EvolutionConfig::new(1e-3, 10, Method::SplitStep).validate().is_ok());
    }

    #[test]
    fn method_domain_mismatch() {
        let tan = ModelSpec::tan_squared(1.0, 2.0).unwrap().build().unwrap();
        let periodic = Grid::Spectral(SpectralGrid::new(64, -1.5, 1.5).unwrap());
        assert!(matches!(
            check_evolvable(&tan, Method::SplitStep, &periodic),
            Err(EvolveError::Config(_))
        ));
        let cosh = ModelSpec::cosh_1d(1.0).unwrap().build().unwrap();
        let boxed = Grid::Box(BoxGrid::new(2.0, 63).unwrap());
        assert!(check_evolvable(&cosh, Method::CrankNicolson, &boxed).is_err());
        let coulomb = ModelSpec::coulomb(1.0).unwrap().build().unwrap();
        assert!(matches!(
            check_evolvable(&coulomb, Method::SplitStep, &periodic),
            Err(EvolveError::Precondition(_))
        ));
        let wrong_box = Grid::Box(BoxGrid::new(1.0, 63).unwrap());
        assert!(check_evolvable(&tan, Method::CrankNicolson, &wrong_box).is_err());
    }
}
