use num_complex::Complex64;

use super::{local_potential, EvolutionConfig, EvolveError, Stepper};
use crate::field::ComplexField;
use crate::models::{Model, Nonlinearity};
use crate::numerics::{Dft, SpectralGrid};

/// Strang splitting: half nonlinear phase, full kinetic step in Fourier
/// space, half nonlinear phase. Every substep multiplies by a unit-modulus
/// factor, so the discrete mass is conserved to rounding.
#[derive(Debug, Clone)]
pub struct SplitStep {
    dft: Dft,
    kinetic: Vec<Complex64>,
    positions: Vec<f64>,
    nonlinearity: Nonlinearity,
    half_dt_over_hbar: f64,
    dt: f64,
    floor: f64,
}

impl SplitStep {
    pub fn new(model: &Model, grid: &SpectralGrid, config: &EvolutionConfig) -> Result<Self, EvolveError> {
        let hbar = model.spec.constants.hbar;
        let mass = model.spec.constants.mass;
        let kinetic = grid
            .wavenumbers()
            .into_iter()
            .map(|k| Complex64::from_polar(1.0, -config.dt * hbar * k * k / (2.0 * mass)))
            .collect();
        Ok(Self {
            dft: Dft::new(grid.n)?,
            kinetic,
            positions: grid.positions(),
            nonlinearity: model.nonlinearity,
            half_dt_over_hbar: 0.5 * config.dt / hbar,
            dt: config.dt,
            floor: config.amplitude_floor,
        })
    }

    fn nonlinear_half(&self, samples: &mut [Complex64]) {
        for (z, &x) in samples.iter_mut().zip(&self.positions) {
            let v = local_potential(&self.nonlinearity, x, z.norm(), self.floor);
            *z *= Complex64::from_polar(1.0, -self.half_dt_over_hbar * v);
        }
    }
}

impl Stepper for SplitStep {
    fn step(&mut self, field: &mut ComplexField) -> Result<(), EvolveError> {
        self.nonlinear_half(&mut field.samples);
        self.dft.forward(&mut field.samples)?;
        for (z, k) in field.samples.iter_mut().zip(&self.kinetic) {
            *z *= k;
        }
        self.dft.inverse(&mut field.samples)?;
        self.nonlinear_half(&mut field.samples);
        field.time += self.dt;
        Ok(())
    }
}
