use num_complex::Complex64;

use super::{local_potential, EvolutionConfig, EvolveError, Stepper};
use crate::field::{BoxGrid, ComplexField};
use crate::models::{Model, Nonlinearity};

/// Implicit midpoint step in a Dirichlet box. The nonlinear potential is
/// frozen at the modulus average of the old state and a predictor, so each
/// solve is a Cayley transform of a Hermitian matrix and conserves mass.
#[derive(Debug, Clone)]
pub struct CrankNicolson {
    n: usize,
    positions: Vec<f64>,
    nonlinearity: Nonlinearity,
    /// `ħ²/(2m dx²)`.
    hopping: f64,
    half_dt_over_hbar: f64,
    dt: f64,
    floor: f64,
}

impl CrankNicolson {
    pub fn new(model: &Model, grid: &BoxGrid, config: &EvolutionConfig) -> Self {
        let dx = grid.dx();
        Self {
            n: grid.n_interior,
            positions: (1..=grid.n_interior).map(|j| grid.x(j)).collect(),
            nonlinearity: model.nonlinearity,
            hopping: 0.5 * model.spec.constants.hbar2_over_m() / (dx * dx),
            half_dt_over_hbar: 0.5 * config.dt / model.spec.constants.hbar,
            dt: config.dt,
            floor: config.amplitude_floor,
        }
    }

    /// Solves `(1 + iτH)ψ' = (1 − iτH)ψ` with `H = −hopping·D₂ + diag(v)` and
    /// zero boundary values.
    fn cayley(&self, psi: &[Complex64], v: &[f64]) -> Result<Vec<Complex64>, EvolveError> {
        let n = self.n;
        let tau = Complex64::new(0.0, self.half_dt_over_hbar);
        let off = -self.hopping;
        // H ψ at interior points
        let h_psi = |j: usize| {
            let left = if j > 0 { psi[j - 1] } else { Complex64::new(0.0, 0.0) };
            let right = if j + 1 < n {
                psi[j + 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            (2.0 * self.hopping + v[j]) * psi[j] + off * (left + right)
        };
        let rhs: Vec<Complex64> = (0..n).map(|j| psi[j] - tau * h_psi(j)).collect();

        // Thomas algorithm for the constant off-diagonal τ·off
        let sub = tau * off;
        let mut c_prime = vec![Complex64::new(0.0, 0.0); n];
        let mut d_prime = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let diag = 1.0 + tau * (2.0 * self.hopping + v[j]);
            let (pivot, d_in) = if j == 0 {
                (diag, rhs[0])
            } else {
                (diag - sub * c_prime[j - 1], rhs[j] - sub * d_prime[j - 1])
            };
            if !(pivot.norm() > 1e-300) || !pivot.norm().is_finite() {
                return Err(EvolveError::SolverBreakdown {
                    row: j,
                    pivot: pivot.norm(),
                });
            }
            c_prime[j] = sub / pivot;
            d_prime[j] = d_in / pivot;
        }
        let mut out = d_prime;
        for j in (0..n - 1).rev() {
            let next = out[j + 1];
            out[j] -= c_prime[j] * next;
        }
        Ok(out)
    }

    fn potential(&self, amplitude: impl Fn(usize) -> f64) -> Vec<f64> {
        self.positions
            .iter()
            .enumerate()
            .map(|(j, &x)| local_potential(&self.nonlinearity, x, amplitude(j), self.floor))
            .collect()
    }
}

impl Stepper for CrankNicolson {
    fn step(&mut self, field: &mut ComplexField) -> Result<(), EvolveError> {
        let n = self.n;
        if field.samples.len() != n + 2 {
            return Err(EvolveError::Config(format!(
                "field has {} samples, box needs {}",
                field.samples.len(),
                n + 2
            )));
        }
        let psi = &field.samples[1..=n];
        let v0 = self.potential(|j| psi[j].norm());
        let predictor = self.cayley(psi, &v0)?;
        let v_mid = self.potential(|j| 0.5 * (psi[j].norm() + predictor[j].norm()));
        let next = self.cayley(psi, &v_mid)?;
        field.samples[1..=n].copy_from_slice(&next);
        field.samples[0] = Complex64::new(0.0, 0.0);
        field.samples[n + 1] = Complex64::new(0.0, 0.0);
        field.time += self.dt;
        Ok(())
    }
}
