use num_complex::Complex64;

use super::EvolveError;
use crate::field::{ComplexField, Grid};
use crate::models::{GroundState, PhysicalConstants};
use crate::numerics::{Dft, SpectralGrid};

/// `c₀φ₀(x − x₀ − vt)·e^{i(mvx − ½mv²t − E₀t)/ħ}` on every grid point.
pub fn boosted_state(gs: &GroundState, grid: &Grid, v: f64, t: f64, x0: f64) -> ComplexField {
    let PhysicalConstants { hbar, mass } = gs.constants;
    let samples = grid
        .positions()
        .into_iter()
        .map(|x| {
            let theta = (mass * v * x - 0.5 * mass * v * v * t - gs.energy * t) / hbar;
            Complex64::from_polar(gs.norm_const * gs.profile(x - x0 - v * t), theta)
        })
        .collect();
    ComplexField {
        grid: *grid,
        samples,
        time: t,
    }
}

/// The ground state boosted to velocity `v`, centred at the origin at `t = 0`.
pub fn boost(gs: &GroundState, grid: &Grid, v: f64, t: f64) -> ComplexField {
    boosted_state(gs, grid, v, t, 0.0)
}

fn spectral_grid(field: &ComplexField) -> Result<SpectralGrid, EvolveError> {
    match field.grid {
        Grid::Spectral(g) => Ok(g),
        _ => Err(EvolveError::Config("operation needs a periodic spectral grid".into())),
    }
}

/// Periodic translation by `d` through the Fourier shift theorem.
pub fn shift(field: &ComplexField, d: f64) -> Result<ComplexField, EvolveError> {
    let g = spectral_grid(field)?;
    let dft = Dft::new(g.n)?;
    let mut data = field.samples.clone();
    dft.forward(&mut data)?;
    for (z, k) in data.iter_mut().zip(g.wavenumbers()) {
        *z *= Complex64::from_polar(1.0, -k * d);
    }
    dft.inverse(&mut data)?;
    Ok(ComplexField {
        grid: field.grid,
        samples: data,
        time: field.time,
    })
}

/// Applies the Galilean boost to an arbitrary field at its own time `t`:
/// `Ψ'(x) = Ψ(x − vt)·e^{i(mvx − ½mv²t)/ħ}`.
pub fn galilean_transform(
    field: &ComplexField,
    v: f64,
    constants: PhysicalConstants,
) -> Result<ComplexField, EvolveError> {
    let t = field.time;
    let mut out = shift(field, v * t)?;
    let PhysicalConstants { hbar, mass } = constants;
    for (z, x) in out.samples.iter_mut().zip(field.grid.positions()) {
        *z *= Complex64::from_polar(1.0, (mass * v * x - 0.5 * mass * v * v * t) / hbar);
    }
    Ok(out)
}

/// `⟨p⟩ = ħ Σ k|Ψ̂_k|² / Σ|Ψ̂_k|²`.
pub fn momentum_expectation(field: &ComplexField, hbar: f64) -> Result<f64, EvolveError> {
    let g = spectral_grid(field)?;
    let dft = Dft::new(g.n)?;
    let mut data = field.samples.clone();
    dft.forward(&mut data)?;
    let (mut num, mut den) = (0.0, 0.0);
    for (z, k) in data.iter().zip(g.wavenumbers()) {
        num += k * z.norm_sqr();
        den += z.norm_sqr();
    }
    Ok(hbar * num / den)
}

/// Symmetric periodic grid wide enough that `φ₀ < 10⁻¹²` at the edges after
/// travelling `travel`, plus a `10·length_scale` margin.
pub fn default_grid(gs: &GroundState, travel: f64, n: usize) -> Result<SpectralGrid, EvolveError> {
    let l = gs.length_scale;
    let mut r = l;
    while gs.profile(r) >= 1e-12 && r < 1e6 * l {
        r *= 1.25;
    }
    let half = r + travel.abs() + 10.0 * l;
    Ok(SpectralGrid::new(n, -half, half)?)
}
