//! Sampling grids and complex wave-function samples.

use num_complex::Complex64;
use serde::Serialize;

use crate::numerics::SpectralGrid;

/// Uniform grid with both endpoints included: `x_j = lo + j (hi - lo)/(n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformGrid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl UniformGrid {
    pub fn new(lo: f64, hi: f64, n: usize) -> Option<Self> {
        (n >= 2 && hi > lo && lo.is_finite() && hi.is_finite()).then_some(Self { lo, hi, n })
    }

    pub fn dx(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        if j + 1 == self.n {
            self.hi
        } else {
            self.lo + j as f64 * self.dx()
        }
    }
}

/// Dirichlet box `[-half_width, half_width]` with `n_interior` unknowns;
/// samples include the two wall points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxGrid {
    pub half_width: f64,
    pub n_interior: usize,
}

impl BoxGrid {
    pub fn new(half_width: f64, n_interior: usize) -> Option<Self> {
        (half_width > 0.0 && half_width.is_finite() && n_interior >= 3).then_some(Self { half_width, n_interior })
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / (self.n_interior + 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n_interior + 2
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn x(&self, j: usize) -> f64 {
        if j == 0 {
            -self.half_width
        } else if j == self.n_interior + 1 {
            self.half_width
        } else {
            -self.half_width + j as f64 * self.dx()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Grid {
    Spectral(SpectralGrid),
    Box(BoxGrid),
    Uniform(UniformGrid),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Spectral(g) => g.n,
            Grid::Box(g) => g.len(),
            Grid::Uniform(g) => g.n,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        match self {
            Grid::Spectral(g) => g.dx(),
            Grid::Box(g) => g.dx(),
            Grid::Uniform(g) => g.dx(),
        }
    }

    pub fn x(&self, j: usize) -> f64 {
        match self {
            Grid::Spectral(g) => g.x(j),
            Grid::Box(g) => g.x(j),
            Grid::Uniform(g) => g.x(j),
        }
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.x(j)).collect()
    }
}

/// Samples of `Ψ(t, x)` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    pub grid: Grid,
    pub samples: Vec<Complex64>,
    pub time: f64,
}

impl ComplexField {
    pub fn zeros(grid: Grid, time: f64) -> Self {
        Self {
            grid,
            samples: vec![Complex64::new(0.0, 0.0); grid.len()],
            time,
        }
    }

    /// `∫|Ψ|² dx` by the rectangle rule (exact for periodic band-limited
    /// data, identical to the trapezoid rule when the end samples vanish).
    pub fn mass(&self) -> f64 {
        let sum: f64 = self.samples.iter().map(|z| z.norm_sqr()).sum();
        match self.grid {
            Grid::Uniform(g) => {
                let ends = 0.5 * (self.samples[0].norm_sqr() + self.samples[g.n - 1].norm_sqr());
                (sum - ends) * g.dx()
            }
            _ => sum * self.grid.dx(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Relative L² distance `‖Ψ − Ψ_ref‖ / ‖Ψ_ref‖` on a shared grid.
    pub fn relative_distance(&self, reference: &ComplexField) -> f64 {
        let num: f64 = self
            .samples
            .iter()
            .zip(&reference.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = reference.samples.iter().map(|z| z.norm_sqr()).sum();
        (num / den).sqrt()
    }

    /// Position of the density maximum, refined by a parabola through the
    /// three samples around the peak.
    pub fn peak_position(&self) -> f64 {
        let density: Vec<f64> = self.samples.iter().map(|z| z.norm_sqr()).collect();
        peak_in(&self.grid, &density, 0, density.len())
    }
}

pub(crate) fn peak_in(grid: &Grid, density: &[f64], start: usize, end: usize) -> f64 {
    let (imax, _) =
        density[start..end].iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
        );
    let i = start + imax;
    let x = grid.x(i);
    if i == 0 || i + 1 >= density.len() {
        return x;
    }
    let (l, c, r) = (density[i - 1], density[i], density[i + 1]);
    let denom = l - 2.0 * c + r;
    if denom == 0.0 {
        return x;
    }
    let shift = 0.5 * (l - r) / denom;
    x + shift.clamp(-1.0, 1.0) * grid.dx()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_grid_walls() {
        let g = BoxGrid::new(1.5, 9).unwrap();
        assert_eq!(g.len(), 11);
        assert_eq!(g.x(0), -1.5);
        assert_eq!(g.x(10), 1.5);
        assert!((g.x(5)).abs() < 1e-15);
    }

    #[test]
    fn uniform_mass_trapezoid() {
        let grid = Grid::Uniform(UniformGrid::new(0.0, 1.0, 101).unwrap());
        let field = ComplexField {
            grid,
            samples: vec![Complex64::new(1.0, 0.0); 101],
            time: 0.0,
        };
        assert!((field.mass() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn parabolic_peak() {
        let grid = Grid::Spectral(SpectralGrid::new(64, -4.0, 4.0).unwrap());
        let samples = grid
            .positions()
            .iter()
            .map(|x| Complex64::new((-(x - 0.3f64).powi(2)).exp(), 0.0))
            .collect();
        let field = ComplexField {
            grid,
            samples,
            time: 0.0,
        };
        assert!((field.peak_position() - 0.3).abs() < 5e-3);
    }
}
