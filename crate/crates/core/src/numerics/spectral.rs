//! Periodic grids and the discrete Fourier transform used by the kinetic
//! substep.
//!
//! Convention: forward `X_k = Σ_j x_j e^{-2πi jk/n}` (unnormalized), inverse
//! carries `1/n`. Wavenumbers follow the standard DFT ordering
//! `k_j = 2π j/(n dx)` for `j < n/2`, then the negative frequencies.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use super::NumericsError;

/// Uniform periodic grid `x_j = x_min + j dx`, `j = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralGrid {
    pub n: usize,
    pub x_min: f64,
    pub x_max: f64,
}

impl SpectralGrid {
    pub fn new(n: usize, x_min: f64, x_max: f64) -> Result<Self, NumericsError> {
        if n < 16 || !n.is_power_of_two() {
            return Err(NumericsError::GridSize(n));
        }
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(NumericsError::InvalidInterval { lo: x_min, hi: x_max });
        }
        Ok(Self { n, x_min, x_max })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x(j)).collect()
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        let scale = 2.0 * PI / (self.n as f64 * self.dx());
        (0..self.n)
            .map(|j| {
                let signed = if j < self.n / 2 {
                    j as isize
                } else {
                    j as isize - self.n as isize
                };
                scale * signed as f64
            })
            .collect()
    }
}

/// Planned forward/inverse transform pair for one length.
#[derive(Clone)]
pub struct Dft {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Dft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft").field("n", &self.n).finish()
    }
}

impl Dft {
    pub fn new(n: usize) -> Result<Self, NumericsError> {
        if n == 0 || !n.is_power_of_two() {
            return Err(NumericsError::GridSize(n));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) -> Result<(), NumericsError> {
        self.check(data)?;
        self.forward.process(data);
        Ok(())
    }

    pub fn inverse(&self, data: &mut [Complex64]) -> Result<(), NumericsError> {
        self.check(data)?;
        self.inverse.process(data);
        let scale = 1.0 / self.n as f64;
        data.iter_mut().for_each(|z| *z *= scale);
        Ok(())
    }

    fn check(&self, data: &[Complex64]) -> Result<(), NumericsError> {
        if data.len() != self.n {
            return Err(NumericsError::GridSize(data.len()));
        }
        Ok(())
    }
}

pub fn dft_forward(field: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
    let dft = Dft::new(field.len())?;
    let mut out = field.to_vec();
    dft.forward(&mut out)?;
    Ok(out)
}

pub fn dft_inverse(field: &[Complex64]) -> Result<Vec<Complex64>, NumericsError> {
    let dft = Dft::new(field.len())?;
    let mut out = field.to_vec();
    dft.inverse(&mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn delta_has_flat_spectrum() {
        let mut x = vec![c(0.0, 0.0); 32];
        x[0] = c(1.0, 0.0);
        let spec = dft_forward(&x).unwrap();
        assert!(spec.iter().all(|z| (z - c(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn plane_wave_single_bin() {
        let grid = SpectralGrid::new(64, -5.0, 5.0).unwrap();
        let k = grid.wavenumbers();
        let mode = 5;
        let x: Vec<_> = grid
            .positions()
            .iter()
            .map(|&x| Complex64::from_polar(1.0, k[mode] * (x - grid.x_min)))
            .collect();
        let spec = dft_forward(&x).unwrap();
        for (j, z) in spec.iter().enumerate() {
            if j == mode {
                assert!((z.norm() - 64.0).abs() < 1e-10);
            } else {
                assert!(z.norm() < 1e-10, "bin {j}: {z}");
            }
        }
    }

    #[test]
    fn wavenumber_ordering() {
        let grid = SpectralGrid::new(16, 0.0, 2.0 * PI).unwrap();
        let k = grid.wavenumbers();
        assert_eq!(k[0], 0.0);
        assert!((k[1] - 1.0).abs() < 1e-14);
        assert!((k[7] - 7.0).abs() < 1e-14);
        assert!((k[8] + 8.0).abs() < 1e-14);
        assert!((k[15] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(SpectralGrid::new(8, 0.0, 1.0).is_err());
        assert!(SpectralGrid::new(48, 0.0, 1.0).is_err());
        assert!(SpectralGrid::new(64, 1.0, 1.0).is_err());
        assert!(dft_forward(&[c(1.0, 0.0); 12]).is_err());
    }

    proptest! {
        #[test]
        fn roundtrip_and_parseval(
            exp in 4usize..12,
            seed in proptest::collection::vec(-1.0f64..1.0, 2 * 2048),
        ) {
            let n = 1usize << exp;
            let x: Vec<_> = (0..n).map(|j| c(seed[2 * j], seed[2 * j + 1])).collect();
            let spec = dft_forward(&x).unwrap();
            let back = dft_inverse(&spec).unwrap();
            let norm: f64 = x.iter().map(|z| z.norm_sqr()).sum();
            let err: f64 = x.iter().zip(&back).map(|(a, b)| (a - b).norm_sqr()).sum();
            prop_assert!((err / norm).sqrt() < 1e-12);
            let spec_norm: f64 = spec.iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
            prop_assert!(((norm - spec_norm) / norm).abs() < 1e-12);
        }
    }
}
