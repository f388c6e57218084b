//! Uniform-grid finite-difference stencils.

use std::ops::{Add, Mul, Sub};

use super::NumericsError;

/// Stencil output; the first and last entries come from one-sided
/// second-order formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative<T> {
    pub values: Vec<T>,
    pub one_sided_endpoints: bool,
}

pub trait Sample: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl<T> Sample for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

fn check<T>(samples: &[T], dx: f64) -> Result<(), NumericsError> {
    if samples.len() < 5 {
        return Err(NumericsError::StencilSize(samples.len()));
    }
    if !(dx > 0.0) {
        return Err(NumericsError::InvalidInterval { lo: 0.0, hi: dx });
    }
    Ok(())
}

/// Central 3-point second derivative.
pub fn second_derivative<T: Sample>(samples: &[T], dx: f64) -> Result<Derivative<T>, NumericsError> {
    check(samples, dx)?;
    let n = samples.len();
    let inv = 1.0 / (dx * dx);
    let f = samples;
    let mut values = Vec::with_capacity(n);
    values.push((f[0] * 2.0 - f[1] * 5.0 + f[2] * 4.0 - f[3]) * inv);
    for i in 1..n - 1 {
        values.push((f[i + 1] - f[i] * 2.0 + f[i - 1]) * inv);
    }
    values.push((f[n - 1] * 2.0 - f[n - 2] * 5.0 + f[n - 3] * 4.0 - f[n - 4]) * inv);
    Ok(Derivative {
        values,
        one_sided_endpoints: true,
    })
}

/// Central 3-point first derivative.
pub fn first_derivative<T: Sample>(samples: &[T], dx: f64) -> Result<Derivative<T>, NumericsError> {
    check(samples, dx)?;
    let n = samples.len();
    let inv = 0.5 / dx;
    let f = samples;
    let mut values = Vec::with_capacity(n);
    values.push((f[1] * 4.0 - f[0] * 3.0 - f[2]) * inv);
    for i in 1..n - 1 {
        values.push((f[i + 1] - f[i - 1]) * inv);
    }
    values.push((f[n - 1] * 3.0 - f[n - 2] * 4.0 + f[n - 3]) * inv);
    Ok(Derivative {
        values,
        one_sided_endpoints: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn quadratic_is_exact() {
        let dx = 0.1;
        let f: Vec<f64> = (0..20).map(|i| (i as f64 * dx).powi(2)).collect();
        let d = second_derivative(&f, dx).unwrap();
        assert!(d.one_sided_endpoints);
        for v in &d.values {
            assert!((v - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sine() {
        let dx = 1e-3;
        let x: Vec<f64> = (0..2000).map(|i| i as f64 * dx).collect();
        let f: Vec<f64> = x.iter().map(|x| x.sin()).collect();
        let d = second_derivative(&f, dx).unwrap();
        for (v, x) in d.values.iter().zip(&x).skip(1).take(x.len() - 2) {
            assert!((v + x.sin()).abs() < 1e-6);
        }
        let d1 = first_derivative(&f, dx).unwrap();
        for (v, x) in d1.values.iter().zip(&x).skip(1).take(x.len() - 2) {
            assert!((v - x.cos()).abs() < 1e-6);
        }
    }

    #[test]
    fn constant_and_complex() {
        let f = vec![Complex64::new(2.0, -1.0); 9];
        let d = second_derivative(&f, 0.5).unwrap();
        assert!(d.values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            second_derivative(&[1.0, 2.0, 3.0, 4.0], 0.1),
            Err(NumericsError::StencilSize(4))
        ));
    }
}
