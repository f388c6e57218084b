//! Bracketed inversion of monotone functions.

use super::NumericsError;

const MAX_BISECTIONS: usize = 400;

/// Solves `f(x) = target` for `f` strictly decreasing on `[lo, hi]`.
///
/// Bisection keeps the root bracketed until the bracket is narrower than
/// `tol`; the midpoint of the final bracket is returned.
pub fn invert_monotone<F>(f: F, target: f64, lo: f64, hi: f64, tol: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) || !(lo < hi) {
        return Err(NumericsError::InvalidInterval { lo, hi });
    }
    let f_lo = f(lo);
    let f_hi = f(hi);
    if !(f_lo >= target && target >= f_hi) {
        return Err(NumericsError::Bracket { target, f_lo, f_hi });
    }
    if f_lo == target {
        return Ok(lo);
    }
    if f_hi == target {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..MAX_BISECTIONS {
        if b - a <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == target {
            return Ok(mid);
        }
        if fm > target {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sech(x: f64) -> f64 {
        1.0 / x.cosh()
    }

    #[test]
    fn exponential() {
        let x = invert_monotone(|x| (-x).exp(), (-2.0f64).exp(), 0.0, 10.0, 1e-13).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_target() {
        let x = invert_monotone(sech, 1.0, 0.0, 10.0, 1e-13).unwrap();
        assert_eq!(x, 0.0);
    }

    #[test]
    fn arccosh_two() {
        let x = invert_monotone(sech, 0.5, 0.0, 10.0, 1e-13).unwrap();
        assert!((x - 2.0f64.acosh()).abs() < 1e-12);
        assert!((x - 1.316_957_9).abs() < 1e-7);
    }

    #[test]
    fn target_outside_bracket() {
        assert!(matches!(
            invert_monotone(sech, 1.5, 0.0, 10.0, 1e-12),
            Err(NumericsError::Bracket { .. })
        ));
        assert!(matches!(
            invert_monotone(sech, 1e-9, 0.0, 10.0, 1e-12),
            Err(NumericsError::Bracket { .. })
        ));
    }
}
