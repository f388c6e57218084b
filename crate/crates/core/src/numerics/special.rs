//! Real-argument special functions: log-gamma, Riemann zeta and the
//! exponential integral.

use super::NumericsError;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_780_329_736_405_62;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_4;

// B_{2j} / (2j (2j-1)) for j = 1..=8
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `ln Γ(x)` for `x > 0`.
///
/// Stirling series at `x >= 15`; smaller arguments are shifted up with
/// the recurrence `Γ(x+1) = x Γ(x)`.
pub fn log_gamma(x: f64) -> Result<f64, NumericsError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(NumericsError::Domain {
            function: "log_gamma",
            arg: x,
        });
    }
    let mut shifted = x;
    let mut product = 1.0;
    let mut log_shift = 0.0;
    while shifted < 15.0 {
        product *= shifted;
        shifted += 1.0;
        if product > 1e280 {
            log_shift += product.ln();
            product = 1.0;
        }
    }
    log_shift += product.ln();

    let inv = 1.0 / shifted;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    Ok((shifted - 0.5) * shifted.ln() - shifted + LN_SQRT_2PI + series - log_shift)
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<f64, NumericsError> {
    log_gamma(x).map(f64::exp)
}

/// Riemann zeta function for real `s > 1`.
///
/// Direct partial sum to `N - 1` plus the Euler–Maclaurin tail through the
/// `B_4` term.
pub fn zeta(s: f64) -> Result<f64, NumericsError> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(NumericsError::Domain {
            function: "zeta",
            arg: s,
        });
    }
    const N: f64 = 64.0;
    let tail = N.powf(1.0 - s) / (s - 1.0) + 0.5 * N.powf(-s) + s / 12.0 * N.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * N.powf(-s - 3.0);
    // smallest terms first
    let head: f64 = (1..64).rev().map(|n| (n as f64).powf(-s)).sum();
    Ok(head + tail)
}

/// `∫_y^∞ e^{-u}/u du` for `y > 0`, i.e. the exponential integral `E₁(y)`.
///
/// This is the sign-positive quantity; the common convention
/// `Ei(-y) = -E₁(y)` differs by a sign. Callers that need `Ei(-y)` pick
/// the sign explicitly.
pub fn exp_integral_e1(y: f64) -> Result<f64, NumericsError> {
    if !(y > 0.0) || y.is_nan() {
        return Err(NumericsError::Domain {
            function: "exp_integral_e1",
            arg: y,
        });
    }
    if y.is_infinite() {
        return Ok(0.0);
    }
    if y <= 1.0 {
        // E₁(y) = -γ - ln y - Σ_{k≥1} (-y)^k / (k k!)
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..200 {
            term *= -y / k as f64;
            let contrib = term / k as f64;
            sum += contrib;
            if contrib.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        Ok(-EULER_GAMMA - y.ln() - sum)
    } else {
        // Continued fraction, modified Lentz.
        let tiny = 1e-300;
        let mut b = y + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        Ok(h * (-y).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate_adaptive;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn log_gamma_reference_points() {
        assert_relative_eq!(log_gamma(0.5).unwrap(), PI.sqrt().ln(), max_relative = 1e-12);
        assert_relative_eq!(
            log_gamma(2.5).unwrap(),
            (3.0 * PI.sqrt() / 4.0).ln(),
            max_relative = 1e-12
        );
        assert_relative_eq!(log_gamma(10.0).unwrap(), 362_880.0_f64.ln(), max_relative = 1e-12);
        assert_relative_eq!(log_gamma(171.5).unwrap(), 709.143_163_030_928_2, max_relative = 1e-13);
    }

    #[test]
    fn log_gamma_recurrence() {
        for k in 0..=20 {
            let x = 0.5 + k as f64;
            let lhs = log_gamma(x + 1.0).unwrap() - log_gamma(x).unwrap();
            assert!((lhs - x.ln()).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn log_gamma_domain() {
        assert!(log_gamma(0.0).is_err());
        assert!(log_gamma(-1.5).is_err());
        assert!(log_gamma(f64::NAN).is_err());
    }

    #[test]
    fn zeta_values() {
        assert_relative_eq!(zeta(2.0).unwrap(), PI * PI / 6.0, max_relative = 1e-10);
        assert_relative_eq!(zeta(4.0).unwrap(), PI.powi(4) / 90.0, max_relative = 1e-10);
        assert!(zeta(1.0).is_err());
        assert!(zeta(0.5).is_err());
    }

    #[test]
    fn zeta_three_against_direct_series() {
        // Oracle: direct sum to M plus the integral tail bound M^{-2}/2,
        // with the first correction terms of the tail.
        let m = 200_000u64;
        let direct: f64 = (1..m).rev().map(|n| (n as f64).powi(-3)).sum();
        let mf = m as f64;
        let oracle = direct + 0.5 / (mf * mf) + 0.5 / mf.powi(3);
        assert_relative_eq!(oracle, 1.202_056_903_159_594_3, max_relative = 1e-12);
        assert_relative_eq!(zeta(3.0).unwrap(), oracle, max_relative = 1e-10);
    }

    #[test]
    fn exponential_integral_against_quadrature() {
        for y in [0.05, 0.5, 1.0, 2.0, 10.0, 30.0] {
            let q = integrate_adaptive(|u| (-u).exp() / u, y, f64::INFINITY, 1e-13).unwrap();
            assert_relative_eq!(exp_integral_e1(y).unwrap(), q.value, max_relative = 1e-10);
        }
        assert_relative_eq!(exp_integral_e1(1.0).unwrap(), 0.219_383_934_4, max_relative = 1e-9);
        assert_relative_eq!(exp_integral_e1(10.0).unwrap(), 4.156_968_93e-6, max_relative = 1e-8);
    }

    #[test]
    fn exponential_integral_asymptotics() {
        // E₁(y) e^y y = 1 - 1/y + 2/y² - ..., so the ratio approaches 1 at
        // rate 1/y: it is 1.9% low at y = 50 and inside 1% from y = 100.
        let ratio = |y: f64| exp_integral_e1(y).unwrap() * y.exp() * y;
        assert!((ratio(50.0) * (1.0 + 1.0 / 50.0) - 1.0).abs() < 1e-3);
        assert!((ratio(100.0) - 1.0).abs() < 0.01);
        assert!((ratio(500.0) - 1.0).abs() < 0.0021);
        let mut prev = f64::INFINITY;
        for y in [0.1, 1.0, 5.0, 20.0, 100.0, 700.0] {
            let v = exp_integral_e1(y).unwrap();
            assert!(v > 0.0 && v < prev);
            prev = v;
        }
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-1.0).is_err());
    }
}
