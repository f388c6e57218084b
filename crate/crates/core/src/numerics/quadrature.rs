//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Infinite limits are folded onto the unit interval with `u = lo + t/(1-t)`
//! so every integral goes through the same adaptive kernel.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::NumericsError;

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Tolerances and evaluation budget for [`Quadrature::integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_evaluations: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_evaluations: 200_000,
        }
    }
}

// Kronrod abscissae (positive half) and weights; Gauss weights for the
// embedded 7-point rule sit on the odd Kronrod nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15<F>(f: &mut F, lo: f64, hi: f64) -> Result<Segment, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut sample = |x: f64| -> Result<f64, NumericsError> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFiniteSample { x })
        }
    };

    let fc = sample(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = sample(center - dx)?;
        let f2 = sample(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let roundoff = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(roundoff);
    }
    Ok(Segment { lo, hi, value, error })
}

impl Quadrature {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn max_evaluations(mut self, max_evaluations: usize) -> Self {
        self.max_evaluations = max_evaluations;
        self
    }

    /// Integrates `f` over `[lo, hi]`; either limit may be infinite.
    pub fn integrate<F>(&self, mut f: F, lo: f64, hi: f64) -> Result<QuadratureResult, NumericsError>
    where
        F: FnMut(f64) -> f64,
    {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) || self.abs_tol < 0.0 {
            return Err(NumericsError::InvalidTolerance(self.rel_tol));
        }
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(NumericsError::InvalidInterval { lo, hi });
        }
        if lo.is_infinite() && hi.is_infinite() {
            let left = self.half_line(&mut f, 0.0, -1.0)?;
            let right = self.half_line(&mut f, 0.0, 1.0)?;
            return Ok(QuadratureResult {
                value: left.value + right.value,
                abs_error_estimate: left.abs_error_estimate + right.abs_error_estimate,
                evaluations: left.evaluations + right.evaluations,
            });
        }
        match (lo.is_finite(), hi.is_finite()) {
            (true, true) => self.adaptive(&mut f, lo, hi),
            (true, false) => self.half_line(&mut f, lo, 1.0),
            _ => self.half_line(&mut f, hi, -1.0),
        }
    }

    /// Integral over the half line on the `direction` side of `origin`, via `x = origin ± t/(1−t)`.
    fn half_line(
        &self,
        f: &mut dyn FnMut(f64) -> f64,
        origin: f64,
        direction: f64,
    ) -> Result<QuadratureResult, NumericsError> {
        self.adaptive(
            &mut |t: f64| {
                let s = 1.0 - t;
                f(origin + direction * t / s) / (s * s)
            },
            0.0,
            1.0,
        )
    }

    fn adaptive<F>(&self, f: &mut F, lo: f64, hi: f64) -> Result<QuadratureResult, NumericsError>
    where
        F: FnMut(f64) -> f64,
    {
        let first = kronrod15(f, lo, hi)?;
        let mut evaluations = 15;
        let mut total = first.value;
        let mut total_err = first.error;
        let mut heap = BinaryHeap::new();
        heap.push(first);

        loop {
            let target = self.abs_tol.max(self.rel_tol * total.abs());
            if total_err <= target {
                break;
            }
            let worst = match heap.pop() {
                Some(s) => s,
                None => break,
            };
            let mid = 0.5 * (worst.lo + worst.hi);
            if !(mid > worst.lo && mid < worst.hi) || evaluations + 30 > self.max_evaluations {
                heap.push(worst);
                let best = QuadratureResult {
                    value: total,
                    abs_error_estimate: total_err,
                    evaluations,
                };
                return Err(NumericsError::NonConvergence { best });
            }
            let left = kronrod15(f, worst.lo, mid)?;
            let right = kronrod15(f, mid, worst.hi)?;
            evaluations += 30;
            total += left.value + right.value - worst.value;
            total_err += left.error + right.error - worst.error;
            heap.push(left);
            heap.push(right);

            // Recompute from scratch now and then; the running sums drift.
            if evaluations % 3000 == 0 {
                total = heap.iter().map(|s| s.value).sum();
                total_err = heap.iter().map(|s| s.error).sum();
            }
        }

        let value: f64 = heap.iter().map(|s| s.value).sum();
        let abs_error_estimate: f64 = heap.iter().map(|s| s.error).sum();
        Ok(QuadratureResult {
            value,
            abs_error_estimate,
            evaluations,
        })
    }
}

/// Adaptive integral of `f` over `[lo, hi]` to relative tolerance `rel_tol`.
pub fn integrate_adaptive<F>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<QuadratureResult, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    Quadrature::with_rel_tol(rel_tol).integrate(f, lo, hi)
}
