//! Quadrature engines.
//!
//! Two independent routes are provided on purpose:
//!
//! * [`adaptive_gk15`] — a globally adaptive 15-point Gauss–Kronrod rule
//!   (QUADPACK's `dqk15` kernel with its `resasc` error rescaling) driven
//!   by worst-segment bisection;
//! * [`exp_sinh`] / [`tanh_sinh`] — double-exponential transformations
//!   integrated with the trapezoid rule under level halving.
//!
//! They share no machinery beyond f64 arithmetic, so agreement between
//! them is meaningful evidence that a value is right. Integrands must be
//! finite everywhere they are sampled; a non-finite sample aborts with
//! [`Error::Quadrature`] rather than being silently dropped.

use std::collections::BinaryHeap;

use crate::{Error, Result};

/// Tolerances and work limits shared by all engines.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSettings {
    /// Absolute tolerance on the total error estimate (also the tail
    /// truncation budget for semi-infinite integrals done by cutoff).
    pub abs_tol: f64,
    /// Relative tolerance against the current value.
    pub rel_tol: f64,
    /// Segment cap for the adaptive rule.
    pub max_subdivisions: usize,
    /// Halving cap for the double-exponential rules.
    pub max_levels: u32,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 4000,
            max_levels: 12,
        }
    }
}

impl QuadratureSettings {
    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// An integral value together with the engine's own error estimate and
/// the number of integrand evaluations spent.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

// 15-point Kronrod abscissae (positive half, descending), the matching
// Kronrod weights, and the embedded 7-point Gauss weights. The Gauss
// nodes are XGK[1], XGK[3], XGK[5] and the centre.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Published table values, kept at full printed precision.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_69,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_94,
    0.417_959_183_673_469_4,
];

fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Quadrature(format!("integrand is {v} at x = {x}")))
    }
}

/// One Gauss–Kronrod 15 panel on [a, b]: returns (integral, error bound).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = sample(f, centre)?;
    let mut res_gauss = WG[3] * fc;
    let mut res_kronrod = WGK[7] * fc;
    let mut res_abs = res_kronrod.abs();
    let mut lows = [0.0_f64; 7];
    let mut highs = [0.0_f64; 7];
    for j in 0..7 {
        let offset = half * XGK[j];
        let f1 = sample(f, centre - offset)?;
        let f2 = sample(f, centre + offset)?;
        lows[j] = f1;
        highs[j] = f2;
        let fsum = f1 + f2;
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((lows[j] - mean).abs() + (highs[j] - mean).abs());
    }

    let value = res_kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut err = ((res_kronrod - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let fifty_eps = 50.0 * f64::EPSILON;
    if res_abs > f64::MIN_POSITIVE / fifty_eps {
        err = err.max(fifty_eps * res_abs);
    }
    Ok((value, err))
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
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
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod integration over a finite interval:
/// the segment with the largest error bound is bisected until the summed
/// bound meets the tolerance.
pub fn adaptive_gk15<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::invalid(format!(
            "need a finite interval with a < b, got [{a}, {b}]"
        )));
    }

    let (value, error) = gk15(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut evaluations = 15usize;

    loop {
        // Re-summing every round keeps the running totals free of
        // cancellation drift; the heap stays small enough for this to be
        // negligible work.
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let total_error: f64 = heap.iter().map(|s| s.error).sum();
        if total_error <= settings.target(total) {
            return Ok(QuadratureOutcome {
                value: total,
                error_estimate: total_error,
                evaluations,
            });
        }
        if heap.len() >= settings.max_subdivisions {
            return Err(Error::Quadrature(format!(
                "error bound {total_error:.3e} still above tolerance after {} segments",
                heap.len()
            )));
        }

        let worst = heap.pop().expect("heap is never empty here");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            return Err(Error::Quadrature(format!(
                "segment [{}, {}] cannot be split further (error bound {:.3e})",
                worst.a, worst.b, worst.error
            )));
        }
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (value, error) = gk15(&f, lo, hi)?;
            evaluations += 15;
            heap.push(Segment {
                a: lo,
                b: hi,
                value,
                error,
            });
        }
    }
}

/// Shared level-halving trapezoid driver for the double-exponential
/// rules: integrates `g` over [−t_max, t_max] with step halving until two
/// consecutive levels agree to tolerance.
fn de_trapezoid<G: Fn(f64) -> Result<f64>>(
    g: G,
    t_max: f64,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    let mut h = t_max / 2.0;
    // Weighted node sum with the trapezoid's half-weights at the ends;
    // value = h * weighted_sum.
    let mut weighted = 0.5 * (g(-t_max)? + g(t_max)?);
    for k in 1..4 {
        weighted += g(-t_max + k as f64 * h)?;
    }
    let mut evaluations = 5usize;
    let mut value = h * weighted;

    for level in 1..=settings.max_levels {
        let steps = (2.0 * t_max / h).round() as usize;
        for k in 0..steps {
            weighted += g(-t_max + (k as f64 + 0.5) * h)?;
        }
        evaluations += steps;
        h *= 0.5;
        let refined = h * weighted;
        let diff = (refined - value).abs();
        value = refined;
        if level >= 2 && diff <= settings.target(value) {
            return Ok(QuadratureOutcome {
                value,
                error_estimate: diff,
                evaluations,
            });
        }
    }
    Err(Error::Quadrature(format!(
        "double-exponential levels exhausted at step {h:.3e} without convergence"
    )))
}

/// Width of the double-exponential node window for [`exp_sinh`]. The
/// outermost node maps to exp(±(π/2)·sinh 6) ≈ e^±316.7, comfortably
/// inside f64 range.
const EXP_SINH_T_MAX: f64 = 6.0;

/// For integrands decaying like y^(−q): the relative tail truncation of
/// [`exp_sinh`] is about exp(−(q−1)·316.7), negligible once q ≥ 1.15 —
/// callers integrating slower tails should use the cutoff route instead.
pub fn exp_sinh<F: Fn(f64) -> f64>(
    f: F,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    let g = |t: f64| -> Result<f64> {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let y = u.exp();
        let weight = std::f64::consts::FRAC_PI_2 * t.cosh() * y;
        let v = f(y) * weight;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Quadrature(format!("integrand contribution is {v} at y = {y}")))
        }
    };
    de_trapezoid(g, EXP_SINH_T_MAX, settings)
}

/// Node window for [`tanh_sinh`]: cosh²((π/2)·sinh 3.8) ≈ 8·10^29 stays
/// far from overflow while the nodes already reach the endpoints to f64
/// precision.
const TANH_SINH_T_MAX: f64 = 3.8;

/// Double-exponential rule on a finite interval. Nodes crowd toward the
/// endpoints and, at the outermost levels, round exactly onto them, so
/// the integrand must be finite on the closed interval.
pub fn tanh_sinh<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    settings: &QuadratureSettings,
) -> Result<QuadratureOutcome> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::invalid(format!(
            "need a finite interval with a < b, got [{a}, {b}]"
        )));
    }
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let g = |t: f64| -> Result<f64> {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        let x = centre + half * u.tanh();
        let cosh_u = u.cosh();
        let weight = half * std::f64::consts::FRAC_PI_2 * t.cosh() / (cosh_u * cosh_u);
        let v = f(x) * weight;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Quadrature(format!("integrand contribution is {v} at x = {x}")))
        }
    };
    de_trapezoid(g, TANH_SINH_T_MAX, settings)
}
