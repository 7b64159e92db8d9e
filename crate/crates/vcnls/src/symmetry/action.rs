//! The group action on solutions and the blow-up families it generates.
//!
//! An element g = (a, b, c, d; θ) with ad − bc = 1 acts on a solution u by
//!
//! ```text
//! (Ψ_g u)(x, t) = (a + bt)^{-1/2} e^{i b x² / (4(a + bt)) + iθ}
//!                 · u( x/(a + bt), (c + dt)/(a + bt) ),
//! ```
//!
//! defined where a + bt > 0. Applying Ψ_{g1} and then Ψ_{g2} realizes the
//! matrix product g1·g2 (see [`GroupElement::compose`]): the evaluation
//! point is rewritten innermost-first, so the later application acts on the
//! right of the product.
//!
//! The one-parameter blow-up family comes from elements (a, b, 0, 1/a) with
//! b < 0: along them the factor ε(t) = a + bt = b(t − T) shrinks linearly
//! to zero at T = −a/b, concentrating the transformed profile at the
//! origin.

use num_complex::Complex64;
use rand::Rng;

use crate::solutions::{PointwiseSolution, Stationary};
use crate::{Error, GroupElement, Result, SolutionSpec};

/// Evaluates `(Ψ_g u)(x, t)` for any pointwise-evaluable inner solution.
pub fn apply_group_action<S>(g: &GroupElement, inner: &S, x: f64, t: f64) -> Result<Complex64>
where
    S: PointwiseSolution + ?Sized,
{
    let denom = g.a() + g.b() * t;
    if !(denom > 0.0) {
        return Err(Error::branch(format!(
            "a + b t must be positive, got {denom} at t = {t}"
        )));
    }
    let inner_x = x / denom;
    let inner_t = (g.c() + g.d() * t) / denom;
    let u = inner.eval(inner_x, inner_t)?;
    let phase = g.b() * x * x / (4.0 * denom) + g.theta();
    Ok(Complex64::from_polar(denom.powf(-0.5), phase) * u)
}

/// The element (a, b, 0, 1/a) with a = −b·T, whose scale factor
/// `ε(t) = a + bt` hits zero exactly at the blow-up time T.
///
/// Requires b < 0 and T > 0 so that ε decreases through positive values
/// on [0, T).
pub fn blowup_element(b: f64, blowup_time: f64) -> Result<GroupElement> {
    if !(b < 0.0) || !b.is_finite() {
        return Err(Error::invalid(format!(
            "blow-up elements need b < 0, got {b}"
        )));
    }
    if !(blowup_time > 0.0) || !blowup_time.is_finite() {
        return Err(Error::invalid(format!(
            "blow-up time must be positive, got {blowup_time}"
        )));
    }
    let a = -b * blowup_time;
    GroupElement::new(a, b, 0.0, 1.0 / a, 0.0)
}

/// The shrinking scale `ε(t) = b(t − T)` of [`blowup_element`].
pub fn epsilon_at(b: f64, blowup_time: f64, t: f64) -> f64 {
    b * (t - blowup_time)
}

/// The transformed solution `Ψ_g u` for g = [`blowup_element`] and a
/// time-independent inner profile. Its modulus is exactly
/// `A x^{1/6} / (x^{2/3} + ε(t)^{2/3} C)` — same shape as the inner
/// profile with offset rescaled by ε(t)^{2/3}, amplified as ε → 0.
pub fn epsilon_family(b: f64, blowup_time: f64, profile: Stationary) -> Result<SolutionSpec> {
    let g = blowup_element(b, blowup_time)?;
    Ok(SolutionSpec::transformed(g, SolutionSpec::Stationary(profile)))
}

/// Draws a group element that keeps `a + bt > 0` across `window` (with
/// `0 ≤ window.0 ≤ window.1`), with a uniformly random gauge angle.
///
/// a is sampled in [0.8, 1.6]; b is negative but small enough that the
/// scale factor still exceeds 0.3 at the right edge of the window; c is
/// sampled in [−1/2, 1/2] and d is solved from the determinant constraint.
pub fn sample_admissible<R: Rng>(rng: &mut R, window: (f64, f64)) -> Result<GroupElement> {
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo <= hi && hi > 0.0) {
        return Err(Error::invalid(format!(
            "need a finite window 0 <= lo <= hi with hi > 0, got ({lo}, {hi})"
        )));
    }
    let a = rng.gen_range(0.8..1.6);
    let b = -rng.gen_range(0.1..1.0) * (a - 0.3) / hi;
    let c = rng.gen_range(-0.5..0.5);
    let d = (1.0 + b * c) / a;
    GroupElement::new(a, b, c, d, rng.gen_range(0.0..std::f64::consts::TAU))
}
