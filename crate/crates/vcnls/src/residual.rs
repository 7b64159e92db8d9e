//! Finite-difference residual of the equation
//!
//! ```text
//! R[u](x, t) = i u_t + u_xx + (ε + iγ) |u|² u / x + (h₁ + ih₂) u / x²,
//! ```
//!
//! with second-order central differences for both derivatives. For an
//! exact solution the residual is pure discretization error and must
//! shrink like O(h²) as the stencil is refined; for a non-solution it
//! converges to the nonzero defect instead. The two regimes are separated
//! by fitting the decay order on a ladder of spacings.

use num_complex::Complex64;

use crate::analysis::ratefit;
use crate::solutions::PointwiseSolution;
use crate::{par, EquationParameters, Error, Result};

/// Sup residuals below this floor are indistinguishable from roundoff, so
/// no decay order is fitted.
pub const SATURATION_FLOOR: f64 = 1e-13;

/// Evaluates the discrete residual at one point with spatial stencil
/// width `h` and temporal width `dt`.
pub fn residual_at<S>(
    params: &EquationParameters,
    solution: &S,
    x: f64,
    t: f64,
    h: f64,
    dt: f64,
) -> Result<Complex64>
where
    S: PointwiseSolution + ?Sized,
{
    if !(h > 0.0) || !h.is_finite() || !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::invalid(format!(
            "stencil widths must be positive and finite, got h = {h}, dt = {dt}"
        )));
    }
    if !(x - h > 0.0) {
        return Err(Error::domain(format!(
            "stencil [{}, {}] leaves the half-line x > 0",
            x - h,
            x + h
        )));
    }

    let u = solution.eval(x, t)?;
    let u_plus = solution.eval(x + h, t)?;
    let u_minus = solution.eval(x - h, t)?;
    let u_fwd = solution.eval(x, t + dt)?;
    let u_bwd = solution.eval(x, t - dt)?;

    let u_t = (u_fwd - u_bwd) / (2.0 * dt);
    let u_xx = (u_plus - 2.0 * u + u_minus) / (h * h);
    let cubic = Complex64::new(params.epsilon.value(), params.gamma) * u.norm_sqr() * u / x;
    let potential = Complex64::new(params.h1, params.h2) * u / (x * x);

    Ok(Complex64::i() * u_t + u_xx + cubic + potential)
}

/// Largest residual modulus over a set of probe points, all evaluated at
/// the same stencil widths.
pub fn sup_residual_on_probes<S>(
    params: &EquationParameters,
    solution: &S,
    probes: &[(f64, f64)],
    h: f64,
    dt: f64,
) -> Result<f64>
where
    S: PointwiseSolution + Sync + ?Sized,
{
    if probes.is_empty() {
        return Err(Error::invalid("need at least one probe point".to_owned()));
    }
    let moduli = par::map_slice(probes, |&(x, t)| {
        residual_at(params, solution, x, t, h, dt).map(|r| r.norm())
    });
    let mut sup = 0.0_f64;
    for m in moduli {
        sup = sup.max(m?);
    }
    Ok(sup)
}

/// Residual ladder across a decreasing sequence of stencil widths.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Spatial stencil widths, in the order supplied (strictly decreasing).
    pub spacings: Vec<f64>,
    /// Sup residual modulus over the probes at each width.
    pub sup_residuals: Vec<f64>,
    /// Log–log slope of sup residual against width; `None` when saturated.
    pub estimated_order: Option<f64>,
    /// True when every level sits below [`SATURATION_FLOOR`], i.e. the
    /// ladder bottomed out on roundoff and a fitted order would be noise.
    pub saturated: bool,
}

/// Runs the residual ladder: for each width `h` (with `dt = dt_ratio·h`)
/// the sup residual over the probes is recorded, then the decay order is
/// fitted on the log–log line.
///
/// Requires at least three widths, strictly decreasing, and probes that
/// keep the widest stencil comfortably inside the half-line
/// (`x ≥ 10·h_max`).
pub fn convergence_order<S>(
    params: &EquationParameters,
    solution: &S,
    probes: &[(f64, f64)],
    spacings: &[f64],
    dt_ratio: f64,
) -> Result<ResidualReport>
where
    S: PointwiseSolution + Sync + ?Sized,
{
    if spacings.len() < 3 {
        return Err(Error::invalid(format!(
            "an order fit needs at least three widths, got {}",
            spacings.len()
        )));
    }
    if !spacings.windows(2).all(|w| w[0] > w[1] && w[1] > 0.0) {
        return Err(Error::invalid(
            "widths must be strictly decreasing and positive".to_owned(),
        ));
    }
    if !(dt_ratio > 0.0) || !dt_ratio.is_finite() {
        return Err(Error::invalid(format!(
            "dt_ratio must be positive and finite, got {dt_ratio}"
        )));
    }
    let h_max = spacings[0];
    if let Some(&(x, t)) = probes.iter().find(|&&(x, _)| x < 10.0 * h_max) {
        return Err(Error::invalid(format!(
            "probe ({x}, {t}) sits within 10 widths of the boundary (h_max = {h_max})"
        )));
    }

    let sups = par::map_slice(spacings, |&h| {
        sup_residual_on_probes(params, solution, probes, h, dt_ratio * h)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;

    let saturated = sups.iter().all(|&s| s < SATURATION_FLOOR);
    let estimated_order = if saturated || sups.iter().any(|&s| s <= 0.0) {
        None
    } else {
        Some(ratefit::fit_loglog(spacings, &sups)?.slope)
    };

    Ok(ResidualReport {
        spacings: spacings.to_vec(),
        sup_residuals: sups,
        estimated_order,
        saturated,
    })
}
