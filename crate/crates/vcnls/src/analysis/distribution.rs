//! Weak-* concentration of the rescaled modulus powers.
//!
//! With `m_ε` the family modulus (extended evenly) and p > 2, the
//! rescaled densities `ε^{(p−2)/2} m_ε^p` converge to `K δ₀` with
//! `K = 2 A^p I(p, C)`: paired against any smooth compactly supported
//! test function φ they approach `K φ(0)`. This module evaluates those
//! pairings in the scaled variable, where the prefactor cancels exactly:
//!
//! ```text
//! ε^{(p−2)/2} ∫ m_ε(|x|)^p φ(x) dx
//!     = A^p ∫₀^∞ y^{p/6}/(y^{2/3}+C)^p · [φ(εy) + φ(−εy)] dy.
//! ```

use crate::analysis::norms::{
    check_amplitude, check_eps, check_exponent, check_offset, ln_profile_power,
    scaled_profile_integral, Scheme,
};
use crate::analysis::quad::{self, QuadratureSettings};
use crate::{Error, Result};

/// The standard mollifier bump `n·exp(−1/(1−s²))`, `s = (x−center)/radius`,
/// identically zero outside |s| < 1 and smooth everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpFunction {
    center: f64,
    radius: f64,
    normalization: f64,
}

impl BumpFunction {
    pub fn new(center: f64, radius: f64, normalization: f64) -> Result<Self> {
        if !center.is_finite() || !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::invalid(format!(
                "bump needs a finite center and positive radius, got ({center}, {radius})"
            )));
        }
        if !(normalization > 0.0) || !normalization.is_finite() {
            return Err(Error::invalid(format!(
                "bump normalization must be positive and finite, got {normalization}"
            )));
        }
        Ok(BumpFunction {
            center,
            radius,
            normalization,
        })
    }

    /// Normalized so the peak value is exactly 1: `φ(center) = e·e^{−1}`.
    pub fn unit(center: f64, radius: f64) -> Result<Self> {
        BumpFunction::new(center, radius, std::f64::consts::E)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, x: f64) -> f64 {
        let s = (x - self.center) / self.radius;
        let s2 = s * s;
        if s2 >= 1.0 {
            0.0
        } else {
            self.normalization * (-1.0 / (1.0 - s2)).exp()
        }
    }

    /// The closed support [center − radius, center + radius].
    pub fn support(&self) -> (f64, f64) {
        (self.center - self.radius, self.center + self.radius)
    }
}

/// The concentration constant K = 2 A^p I(p, C).
pub fn delta_constant(
    p: f64,
    amplitude: f64,
    offset: f64,
    scheme: Scheme,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_amplitude(amplitude)?;
    Ok(2.0 * amplitude.powf(p) * scaled_profile_integral(p, offset, scheme, settings)?)
}

/// The rescaled pairing `ε^{(p−2)/2} ⟨m_ε^p, φ⟩`, computed entirely in the
/// scaled variable over the hull of the (clipped, reflected) support of φ,
/// so no large prefactors ever appear.
pub fn pairing(
    p: f64,
    amplitude: f64,
    offset: f64,
    eps: f64,
    bump: &BumpFunction,
    scheme: Scheme,
    settings: &QuadratureSettings,
) -> Result<f64> {
    check_exponent(p)?;
    check_amplitude(amplitude)?;
    check_offset(offset)?;
    check_eps(eps)?;

    // φ(εy) + φ(−εy) vanishes for y outside [(|c|−r)/ε, (|c|+r)/ε] ∩ [0,∞),
    // and that set is a single interval.
    let y_lo = ((bump.center.abs() - bump.radius) / eps).max(0.0);
    let y_hi = (bump.center.abs() + bump.radius) / eps;
    let g = move |y: f64| {
        let test = bump.eval(eps * y) + bump.eval(-eps * y);
        if test == 0.0 {
            0.0
        } else {
            ln_profile_power(p, offset, y).exp() * test
        }
    };
    let outcome = match scheme {
        Scheme::Adaptive => quad::adaptive_gk15(g, y_lo, y_hi, settings)?,
        Scheme::DoubleExponential => quad::tanh_sinh(g, y_lo, y_hi, settings)?,
    };
    Ok(amplitude.powf(p) * outcome.value)
}

/// Relative deviation of the pairing from its concentration limit:
/// `|⟨·, φ⟩ / (K φ(0)) − 1|`. Requires φ(0) ≠ 0; for test functions
/// supported away from the origin the limit is plain decay of the raw
/// pairing instead.
pub fn delta_deviation(
    p: f64,
    amplitude: f64,
    offset: f64,
    eps: f64,
    bump: &BumpFunction,
    scheme: Scheme,
    settings: &QuadratureSettings,
) -> Result<f64> {
    let phi0 = bump.eval(0.0);
    if phi0 == 0.0 {
        return Err(Error::domain(
            "test function vanishes at the concentration point; compare raw pairings instead"
                .to_owned(),
        ));
    }
    let limit = delta_constant(p, amplitude, offset, scheme, settings)? * phi0;
    let paired = pairing(p, amplitude, offset, eps, bump, scheme, settings)?;
    Ok((paired / limit - 1.0).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn settings() -> QuadratureSettings {
        QuadratureSettings::default()
    }

    #[test]
    fn bump_shape() {
        let b = BumpFunction::unit(0.0, 1.0).unwrap();
        assert_relative_eq!(b.eval(0.0), 1.0, max_relative = 1e-15);
        assert_eq!(b.eval(1.0), 0.0);
        assert_eq!(b.eval(-1.0), 0.0);
        assert_eq!(b.eval(7.0), 0.0);
        assert!(b.eval(0.5) > 0.0 && b.eval(0.5) < 1.0);
        assert_eq!(b.support(), (-1.0, 1.0));

        let off = BumpFunction::unit(1.5, 0.5).unwrap();
        assert_eq!(off.support(), (1.0, 2.0));
        assert_eq!(off.eval(0.0), 0.0);

        assert!(BumpFunction::new(0.0, 0.0, 1.0).is_err());
        assert!(BumpFunction::new(0.0, 1.0, 0.0).is_err());
        assert!(BumpFunction::new(f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn concentration_constant_closed_form() {
        // K(p=4, A=1, C=1) = 2·(3π/32) = 3π/16.
        let s = settings();
        let k = delta_constant(4.0, 1.0, 1.0, Scheme::Adaptive, &s).unwrap();
        assert_relative_eq!(k, 3.0 * std::f64::consts::PI / 16.0, max_relative = 1e-10);
        // K(p=6, A=1, C=1) = 2·0.05 = 0.1.
        let k6 = delta_constant(6.0, 1.0, 1.0, Scheme::DoubleExponential, &s).unwrap();
        assert_relative_eq!(k6, 0.1, max_relative = 1e-10);
    }

    #[test]
    fn origin_bump_deviations_match_frozen_ladder() {
        // Frozen from a 40-digit evaluation of the scaled pairing with
        // p = 4, A = C = 1 and the unit bump of radius 1 at the origin.
        let s = settings();
        let bump = BumpFunction::unit(0.0, 1.0).unwrap();
        let cases = [(1.0, 0.813, 1e-3), (0.1, 0.3246, 1e-3), (0.01, 0.0573, 5e-4), (1e-3, 0.0068, 5e-4)];
        let mut previous = f64::INFINITY;
        for (eps, frozen, tol) in cases {
            let dev = delta_deviation(4.0, 1.0, 1.0, eps, &bump, Scheme::Adaptive, &s).unwrap();
            assert!(
                (dev - frozen).abs() < tol,
                "deviation at eps = {eps}: got {dev}, frozen {frozen}"
            );
            assert!(dev < previous, "deviation must shrink monotonically");
            previous = dev;
        }
        assert!(previous < 0.01);
    }

    #[test]
    fn off_origin_bump_pairings_decay() {
        // Support [1, 2] excludes the concentration point, so the raw
        // pairing decays; frozen ratio at eps = 1e-3 is 3.134e-5 of the
        // eps = 1 value for p = 6.
        let s = settings();
        let bump = BumpFunction::unit(1.5, 0.5).unwrap();
        let base = pairing(6.0, 1.0, 1.0, 1.0, &bump, Scheme::Adaptive, &s).unwrap();
        let mut previous = base;
        for eps in [0.1, 0.01, 1e-3] {
            let paired = pairing(6.0, 1.0, 1.0, eps, &bump, Scheme::Adaptive, &s).unwrap();
            assert!(paired < previous);
            previous = paired;
        }
        let ratio = previous / base;
        assert!((ratio - 3.134e-5).abs() < 3e-7, "ratio {ratio}");

        assert!(matches!(
            delta_deviation(6.0, 1.0, 1.0, 0.1, &bump, Scheme::Adaptive, &s),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn both_schemes_agree_on_pairings() {
        let s = settings();
        for (bump, p, eps) in [
            (BumpFunction::unit(0.0, 1.0).unwrap(), 4.0, 0.1),
            (BumpFunction::unit(0.0, 1.0).unwrap(), 4.0, 1e-2),
            (BumpFunction::unit(1.5, 0.5).unwrap(), 6.0, 0.1),
        ] {
            let gk = pairing(p, 1.0, 1.0, eps, &bump, Scheme::Adaptive, &s).unwrap();
            let de = pairing(p, 1.0, 1.0, eps, &bump, Scheme::DoubleExponential, &s).unwrap();
            assert_relative_eq!(gk, de, max_relative = 1e-9);
        }
    }
}
