//! Coefficients of the equation under study.

use crate::{Error, Result};

/// Strength of the 1/x² potential singled out by the leading-order balance
/// of the exact solution families (together with a vanishing imaginary
/// part).
pub const H1_TRUNCATION: f64 = 5.0 / 36.0;

/// Sign of the cubic coupling. The equation is only considered for ε = ±1;
/// other magnitudes can be scaled into the amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Accepts exactly +1 or −1.
    pub fn from_int(value: i32) -> Result<Self> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::invalid(format!(
                "cubic sign must be +1 or -1, got {other}"
            ))),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Coefficients of `i u_t + u_xx + (ε + iγ)|u|²u/x + (h₁ + ih₂)u/x² = 0`.
///
/// ε is restricted to ±1; γ, h₁, h₂ are arbitrary finite reals. γ > 0 damps
/// the modulus, γ < 0 amplifies it (and can drive finite-time blow-up of the
/// pointwise flow), h₂ plays the same role for the linear term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquationParameters {
    pub epsilon: Sign,
    pub gamma: f64,
    pub h1: f64,
    pub h2: f64,
}

impl EquationParameters {
    pub fn new(epsilon: i32, gamma: f64, h1: f64, h2: f64) -> Result<Self> {
        let epsilon = Sign::from_int(epsilon)?;
        for (name, v) in [("gamma", gamma), ("h1", h1), ("h2", h2)] {
            if !v.is_finite() {
                return Err(Error::invalid(format!("{name} must be finite, got {v}")));
            }
        }
        Ok(EquationParameters {
            epsilon,
            gamma,
            h1,
            h2,
        })
    }

    /// Parameters for which the closed-form families below solve the
    /// equation exactly: h₁ = 5/36, h₂ = 0.
    pub fn truncation(epsilon: i32, gamma: f64) -> Result<Self> {
        Self::new(epsilon, gamma, H1_TRUNCATION, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_unit_signs_only() {
        assert!(EquationParameters::new(1, 0.5, 0.0, 0.0).is_ok());
        assert!(EquationParameters::new(-1, -2.0, 1.0, -1.0).is_ok());
        for bad in [0, 2, -3] {
            assert!(matches!(
                EquationParameters::new(bad, 1.0, 0.0, 0.0),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(EquationParameters::new(1, f64::NAN, 0.0, 0.0).is_err());
        assert!(EquationParameters::new(1, 1.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn truncation_fixes_the_potential() {
        let p = EquationParameters::truncation(1, 1.0).unwrap();
        assert_eq!(p.h1, 5.0 / 36.0);
        assert_eq!(p.h2, 0.0);
        assert_eq!(p.epsilon.value(), 1.0);
    }
}
