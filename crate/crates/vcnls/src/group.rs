//! Elements of the symmetry group: unit-determinant 2×2 matrices together
//! with a gauge phase.
//!
//! The matrix part acts on solutions through
//!
//! ```text
//! (Ψ_g u)(x, t) = (a + bt)^{-1/2} exp[i b x² / (4(a + bt))] u(x/(a+bt), (c+dt)/(a+bt)),
//! ```
//!
//! restricted to the branch `a + bt > 0`; the gauge phase multiplies the
//! result by `e^{iθ}`. Because the phase rotation commutes with everything,
//! composition simply adds phases while the matrices multiply.

use crate::{Error, Result};

/// Tolerance on |ad − bc − 1| accepted at construction. Compositions of a
/// handful of well-scaled elements stay far inside this bound.
pub const DET_TOL: f64 = 1e-12;

/// One symmetry transformation: matrix entries (a, b, c, d) with
/// ad − bc = 1, plus a gauge angle θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    theta: f64,
}

impl GroupElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64, theta: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d), ("theta", theta)] {
            if !v.is_finite() {
                return Err(Error::invalid(format!(
                    "group entry {name} must be finite, got {v}"
                )));
            }
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL {
            return Err(Error::invalid(format!(
                "determinant must be 1 (got {det}, off by {:e})",
                det - 1.0
            )));
        }
        Ok(GroupElement { a, b, c, d, theta })
    }

    pub fn identity() -> Self {
        GroupElement {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
            theta: 0.0,
        }
    }

    /// A pure gauge rotation by θ.
    pub fn gauge(theta: f64) -> Self {
        GroupElement {
            theta,
            ..Self::identity()
        }
    }

    /// Shifts the time argument by `s` (matrix (1, 0; s, 1)).
    pub fn time_translation(s: f64) -> Self {
        GroupElement {
            a: 1.0,
            b: 0.0,
            c: s,
            d: 1.0,
            theta: 0.0,
        }
    }

    /// The dilation one-parameter subgroup: x ↦ x e^s, t ↦ t e^{2s}, with the
    /// matching amplitude factor (matrix (e^{-s}, 0; 0, e^{s})).
    pub fn scaling(s: f64) -> Self {
        GroupElement {
            a: (-s).exp(),
            b: 0.0,
            c: 0.0,
            d: s.exp(),
            theta: 0.0,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product `self · other`; gauge phases add.
    ///
    /// Applying `g1` to a solution and then `g2` to the result realizes the
    /// single transformation `g1.compose(&g2)` (the action pulls arguments
    /// back, so it composes contravariantly).
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
            theta: self.theta + other.theta,
        }
    }

    /// Inverse element: matrix (d, −b; −c, a), phase negated.
    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
            theta: -self.theta,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_determinant_and_entries() {
        assert!(GroupElement::new(1.0, 1.0, 1.0, 2.0, 0.0).is_ok());
        assert!(GroupElement::new(1.0, 1.0, 1.0, 2.0 + 1e-9, 0.0).is_err());
        assert!(GroupElement::new(f64::NAN, 0.0, 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn composition_is_the_matrix_product() {
        // Worked 2×2 product: (1,1;0,1)·(1,0;1,1) = (2,1;1,1).
        let g1 = GroupElement::new(1.0, 1.0, 0.0, 1.0, 0.3).unwrap();
        let g2 = GroupElement::new(1.0, 0.0, 1.0, 1.0, -0.1).unwrap();
        let g = g1.compose(&g2);
        assert_eq!((g.a(), g.b(), g.c(), g.d()), (2.0, 1.0, 1.0, 1.0));
        assert!((g.theta() - 0.2).abs() < 1e-15);
        assert!((g.det() - 1.0).abs() <= DET_TOL);
    }

    #[test]
    fn inverse_cancels() {
        let g = GroupElement::new(2.0, 3.0, 0.5, 1.25, 0.7).unwrap();
        let e = g.compose(&g.inverse());
        assert!((e.a() - 1.0).abs() < 1e-12);
        assert!(e.b().abs() < 1e-12);
        assert!(e.c().abs() < 1e-12);
        assert!((e.d() - 1.0).abs() < 1e-12);
        assert!(e.theta().abs() < 1e-12);
    }

    #[test]
    fn identity_is_neutral() {
        let g = GroupElement::new(0.5, -0.25, 1.0, 1.5, 1.1).unwrap();
        let id = GroupElement::identity();
        assert_eq!(g.compose(&id), g);
        assert_eq!(id.compose(&g), g);
    }
}
