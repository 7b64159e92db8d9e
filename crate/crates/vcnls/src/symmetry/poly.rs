//! Exact polynomial arithmetic in the three jet variables `t`, `x`, `rho`
//! over the rationals.
//!
//! The bracket computations only ever touch polynomials with tiny degrees
//! and small rational coefficients, so `Ratio<i64>` is ample and every
//! operation here is exact — equality of brackets is decided with `==`,
//! not with a tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;

/// Rational coefficient type used throughout the algebra layer.
pub type Coeff = Ratio<i64>;

/// The variables a coefficient polynomial may depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    T,
    X,
    Rho,
}

/// A polynomial in (t, x, rho) with rational coefficients, stored sparsely
/// as exponent-triple → coefficient with zero coefficients never retained.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32, u32), Coeff>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Poly::monomial(c, (0, 0, 0))
    }

    /// Integer constant, as a convenience for building generators.
    pub fn constant_int(n: i64) -> Self {
        Poly::constant(Coeff::from_integer(n))
    }

    pub fn var(v: Var) -> Self {
        let exps = match v {
            Var::T => (1, 0, 0),
            Var::X => (0, 1, 0),
            Var::Rho => (0, 0, 1),
        };
        Poly::monomial(Coeff::from_integer(1), exps)
    }

    pub fn monomial(c: Coeff, exps: (u32, u32, u32)) -> Self {
        let mut p = Poly::zero();
        p.accumulate(exps, c);
        p
    }

    fn accumulate(&mut self, exps: (u32, u32, u32), c: Coeff) {
        if c == Coeff::from_integer(0) {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(|| Coeff::from_integer(0));
        *entry += c;
        if *entry == Coeff::from_integer(0) {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent of `v` appearing in any term (0 for the zero
    /// polynomial).
    pub fn degree(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|&(et, ex, er)| match v {
                Var::T => et,
                Var::X => ex,
                Var::Rho => er,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (&(et, ex, er), &c) in &self.terms {
            let (e, lowered) = match v {
                Var::T => (et, (et.saturating_sub(1), ex, er)),
                Var::X => (ex, (et, ex.saturating_sub(1), er)),
                Var::Rho => (er, (et, ex, er.saturating_sub(1))),
            };
            if e > 0 {
                out.accumulate(lowered, c * Coeff::from_integer(e as i64));
            }
        }
        out
    }

    pub fn scaled(&self, c: Coeff) -> Poly {
        let mut out = Poly::zero();
        for (&exps, &k) in &self.terms {
            out.accumulate(exps, k * c);
        }
        out
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&exps, &c) in &rhs.terms {
            out.accumulate(exps, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (&exps, &c) in &rhs.terms {
            out.accumulate(exps, -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(at, ax, ar), &ac) in &self.terms {
            for (&(bt, bx, br), &bc) in &rhs.terms {
                out.accumulate((at + bt, ax + bx, ar + br), ac * bc);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scaled(Coeff::from_integer(-1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = Coeff::from_integer(1);
        for (i, (&(et, ex, er), &c)) in self.terms.iter().enumerate() {
            let negative = c < Coeff::from_integer(0);
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = if negative { -c } else { c };
            let mut vars = String::new();
            for (name, e) in [("t", et), ("x", ex), ("rho", er)] {
                if e == 1 {
                    if !vars.is_empty() {
                        vars.push(' ');
                    }
                    vars.push_str(name);
                } else if e > 1 {
                    if !vars.is_empty() {
                        vars.push(' ');
                    }
                    vars.push_str(&format!("{name}^{e}"));
                }
            }
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == one {
                write!(f, "{vars}")?;
            } else {
                write!(f, "{mag} {vars}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Coeff {
        Coeff::new(n, d)
    }

    #[test]
    fn zero_terms_are_never_stored() {
        let t = Poly::var(Var::T);
        let diff = &t - &t;
        assert!(diff.is_zero());
        assert!(Poly::constant_int(0).is_zero());
        assert_eq!(format!("{diff}"), "0");
    }

    #[test]
    fn product_and_degree() {
        // (t + x)(t - x) = t^2 - x^2
        let t = Poly::var(Var::T);
        let x = Poly::var(Var::X);
        let p = &(&t + &x) * &(&t - &x);
        let expected = &(&t * &t) - &(&x * &x);
        assert_eq!(p, expected);
        assert_eq!(p.degree(Var::T), 2);
        assert_eq!(p.degree(Var::X), 2);
        assert_eq!(p.degree(Var::Rho), 0);
    }

    #[test]
    fn partial_derivatives() {
        // d/dt (t^2 x) = 2 t x, d/dx (t^2 x) = t^2, d/drho = 0
        let p = Poly::monomial(r(1, 1), (2, 1, 0));
        assert_eq!(p.partial(Var::T), Poly::monomial(r(2, 1), (1, 1, 0)));
        assert_eq!(p.partial(Var::X), Poly::monomial(r(1, 1), (2, 0, 0)));
        assert!(p.partial(Var::Rho).is_zero());
        assert!(Poly::constant_int(7).partial(Var::T).is_zero());
    }

    #[test]
    fn rational_coefficients_stay_exact() {
        // 1/3 + 1/6 = 1/2, and 3 * (1/3 rho) = rho
        let a = Poly::constant(r(1, 3));
        let b = Poly::constant(r(1, 6));
        assert_eq!(&a + &b, Poly::constant(r(1, 2)));
        let third_rho = Poly::monomial(r(1, 3), (0, 0, 1));
        assert_eq!(third_rho.scaled(r(3, 1)), Poly::var(Var::Rho));
    }

    #[test]
    fn display_is_readable() {
        // Terms iterate in exponent order: (0,0,1) before (1,2,0).
        let p = &Poly::monomial(r(-1, 2), (0, 0, 1)) + &Poly::monomial(r(2, 1), (1, 2, 0));
        assert_eq!(format!("{p}"), "-1/2 rho + 2 t x^2");
        assert_eq!(format!("{}", Poly::var(Var::X)), "x");
        assert_eq!(format!("{}", Poly::constant_int(-3)), "-3");
    }
}
