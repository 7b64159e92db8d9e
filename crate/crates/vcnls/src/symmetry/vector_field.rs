//! Vector fields on (t, x, rho, omega) jet space with exact polynomial
//! coefficients, and their Lie brackets.
//!
//! The algebra of interest is spanned by
//!
//! ```text
//! T = ∂t
//! D = 2t ∂t + x ∂x − (rho/2) ∂rho
//! C = t² ∂t + x t ∂x − (t rho/2) ∂rho + (x²/4) ∂omega
//! W = ∂omega
//! ```
//!
//! with nonzero brackets `[T,D] = 2T`, `[T,C] = D`, `[D,C] = 2C` and `W`
//! central — an sl(2,ℝ) ⊕ ℝ structure. Coefficients never exceed degree
//! two per variable inside this span, so construction enforces that bound;
//! brackets that escape it (possible for hand-built fields) surface as
//! [`Error::DegreeOverflow`] rather than silently truncating.

use std::fmt;
use std::ops::{Add, Sub};

use super::poly::{Coeff, Poly, Var};
use crate::{Error, Result};

/// Largest per-variable exponent admitted in a validated coefficient.
pub const MAX_COEFF_DEGREE: u32 = 2;

/// A first-order differential operator
/// `dt ∂t + dx ∂x + drho ∂rho + domega ∂omega`
/// whose coefficients are polynomials in (t, x, rho).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    dt: Poly,
    dx: Poly,
    drho: Poly,
    domega: Poly,
}

impl VectorField {
    pub fn new(dt: Poly, dx: Poly, drho: Poly, domega: Poly) -> Result<Self> {
        for (name, p) in [("dt", &dt), ("dx", &dx), ("drho", &drho), ("domega", &domega)] {
            for v in [Var::T, Var::X, Var::Rho] {
                let d = p.degree(v);
                if d > MAX_COEFF_DEGREE {
                    return Err(Error::DegreeOverflow(format!(
                        "coefficient {name} = {p} has degree {d} > {MAX_COEFF_DEGREE} in {v:?}"
                    )));
                }
            }
        }
        Ok(VectorField {
            dt,
            dx,
            drho,
            domega,
        })
    }

    pub fn zero() -> Self {
        VectorField {
            dt: Poly::zero(),
            dx: Poly::zero(),
            drho: Poly::zero(),
            domega: Poly::zero(),
        }
    }

    /// T = ∂t.
    pub fn time_translation() -> Self {
        VectorField {
            dt: Poly::constant_int(1),
            ..VectorField::zero()
        }
    }

    /// D = 2t ∂t + x ∂x − (rho/2) ∂rho.
    pub fn dilation() -> Self {
        VectorField {
            dt: Poly::monomial(Coeff::from_integer(2), (1, 0, 0)),
            dx: Poly::var(Var::X),
            drho: Poly::monomial(Coeff::new(-1, 2), (0, 0, 1)),
            domega: Poly::zero(),
        }
    }

    /// C = t² ∂t + x t ∂x − (t rho/2) ∂rho + (x²/4) ∂omega.
    pub fn conformal() -> Self {
        VectorField {
            dt: Poly::monomial(Coeff::from_integer(1), (2, 0, 0)),
            dx: Poly::monomial(Coeff::from_integer(1), (1, 1, 0)),
            drho: Poly::monomial(Coeff::new(-1, 2), (1, 0, 1)),
            domega: Poly::monomial(Coeff::new(1, 4), (0, 2, 0)),
        }
    }

    /// W = ∂omega.
    pub fn gauge() -> Self {
        VectorField {
            domega: Poly::constant_int(1),
            ..VectorField::zero()
        }
    }

    pub fn dt(&self) -> &Poly {
        &self.dt
    }

    pub fn dx(&self) -> &Poly {
        &self.dx
    }

    pub fn drho(&self) -> &Poly {
        &self.drho
    }

    pub fn domega(&self) -> &Poly {
        &self.domega
    }

    pub fn is_zero(&self) -> bool {
        self.dt.is_zero() && self.dx.is_zero() && self.drho.is_zero() && self.domega.is_zero()
    }

    /// Directional derivative of a scalar polynomial: no coefficient
    /// depends on omega, so `∂omega` contributes nothing here.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = &self.dt * &f.partial(Var::T);
        out = &out + &(&self.dx * &f.partial(Var::X));
        &out + &(&self.drho * &f.partial(Var::Rho))
    }

    /// `[self, other] = self∘other − other∘self`, computed componentwise as
    /// `self(other_i) − other(self_i)`. The intermediate products may exceed
    /// the degree bound even when both inputs satisfy it, in which case the
    /// bracket does not live in the admissible space and this returns
    /// [`Error::DegreeOverflow`].
    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField> {
        VectorField::new(
            &self.apply(&other.dt) - &other.apply(&self.dt),
            &self.apply(&other.dx) - &other.apply(&self.dx),
            &self.apply(&other.drho) - &other.apply(&self.drho),
            &self.apply(&other.domega) - &other.apply(&self.domega),
        )
    }

    pub fn scaled(&self, c: Coeff) -> VectorField {
        VectorField {
            dt: self.dt.scaled(c),
            dx: self.dx.scaled(c),
            drho: self.drho.scaled(c),
            domega: self.domega.scaled(c),
        }
    }
}

impl Add for &VectorField {
    type Output = VectorField;

    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField {
            dt: &self.dt + &rhs.dt,
            dx: &self.dx + &rhs.dx,
            drho: &self.drho + &rhs.drho,
            domega: &self.domega + &rhs.domega,
        }
    }
}

impl Sub for &VectorField {
    type Output = VectorField;

    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField {
            dt: &self.dt - &rhs.dt,
            dx: &self.dx - &rhs.dx,
            drho: &self.drho - &rhs.drho,
            domega: &self.domega - &rhs.domega,
        }
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, dir) in [
            (&self.dt, "d/dt"),
            (&self.dx, "d/dx"),
            (&self.drho, "d/drho"),
            (&self.domega, "d/domega"),
        ] {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let rendered = format!("{p}");
            let needs_parens = rendered.contains(" + ")
                || rendered.contains(" - ")
                || rendered.starts_with('-');
            if needs_parens {
                write!(f, "({rendered}) {dir}")?;
            } else if rendered == "1" {
                write!(f, "{dir}")?;
            } else {
                write!(f, "{rendered} {dir}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of one bracket check against the expected structure constant.
#[derive(Debug, Clone)]
pub struct BracketCheck {
    /// Which bracket was formed, e.g. `[T, D]`.
    pub label: String,
    /// Human-readable expected combination, e.g. `2 T`.
    pub expected_label: String,
    pub computed: VectorField,
    pub expected: VectorField,
    /// Exact rational equality of computed and expected.
    pub pass: bool,
}

/// Evaluates all six pairwise brackets of the generators and compares each
/// against its expected structure constant, exactly.
pub fn structure_constants_report() -> Result<Vec<BracketCheck>> {
    let t = VectorField::time_translation();
    let d = VectorField::dilation();
    let c = VectorField::conformal();
    let w = VectorField::gauge();
    let two = Coeff::from_integer(2);

    let cases: Vec<(&str, &VectorField, &VectorField, &str, VectorField)> = vec![
        ("[T, D]", &t, &d, "2 T", t.scaled(two)),
        ("[T, C]", &t, &c, "D", d.clone()),
        ("[D, C]", &d, &c, "2 C", c.scaled(two)),
        ("[T, W]", &t, &w, "0", VectorField::zero()),
        ("[D, W]", &d, &w, "0", VectorField::zero()),
        ("[C, W]", &c, &w, "0", VectorField::zero()),
    ];

    cases
        .into_iter()
        .map(|(label, left, right, expected_label, expected)| {
            let computed = left.lie_bracket(right)?;
            let pass = computed == expected;
            Ok(BracketCheck {
                label: label.to_owned(),
                expected_label: expected_label.to_owned(),
                computed,
                expected,
                pass,
            })
        })
        .collect()
}
