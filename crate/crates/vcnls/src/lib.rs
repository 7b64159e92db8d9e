//! Verification laboratory for the cubic Schrödinger equation
//!
//! ```text
//! i u_t + u_xx + (ε + iγ) |u|²u / x + (h₁ + ih₂) u / x² = 0,   x > 0, ε = ±1,
//! ```
//!
//! whose coefficient structure admits closed-form solution families and a
//! four-dimensional symmetry algebra (sl(2,ℝ) plus a central gauge rotation).
//! The crate provides three layers:
//!
//! * **exact objects** — equation parameters ([`params`]), the closed-form
//!   solution families ([`solutions`]), and the symmetry machinery
//!   ([`group`], [`symmetry`]): an exact-rational Lie bracket engine and the
//!   group action that maps solutions to solutions;
//! * **verification tools** — finite-difference residuals with convergence
//!   order estimation ([`residual`]) and adaptive quadrature, rate fits,
//!   maximizers and distributional pairings ([`analysis`]) used to confirm
//!   the blow-up behaviour of the transformed families quantitatively;
//! * **a splitting simulator** ([`simulate`]) — Strang splitting with a
//!   Crank–Nicolson dispersive half and exactly integrated local terms,
//!   validated against the exact families.
//!
//! The hot loops (parameter sweeps, residual ladders, pointwise field maps)
//! run data-parallel through [`par`] when the default `parallel` feature is
//! enabled and fall back to equivalent sequential code without it.

// Guards are written `!(value > 0.0)` on purpose: the negation also traps
// NaN, which a rewritten `value <= 0.0` would silently admit.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
mod error;
pub mod grid;
pub mod group;
pub mod par;
pub mod params;
pub mod residual;
pub mod simulate;
pub mod solutions;
pub mod symmetry;

pub use error::{Error, Result};
pub use grid::{ComplexField, SpatialGrid};
pub use group::GroupElement;
pub use params::{EquationParameters, Sign, H1_TRUNCATION};
pub use solutions::{PointwiseSolution, SolutionSpec, TruncationConstants};
