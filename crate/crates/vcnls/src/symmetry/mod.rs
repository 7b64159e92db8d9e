//! Symmetry machinery: an exact-rational Lie bracket engine for the
//! four-dimensional algebra generated by time translation, dilation, the
//! conformal field and the gauge rotation, plus the induced group action
//! that maps solutions to solutions.

pub mod action;
pub mod poly;
pub mod vector_field;

pub use action::{
    apply_group_action, blowup_element, epsilon_at, epsilon_family, sample_admissible,
};
pub use poly::{Coeff, Poly, Var};
pub use vector_field::{structure_constants_report, BracketCheck, VectorField, MAX_COEFF_DEGREE};
