//! Quantitative verification tools: quadrature engines, closed-profile
//! norm evaluations, log–log rate fits, and distributional pairings.
//!
//! Every integral of interest can be computed by two structurally
//! different routes — a globally adaptive Gauss–Kronrod rule and a
//! double-exponential rule — so results are cross-checkable rather than
//! trusted from a single scheme.

pub mod distribution;
pub mod norms;
pub mod quad;
pub mod ratefit;

pub use distribution::{delta_constant, delta_deviation, pairing, BumpFunction};
pub use norms::{
    blowup_table, fit_norm_rate, linf_report, lp_norm, lp_pth_power, lp_pth_power_on_interval,
    scaled_profile_integral, tail_cutoff, BlowupCell, LinfReport, Scheme,
};
pub use quad::{adaptive_gk15, exp_sinh, tanh_sinh, QuadratureOutcome, QuadratureSettings};
pub use ratefit::{fit_loglog, LogLogFit};
