//! Configuration schemas for the subcommands.
//!
//! Every subcommand reads one JSON document. Unknown keys are rejected,
//! every tolerance lives here with an explicit default, and `build`
//! methods turn validated values into library types. Parsing a config,
//! serializing it, and parsing the result again yields the same value.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use vcnls::analysis::{QuadratureSettings, Scheme};
use vcnls::solutions::{Stationary, Truncated};
use vcnls::{
    EquationParameters, GroupElement, Sign, SolutionSpec, SpatialGrid, TruncationConstants,
    H1_TRUNCATION,
};

use crate::Failure;

/// Reads and strictly parses a JSON config file.
pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn ensure(condition: bool, message: impl Into<String>) -> Result<(), Failure> {
    if condition {
        Ok(())
    } else {
        Err(Failure::Config(message.into()))
    }
}

fn ensure_decreasing_ladder(ladder: &[f64], name: &str, min_len: usize) -> Result<(), Failure> {
    ensure(
        ladder.len() >= min_len,
        format!("{name} needs at least {min_len} entries, got {}", ladder.len()),
    )?;
    ensure(
        ladder.iter().all(|&e| e > 0.0 && e.is_finite()),
        format!("{name} entries must be positive and finite"),
    )?;
    ensure(
        ladder.windows(2).all(|w| w[1] < w[0]),
        format!("{name} must be strictly decreasing"),
    )
}

/// `lie-check` has no tunable inputs; its config is an empty object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieCheckConfig {}

/// Equation coefficients: the sign ε, the focusing strength γ, and optional
/// overrides for the two potential constants. The defaults are the values
/// singled out by the exact solution families; overrides exist to run
/// deliberately broken control experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub epsilon: i32,
    pub gamma: f64,
    #[serde(default)]
    pub h1_override: Option<f64>,
    #[serde(default)]
    pub h2_override: Option<f64>,
}

impl ParamsConfig {
    pub fn build(&self) -> Result<EquationParameters, Failure> {
        EquationParameters::new(
            self.epsilon,
            self.gamma,
            self.h1_override.unwrap_or(H1_TRUNCATION),
            self.h2_override.unwrap_or(0.0),
        )
        .map_err(Failure::config)
    }

    /// Constants of the exact families for these (ε, γ), independent of the
    /// overrides.
    pub fn constants(&self) -> Result<TruncationConstants, Failure> {
        let sign = Sign::from_int(self.epsilon).map_err(Failure::config)?;
        TruncationConstants::for_parameters(sign, self.gamma).map_err(Failure::config)
    }
}

/// One member of the exact solution families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionConfig {
    Stationary(StationaryConfig),
    Truncated(TruncatedConfig),
    Transformed(TransformedConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StationaryConfig {
    pub k1: f64,
    pub k2: f64,
    #[serde(default)]
    pub k3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncatedConfig {
    pub k1: f64,
    pub k2: f64,
    #[serde(default)]
    pub k3: f64,
    pub k4: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransformedConfig {
    pub element: ElementConfig,
    pub inner: Box<SolutionConfig>,
}

/// A group element: a unit-determinant matrix `[[a, b], [c, d]]` plus a
/// constant phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    #[serde(default)]
    pub theta: f64,
}

/// Closed-form description of a solution's modulus as the blow-up family
/// profile: `amplitude · x^{1/6} / (x^{2/3} + ε(t)^{2/3}·offset)` with
/// `ε(t) = k4·t + k1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusProfile {
    pub amplitude: f64,
    pub offset: f64,
    pub k1: f64,
    pub k4: f64,
}

impl ModulusProfile {
    pub fn eps_at(&self, t: f64) -> f64 {
        self.k4 * t + self.k1
    }
}

impl SolutionConfig {
    pub fn build(&self, constants: TruncationConstants) -> Result<SolutionSpec, Failure> {
        match self {
            SolutionConfig::Stationary(s) => Stationary::new(constants, s.k1, s.k2, s.k3)
                .map(SolutionSpec::Stationary)
                .map_err(Failure::config),
            SolutionConfig::Truncated(s) => Truncated::new(constants, s.k1, s.k2, s.k3, s.k4)
                .map(SolutionSpec::Truncated)
                .map_err(Failure::config),
            SolutionConfig::Transformed(s) => {
                let e = s.element;
                let g = GroupElement::new(e.a, e.b, e.c, e.d, e.theta).map_err(Failure::config)?;
                Ok(SolutionSpec::transformed(g, s.inner.build(constants)?))
            }
        }
    }

    /// The family-profile parameters of the configured solution's modulus,
    /// when it has them in closed form (general transformed solutions do
    /// not).
    pub fn modulus_profile(
        &self,
        constants: TruncationConstants,
    ) -> Result<Option<ModulusProfile>, Failure> {
        match self {
            SolutionConfig::Stationary(s) => {
                let st = Stationary::new(constants, s.k1, s.k2, s.k3).map_err(Failure::config)?;
                Ok(Some(ModulusProfile {
                    amplitude: constants.amplitude,
                    offset: st.offset(),
                    k1: 1.0,
                    k4: 0.0,
                }))
            }
            SolutionConfig::Truncated(s) => Ok(Some(ModulusProfile {
                amplitude: constants.amplitude,
                offset: s.k2,
                k1: s.k1,
                k4: s.k4,
            })),
            SolutionConfig::Transformed(_) => Ok(None),
        }
    }
}

/// Tolerances for the shared quadrature engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub max_levels: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let s = QuadratureSettings::default();
        QuadratureConfig {
            abs_tol: s.abs_tol,
            rel_tol: s.rel_tol,
            max_subdivisions: s.max_subdivisions,
            max_levels: s.max_levels,
        }
    }
}

impl QuadratureConfig {
    pub fn settings(&self) -> QuadratureSettings {
        QuadratureSettings {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_subdivisions: self.max_subdivisions,
            max_levels: self.max_levels,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeConfig {
    #[default]
    Adaptive,
    DoubleExponential,
}

impl SchemeConfig {
    pub fn scheme(self) -> Scheme {
        match self {
            SchemeConfig::Adaptive => Scheme::Adaptive,
            SchemeConfig::DoubleExponential => Scheme::DoubleExponential,
        }
    }
}

/// `verify-solution`: measure the PDE residual of one configured solution
/// over a refinement ladder and compare the observed order against a band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySolutionConfig {
    pub params: ParamsConfig,
    pub solution: SolutionConfig,
    #[serde(default = "default_spacings")]
    pub spacings: Vec<f64>,
    #[serde(default = "default_probes")]
    pub probes: Vec<ProbeConfig>,
    #[serde(default = "default_dt_ratio")]
    pub dt_ratio: f64,
    #[serde(default)]
    pub tolerances: OrderBand,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeConfig {
    pub x: f64,
    pub t: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OrderBand {
    pub order_min: f64,
    pub order_max: f64,
}

impl Default for OrderBand {
    fn default() -> Self {
        OrderBand {
            order_min: 1.8,
            order_max: 2.2,
        }
    }
}

fn default_spacings() -> Vec<f64> {
    vec![1e-2, 5e-3, 2.5e-3, 1.25e-3]
}

fn default_probes() -> Vec<ProbeConfig> {
    [
        (0.5, 0.2),
        (1.0, 0.2),
        (2.0, 0.2),
        (5.0, 0.2),
        (1.0, 0.7),
        (3.0, 0.7),
    ]
    .into_iter()
    .map(|(x, t)| ProbeConfig { x, t })
    .collect()
}

fn default_dt_ratio() -> f64 {
    1.0
}

fn default_unit() -> f64 {
    1.0
}

impl VerifySolutionConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        ensure_decreasing_ladder(&self.spacings, "spacings", 3)?;
        ensure(!self.probes.is_empty(), "probes must not be empty")?;
        let h_max = self.spacings[0];
        for p in &self.probes {
            ensure(
                p.x >= 10.0 * h_max && p.t.is_finite(),
                format!(
                    "probe x = {} too close to the boundary for the coarsest spacing {h_max}",
                    p.x
                ),
            )?;
        }
        ensure(
            self.dt_ratio > 0.0 && self.dt_ratio.is_finite(),
            "dt_ratio must be positive",
        )?;
        ensure(
            self.tolerances.order_min < self.tolerances.order_max,
            "order band must be nonempty",
        )
    }
}

/// `blowup-scan`: tabulate norms of the concentrating family over an ε
/// ladder, fit the growth rates, and check the maximizer location.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupScanConfig {
    #[serde(default = "default_unit")]
    pub amplitude: f64,
    #[serde(default = "default_unit")]
    pub offset: f64,
    pub ps: Vec<f64>,
    pub eps_ladder: Vec<f64>,
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub tolerances: BlowupTolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BlowupTolerances {
    /// Relative tolerance on each fitted L_p slope.
    pub lp_slope_rel: f64,
    /// Absolute tolerance on the fitted L_inf slope.
    pub linf_slope_abs: f64,
    /// Absolute tolerance on the rescaled maximizer location.
    pub argmax_abs: f64,
}

impl Default for BlowupTolerances {
    fn default() -> Self {
        BlowupTolerances {
            lp_slope_rel: 0.01,
            linf_slope_abs: 0.005,
            argmax_abs: 1e-6,
        }
    }
}

impl BlowupScanConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        ensure(
            self.amplitude > 0.0 && self.amplitude.is_finite(),
            "amplitude must be positive",
        )?;
        ensure(
            self.offset > 0.0 && self.offset.is_finite(),
            "offset must be positive",
        )?;
        ensure(!self.ps.is_empty(), "ps must not be empty")?;
        for &p in &self.ps {
            ensure(
                p > 2.0 && p.is_finite(),
                format!("every norm exponent must exceed 2, got {p}"),
            )?;
        }
        ensure_decreasing_ladder(&self.eps_ladder, "eps_ladder", 3)?;
        let span = self.eps_ladder[0] / self.eps_ladder[self.eps_ladder.len() - 1];
        ensure(
            span >= 100.0,
            format!("eps_ladder must span at least two decades, got a factor of {span}"),
        )
    }
}

/// `distribution-test`: pair the rescaled density against a bump and track
/// its limit down an ε ladder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionTestConfig {
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default = "default_unit")]
    pub amplitude: f64,
    #[serde(default = "default_unit")]
    pub offset: f64,
    pub bump: BumpConfig,
    #[serde(default = "default_eps_ladder")]
    pub eps_ladder: Vec<f64>,
    #[serde(default)]
    pub scheme: SchemeConfig,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub tolerances: DistributionTolerances,
}

/// A smooth compactly supported test function on `(center − radius,
/// center + radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BumpConfig {
    pub center: f64,
    pub radius: f64,
    /// Peak scale factor; omit for a bump with unit peak, or set 0 for the
    /// identically zero test function.
    #[serde(default)]
    pub normalization: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DistributionTolerances {
    /// Relative tolerance on the final pairing against its limit when the
    /// bump covers the origin.
    pub final_rel: f64,
    /// For bumps missing the origin: the final pairing must drop below this
    /// fraction of the initial one.
    pub decay_fraction: f64,
}

impl Default for DistributionTolerances {
    fn default() -> Self {
        DistributionTolerances {
            final_rel: 0.01,
            decay_fraction: 1e-4,
        }
    }
}

fn default_p() -> f64 {
    4.0
}

fn default_eps_ladder() -> Vec<f64> {
    vec![1.0, 0.1, 0.01, 1e-3]
}

impl DistributionTestConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        ensure(
            self.p > 2.0 && self.p.is_finite(),
            format!("the norm exponent must exceed 2, got {}", self.p),
        )?;
        ensure(
            self.amplitude > 0.0 && self.amplitude.is_finite(),
            "amplitude must be positive",
        )?;
        ensure(
            self.offset > 0.0 && self.offset.is_finite(),
            "offset must be positive",
        )?;
        ensure(
            self.bump.radius > 0.0 && self.bump.radius.is_finite() && self.bump.center.is_finite(),
            "bump needs a finite center and positive radius",
        )?;
        if let Some(n) = self.bump.normalization {
            ensure(
                n >= 0.0 && n.is_finite(),
                "bump normalization must be nonnegative",
            )?;
        }
        ensure_decreasing_ladder(&self.eps_ladder, "eps_ladder", 2)
    }
}

/// `simulate`: time-step an initial field and compare against an exact
/// reference when one is configured.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub params: ParamsConfig,
    pub grid: GridConfig,
    pub dt: f64,
    #[serde(default)]
    pub t_initial: f64,
    pub t_final: f64,
    /// Cap on dt relative to the squared spacing; raise deliberately for
    /// runs that lean on the unconditional stability of the implicit
    /// dispersive step.
    #[serde(default = "default_safety")]
    pub safety: f64,
    #[serde(default)]
    pub reference: Option<SolutionConfig>,
    #[serde(default)]
    pub boundary: BoundaryConfig,
    #[serde(default = "default_initial")]
    pub initial: InitialConfig,
    #[serde(default = "default_norm_track")]
    pub norm_track: Vec<f64>,
    /// Record norms every this many steps (0 = endpoints only).
    #[serde(default)]
    pub norm_stride: usize,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    #[serde(default)]
    pub quadrature: QuadratureConfig,
    #[serde(default)]
    pub tolerances: SimulateTolerances,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub x_min: f64,
    pub x_max: f64,
    pub spacing: f64,
}

impl GridConfig {
    pub fn build(&self) -> Result<SpatialGrid, Failure> {
        SpatialGrid::with_spacing(self.x_min, self.x_max, self.spacing).map_err(Failure::config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryConfig {
    /// Homogeneous Dirichlet values at both edges.
    #[default]
    Zero,
    /// Pin the edges to the reference solution.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialConfig {
    /// Sample the reference solution at the initial time.
    Reference,
    Gaussian(GaussianConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianConfig {
    pub amplitude: f64,
    pub center: f64,
    pub width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulateTolerances {
    /// Relative L² error against the reference at the final time.
    pub rel_l2: f64,
    /// Relative agreement between tracked norms and the independent
    /// quadrature of the exact modulus on the domain.
    pub norm_agreement: f64,
}

impl Default for SimulateTolerances {
    fn default() -> Self {
        SimulateTolerances {
            rel_l2: 1e-3,
            norm_agreement: 0.05,
        }
    }
}

fn default_safety() -> f64 {
    0.5
}

fn default_initial() -> InitialConfig {
    InitialConfig::Reference
}

fn default_norm_track() -> Vec<f64> {
    vec![2.0, 4.0]
}

impl SimulateConfig {
    pub fn validate(&self) -> Result<(), Failure> {
        ensure(self.dt > 0.0 && self.dt.is_finite(), "dt must be positive")?;
        ensure(
            self.t_initial.is_finite() && self.t_final.is_finite(),
            "times must be finite",
        )?;
        ensure(
            self.t_final >= self.t_initial,
            format!(
                "t_final = {} must not precede t_initial = {}",
                self.t_final, self.t_initial
            ),
        )?;
        ensure(
            self.safety > 0.0 && self.safety.is_finite(),
            "safety must be positive",
        )?;
        let needs_reference = matches!(self.initial, InitialConfig::Reference)
            || self.boundary == BoundaryConfig::Exact;
        ensure(
            !needs_reference || self.reference.is_some(),
            "initial = \"reference\" and boundary = \"exact\" both require a reference solution",
        )?;
        ensure(
            self.norm_track.iter().all(|&p| p >= 1.0 && p.is_finite()),
            "norm_track exponents must be ≥ 1",
        )?;
        ensure(
            self.snapshot_times.iter().all(|t| t.is_finite()),
            "snapshot_times must be finite",
        )
    }
}
