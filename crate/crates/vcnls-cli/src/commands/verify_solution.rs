//! Measures the PDE residual of one configured solution on a refinement
//! ladder. A correct exact solution shows the finite-difference
//! discretization order; a defective one (e.g. with an overridden
//! potential constant) leaves a persistent defect and fails.

use std::path::Path;

use serde_json::json;

use vcnls::residual::convergence_order;

use crate::config::VerifySolutionConfig;
use crate::report::{finalize, CheckRecord, Provenance, ResultBundle};
use crate::Failure;

pub fn run(cfg: &VerifySolutionConfig, out: &Path) -> Result<u8, Failure> {
    cfg.validate()?;
    let params = cfg.params.build()?;
    let constants = cfg.params.constants()?;
    let solution = cfg.solution.build(constants)?;
    let probes: Vec<(f64, f64)> = cfg.probes.iter().map(|p| (p.x, p.t)).collect();

    let report = convergence_order(&params, &solution, &probes, &cfg.spacings, cfg.dt_ratio)
        .map_err(Failure::numerical)?;

    let band = cfg.tolerances;
    let in_band = report
        .estimated_order
        .map(|o| o >= band.order_min && o <= band.order_max)
        .unwrap_or(false);
    let pass = report.saturated || in_band;

    let mut bundle = ResultBundle::new("verify-solution");
    bundle.push(CheckRecord {
        name: "residual convergence order".into(),
        inputs: json!({
            "spacings": cfg.spacings,
            "dt_ratio": cfg.dt_ratio,
            "probes": cfg.probes.len(),
        }),
        computed: json!({
            "order": report.estimated_order,
            "sup_residuals": report.sup_residuals,
            "saturated": report.saturated,
        }),
        reference: json!({ "order": 2.0 }),
        provenance: Provenance::DerivedOracle,
        tolerance: (band.order_max - band.order_min) / 2.0,
        pass,
    });
    finalize(&bundle, out)
}
