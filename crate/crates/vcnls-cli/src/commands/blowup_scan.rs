//! Tabulates L_p and L_inf norms of the concentrating family over an ε
//! ladder, writes the table as CSV, fits the blow-up rates in log-log
//! space, and checks the maximizer location.

use std::path::Path;

use serde_json::json;

use vcnls::analysis::{blowup_table, fit_loglog};

use crate::config::BlowupScanConfig;
use crate::output::{ensure_dir, io_failure, write_blowup_csv};
use crate::report::{finalize, CheckRecord, Provenance, ResultBundle};
use crate::Failure;

pub fn run(cfg: &BlowupScanConfig, out: &Path) -> Result<u8, Failure> {
    cfg.validate()?;
    ensure_dir(out)?;
    let settings = cfg.quadrature.settings();

    let cells = blowup_table(
        cfg.amplitude,
        cfg.offset,
        &cfg.ps,
        &cfg.eps_ladder,
        cfg.scheme.scheme(),
        &settings,
    )
    .map_err(Failure::numerical)?;

    let csv_path = out.join("blowup.csv");
    write_blowup_csv(&csv_path, &cells).map_err(io_failure(&csv_path))?;

    let mut bundle = ResultBundle::new("blowup-scan");
    let n = cfg.eps_ladder.len();
    for (i, &p) in cfg.ps.iter().enumerate() {
        let block = &cells[i * n..(i + 1) * n];
        let norms: Vec<f64> = block.iter().map(|c| c.lp_norm).collect();
        let fit = fit_loglog(&cfg.eps_ladder, &norms).map_err(Failure::numerical)?;
        let target = -(p - 2.0) / (2.0 * p);
        bundle.push(CheckRecord {
            name: format!("L_p growth rate (p = {p})"),
            inputs: json!({ "p": p, "eps_ladder": cfg.eps_ladder }),
            computed: json!(fit.slope),
            reference: json!(target),
            provenance: Provenance::DerivedOracle,
            tolerance: cfg.tolerances.lp_slope_rel,
            pass: ((fit.slope - target) / target).abs() <= cfg.tolerances.lp_slope_rel,
        });
    }

    // The sup norm and its location do not depend on p; read them off the
    // first block.
    let linfs: Vec<f64> = cells[..n].iter().map(|c| c.linf_norm).collect();
    let fit = fit_loglog(&cfg.eps_ladder, &linfs).map_err(Failure::numerical)?;
    bundle.push(CheckRecord {
        name: "L_inf growth rate".into(),
        inputs: json!({ "eps_ladder": cfg.eps_ladder }),
        computed: json!(fit.slope),
        reference: json!(-0.5),
        provenance: Provenance::Paper,
        tolerance: cfg.tolerances.linf_slope_abs,
        pass: (fit.slope + 0.5).abs() <= cfg.tolerances.linf_slope_abs,
    });

    let inv_sqrt27 = 1.0 / 27f64.sqrt();
    let scale = cfg.offset.powf(1.5);
    let rescaled_worst = cells[..n]
        .iter()
        .map(|c| c.argmax / (c.eps * scale))
        .max_by(|a, b| {
            (a - inv_sqrt27)
                .abs()
                .total_cmp(&(b - inv_sqrt27).abs())
        })
        .expect("ladder is nonempty");
    bundle.push(CheckRecord {
        name: "maximizer location (rescaled by ε·offset^{3/2})".into(),
        inputs: json!({ "eps_ladder": cfg.eps_ladder, "offset": cfg.offset }),
        computed: json!(rescaled_worst),
        reference: json!(inv_sqrt27),
        provenance: Provenance::Paper,
        tolerance: cfg.tolerances.argmax_abs,
        pass: (rescaled_worst - inv_sqrt27).abs() <= cfg.tolerances.argmax_abs,
    });

    finalize(&bundle, out)
}
