//! Pairs the rescaled concentration density against a test function down
//! an ε ladder. Bumps covering the origin must approach the concentration
//! constant times the peak value; bumps missing the origin must decay
//! toward zero.

use std::path::Path;

use serde_json::json;

use vcnls::analysis::{delta_constant, pairing, BumpFunction};

use crate::config::DistributionTestConfig;
use crate::report::{finalize, CheckRecord, Provenance, ResultBundle};
use crate::Failure;

pub fn run(cfg: &DistributionTestConfig, out: &Path) -> Result<u8, Failure> {
    cfg.validate()?;
    let mut bundle = ResultBundle::new("distribution-test");

    if cfg.bump.normalization == Some(0.0) {
        // The identically zero test function pairs to zero at every scale;
        // nothing to integrate.
        bundle.push(CheckRecord {
            name: "zero test function".into(),
            inputs: json!({ "p": cfg.p, "eps_ladder": cfg.eps_ladder }),
            computed: json!(0.0),
            reference: json!(0.0),
            provenance: Provenance::Trivial,
            tolerance: 0.0,
            pass: true,
        });
        return finalize(&bundle, out);
    }

    let bump = match cfg.bump.normalization {
        None => BumpFunction::unit(cfg.bump.center, cfg.bump.radius),
        Some(n) => BumpFunction::new(cfg.bump.center, cfg.bump.radius, n),
    }
    .map_err(Failure::config)?;
    let scheme = cfg.scheme.scheme();
    let settings = cfg.quadrature.settings();

    let pairings = cfg
        .eps_ladder
        .iter()
        .map(|&eps| {
            pairing(
                cfg.p,
                cfg.amplitude,
                cfg.offset,
                eps,
                &bump,
                scheme,
                &settings,
            )
        })
        .collect::<Result<Vec<f64>, _>>()
        .map_err(Failure::numerical)?;

    let phi0 = bump.eval(0.0);
    if phi0 > 0.0 {
        let limit = delta_constant(cfg.p, cfg.amplitude, cfg.offset, scheme, &settings)
            .map_err(Failure::numerical)?
            * phi0;
        let deviations: Vec<f64> = pairings.iter().map(|v| (v - limit).abs() / limit).collect();
        bundle.push(CheckRecord {
            name: "deviation from the limit shrinks down the ladder".into(),
            inputs: json!({ "p": cfg.p, "eps_ladder": cfg.eps_ladder }),
            computed: json!(deviations),
            reference: json!("strictly decreasing"),
            provenance: Provenance::Paper,
            tolerance: 0.0,
            pass: deviations.windows(2).all(|w| w[1] < w[0]),
        });
        let final_dev = *deviations.last().expect("ladder is nonempty");
        bundle.push(CheckRecord {
            name: "final pairing against its limit".into(),
            inputs: json!({ "p": cfg.p, "eps": cfg.eps_ladder.last() }),
            computed: json!(pairings.last()),
            reference: json!(limit),
            provenance: Provenance::DerivedOracle,
            tolerance: cfg.tolerances.final_rel,
            pass: final_dev <= cfg.tolerances.final_rel,
        });
    } else {
        bundle.push(CheckRecord {
            name: "off-origin pairing decays down the ladder".into(),
            inputs: json!({ "p": cfg.p, "eps_ladder": cfg.eps_ladder }),
            computed: json!(pairings),
            reference: json!("strictly decreasing"),
            provenance: Provenance::Paper,
            tolerance: 0.0,
            pass: pairings.windows(2).all(|w| w[1] < w[0]),
        });
        let first = pairings[0];
        let last = *pairings.last().expect("ladder is nonempty");
        bundle.push(CheckRecord {
            name: "final off-origin pairing relative to the initial one".into(),
            inputs: json!({ "p": cfg.p, "eps": cfg.eps_ladder.last() }),
            computed: json!(last / first),
            reference: json!(0.0),
            provenance: Provenance::DerivedOracle,
            tolerance: cfg.tolerances.decay_fraction,
            pass: last <= cfg.tolerances.decay_fraction * first,
        });
    }

    finalize(&bundle, out)
}
