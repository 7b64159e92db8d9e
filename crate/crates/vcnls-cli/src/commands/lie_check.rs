//! Exact verification of the symmetry algebra: the six pairwise brackets
//! of the generators against their structure constants, plus the Jacobi
//! identity over every generator triple. All arithmetic is rational, so
//! every comparison is exact and the tolerances are zero.

use std::path::Path;

use serde_json::json;

use vcnls::symmetry::{structure_constants_report, VectorField};

use crate::report::{finalize, CheckRecord, Provenance, ResultBundle};
use crate::Failure;

pub fn run(out: &Path) -> Result<u8, Failure> {
    let mut bundle = ResultBundle::new("lie-check");

    for check in structure_constants_report().map_err(Failure::numerical)? {
        bundle.push(CheckRecord {
            name: format!("bracket {}", check.label),
            inputs: json!({ "bracket": check.label }),
            computed: json!(check.computed.to_string()),
            reference: json!(format!("{} = {}", check.expected_label, check.expected)),
            provenance: Provenance::Paper,
            tolerance: 0.0,
            pass: check.pass,
        });
    }

    let generators = [
        ("T", VectorField::time_translation()),
        ("D", VectorField::dilation()),
        ("C", VectorField::conformal()),
        ("W", VectorField::gauge()),
    ];
    let mut jacobi_exact = true;
    let mut violations: Vec<String> = Vec::new();
    for (lx, x) in &generators {
        for (ly, y) in &generators {
            for (lz, z) in &generators {
                let xy_z = bracket(&bracket(x, y)?, z)?;
                let yz_x = bracket(&bracket(y, z)?, x)?;
                let zx_y = bracket(&bracket(z, x)?, y)?;
                if !(&(&xy_z + &yz_x) + &zx_y).is_zero() {
                    jacobi_exact = false;
                    violations.push(format!("({lx}, {ly}, {lz})"));
                }
            }
        }
    }
    bundle.push(CheckRecord {
        name: "jacobi identity over all generator triples".into(),
        inputs: json!({ "triples": generators.len().pow(3) }),
        computed: json!(if jacobi_exact {
            "all cyclic sums vanish exactly".to_string()
        } else {
            format!("violated at {}", violations.join(", "))
        }),
        reference: json!("0"),
        provenance: Provenance::Trivial,
        tolerance: 0.0,
        pass: jacobi_exact,
    });

    finalize(&bundle, out)
}

fn bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, Failure> {
    x.lie_bracket(y).map_err(Failure::numerical)
}
