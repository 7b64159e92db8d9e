//! Check records and their serialized bundle.
//!
//! Every run writes `results.json` (machine-readable) and `results.txt`
//! (one human-readable line per check) into the output directory and
//! prints the same text to stdout.

use std::fmt::Write as _;
use std::io;
use std::path::Path;
use std::fs;

use serde::Serialize;
use serde_json::Value;

use crate::Failure;

/// Where a check's reference value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Quoted from the published derivation this toolkit verifies.
    Paper,
    /// Immediate from definitions.
    Trivial,
    /// Produced by an independent closed-form computation in this repo.
    DerivedOracle,
}

impl Provenance {
    pub fn tag(self) -> &'static str {
        match self {
            Provenance::Paper => "paper",
            Provenance::Trivial => "trivial",
            Provenance::DerivedOracle => "derived-oracle",
        }
    }
}

/// One verified statement: what was computed, what it was compared to, and
/// whether it passed at the given tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Value,
    pub computed: Value,
    pub reference: Value,
    pub provenance: Provenance,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ResultBundle {
    pub command: String,
    pub checks: Vec<CheckRecord>,
    /// Present when time stepping stopped before the final time.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halt: Option<Value>,
    pub passed: bool,
}

impl ResultBundle {
    pub fn new(command: &str) -> Self {
        ResultBundle {
            command: command.to_string(),
            checks: Vec::new(),
            halt: None,
            passed: true,
        }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.passed &= check.pass;
        self.checks.push(check);
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            crate::EXIT_CHECK_FAILURE
        }
    }

    pub fn human_text(&self) -> String {
        let mut text = String::new();
        for c in &self.checks {
            let verdict = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                text,
                "[{verdict}] {}: computed {} vs reference {} [{}] (tolerance {})",
                c.name,
                c.computed,
                c.reference,
                c.provenance.tag(),
                c.tolerance
            );
        }
        if let Some(halt) = &self.halt {
            let _ = writeln!(text, "HALT: {halt}");
        }
        let _ = writeln!(
            text,
            "{}: {}",
            self.command,
            if self.passed {
                "all checks passed"
            } else {
                "some checks FAILED"
            }
        );
        text
    }

    /// Writes `results.json` and `results.txt` into `out_dir`.
    pub fn write(&self, out_dir: &Path) -> io::Result<()> {
        fs::create_dir_all(out_dir)?;
        let json = serde_json::to_string_pretty(self).expect("bundle serializes");
        fs::write(out_dir.join("results.json"), json + "\n")?;
        fs::write(out_dir.join("results.txt"), self.human_text())
    }
}

/// Writes the bundle, prints its transcript, and returns its exit code.
pub fn finalize(bundle: &ResultBundle, out_dir: &Path) -> Result<u8, Failure> {
    bundle
        .write(out_dir)
        .map_err(|e| Failure::Config(format!("cannot write results to {}: {e}", out_dir.display())))?;
    print!("{}", bundle.human_text());
    Ok(bundle.exit_code())
}
