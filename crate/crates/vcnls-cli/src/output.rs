//! Flat-file emitters: CSV tables with fixed, documented headers so that
//! downstream plots reproduce byte-for-byte in a given floating-point
//! environment.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use vcnls::analysis::BlowupCell;
use vcnls::simulate::NormSample;
use vcnls::ComplexField;

use crate::Failure;

pub const BLOWUP_HEADER: &str = "eps,p,lp_norm,linf_norm,argmax,slope_partial";
pub const NORM_HEADER: &str = "t,p,norm,exact_norm,rel_err";
pub const SNAPSHOT_HEADER: &str = "x,re,im,abs";

pub fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| Failure::Config(format!("cannot create {}: {e}", dir.display())))
}

pub fn io_failure(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Config(format!("cannot write {}: {e}", path.display()))
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// One row per (ε, p) cell, ε fastest, in ladder order.
pub fn write_blowup_csv(path: &Path, cells: &[BlowupCell]) -> io::Result<()> {
    let mut text = String::from(BLOWUP_HEADER);
    text.push('\n');
    for c in cells {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{}",
            c.eps,
            c.p,
            c.lp_norm,
            c.linf_norm,
            c.argmax,
            opt(c.partial_slope)
        );
    }
    fs::write(path, text)
}

/// One row per recorded (time, p) norm sample; reference columns are empty
/// when no exact solution was configured.
pub fn write_norm_csv(path: &Path, samples: &[NormSample]) -> io::Result<()> {
    let mut text = String::from(NORM_HEADER);
    text.push('\n');
    for s in samples {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            s.time,
            s.p,
            s.norm,
            opt(s.exact_norm),
            opt(s.rel_err)
        );
    }
    fs::write(path, text)
}

/// One file per snapshot, named by its time.
pub fn write_snapshots(dir: &Path, snapshots: &[ComplexField]) -> io::Result<Vec<PathBuf>> {
    let mut paths = Vec::with_capacity(snapshots.len());
    for field in snapshots {
        let mut text = String::from(SNAPSHOT_HEADER);
        text.push('\n');
        for (i, v) in field.values().iter().enumerate() {
            let _ = writeln!(text, "{},{},{},{}", field.grid().node(i), v.re, v.im, v.norm());
        }
        let path = dir.join(format!("snapshot_t{:.6}.csv", field.time()));
        fs::write(&path, text)?;
        paths.push(path);
    }
    Ok(paths)
}
