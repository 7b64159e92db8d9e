//! Drives the time stepper from a config: builds the initial field,
//! runs to the final time, writes snapshot and norm-series CSVs, and —
//! when an exact reference is configured — checks the final error and the
//! agreement of tracked norms with an independent quadrature.
//!
//! A halt (finite-time blow-up of the local flow, or a non-finite field)
//! is not a config error: the partial outputs are still written, the halt
//! time and the last finite norms are surfaced, and the process exits
//! with the dedicated halt status.

use std::path::Path;

use num_complex::Complex64;
use serde_json::json;

use vcnls::analysis::lp_pth_power_on_interval;
use vcnls::simulate::{run as run_simulation, sample_solution, BoundaryPolicy, SimulationConfig};
use vcnls::{ComplexField, Error, SolutionSpec};

use crate::config::{BoundaryConfig, InitialConfig, SimulateConfig};
use crate::output::{ensure_dir, io_failure, write_norm_csv, write_snapshots};
use crate::report::{finalize, CheckRecord, Provenance, ResultBundle};
use crate::{Failure, EXIT_HALT};

pub fn run(cfg: &SimulateConfig, out: &Path) -> Result<u8, Failure> {
    cfg.validate()?;
    ensure_dir(out)?;
    let params = cfg.params.build()?;
    let grid = cfg.grid.build()?;

    let constants = match &cfg.reference {
        Some(_) => Some(cfg.params.constants()?),
        None => None,
    };
    let reference: Option<SolutionSpec> = match (&cfg.reference, constants) {
        (Some(r), Some(c)) => Some(r.build(c)?),
        _ => None,
    };

    let initial = match &cfg.initial {
        InitialConfig::Reference => {
            let spec = reference
                .as_ref()
                .expect("validate() guarantees a reference for this initial condition");
            sample_solution(spec, &grid, cfg.t_initial).map_err(Failure::config)?
        }
        InitialConfig::Gaussian(g) => ComplexField::from_fn(grid, cfg.t_initial, |x| {
            let arg = -(x - g.center) * (x - g.center) / (2.0 * g.width * g.width);
            Complex64::new(g.amplitude * arg.exp(), 0.0)
        })
        .map_err(Failure::config)?,
    };

    let boundary = match cfg.boundary {
        BoundaryConfig::Zero => BoundaryPolicy::Zero,
        BoundaryConfig::Exact => BoundaryPolicy::Exact(
            reference
                .clone()
                .expect("validate() guarantees a reference for exact boundaries"),
        ),
    };

    let mut sim = SimulationConfig::new(params, grid, cfg.dt, cfg.t_final, boundary);
    sim.safety = cfg.safety;
    sim.norm_track = cfg.norm_track.clone();
    sim.norm_stride = cfg.norm_stride;
    sim.snapshot_times = cfg.snapshot_times.clone();
    sim.snapshot_times.push(cfg.t_initial);
    sim.snapshot_times.push(cfg.t_final);

    let traj = run_simulation(&sim, &initial, reference.as_ref()).map_err(|e| match e {
        Error::InvalidParameter(m) => Failure::Config(m),
        other => Failure::numerical(other),
    })?;

    let norm_path = out.join("norms.csv");
    write_norm_csv(&norm_path, &traj.norms).map_err(io_failure(&norm_path))?;
    write_snapshots(out, &traj.snapshots).map_err(io_failure(out))?;

    let mut bundle = ResultBundle::new("simulate");

    if let Some(halt) = &traj.halt {
        let last_norms: Vec<_> = cfg
            .norm_track
            .iter()
            .filter_map(|&p| traj.norms.iter().rev().find(|s| s.p == p))
            .map(|s| json!({ "p": s.p, "t": s.time, "norm": s.norm }))
            .collect();
        bundle.halt = Some(json!({
            "time": halt.time,
            "step_index": halt.step_index,
            "reason": halt.reason,
            "last_finite_norms": last_norms,
        }));
    }

    let expected_steps = ((cfg.t_final - cfg.t_initial) / cfg.dt).round() as usize;
    bundle.push(CheckRecord {
        name: "time stepping reached the final time".into(),
        inputs: json!({ "dt": cfg.dt, "t_initial": cfg.t_initial, "t_final": cfg.t_final }),
        computed: json!(traj.steps_taken),
        reference: json!(expected_steps),
        provenance: Provenance::Trivial,
        tolerance: 0.0,
        pass: traj.halt.is_none() && traj.steps_taken == expected_steps,
    });

    if reference.is_some() && traj.halt.is_none() {
        let final_err = traj
            .errors
            .last()
            .expect("a reference run records at least the initial error");
        bundle.push(CheckRecord {
            name: "relative L2 error at the final time".into(),
            inputs: json!({ "spacing": cfg.grid.spacing, "dt": cfg.dt, "t_final": cfg.t_final }),
            computed: json!(final_err.rel_l2),
            reference: json!(0.0),
            provenance: Provenance::DerivedOracle,
            tolerance: cfg.tolerances.rel_l2,
            pass: final_err.rel_l2 <= cfg.tolerances.rel_l2,
        });
    }

    // Tracked norms against an independent quadrature of the exact modulus
    // over the same window, when the reference has a closed-form profile.
    if traj.halt.is_none() && !traj.norms.is_empty() {
        if let (Some(r), Some(c)) = (&cfg.reference, constants) {
            if let Some(profile) = r.modulus_profile(c)? {
                let settings = cfg.quadrature.settings();
                let window = (grid.x_min(), grid.x_max());
                let mut worst: f64 = 0.0;
                for s in &traj.norms {
                    let analytic = lp_pth_power_on_interval(
                        s.p,
                        profile.amplitude,
                        profile.offset,
                        profile.eps_at(s.time),
                        window,
                        &settings,
                    )
                    .map_err(Failure::numerical)?
                    .powf(1.0 / s.p);
                    worst = worst.max((s.norm - analytic).abs() / analytic);
                }
                bundle.push(CheckRecord {
                    name: "tracked norms against quadrature of the exact modulus".into(),
                    inputs: json!({ "norm_track": cfg.norm_track, "samples": traj.norms.len() }),
                    computed: json!(worst),
                    reference: json!(0.0),
                    provenance: Provenance::DerivedOracle,
                    tolerance: cfg.tolerances.norm_agreement,
                    pass: worst <= cfg.tolerances.norm_agreement,
                });
            }
        }
    }

    let code = finalize(&bundle, out)?;
    Ok(if traj.halt.is_some() { EXIT_HALT } else { code })
}
