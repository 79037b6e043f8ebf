//! Lattice integration with a diagnostics time series.

use std::f64::consts::TAU;

use serde::Serialize;

use semiphoton::evolution::{continuity_residual, evolve, EvolutionConfig, FieldGrid1D, Stencil};
use semiphoton::plane_wave::{Branch, SpinIndex};
use semiphoton::DiracParams;

use super::{all_passed, failures, Check, Context};
use crate::args::{BranchArg, EvolveArgs, IndexArg, Init, StencilArg};
use crate::error::{CliError, Result};
use crate::output::{num, Metadata, Output, Table};

/// Amplitude of the second mode in `--init superposition`.
const SECOND_MODE_WEIGHT: f64 = 0.6;

#[derive(Debug, Clone, Serialize)]
pub struct EvolveSummary {
    pub n: usize,
    pub dy: f64,
    pub length: f64,
    pub dt: f64,
    pub steps: usize,
    pub courant: f64,
    pub mass: f64,
    pub init: String,
    pub mode: i64,
    pub branch: String,
    pub index: String,
    pub stencil: String,
    pub sample_every: usize,
    pub final_time: f64,
    pub initial_norm: f64,
    pub final_norm: f64,
    pub norm_drift: f64,
    pub initial_energy: f64,
    pub final_energy: f64,
    pub energy_drift: f64,
    /// largest sampled `|∂P/∂t + ∂S/∂y|`
    pub max_continuity_residual: f64,
    /// the same relative to `P_max c/dy`
    pub max_continuity_relative: f64,
    /// `max|ψ(T) − ψ(0)| / max|ψ(0)|`; the periodic-return error when `T` is a period
    pub return_distance: f64,
    /// `L/c`, one transit of the box
    pub transit_time: f64,
    pub checks: Vec<Check>,
}

fn relative_drift(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        (b - a).abs()
    } else {
        ((b - a) / a).abs()
    }
}

pub fn run(ctx: &Context, args: &EvolveArgs) -> Result<Output> {
    let s = &ctx.settings;
    let n = s.pick(args.n, "n", 256usize)?;
    let dy = s.pick(args.dy, "dy", TAU / n.max(1) as f64)?;
    let mass = s.pick(args.mass, "mass", 1.0)?;
    let init = s.pick(args.init, "init", Init::Eigenstate)?;
    // the single-mode translation test needs the phase-exact stencil
    let default_stencil = if init == Init::Fourier { Stencil::Spectral } else { Stencil::Central4 };
    let stencil = s.pick(args.stencil, "stencil", StencilArg(default_stencil))?;
    let params = DiracParams::natural().with_mass(mass);
    let dt = s.pick(args.dt, "dt", 0.5 * dy / params.c)?;
    let steps = s.pick(args.steps, "steps", 1000usize)?;
    let mode = s.pick(args.mode, "mode", 1i64)?;
    let branch = s.pick(args.branch, "branch", BranchArg(Branch::Positive))?;
    let index = s.pick(args.index, "index", IndexArg(SpinIndex::One))?;
    let sample_every = s.pick(args.sample_every, "sample-every", 1usize)?;
    if !(dy > 0.0 && dy.is_finite()) || !(mass >= 0.0 && mass.is_finite()) || sample_every == 0 {
        return Err(CliError::usage("evolve needs dy > 0, mass >= 0 and sample-every >= 1"));
    }
    let length = dy * n as f64;

    let eigen = |mode, branch, index| {
        FieldGrid1D::plane_wave_eigenstate(n, length, mode, branch, index, params, stencil.0).map(|(g, _)| g)
    };
    let grid = match init {
        Init::Eigenstate => eigen(mode, branch.0, index.0)?,
        Init::Fourier => FieldGrid1D::right_moving_mode(n, length, mode, params)?,
        Init::Superposition => {
            let a = eigen(mode, branch.0, index.0)?;
            let b = eigen(mode + 1, Branch::Negative, SpinIndex::Two)?;
            let psi = a.psi.iter().zip(&b.psi).map(|(x, y)| *x + y.scale_real(SECOND_MODE_WEIGHT)).collect();
            FieldGrid1D { psi, ..a }
        }
    };

    let cfg = EvolutionConfig::new(dt, steps).with_stencil(stencil.0);
    // refuse before doing any work
    cfg.check_cfl(&grid)?;

    let mut series = Table::new(&["step", "time", "total_norm", "total_U", "continuity_residual"]);
    let mut max_res: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    let mut failure = None;
    let end = evolve(&grid, &cfg, |step, before, after| {
        if step % sample_every != 0 && step != steps {
            return;
        }
        match continuity_residual(before, after, stencil.0) {
            Ok(c) => {
                max_res = max_res.max(c.residual);
                max_rel = max_rel.max(c.relative());
                series.push(vec![
                    step.to_string(),
                    num(after.time),
                    num(after.total_norm()),
                    num(after.total_energy()),
                    num(c.residual),
                ]);
            }
            Err(e) => failure = Some(e),
        }
    })?;
    if let Some(e) = failure {
        return Err(e.into());
    }

    let t = &ctx.thresholds;
    let norm_drift = relative_drift(grid.total_norm(), end.total_norm());
    let energy_drift = relative_drift(grid.total_energy(), end.total_energy());
    let return_distance = end.max_distance(&grid) / grid.max_abs();
    let transit_time = length / params.c;
    let mut checks = vec![
        Check::below("norm_drift", norm_drift, t.norm_drift),
        Check::below("energy_drift", energy_drift, t.energy_drift),
    ];
    // a massless single mode must come back after a whole number of transits
    let transits = end.time / transit_time;
    if init == Init::Fourier && mass == 0.0 && transits.round() >= 1.0 && (transits - transits.round()).abs() < 1e-9 {
        checks.push(Check::below("periodic_return", return_distance, t.periodic_return));
    }
    let summary = EvolveSummary {
        n,
        dy,
        length,
        dt,
        steps,
        courant: params.c * dt / dy,
        mass,
        init: init.to_string(),
        mode,
        branch: branch.to_string(),
        index: index.to_string(),
        stencil: stencil.to_string(),
        sample_every,
        final_time: end.time,
        initial_norm: grid.total_norm(),
        final_norm: end.total_norm(),
        norm_drift,
        initial_energy: grid.total_energy(),
        final_energy: end.total_energy(),
        energy_drift,
        max_continuity_residual: max_res,
        max_continuity_relative: max_rel,
        return_distance,
        transit_time,
        checks,
    };

    let passed = all_passed(&summary.checks);
    let meta = Metadata::new("evolve", None, ctx.thresholds);
    let table = Table::key_value(&serde_json::to_value(&summary).expect("summary serializes"));
    let mut out = Output::new(meta, passed, &summary, table);
    out.failures = failures(&summary.checks);
    out.artifacts.push(("evolve.csv".into(), series.to_csv()));
    out.csv = Some(series);
    Ok(out)
}
