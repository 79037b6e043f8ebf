//! Self-consistent nonlinear plane wave, damped iteration, Lagrangian report.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::Serialize;

use semiphoton::nonlinear::{
    coefficient_audit, iterate_self_consistent, lagrangian_nonlinear, nonlinear_residual, self_consistent_amplitude,
    self_consistent_plane_wave, CoefficientAudit, LagrangianReport, LocalState, NonlinearConfig, NonlinearResidual,
    SelfEnergy,
};
use semiphoton::plane_wave::SpinIndex;
use semiphoton::DiracParams;

use super::{all_passed, components, failures, Check, ComplexValue, Context};
use crate::args::{IndexArg, NonlinearArgs};
use crate::error::{CliError, Result};
use crate::output::{num, Metadata, Output, Table};

#[derive(Debug, Clone, Serialize)]
pub struct IterationSummary {
    pub perturb: f64,
    pub converged: bool,
    pub iterations: usize,
    pub final_change: Option<f64>,
    pub self_energy: SelfEnergy,
    pub spinor: [ComplexValue; 4],
    /// nonlinear residual of the plane wave carried by the final spinor
    pub final_state_relative: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NonlinearReport {
    pub momentum: [f64; 3],
    pub index: String,
    pub mass: f64,
    pub config: NonlinearConfig,
    pub amplitude: f64,
    pub spinor: [ComplexValue; 4],
    pub residual: NonlinearResidual,
    pub relative_residual: f64,
    pub coefficient_audit: CoefficientAudit,
    pub iteration: IterationSummary,
    pub lagrangian: LagrangianReport,
    pub lagrangian_form_relative: f64,
    pub checks: Vec<Check>,
}

pub fn run(ctx: &Context, args: &NonlinearArgs) -> Result<Output> {
    let s = &ctx.settings;
    let p = Vector3::new(s.pick(args.px, "px", 0.0)?, s.pick(args.py, "py", 0.5)?, s.pick(args.pz, "pz", 0.0)?);
    let index = s.pick(args.index, "index", IndexArg(SpinIndex::One))?;
    let mass = s.pick(args.mass, "mass", 1.0)?;
    let perturb = s.pick(args.perturb, "perturb", 0.1)?;
    if !(mass > 0.0 && mass.is_finite()) || !(perturb > -1.0 && perturb.is_finite()) {
        return Err(CliError::usage("nonlinear needs mass > 0 and perturb > -1"));
    }
    let params = DiracParams::natural().with_mass(mass);
    let base = NonlinearConfig::for_params(&params);
    let cfg = NonlinearConfig {
        damping: s.pick(args.damping, "damping", base.damping)?,
        max_iters: s.pick(args.max_iters, "max-iters", base.max_iters)?,
        tol: s.pick(args.tol, "tol", base.tol)?,
        ..base
    };
    cfg.validate()?;
    let t = &ctx.thresholds;

    let state = self_consistent_plane_wave(&p, index.0, &cfg, &params)?;
    let residual = nonlinear_residual(&state, &cfg, &params);
    let lagrangian = lagrangian_nonlinear(&state, &cfg, &params);
    let form_scale = cfg.delta_tau / (8.0 * PI) * state.psi.norm_sqr().powi(2);
    let lagrangian_form_relative = lagrangian.form_mismatch() / form_scale;

    let outcome = iterate_self_consistent(&state.psi.scale_real(1.0 + perturb), &cfg, &params)?;
    let se = outcome.self_energy;
    let final_state = LocalState::plane_wave(outcome.psi, se.eps_s, &se.momentum(), params.hbar);
    let iteration = IterationSummary {
        perturb,
        converged: outcome.converged,
        iterations: outcome.iterations(),
        final_change: outcome.trace.last().map(|e| e.residual),
        self_energy: se,
        spinor: components(&outcome.psi),
        final_state_relative: nonlinear_residual(&final_state, &cfg, &params).relative(),
    };

    let checks = vec![
        Check::below("self_consistent_relative", residual.relative(), t.nonlinear_relative),
        Check::flag("iteration_converged", outcome.converged),
        Check::at_most("iteration_count", outcome.iterations() as f64, t.self_consistent_max_iters as f64),
        Check::below("lagrangian_form_relative", lagrangian_form_relative, t.fierz_form_equivalence),
    ];

    let mut trace = Table::new(&["iteration", "eps_s", "p_s_norm", "residual"]);
    for e in &outcome.trace {
        trace.push(vec![e.iteration.to_string(), num(e.eps_s), num(e.p_s_norm), num(e.residual)]);
    }

    let report = NonlinearReport {
        momentum: [p.x, p.y, p.z],
        index: index.to_string(),
        mass,
        config: cfg,
        amplitude: self_consistent_amplitude(&p, &cfg, &params),
        spinor: components(&state.psi),
        relative_residual: residual.relative(),
        residual,
        coefficient_audit: coefficient_audit(&cfg, &params),
        iteration,
        lagrangian,
        lagrangian_form_relative,
        checks,
    };
    let passed = all_passed(&report.checks);
    let meta = Metadata::new("nonlinear", None, ctx.thresholds);
    let table = Table::key_value(&serde_json::to_value(&report).expect("report serializes"));
    let mut out = Output::new(meta, passed, &report, table);
    out.failures = failures(&report.checks);
    out.artifacts.push(("nonlinear_trace.csv".into(), trace.to_csv()));
    out.csv = Some(trace);
    Ok(out)
}
