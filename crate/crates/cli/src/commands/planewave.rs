//! One plane-wave solution and, on request, the `p_y = mc` substitution.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use serde::Serialize;

use semiphoton::plane_wave::{build_spinor, specialize_y, system_residual, system_scale, Branch, SpinIndex};
use semiphoton::DiracParams;

use super::{all_passed, components, display_spinor, failures, Check, ComplexValue, Context};
use crate::args::{BranchArg, IndexArg, PlaneWaveArgs};
use crate::error::{CliError, Result};
use crate::output::{Metadata, Output, Table};

#[derive(Debug, Clone, Serialize)]
pub struct SpecializationReport {
    pub phi: f64,
    pub literal_energy: f64,
    pub dispersion_energy: f64,
    pub dispersion_violation: f64,
    pub spinor: [ComplexValue; 4],
    pub spinor_display: String,
    pub pattern: [ComplexValue; 4],
    pub pattern_display: String,
    pub phase_matched_deviation: f64,
    pub zero_components: [usize; 2],
    pub sparsity_exact: bool,
    pub e_to_h_ratio: f64,
    pub e_real_h_imaginary: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneWaveReport {
    pub momentum: [f64; 3],
    pub mass: f64,
    pub branch: String,
    pub index: String,
    pub phi: f64,
    pub energy: f64,
    pub spinor: [ComplexValue; 4],
    pub spinor_display: String,
    pub system_residual: f64,
    pub system_scale: f64,
    pub dispersion_defect: f64,
    pub specialization: Option<SpecializationReport>,
    pub checks: Vec<Check>,
}

pub fn run(ctx: &Context, args: &PlaneWaveArgs) -> Result<Output> {
    let s = &ctx.settings;
    let p = Vector3::new(s.pick(args.px, "px", 0.0)?, s.pick(args.py, "py", 0.0)?, s.pick(args.pz, "pz", 0.0)?);
    let branch = s.pick(args.branch, "branch", BranchArg(Branch::Positive))?;
    let index = s.pick(args.index, "index", IndexArg(SpinIndex::One))?;
    let phi = s.pick_opt(args.phi, "phi")?;
    let mass = s.pick(args.mass, "mass", 1.0)?;
    let specialize = args.specialize || s.pick(None, "specialize", false)?;
    if !(mass > 0.0 && mass.is_finite()) || !p.iter().all(|x| x.is_finite()) {
        return Err(CliError::usage("planewave needs a positive finite --mass and finite momentum"));
    }
    let params = DiracParams::natural().with_mass(mass);
    let t = &ctx.thresholds;

    let sol = build_spinor(&p, &params, branch.0, index.0, phi.unwrap_or(0.0));
    let residual = system_residual(&sol, &params);
    let scale = system_scale(&sol, &params);
    let mut checks = vec![
        Check::below("system_relative", residual / scale, t.system_relative),
        Check::below("dispersion_relative", sol.dispersion_defect(&params).abs(), t.dispersion_relative),
    ];

    let on_axis = p == Vector3::new(0.0, params.mass * params.c, 0.0);
    let specialization = (specialize || on_axis).then(|| {
        let phi = phi.unwrap_or(FRAC_PI_2);
        let sp = specialize_y(&params, branch.0, index.0, phi);
        checks.push(Check::below("pattern_deviation", sp.phase_matched_deviation, t.pattern_deviation));
        checks.push(Check::flag("pattern_sparsity", sp.sparsity_exact));
        let spinor = components(&sp.spinor);
        let pattern = components(&sp.published);
        SpecializationReport {
            phi,
            literal_energy: sp.literal_energy,
            dispersion_energy: sp.dispersion_energy,
            dispersion_violation: sp.dispersion_violation,
            spinor_display: display_spinor(&spinor),
            spinor,
            pattern_display: display_spinor(&pattern),
            pattern,
            phase_matched_deviation: sp.phase_matched_deviation,
            zero_components: sp.zero_components.map(|j| j + 1),
            sparsity_exact: sp.sparsity_exact,
            e_to_h_ratio: sp.e_to_h_ratio,
            e_real_h_imaginary: sp.e_real_h_imaginary,
        }
    });

    let spinor = components(&sol.spinor());
    let report = PlaneWaveReport {
        momentum: [p.x, p.y, p.z],
        mass,
        branch: branch.to_string(),
        index: index.to_string(),
        phi: sol.phase,
        energy: sol.energy,
        spinor_display: display_spinor(&spinor),
        spinor,
        system_residual: residual,
        system_scale: scale,
        dispersion_defect: sol.dispersion_defect(&params),
        specialization,
        checks,
    };
    let passed = all_passed(&report.checks);
    let meta = Metadata::new("planewave", None, ctx.thresholds);
    let table = Table::key_value(&serde_json::to_value(&report).expect("report serializes"));
    let mut out = Output::new(meta, passed, &report, table);
    out.failures = failures(&report.checks);
    Ok(out)
}
