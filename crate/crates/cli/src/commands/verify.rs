//! Every identity suite over one seeded generator.

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use semiphoton::nonlinear::{em_identity_check, fierz_check, squaring_defect};
use semiphoton::plane_wave::{build_spinor, specialize_all, system_residual, system_scale, FAMILIES};
use semiphoton::spinor::{
    bilinear, bilinear_vs_field_check, build_alpha_set, from_bispinor, to_bispinor, Bispinor, Complex4x4,
    EMFieldPoint, MatrixSet,
};
use semiphoton::DiracParams;

use super::{status, Context};
use crate::args::{Fault, VerifyArgs};
use crate::error::Result;
use crate::output::{num, Metadata, Output, Table};

pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Serialize)]
pub struct IdentityResult {
    pub identity: &'static str,
    pub samples: usize,
    pub max_residual: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub samples: usize,
    pub fault: Option<String>,
    pub identities: Vec<IdentityResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.passed)
    }
}

fn corrupt(set: &MatrixSet, fault: Fault) -> MatrixSet {
    match fault {
        Fault::BetaIdentity => set.with_replaced(4, Complex4x4::identity()),
        Fault::AlphaYScaled => set.with_replaced(2, set.spatial(1) * Complex64::from(2.0)),
    }
}

fn random_transverse(rng: &mut ChaCha8Rng) -> EMFieldPoint {
    let mut v = || rng.random_range(-10.0..10.0);
    EMFieldPoint::real([v(), 0.0, v()], [v(), 0.0, v()])
}

fn random_bispinor(rng: &mut ChaCha8Rng) -> Bispinor {
    let mut z = || Complex64::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
    Bispinor::new(z(), z(), z(), z())
}

fn random_vector(rng: &mut ChaCha8Rng, r: f64) -> Vector3<f64> {
    Vector3::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r))
}

fn random_momentum(rng: &mut ChaCha8Rng, max: f64) -> Vector3<f64> {
    loop {
        let p = random_vector(rng, max);
        if p.norm() <= max {
            return p;
        }
    }
}

fn max_over(n: usize, f: impl FnMut(usize) -> f64) -> f64 {
    (0..n).map(f).fold(0.0, f64::max)
}

pub fn suites(samples: usize, seed: u64, fault: Option<Fault>, t: &semiphoton::thresholds::Thresholds) -> VerifyReport {
    let clean = build_alpha_set();
    let set = fault.map_or_else(|| clean.clone(), |f| corrupt(&clean, f));
    let params = DiracParams::natural();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut record = |identity, samples, max_residual: f64, threshold: f64| {
        let passed = max_residual < threshold || (threshold == 0.0 && max_residual == 0.0);
        out.push(IdentityResult { identity, samples, max_residual, threshold, passed });
    };

    record("anticommutation", 16, set.anticommutation_defect(), t.anticommutation);
    record("pseudoscalar_product", 1, set.pseudoscalar_defect(), t.anticommutation);
    record("hermiticity", 6, set.hermiticity_defect(), t.anticommutation);

    let fields: Vec<EMFieldPoint> = (0..samples).map(|_| random_transverse(&mut rng)).collect();
    let worst = max_over(samples, |i| bilinear_vs_field_check(&set, &fields[i]).expect("transverse").max_relative());
    record("bilinear_correspondence", samples, worst, t.bilinear_relative);
    let worst = max_over(samples, |i| {
        let back = from_bispinor(&to_bispinor(&fields[i]).expect("transverse"));
        (back.e - fields[i].e).norm().max((back.h - fields[i].h).norm())
    });
    record("field_round_trip", samples, worst, 0.0);

    let worst = max_over(samples, |_| {
        let psi = random_bispinor(&mut rng);
        let scale = psi.norm_sqr();
        (0..6).map(|mu| bilinear(&psi, set.alpha(mu)).im.abs() / scale).fold(0.0, f64::max)
    });
    record("bilinear_reality", samples, worst, t.anticommutation);

    let worst = max_over(samples, |_| fierz_check(&random_bispinor(&mut rng)).relative());
    record("fierz", samples, worst, t.fierz_relative);
    let worst = max_over(samples, |_| {
        let (e, h) = (random_vector(&mut rng, 10.0), random_vector(&mut rng, 10.0));
        em_identity_check(&e, &h).relative()
    });
    record("em_identity", samples, worst, t.em_identity_relative);

    let momenta: Vec<Vector3<f64>> = (0..samples).map(|_| random_momentum(&mut rng, 10.0)).collect();
    let worst = max_over(samples, |i| {
        let scale = 1.0 + momenta[i].norm_squared();
        squaring_defect(&momenta[i], &params) / scale
    });
    record("hamiltonian_squaring", samples, worst, t.system_relative);

    let mut system: f64 = 0.0;
    let mut dispersion: f64 = 0.0;
    for p in &momenta {
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        for (branch, index) in FAMILIES {
            let sol = build_spinor(p, &params, branch, index, phase);
            system = system.max(system_residual(&sol, &params) / system_scale(&sol, &params));
            dispersion = dispersion.max(sol.dispersion_defect(&params).abs());
        }
    }
    record("plane_wave_system", 4 * samples, system, t.system_relative);
    record("dispersion", 4 * samples, dispersion, t.dispersion_relative);

    let specials = specialize_all(&params);
    let pattern = specials.iter().map(|s| s.phase_matched_deviation).fold(0.0, f64::max);
    record("specialized_pattern", 4, pattern, t.pattern_deviation);
    let sparse = specials.iter().filter(|s| !s.sparsity_exact).count() as f64;
    record("specialized_sparsity", 4, sparse, 0.0);

    VerifyReport {
        samples,
        fault: fault.map(|f| f.to_string()),
        identities: out,
    }
}

pub fn table(r: &VerifyReport) -> Table {
    let mut t = Table::new(&["identity", "samples", "max_residual", "threshold", "status"]);
    for i in &r.identities {
        t.push(vec![
            i.identity.to_string(),
            i.samples.to_string(),
            num(i.max_residual),
            num(i.threshold),
            status(i.passed).to_string(),
        ]);
    }
    t
}

pub fn run(ctx: &Context, args: &VerifyArgs) -> Result<Output> {
    let samples = ctx.settings.pick(args.samples, "samples", DEFAULT_SAMPLES)?;
    if samples == 0 {
        return Err(crate::error::CliError::usage("--samples must be at least 1"));
    }
    let report = suites(samples, ctx.seed, args.inject_fault, &ctx.thresholds);
    let passed = report.passed();
    let mut out = Output::new(Metadata::new("verify", Some(ctx.seed), ctx.thresholds), passed, &report, table(&report));
    out.failures = report
        .identities
        .iter()
        .filter(|i| !i.passed)
        .map(|i| format!("{}: max residual {} >= threshold {}", i.identity, num(i.max_residual), num(i.threshold)))
        .collect();
    Ok(out)
}
