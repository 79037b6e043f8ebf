//! Torus-model constants with a provenance note per value.

use std::f64::consts::PI;

use serde::Serialize;

use semiphoton::symbolic::Monomial;
use semiphoton::torus::{closed_form_chain, coupling_constant, magnetic_moment, model_report, photon_parameters, spin_chain};
use semiphoton::PhysicalConstants;

use super::{all_passed, failures, status, Check, Context};
use crate::args::{TorusArgs, Units};
use crate::error::{CliError, Result};
use crate::output::{num, Metadata, Output, Table};

pub const DEFAULT_QUAD_NODES: usize = 1024;

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub quantity: &'static str,
    pub value: f64,
    pub unit: &'static str,
    pub symbolic: Option<String>,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorusReport {
    pub units: String,
    pub quad_nodes: usize,
    pub constants: PhysicalConstants,
    pub entries: Vec<Entry>,
    pub checks: Vec<Check>,
}

/// Six decimals in the comfortable range, six significant digits elsewhere.
pub fn approx(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-3..1e6).contains(&a) {
        format!("{x:.6}")
    } else {
        format!("{x:.6e}")
    }
}

pub fn run(ctx: &Context, args: &TorusArgs) -> Result<Output> {
    let s = &ctx.settings;
    let units = s.pick(args.units, "units", Units::Cgs)?;
    let quad_nodes = s.pick(args.quad_nodes, "quad-nodes", DEFAULT_QUAD_NODES)?;
    let base = match units {
        Units::Natural => PhysicalConstants::natural(),
        Units::Cgs => PhysicalConstants::codata2018(),
    };
    // constants are config-only overrides
    let k = PhysicalConstants {
        hbar: s.pick(None, "hbar", base.hbar)?,
        c: s.pick(None, "c", base.c)?,
        m_e: s.pick(None, "m_e", base.m_e)?,
        e: s.pick(None, "e", base.e)?,
    };
    if !k.is_valid() {
        return Err(CliError::usage("constants hbar, c, m_e and e must be positive and finite"));
    }
    let u = |cgs: &'static str| if units == Units::Cgs { cgs } else { "natural" };
    let t = &ctx.thresholds;

    let rep = model_report(&k, quad_nodes).map_err(|e| CliError::usage(e.to_string()))?;
    let chain = closed_form_chain();
    let coupling = coupling_constant(&k);
    let spin = spin_chain(&k);
    let mu = magnetic_moment(&k, rep.q)?;
    let model = photon_parameters(&k).with_amplitude(rep.e_o);
    let sym = |m: &Monomial| Some(m.to_string());

    let mut entries = Vec::new();
    let mut e = |quantity, value, unit, symbolic, note| entries.push(Entry { quantity, value, unit, symbolic, note });
    e("r_p", rep.r_p, u("cm"), Some("ħ/2m_ec".into()), "photon ring radius, half the reduced Compton wavelength");
    e("lambda_p", rep.lambda_p, u("cm"), Some("2π r_p".into()), "circular-photon wavelength");
    e("omega_p", rep.omega_p, u("s^-1"), Some("c/r_p".into()), "rotation frequency");
    e("s_tr", model.s_tr, u("cm^2"), Some("π r_p²".into()), "tube cross-section");
    e("delta_tau_p", model.delta_tau_p, u("cm^3"), Some("2π² r_p³".into()), "torus volume");
    e("r_s", spin.r_s_value, u("cm"), sym(&spin.r_s), "semi-photon radius σ_s/m_ec; equals r_p");
    e("omega_s", spin.omega_s, u("s^-1"), sym(&chain.omega_s), "semi-photon frequency; equals ω_p");
    e("e_o", rep.e_o, u("statV/cm"), Some(format!("√({})", chain.e_o_squared)), "amplitude fixed by m_s = m_e");
    e("q", rep.q, u("statC"), sym(&chain.q), "half-wave charge E_o r_s²");
    e("q_squared", rep.q * rep.q, u("statC^2"), sym(&chain.q_squared), "q² at that amplitude");
    e("full_wave_charge", rep.full_wave_charge, u("statC"), None, "full-wave quadrature; vanishes");
    e("half_wave.closed_form", rep.half_wave.closed_form, u("statC"), Some("(1/π)E_oS_s".into()), "closed form used in the chain");
    e("half_wave.printed_integral", rep.half_wave.printed_integral, u("statC"), None, "quadrature of the integral as printed");
    e("half_wave.printed_to_closed", rep.half_wave.printed_to_closed, "1", None, "stray factor of the printed integral");
    e("half_wave.half_period_density_charge", rep.half_wave.half_period_density_charge, u("statC"), None, "one current direction, crest-centred half period");
    e("m_s", rep.m_s, u("g"), sym(&chain.m_s), "semi-photon mass, second printed form; equals m_e");
    e("mass.first_form_printed", rep.mass.first_form_printed, u("g"), Some("E_oS_s/(4ω_sc)".into()), "first printed form, amplitude unsquared");
    e("mass.printed_prefactor_quadrature", rep.mass.printed_prefactor_quadrature, u("g"), None, "printed prefactor over a quarter wave");
    e("mass.density_quadrature", rep.mass.density_quadrature, u("g"), None, "energy-density integral over a quarter wave");
    e("mass.prefactor_discrepancy", rep.mass.prefactor_discrepancy, "1", None, "printed prefactor / density form");
    e("mass.half_wave_quadrature", rep.mass.half_wave_quadrature, u("g"), None, "printed prefactor over a half wave");
    e("sigma_p", spin.sigma_p_value, u("erg s"), sym(&spin.sigma_p), "photon spin p_p r_p");
    e("sigma_s", rep.sigma_s, u("erg s"), sym(&spin.sigma_s), "semi-photon spin after division");
    e("mu_s", rep.mu_s, u("statC cm^2 s^-1"), sym(&mu.mu_s_symbolic), "moment as printed, I·S_I");
    e("mu_s_gaussian", rep.mu_s_gaussian, u("erg/G"), None, "Gaussian moment I·S_I/c");
    e("bohr_magneton", mu.bohr_magneton, u("erg/G"), None, "eħ/2m_ec");
    e("bohr_ratio", rep.bohr_ratio, "1", sym(&mu.bohr_ratio_symbolic), "Gaussian moment / (qħ/2m_ec)");
    e("alpha_q", rep.alpha_q, "1", sym(&coupling.alpha_q_symbolic), "q²/ħc from the closed-form chain");
    e("alpha", rep.alpha, "1", None, "measured fine-structure constant");
    e("alpha_q_over_alpha", rep.alpha_q_over_alpha, "1", None, "unscreened / measured coupling");

    let exact_half = Monomial::rational(1, 2);
    let checks = vec![
        Check::below("alpha_q_absolute", (rep.alpha_q - 2.0 / PI).abs(), t.alpha_q_absolute),
        Check::below(
            "full_wave_charge_relative",
            rep.full_wave_charge.abs() / (rep.e_o * model.s_tr),
            t.full_wave_charge_relative,
        ),
        Check::flag("sigma_s_exact", spin.sigma_s == exact_half.clone().with(semiphoton::symbolic::Symbol::Hbar, 1)),
        Check::flag("r_s_equals_r_p", spin.radius_unchanged),
        Check::flag("division_conserves_spin", spin.division_conserves_spin),
        Check::flag("bohr_ratio_half", mu.bohr_ratio_symbolic == exact_half),
    ];

    let mut table = Table::new(&["quantity", "value", "approx", "unit", "symbolic", "note"]);
    for en in &entries {
        table.push(vec![
            en.quantity.to_string(),
            num(en.value),
            approx(en.value),
            en.unit.to_string(),
            en.symbolic.clone().unwrap_or_default(),
            en.note.to_string(),
        ]);
    }
    for c in &checks {
        table.push(vec![
            format!("check.{}", c.name),
            num(c.value),
            String::new(),
            String::new(),
            if c.threshold == 0.0 { "exact".to_string() } else { format!("< {}", num(c.threshold)) },
            status(c.passed).to_string(),
        ]);
    }

    let report = TorusReport {
        units: units.to_string(),
        quad_nodes,
        constants: k,
        entries,
        checks,
    };
    let passed = all_passed(&report.checks);
    let mut out = Output::new(Metadata::new("torus", None, ctx.thresholds), passed, &report, table);
    out.failures = failures(&report.checks);
    Ok(out)
}
