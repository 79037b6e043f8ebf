//! Electron as a circularly wound photon half-period.
//!
//! A photon of energy `2mc²` wound on a torus of ring radius
//! `r_p = ħ/2mc` (tube radius equal to ring radius) acquires a tangential
//! displacement current; one half-period of it carries a net charge. The
//! closed-form chain below reproduces charge, mass, spin, magnetic moment and
//! the coupling `q²/ħc = 2/π` from the constants alone.
//!
//! Where the printed formulas disagree with one another, both readings are
//! computed and the ratio is reported rather than one being chosen silently.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::Serialize;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::quadrature::simpson;
use crate::symbolic::{Monomial, Symbol};

pub const MIN_QUADRATURE_NODES: usize = 64;

/// Geometry and wave parameters of the circular photon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusModel {
    pub r_p: f64,
    pub lambda_p: f64,
    pub omega_p: f64,
    pub c: f64,
    /// wave amplitude; unset until a charge or mass is asked for
    pub e_o: Option<f64>,
    /// cross-section `π r_p²`
    pub s_tr: f64,
    /// volume `2π² r_p³`
    pub delta_tau_p: f64,
}

impl TorusModel {
    /// Torus of ring radius `r` traversed at speed `c`.
    pub fn with_radius(r: f64, c: f64) -> Self {
        Self {
            r_p: r,
            lambda_p: 2.0 * PI * r,
            omega_p: c / r,
            c,
            e_o: None,
            s_tr: PI * r * r,
            delta_tau_p: 2.0 * PI * PI * r.powi(3),
        }
    }

    pub fn with_amplitude(self, e_o: f64) -> Self {
        Self { e_o: Some(e_o), ..self }
    }

    pub fn wave_number(&self) -> f64 {
        self.omega_p / self.c
    }

    fn amplitude(&self) -> Result<f64> {
        self.e_o.ok_or_else(|| Error::invalid("e_o", "amplitude not set"))
    }

    /// `|ω_p r_p − c| / c`
    pub fn rotation_defect(&self) -> f64 {
        (self.omega_p * self.r_p - self.c).abs() / self.c
    }

    /// `|r_p − λ_p/2π| / r_p`
    pub fn wavelength_defect(&self) -> f64 {
        (self.r_p - self.lambda_p / (2.0 * PI)).abs() / self.r_p
    }
}

/// `ε_p = 2mc²`: `ω_p = 2mc²/ħ`, `λ_p = πħ/mc`, `r_p = ħ/2mc`.
pub fn photon_parameters(k: &PhysicalConstants) -> TorusModel {
    TorusModel::with_radius(k.hbar / (2.0 * k.m_e * k.c), k.c)
}

/// Displacement current `(1/4π)∂E/∂t` of a wave whose field `E⃗ = −E n̂`
/// is carried round the ring, with `n̂` the inward normal and `τ̂` the
/// direction of travel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisplacementCurrent {
    /// `(1/4π) ∂E/∂t`
    pub j_n: f64,
    /// `(ω_p/4π) E`
    pub j_tau: f64,
    /// `j_n + i j_τ`
    pub complex_form: Complex64,
    pub normal: [f64; 3],
    pub tangent: [f64; 3],
    /// `−j_n n̂ + j_τ τ̂`, the full current vector
    pub vector: [f64; 3],
}

/// Frame at ring angle `theta` (ring in the `x'y'` plane, travel
/// anticlockwise): `n̂ = −(cos θ, sin θ, 0)`, `τ̂ = (−sin θ, cos θ, 0)`.
pub fn ring_frame(theta: f64) -> (Vector3<f64>, Vector3<f64>) {
    let (s, c) = theta.sin_cos();
    (Vector3::new(-c, -s, 0.0), Vector3::new(-s, c, 0.0))
}

pub fn displacement_current(e_amp: f64, omega_p: f64, de_dt: f64, theta: f64) -> Result<DisplacementCurrent> {
    if !(omega_p >= 0.0) {
        return Err(Error::invalid("omega_p", format!("must be non-negative, got {omega_p}")));
    }
    let (n, tau) = ring_frame(theta);
    let j_n = de_dt / (4.0 * PI);
    let j_tau = omega_p * e_amp / (4.0 * PI);
    let v = n * (-j_n) + tau * j_tau;
    Ok(DisplacementCurrent {
        j_n,
        j_tau,
        complex_form: Complex64::new(j_n, j_tau),
        normal: n.into(),
        tangent: tau.into(),
        vector: v.into(),
    })
}

/// Relative mismatch between [`displacement_current`] and a central
/// difference of `E⃗(t) = −E(t) n̂(ω t)` with `E(t) = E_o cos(ωt)`.
pub fn displacement_current_fd_check(e_o: f64, omega: f64, t: f64, h: f64) -> Result<f64> {
    let field = |t: f64| ring_frame(omega * t).0 * (-e_o * (omega * t).cos());
    let fd = (field(t + h) - field(t - h)) / (2.0 * h) / (4.0 * PI);
    let e = e_o * (omega * t).cos();
    let de = -e_o * omega * (omega * t).sin();
    let d = displacement_current(e, omega, de, omega * t)?;
    let v = Vector3::from(d.vector);
    let scale = v.norm().max(e_o.abs() * omega / (4.0 * PI));
    Ok((fd - v).norm() / scale)
}

fn check_nodes(n_quad: usize) -> Result<()> {
    if n_quad < MIN_QUADRATURE_NODES {
        return Err(Error::InsufficientSampling {
            min: MIN_QUADRATURE_NODES,
            got: n_quad,
        });
    }
    Ok(())
}

/// `(1/4π)(ω_p/c) E_o S_tr ∫_a^b cos(k_p l) dl` by Simpson's rule.
pub fn wave_charge(model: &TorusModel, a: f64, b: f64, n_quad: usize) -> Result<f64> {
    check_nodes(n_quad)?;
    let e_o = model.amplitude()?;
    let k = model.wave_number();
    let pre = model.omega_p / model.c * e_o * model.s_tr / (4.0 * PI);
    Ok(pre * simpson(|l| (k * l).cos(), a, b, n_quad + n_quad % 2)?)
}

/// Charge of a full wavelength; zero because the ring current reverses
/// every half-period.
pub fn full_wave_charge(model: &TorusModel, n_quad: usize) -> Result<f64> {
    wave_charge(model, 0.0, model.lambda_p, n_quad)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HalfWaveCharge {
    /// `(1/π) E_o S_s`
    pub closed_form: f64,
    /// `E_o r_s²`
    pub reduced: f64,
    /// quadrature of `(1/π)(ω_s/c) E_o S_s · 2∫₀^{λ/4} cos(k l) dl` as printed
    pub printed_integral: f64,
    /// its exact value, `(2/π) E_o S_s`
    pub printed_integral_exact: f64,
    /// `|printed_integral − printed_integral_exact| / exact`
    pub quadrature_error: f64,
    /// `printed_integral / closed_form`; 2, the stray factor in the printed integral
    pub printed_to_closed: f64,
    /// same-direction half-period `∫_{−λ/4}^{λ/4}` with the ring density `(1/4π)(ω/c)E`
    pub half_period_density_charge: f64,
}

pub fn half_wave_charge(model: &TorusModel, n_quad: usize) -> Result<HalfWaveCharge> {
    check_nodes(n_quad)?;
    let e_o = model.amplitude()?;
    let k = model.wave_number();
    let s = model.s_tr;
    let quarter = model.lambda_p / 4.0;
    let closed_form = e_o * s / PI;
    let printed_integral =
        model.omega_p / model.c * e_o * s / PI * 2.0 * simpson(|l| (k * l).cos(), 0.0, quarter, n_quad + n_quad % 2)?;
    let exact = 2.0 * e_o * s / PI;
    Ok(HalfWaveCharge {
        closed_form,
        reduced: e_o * model.r_p * model.r_p,
        printed_integral,
        printed_integral_exact: exact,
        quadrature_error: if exact == 0.0 {
            printed_integral.abs()
        } else {
            (printed_integral - exact).abs() / exact.abs()
        },
        printed_to_closed: if closed_form == 0.0 { f64::NAN } else { printed_integral / closed_form },
        half_period_density_charge: wave_charge(model, -quarter, quarter, n_quad)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemiPhotonMass {
    /// `π E_o² r_s² / (4 ω_s c)`
    pub closed_form: f64,
    /// `E_o S_s / (4 ω_s c)`, the amplitude-unsquared first form as printed
    pub first_form_printed: f64,
    /// `(S_s E_o²/πc²) ∫₀^{λ/4} cos²(k l) dl` by quadrature
    pub printed_prefactor_quadrature: f64,
    /// `S_s ∫₀^{λ/4} E_o² cos²(k l)/(4πc²) dl`, the density-consistent integral
    pub density_quadrature: f64,
    /// `printed_prefactor_quadrature / density_quadrature`; 4
    pub prefactor_discrepancy: f64,
    /// printed prefactor over the half-wave `[0, λ/2]`
    pub half_wave_quadrature: f64,
}

pub fn semi_photon_mass(model: &TorusModel, n_quad: usize) -> Result<SemiPhotonMass> {
    check_nodes(n_quad)?;
    let e_o = model.amplitude()?;
    let (r, c, w, s) = (model.r_p, model.c, model.omega_p, model.s_tr);
    let k = model.wave_number();
    let n = n_quad + n_quad % 2;
    let cos2 = |l: f64| (k * l).cos().powi(2);
    let quarter = simpson(cos2, 0.0, model.lambda_p / 4.0, n)?;
    let half = simpson(cos2, 0.0, model.lambda_p / 2.0, n)?;
    let printed = s * e_o * e_o / (PI * c * c);
    let density = s * e_o * e_o / (4.0 * PI * c * c) * quarter;
    Ok(SemiPhotonMass {
        closed_form: PI * e_o * e_o * r * r / (4.0 * w * c),
        first_form_printed: e_o * s / (4.0 * w * c),
        printed_prefactor_quadrature: printed * quarter,
        density_quadrature: density,
        prefactor_discrepancy: if density == 0.0 { f64::NAN } else { printed * quarter / density },
        half_wave_quadrature: printed * half,
    })
}

/// The closed-form chain as exact monomials in `ħ, c, m_e, E_o, q`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormChain {
    /// `ħ/2m_ec`
    pub r_s: Monomial,
    /// `c/r_s`
    pub omega_s: Monomial,
    /// `E_o r_s²`
    pub q: Monomial,
    /// `πE_o²r_s²/(4ω_s c)`
    pub m_s: Monomial,
    /// `πq²/(4ω_s c r_s²)` with `q` symbolic
    pub m_s_from_charge: Monomial,
    /// `E_o²` fixed by `m_s = m_e`
    pub e_o_squared: Monomial,
    /// `q²` at that amplitude
    pub q_squared: Monomial,
    /// `q²/ħc`
    pub alpha_q: Monomial,
}

pub fn closed_form_chain() -> ClosedFormChain {
    let hbar = Monomial::symbol(Symbol::Hbar);
    let c = Monomial::symbol(Symbol::C);
    let eo = Monomial::symbol(Symbol::Eo);
    let r_s = Monomial::rational(1, 2).with(Symbol::Hbar, 1).with(Symbol::Me, -1).with(Symbol::C, -1);
    let omega_s = &c / &r_s;
    let q = &eo * &r_s.pow(2);
    let quarter_pi = Monomial::rational(1, 4).times_pi(1);
    let m_s = &(&quarter_pi * &eo.pow(2)) * &r_s.pow(2) / (&omega_s * &c);
    let m_s_from_charge =
        &(&quarter_pi * &Monomial::symbol(Symbol::Q).pow(2)) / &(&(&omega_s * &c) * &r_s.pow(2));
    // m_s is linear in E_o², so m_s = m_e fixes it by one division
    let e_o_squared = &Monomial::symbol(Symbol::Me) / &(&m_s / &eo.pow(2));
    let q_squared = &(&q.pow(2) / &eo.pow(2)) * &e_o_squared;
    let alpha_q = &q_squared / &(&hbar * &c);
    ClosedFormChain {
        r_s,
        omega_s,
        q,
        m_s,
        m_s_from_charge,
        e_o_squared,
        q_squared,
        alpha_q,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingReport {
    pub alpha_q_symbolic: Monomial,
    /// `q²/ħc` from the chain
    pub alpha_q: f64,
    /// `q = √(2ħc/π)` in statC
    pub q: f64,
    /// measured `e²/ħc`
    pub alpha: f64,
    pub alpha_q_over_alpha: f64,
}

pub fn coupling_constant(k: &PhysicalConstants) -> CouplingReport {
    let chain = closed_form_chain();
    let alpha_q = chain.alpha_q.eval(k);
    let alpha = k.fine_structure();
    CouplingReport {
        alpha_q,
        q: chain.q_squared.eval(k).sqrt(),
        alpha,
        alpha_q_over_alpha: alpha_q / alpha,
        alpha_q_symbolic: chain.alpha_q,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinChain {
    /// `p_p r_p` with `p_p = 2m_ec`
    pub sigma_p: Monomial,
    pub sigma_plus: Monomial,
    pub sigma_minus: Monomial,
    /// `ħ/2`
    pub sigma_s: Monomial,
    /// `σ_s / p_s` with `p_s = m_ec`
    pub r_s: Monomial,
    pub r_p: Monomial,
    pub sigma_p_value: f64,
    pub sigma_s_value: f64,
    pub r_s_value: f64,
    pub r_p_value: f64,
    pub division_conserves_spin: bool,
    pub radius_unchanged: bool,
    /// volume and frequency after division equal those before
    pub delta_tau_s: f64,
    pub delta_tau_p: f64,
    pub omega_s: f64,
    pub omega_p: f64,
}

pub fn spin_chain(k: &PhysicalConstants) -> SpinChain {
    let r_p = Monomial::rational(1, 2).with(Symbol::Hbar, 1).with(Symbol::Me, -1).with(Symbol::C, -1);
    let p_p = Monomial::integer(2).with(Symbol::Me, 1).with(Symbol::C, 1);
    let sigma_p = &p_p * &r_p;
    let half = Monomial::rational(1, 2);
    let sigma_plus = &sigma_p * &half;
    let sigma_minus = sigma_plus.clone();
    let sigma_s = sigma_plus.clone();
    let p_s = Monomial::symbol(Symbol::Me).with(Symbol::C, 1);
    let r_s = &sigma_s / &p_s;
    let photon = TorusModel::with_radius(r_p.eval(k), k.c);
    let semi = TorusModel::with_radius(r_s.eval(k), k.c);
    SpinChain {
        sigma_p_value: sigma_p.eval(k),
        sigma_s_value: sigma_s.eval(k),
        r_s_value: r_s.eval(k),
        r_p_value: r_p.eval(k),
        division_conserves_spin: &sigma_plus * &Monomial::integer(2) == sigma_p && sigma_plus == sigma_minus,
        radius_unchanged: r_s == r_p,
        delta_tau_s: semi.delta_tau_p,
        delta_tau_p: photon.delta_tau_p,
        omega_s: semi.omega_p,
        omega_p: photon.omega_p,
        sigma_p,
        sigma_plus,
        sigma_minus,
        sigma_s,
        r_s,
        r_p,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagneticMoment {
    /// `q ω_s / 2π`
    pub current: f64,
    /// `π r_s²`
    pub area: f64,
    /// `I·S_I`, the reading that gives `½ qħ/2m_e`
    pub mu_s_printed: f64,
    /// `I·S_I / c`, the Gaussian moment
    pub mu_s_gaussian: f64,
    /// `eħ/2m_ec`
    pub bohr_magneton: f64,
    /// `μ_s / (qħ/2m_ec)`
    pub bohr_ratio: f64,
    /// `I·S_I` as a monomial in `q`
    pub mu_s_symbolic: Monomial,
    pub bohr_ratio_symbolic: Monomial,
}

pub fn magnetic_moment(k: &PhysicalConstants, q: f64) -> Result<MagneticMoment> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::invalid("q", format!("must be non-negative, got {q}")));
    }
    let r_s = Monomial::rational(1, 2).with(Symbol::Hbar, 1).with(Symbol::Me, -1).with(Symbol::C, -1);
    let omega_s = &Monomial::symbol(Symbol::C) / &r_s;
    let current = &(&Monomial::symbol(Symbol::Q) * &omega_s) / &Monomial::integer(2).times_pi(1);
    let area = r_s.pow(2).times_pi(1);
    let mu = &current * &area;
    let scaled_bohr = Monomial::rational(1, 2)
        .with(Symbol::Q, 1)
        .with(Symbol::Hbar, 1)
        .with(Symbol::Me, -1)
        .with(Symbol::C, -1);
    let ratio = &(&mu / &Monomial::symbol(Symbol::C)) / &scaled_bohr;
    let bind = |s: Symbol| match s {
        Symbol::Hbar => k.hbar,
        Symbol::C => k.c,
        Symbol::Me => k.m_e,
        Symbol::E => k.e,
        Symbol::Q => q,
        Symbol::Eo => 1.0,
    };
    let mu_printed = mu.eval_with(bind);
    Ok(MagneticMoment {
        current: current.eval_with(bind),
        area: area.eval_with(bind),
        mu_s_printed: mu_printed,
        mu_s_gaussian: mu_printed / k.c,
        bohr_magneton: k.e * k.hbar / (2.0 * k.m_e * k.c),
        bohr_ratio: ratio.eval_with(bind),
        mu_s_symbolic: mu,
        bohr_ratio_symbolic: ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityForce {
    pub force: [f64; 3],
    pub magnitude: f64,
}

/// `f_M = (1/c) j_τ × H_s`
pub fn stability_force_density(j_tau: &Vector3<f64>, h_s: &Vector3<f64>, c: f64) -> StabilityForce {
    let f = j_tau.cross(h_s) / c;
    StabilityForce {
        force: f.into(),
        magnitude: f.norm(),
    }
}

/// Headline numbers of the model with `m_s = m_e`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelReport {
    pub r_p: f64,
    pub lambda_p: f64,
    pub omega_p: f64,
    pub e_o: f64,
    pub q: f64,
    pub m_s: f64,
    pub sigma_s: f64,
    pub mu_s: f64,
    pub mu_s_gaussian: f64,
    pub bohr_ratio: f64,
    pub alpha_q: f64,
    pub alpha: f64,
    pub alpha_q_over_alpha: f64,
    pub full_wave_charge: f64,
    pub half_wave: HalfWaveCharge,
    pub mass: SemiPhotonMass,
}

pub fn model_report(k: &PhysicalConstants, n_quad: usize) -> Result<ModelReport> {
    let chain = closed_form_chain();
    let e_o = chain.e_o_squared.eval(k).sqrt();
    let model = photon_parameters(k).with_amplitude(e_o);
    let coupling = coupling_constant(k);
    let spin = spin_chain(k);
    let q = chain.q.eval_with(|s| match s {
        Symbol::Eo => e_o,
        Symbol::Hbar => k.hbar,
        Symbol::C => k.c,
        Symbol::Me => k.m_e,
        Symbol::E | Symbol::Q => k.e,
    });
    let mu = magnetic_moment(k, q)?;
    Ok(ModelReport {
        r_p: model.r_p,
        lambda_p: model.lambda_p,
        omega_p: model.omega_p,
        e_o,
        q,
        m_s: chain.m_s.eval_with(|s| if s == Symbol::Eo { e_o } else { Monomial::symbol(s).eval(k) }),
        sigma_s: spin.sigma_s_value,
        mu_s: mu.mu_s_printed,
        mu_s_gaussian: mu.mu_s_gaussian,
        bohr_ratio: mu.bohr_ratio,
        alpha_q: coupling.alpha_q,
        alpha: coupling.alpha,
        alpha_q_over_alpha: coupling.alpha_q_over_alpha,
        full_wave_charge: full_wave_charge(&model, n_quad)?,
        half_wave: half_wave_charge(&model, n_quad)?,
        mass: semi_photon_mass(&model, n_quad)?,
    })
}
