//! Self-field of the spinning semi-photon: the energy–momentum it carries in
//! its own volume, the nonlinear wave equation obtained by substituting that
//! energy–momentum for the mass term, and the associated Lagrangians.

mod lagrangian;

pub use lagrangian::{
    em_identity_check, fierz_check, lagrangian_dirac, lagrangian_nonlinear, lagrangian_semiphoton,
    photon_photon_coefficient_compare, FieldJet, IdentityResidual, LagrangianReport, PhotonPhotonReport,
    SemiPhotonLagrangian,
};

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::DiracParams;
use crate::error::{Error, Result};
use crate::plane_wave::{build_spinor, dispersion_energy, Branch, SpinIndex};
use crate::spinor::{build_alpha_set, max_entry, unit, vector_bilinear, Bispinor, Complex4x4, EMFieldPoint, MatrixSet, I};

/// `α_q = 2/π`, the coupling the torus chain closes on.
pub const ALPHA_Q: f64 = 2.0 / PI;

/// Energy and momentum of the self-field, `Γ = {ε_s, c p_s}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelfEnergy {
    pub eps_s: f64,
    pub p_s: [f64; 3],
}

impl SelfEnergy {
    pub const ZERO: Self = Self {
        eps_s: 0.0,
        p_s: [0.0; 3],
    };

    pub fn new(eps_s: f64, p_s: Vector3<f64>) -> Self {
        Self {
            eps_s,
            p_s: [p_s[0], p_s[1], p_s[2]],
        }
    }

    pub fn momentum(&self) -> Vector3<f64> {
        Vector3::from(self.p_s)
    }

    /// `ε_s² − c²p_s²`, the invariant mass² · c⁴ it implies.
    pub fn invariant(&self, c: f64) -> f64 {
        self.eps_s * self.eps_s - c * c * self.momentum().norm_squared()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearConfig {
    pub r_s: f64,
    pub delta_tau: f64,
    pub damping: f64,
    pub max_iters: usize,
    pub tol: f64,
}

impl NonlinearConfig {
    /// Volume `Δτ_s = 2π² r_s³` of a torus whose tube radius equals its
    /// ring radius.
    pub fn with_radius(r_s: f64) -> Self {
        Self {
            r_s,
            delta_tau: 2.0 * PI * PI * r_s.powi(3),
            damping: 0.5,
            max_iters: 200,
            tol: 1e-12,
        }
    }

    /// `r_s = ħ / 2mc`.
    pub fn for_params(params: &DiracParams) -> Self {
        Self::with_radius(params.hbar / (2.0 * params.mass * params.c))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta_tau > 0.0 && self.delta_tau.is_finite()) {
            return Err(Error::invalid("delta_tau", format!("must be positive, got {}", self.delta_tau)));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::invalid("damping", format!("must lie in (0, 1], got {}", self.damping)));
        }
        if !(self.tol >= 0.0) {
            return Err(Error::invalid("tol", "must be non-negative"));
        }
        Ok(())
    }
}

impl Default for NonlinearConfig {
    fn default() -> Self {
        Self::for_params(&DiracParams::natural())
    }
}

/// Quadrature of `U = (E² + H²)/8π` and `g = E×H/4πc` over `volume`,
/// the samples being equally weighted cells of the region. Complex samples
/// use `|E|²` and `Re(E*×H)`.
pub fn self_energy_integral(samples: &[EMFieldPoint], volume: f64, c: f64) -> Result<SelfEnergy> {
    if !(volume > 0.0 && volume.is_finite()) {
        return Err(Error::invalid("volume", format!("must be positive, got {volume}")));
    }
    if samples.is_empty() {
        return Err(Error::invalid("samples", "need at least one field sample"));
    }
    let w = volume / samples.len() as f64;
    let mut eps = 0.0;
    let mut p = Vector3::zeros();
    for f in samples {
        eps += f.intensity() / (8.0 * PI) * w;
        let s = f.e.conjugate().cross(&f.h).map(|z| z.re);
        p += s * (w / (4.0 * PI * c));
    }
    Ok(SelfEnergy::new(eps, p))
}

/// `ε_s = (Δτ/8π) ψ⁺ψ`, `p_s = −(Δτ/8πc) ψ⁺α⃗ψ`, the bilinear reading
/// for a locally uniform state. The flux here is the spinor energy flux
/// `−(c/8π)ψ⁺α⃗ψ`, which is minus the Poynting vector of the decoded fields,
/// so `p_s` has the opposite sign of [`self_energy_integral`] on the same
/// state. With this sign a positive-energy plane wave of momentum `p`
/// gets `p_s = ε_s p / ε(p)`.
pub fn self_energy_from_bispinor(psi: &Bispinor, cfg: &NonlinearConfig, c: f64) -> SelfEnergy {
    self_energy_with(&build_alpha_set(), psi, cfg, c)
}

fn self_energy_with(set: &MatrixSet, psi: &Bispinor, cfg: &NonlinearConfig, c: f64) -> SelfEnergy {
    let k = cfg.delta_tau / (8.0 * PI);
    SelfEnergy::new(k * psi.norm_sqr(), vector_bilinear(set, psi) * (-k / c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `‖(ε_s ± cα⃗·p_s ± βmc²) ψ‖`: zero when trading the self-field for the
/// mass term leaves `ψ` unchanged.
pub fn mass_substitution_residual(psi: &Bispinor, se: &SelfEnergy, params: &DiracParams, sign: Sign) -> f64 {
    let set = build_alpha_set();
    let s = sign.value();
    let m = Complex4x4::identity() * Complex64::from(se.eps_s)
        + (set.alpha_dot(&se.momentum()) * Complex64::from(params.c)
            + set.beta() * Complex64::from(params.rest_energy()))
            * Complex64::from(s);
    psi.apply(&m).norm()
}

/// `max |(cα⃗·p + βmc²)² − (c²p² + m²c⁴) I|`.
pub fn squaring_defect(p: &Vector3<f64>, params: &DiracParams) -> f64 {
    let set = build_alpha_set();
    let h = hamiltonian(&set, p, params);
    let e2 = params.c * params.c * p.norm_squared() + params.rest_energy().powi(2);
    max_entry(&(h * h - Complex4x4::identity() * Complex64::from(e2)))
}

/// `cα⃗·p + βmc²`
fn hamiltonian(set: &MatrixSet, p: &Vector3<f64>, params: &DiracParams) -> Complex4x4 {
    set.alpha_dot(p) * Complex64::from(params.c) + set.beta() * Complex64::from(params.rest_energy())
}

/// Value and first derivatives of `ψ` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalState {
    pub psi: Bispinor,
    pub dpsi_dt: Bispinor,
    pub grad: [Bispinor; 3],
}

impl LocalState {
    /// `ψ e^{i(p·r − εt)/ħ}` at the origin.
    pub fn plane_wave(psi: Bispinor, energy: f64, p: &Vector3<f64>, hbar: f64) -> Self {
        Self {
            psi,
            dpsi_dt: psi.scale(-I * (energy / hbar)),
            grad: [0, 1, 2].map(|k| psi.scale(I * (p[k] / hbar))),
        }
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        Self {
            psi: self.psi.scale_real(lambda),
            dpsi_dt: self.dpsi_dt.scale_real(lambda),
            grad: self.grad.map(|g| g.scale_real(lambda)),
        }
    }

    /// `Σ α_k ∂_k ψ`
    fn alpha_grad(&self, set: &MatrixSet) -> Bispinor {
        (0..3).fold(Bispinor::zero(), |acc, k| acc + self.grad[k].apply(set.spatial(k)))
    }
}

/// The cubic-term coefficient written two ways: from substituting the
/// bilinear self-energy into the operator equation, `Δτ/8πħ = πr_s³/4ħ`,
/// and as printed in the explicit nonlinear equation, `r_s³/(2α_q c)`
/// `= πr_s³/4c`. They differ by `ħ/c`, which is 1 only in natural units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientAudit {
    pub derived: f64,
    pub printed: f64,
    /// `printed / derived`, equal to `ħ/c`
    pub ratio: f64,
    pub hbar_over_c: f64,
}

pub fn coefficient_audit(cfg: &NonlinearConfig, params: &DiracParams) -> CoefficientAudit {
    let derived = cfg.delta_tau / (8.0 * PI * params.hbar);
    let printed = cfg.r_s.powi(3) / (2.0 * ALPHA_Q * params.c);
    CoefficientAudit {
        derived,
        printed,
        ratio: printed / derived,
        hbar_over_c: params.hbar / params.c,
    }
}

/// `[(ε̂ − ε_s) + cα⃗·(p̂ − p_s)] ψ` split into its pieces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearTerms {
    /// `(iħ∂_t − iħcα⃗·∇) ψ`, degree 1
    pub linear: Bispinor,
    /// `−(ε_s + cα⃗·p_s) ψ`, degree 3
    pub cubic: Bispinor,
}

pub fn nonlinear_terms(state: &LocalState, cfg: &NonlinearConfig, params: &DiracParams) -> NonlinearTerms {
    let set = build_alpha_set();
    let ih = I * params.hbar;
    let linear = state.dpsi_dt.scale(ih) - state.alpha_grad(&set).scale(ih * params.c);
    let se = self_energy_with(&set, &state.psi, cfg, params.c);
    let cubic = -(state.psi.scale_real(se.eps_s)
        + state.psi.apply(&set.alpha_dot(&se.momentum())).scale_real(params.c));
    NonlinearTerms { linear, cubic }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearResidual {
    /// `‖linear + cubic‖`
    pub residual: f64,
    pub linear_norm: f64,
    pub cubic_norm: f64,
    /// residual of `∂_tψ − cα⃗·∇ψ + i k (ψ⁺ψ − α⃗ ψ⁺α⃗ψ) ψ` with the printed `k`
    pub printed_form_residual: f64,
    pub coefficient: CoefficientAudit,
}

impl NonlinearResidual {
    pub fn scale(&self) -> f64 {
        self.linear_norm.max(self.cubic_norm)
    }

    pub fn relative(&self) -> f64 {
        let s = self.scale();
        if s == 0.0 {
            self.residual
        } else {
            self.residual / s
        }
    }
}

pub fn nonlinear_residual(state: &LocalState, cfg: &NonlinearConfig, params: &DiracParams) -> NonlinearResidual {
    let set = build_alpha_set();
    let t = nonlinear_terms(state, cfg, params);
    let audit = coefficient_audit(cfg, params);
    let j = vector_bilinear(&set, &state.psi);
    let self_op = state.psi.scale_real(state.psi.norm_sqr()) - state.psi.apply(&set.alpha_dot(&j));
    let printed = state.dpsi_dt - state.alpha_grad(&set).scale_real(params.c) + self_op.scale(I * audit.printed);
    NonlinearResidual {
        residual: (t.linear + t.cubic).norm(),
        linear_norm: t.linear.norm(),
        cubic_norm: t.cubic.norm(),
        printed_form_residual: printed.norm(),
        coefficient: audit,
    }
}

/// Amplitude at which a unit positive-energy spinor of momentum `p` carries
/// its own energy, `(Δτ/8π) A² = ε(p)`.
pub fn self_consistent_amplitude(p: &Vector3<f64>, cfg: &NonlinearConfig, params: &DiracParams) -> f64 {
    (8.0 * PI * dispersion_energy(p, params, Branch::Positive) / cfg.delta_tau).sqrt()
}

/// Positive-energy plane wave whose self-energy and self-momentum equal its
/// own `(ε, p)`; returned with its local jet.
pub fn self_consistent_plane_wave(
    p: &Vector3<f64>,
    index: SpinIndex,
    cfg: &NonlinearConfig,
    params: &DiracParams,
) -> Result<LocalState> {
    cfg.validate()?;
    let sol = build_spinor(p, params, Branch::Positive, index, 0.0);
    let psi = unit(&sol.spinor())?.scale_real(self_consistent_amplitude(p, cfg, params));
    Ok(LocalState::plane_wave(psi, sol.energy, p, params.hbar))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub eps_s: f64,
    pub p_s_norm: f64,
    /// relative change `‖ψ_{n+1} − ψ_n‖ / ‖ψ_{n+1}‖`
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationOutcome {
    pub psi: Bispinor,
    pub self_energy: SelfEnergy,
    pub converged: bool,
    pub trace: Vec<TraceEntry>,
}

impl IterationOutcome {
    pub fn iterations(&self) -> usize {
        self.trace.len()
    }
}

/// Damped fixed-point iteration: evaluate `(ε_s, p_s)` from `ψ`, project `ψ`
/// onto the positive-energy eigenspace at `p_s`, rescale to the amplitude
/// that makes it self-consistent, and mix with weight `damping`. Stops once
/// the relative change drops below `tol`; otherwise runs `max_iters` times
/// and reports `converged = false`.
pub fn iterate_self_consistent(initial: &Bispinor, cfg: &NonlinearConfig, params: &DiracParams) -> Result<IterationOutcome> {
    cfg.validate()?;
    if initial.is_zero() {
        return Err(Error::ZeroNormalization);
    }
    let set = build_alpha_set();
    let mut psi = *initial;
    let mut trace = Vec::new();
    let mut converged = false;
    for iteration in 1..=cfg.max_iters {
        let se = self_energy_with(&set, &psi, cfg, params.c);
        let p = se.momentum();
        let energy = dispersion_energy(&p, params, Branch::Positive);
        let projector = (Complex4x4::identity() - hamiltonian(&set, &p, params) * Complex64::from(1.0 / energy))
            * Complex64::from(0.5);
        let target = unit(&psi.apply(&projector))?.scale_real(self_consistent_amplitude(&p, cfg, params));
        let next = psi.scale_real(1.0 - cfg.damping) + target.scale_real(cfg.damping);
        let change = (next - psi).norm() / next.norm();
        trace.push(TraceEntry {
            iteration,
            eps_s: se.eps_s,
            p_s_norm: p.norm(),
            residual: change,
        });
        psi = next;
        if change < cfg.tol {
            converged = true;
            break;
        }
    }
    Ok(IterationOutcome {
        self_energy: self_energy_with(&set, &psi, cfg, params.c),
        psi,
        converged,
        trace,
    })
}
