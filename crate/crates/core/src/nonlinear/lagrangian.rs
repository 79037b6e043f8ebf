use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{LocalState, NonlinearConfig};
use crate::constants::{DiracParams, PhysicalConstants};
use crate::error::Result;
use crate::spinor::{bilinear, build_alpha_set, from_bispinor, to_bispinor, vector_bilinear, Bispinor, EMFieldPoint, MatrixSet, I};
use crate::symbolic::{Monomial, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub residual: f64,
    pub scale: f64,
}

impl IdentityResidual {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual
        } else {
            self.residual / self.scale
        }
    }
}

/// `|(ψ⁺ψ)² − Σ(ψ⁺α_kψ)² − (ψ⁺βψ)² − (ψ⁺α₅ψ)²|`, scale `(ψ⁺ψ)²`.
pub fn fierz_check(psi: &Bispinor) -> IdentityResidual {
    let set = build_alpha_set();
    let n = psi.norm_sqr();
    let j = vector_bilinear(&set, psi);
    let s = bilinear(psi, set.beta()).re;
    let p = bilinear(psi, set.alpha5()).re;
    IdentityResidual {
        residual: (n * n - j.norm_squared() - s * s - p * p).abs(),
        scale: n * n,
    }
}

/// `|(E² + H²)² − 4(E×H)² − (E² − H²)² − 4(E·H)²|`, scale `(E² + H²)²`.
pub fn em_identity_check(e: &Vector3<f64>, h: &Vector3<f64>) -> IdentityResidual {
    let (e2, h2) = (e.norm_squared(), h.norm_squared());
    let lhs = (e2 + h2).powi(2) - 4.0 * e.cross(h).norm_squared();
    let rhs = (e2 - h2).powi(2) + 4.0 * e.dot(h).powi(2);
    IdentityResidual {
        residual: (lhs - rhs).abs(),
        scale: (e2 + h2).powi(2),
    }
}

/// `(1/c)ψ⁺∂_tψ − ψ⁺α_y∂_yψ − i(mc/ħ)ψ⁺βψ`; zero on solutions.
pub fn lagrangian_dirac(psi: &Bispinor, dpsi_dt: &Bispinor, dpsi_dy: &Bispinor, params: &DiracParams) -> Complex64 {
    let set = build_alpha_set();
    dirac_density(&set, psi, dpsi_dt, dpsi_dy, params)
}

fn dirac_density(set: &MatrixSet, psi: &Bispinor, dt: &Bispinor, dy: &Bispinor, params: &DiracParams) -> Complex64 {
    kinetic_y(set, psi, dt, dy, params.c) - I * (params.mass * params.c / params.hbar) * bilinear(psi, set.beta())
}

fn kinetic_y(set: &MatrixSet, psi: &Bispinor, dt: &Bispinor, dy: &Bispinor, c: f64) -> Complex64 {
    psi.inner(dt) / c - psi.inner(&dy.apply(set.spatial(1)))
}

/// Field values and their `t`, `y` derivatives at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub f: EMFieldPoint,
    pub df_dt: EMFieldPoint,
    pub df_dy: EMFieldPoint,
}

impl FieldJet {
    pub fn to_local_state(&self) -> Result<LocalState> {
        Ok(LocalState {
            psi: to_bispinor(&self.f)?,
            dpsi_dt: to_bispinor(&self.df_dt)?,
            grad: [Bispinor::zero(), to_bispinor(&self.df_dy)?, Bispinor::zero()],
        })
    }

    pub fn from_local_state(s: &LocalState) -> Self {
        Self {
            f: from_bispinor(&s.psi),
            df_dt: from_bispinor(&s.dpsi_dt),
            df_dy: from_bispinor(&s.grad[1]),
        }
    }
}

/// The field form of the Dirac Lagrangian, `ω_s = 2mc²/ħ`,
/// `U = ψ⁺ψ/8π`, `S = −(c/8π)ψ⁺α⃗ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SemiPhotonLagrangian {
    /// `∂U/∂t + div S − i(ω_s/8π)(E² − H²)`
    pub printed: Complex64,
    /// `∂U/∂t + div S − ½(j_e·E* − j_m·H*)` with `j = i(ω_s/4π)(E, H)`
    pub current_form: Complex64,
    /// `(c/4π)` times the Dirac Lagrangian; vanishes on solutions
    pub complete: Complex64,
    /// `complete − printed = i(c/4π) Im[(1/c)ψ⁺∂_tψ − ψ⁺α_y∂_yψ]`, the piece
    /// the field form leaves out
    pub dropped: Complex64,
    /// `∂U/∂t + div S`, the conservation statement
    pub conservation: f64,
    /// `(1/8π)(E² − H²)`
    pub maxwell_form_lhs: f64,
    /// `(i/ω_s)(∂U/∂t + div S)`
    pub maxwell_form_rhs: Complex64,
}

pub fn lagrangian_semiphoton(jet: &FieldJet, params: &DiracParams) -> Result<SemiPhotonLagrangian> {
    let s = jet.to_local_state()?;
    Ok(semiphoton_from_state(&build_alpha_set(), &s, params))
}

fn semiphoton_from_state(set: &MatrixSet, s: &LocalState, params: &DiracParams) -> SemiPhotonLagrangian {
    let c = params.c;
    let omega_s = 2.0 * params.rest_energy() / params.hbar;
    let (psi, dt, dy) = (&s.psi, &s.dpsi_dt, &s.grad[1]);
    let du_dt = 2.0 * psi.inner(dt).re / (8.0 * PI);
    let div_s = -c / (4.0 * PI) * psi.inner(&dy.apply(set.spatial(1))).re;
    let conservation = du_dt + div_s;
    let i1 = bilinear(psi, set.beta()).re;

    let f = from_bispinor(psi);
    let je = f.e * (I * omega_s / (4.0 * PI));
    let jm = f.h * (I * omega_s / (4.0 * PI));
    let work = je.dotc(&f.e).conj() - jm.dotc(&f.h).conj();

    let printed = Complex64::from(conservation) - I * (omega_s / (8.0 * PI)) * i1;
    let complete = dirac_density(set, psi, dt, dy, params) * (c / (4.0 * PI));
    SemiPhotonLagrangian {
        printed,
        current_form: Complex64::from(conservation) - 0.5 * work,
        complete,
        dropped: complete - printed,
        conservation,
        maxwell_form_lhs: i1 / (8.0 * PI),
        maxwell_form_rhs: I * conservation / omega_s,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagrangianReport {
    /// Dirac Lagrangian along `y`
    pub l_dirac: Complex64,
    /// field-form semi-photon Lagrangian as printed
    pub l_semi_photon: Complex64,
    /// `ψ⁺α_μ∂_μψ + (Δτ/8π)[(ψ⁺ψ)² − (ψ⁺α⃗ψ)²]`
    pub l_nonlinear_quantum: Complex64,
    /// `ψ⁺α_μ∂_μψ + (Δτ/8π)[(ψ⁺βψ)² + (ψ⁺α₅ψ)²]`, the Fierz-rewritten form
    pub l_nonlinear_scalar: Complex64,
    /// same with `−(ψ⁺α₅ψ)²`, as printed; differs by `2(Δτ/8π)(ψ⁺α₅ψ)²`
    pub l_nonlinear_scalar_printed: Complex64,
    /// `(1/8π)(E² − H²) + Δτ/((8π)²mc²)[(E² − H²)² + 4(E·H)²]`; real fields only
    pub l_nonlinear_em: Option<f64>,
    /// `(Δτ/8π)[(ψ⁺ψ)² − (ψ⁺α⃗ψ)²] / (8π m c²)`
    pub quantum_self_term_normalized: f64,
    /// `Δτ/((8π)²mc²)[(E² − H²)² + 4(E·H)²]`; real fields only
    pub em_self_term: Option<f64>,
    pub fierz_residual: f64,
    pub em_identity_residual: Option<f64>,
}

impl LagrangianReport {
    /// `|quantum − scalar|`, the Fierz equivalence of the two nonlinear forms
    pub fn form_mismatch(&self) -> f64 {
        (self.l_nonlinear_quantum - self.l_nonlinear_scalar).norm()
    }

    /// Relative mismatch of the bilinear and field evaluations of the
    /// self-interaction, when both exist.
    pub fn dual_path_residual(&self) -> Option<f64> {
        self.em_self_term.map(|em| {
            let d = (em - self.quantum_self_term_normalized).abs();
            if em == 0.0 {
                d
            } else {
                d / em.abs()
            }
        })
    }

    pub fn is_finite(&self) -> bool {
        [
            self.l_dirac,
            self.l_semi_photon,
            self.l_nonlinear_quantum,
            self.l_nonlinear_scalar,
            self.l_nonlinear_scalar_printed,
        ]
        .iter()
        .all(|z| z.is_finite())
            && self.quantum_self_term_normalized.is_finite()
            && self.fierz_residual.is_finite()
            && [self.l_nonlinear_em, self.em_self_term, self.em_identity_residual]
                .iter()
                .all(|x| x.is_none_or(f64::is_finite))
    }
}

/// Evaluates every Lagrangian form on one local state. The kinetic part is
/// `(1/c)ψ⁺∂_tψ − ψ⁺α⃗·∇ψ`, the Dirac form without its mass term.
pub fn lagrangian_nonlinear(state: &LocalState, cfg: &NonlinearConfig, params: &DiracParams) -> LagrangianReport {
    let set = build_alpha_set();
    let psi = &state.psi;
    let c = params.c;
    let kinetic = psi.inner(&state.dpsi_dt) / c
        - (0..3)
            .map(|k| psi.inner(&state.grad[k].apply(set.spatial(k))))
            .sum::<Complex64>();
    let coupling = cfg.delta_tau / (8.0 * PI);
    let n = psi.norm_sqr();
    let j = vector_bilinear(&set, psi);
    let s = bilinear(psi, set.beta()).re;
    let p = bilinear(psi, set.alpha5()).re;
    let quantum_self = coupling * (n * n - j.norm_squared());

    let fields = from_bispinor(psi);
    let real = fields.is_real();
    let (em, em_self, em_id) = if real {
        let (e, h) = (fields.e_real(), fields.h_real());
        let i1 = e.norm_squared() - h.norm_squared();
        let self_term = cfg.delta_tau / ((8.0 * PI).powi(2) * params.rest_energy())
            * (i1 * i1 + 4.0 * e.dot(&h).powi(2));
        (
            Some(i1 / (8.0 * PI) + self_term),
            Some(self_term),
            Some(em_identity_check(&e, &h).residual),
        )
    } else {
        (None, None, None)
    };

    LagrangianReport {
        l_dirac: dirac_density(&set, psi, &state.dpsi_dt, &state.grad[1], params),
        l_semi_photon: semiphoton_from_state(&set, state, params).printed,
        l_nonlinear_quantum: kinetic + quantum_self,
        l_nonlinear_scalar: kinetic + coupling * (s * s + p * p),
        l_nonlinear_scalar_printed: kinetic + coupling * (s * s - p * p),
        l_nonlinear_em: em,
        quantum_self_term_normalized: quantum_self / (8.0 * PI * params.rest_energy()),
        em_self_term: em_self,
        fierz_residual: fierz_check(psi).residual,
        em_identity_residual: em_id,
    }
}

/// Self-interaction coefficient of the semi-photon Lagrangian against the
/// Euler–Heisenberg one. Informational: the two agree only in form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhotonPhotonReport {
    /// `Δτ_s/((8π)²m c²)` with `Δτ_s = 2π²r_s³`, `r_s = ħ/2mc`
    pub c_n: Monomial,
    /// `(2/45) e⁴ħ/(m⁴c⁷)`
    pub b: Monomial,
    pub ratio: Monomial,
    pub c_n_value: f64,
    pub b_value: f64,
    pub ratio_value: f64,
    /// coefficient of `(E·H)²` inside the brackets: semi-photon, Euler–Heisenberg
    pub inner_coefficients: (i64, i64),
}

pub fn photon_photon_coefficient_compare(k: &PhysicalConstants) -> PhotonPhotonReport {
    let r_s = Monomial::rational(1, 2).with(Symbol::Hbar, 1).with(Symbol::Me, -1).with(Symbol::C, -1);
    let delta_tau = Monomial::integer(2).times_pi(2) * r_s.pow(3);
    let denom = Monomial::integer(64).times_pi(2).with(Symbol::Me, 1).with(Symbol::C, 2);
    let c_n = &delta_tau / &denom;
    let b = Monomial::rational(2, 45)
        .with(Symbol::E, 4)
        .with(Symbol::Hbar, 1)
        .with(Symbol::Me, -4)
        .with(Symbol::C, -7);
    let ratio = &c_n / &b;
    PhotonPhotonReport {
        c_n_value: c_n.eval(k),
        b_value: b.eval(k),
        ratio_value: ratio.eval(k),
        c_n,
        b,
        ratio,
        inner_coefficients: (4, 7),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_wave::{build_spinor, Branch, SpinIndex};
    use num_rational::Ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn nat() -> DiracParams {
        DiracParams::natural()
    }

    fn solution_state(p: f64, branch: Branch, index: SpinIndex, params: &DiracParams) -> LocalState {
        let sol = build_spinor(&Vector3::new(0.0, p, 0.0), params, branch, index, 0.4);
        LocalState::plane_wave(sol.spinor(), sol.energy, &sol.momentum, params.hbar)
    }

    #[test]
    fn identity_examples() {
        let x = Vector3::new(1.0, 0.0, 0.0);
        let y = Vector3::new(0.0, 1.0, 0.0);
        assert_eq!(em_identity_check(&x, &y).residual, 0.0);
        assert_eq!(em_identity_check(&x, &x).residual, 0.0);
        assert_eq!(em_identity_check(&Vector3::zeros(), &Vector3::zeros()).residual, 0.0);
        let e1 = Bispinor::new(1.0.into(), 0.0.into(), 0.0.into(), 0.0.into());
        let f = fierz_check(&e1);
        assert_eq!((f.residual, f.scale), (0.0, 1.0));
        assert_eq!(fierz_check(&Bispinor::zero()).residual, 0.0);
    }

    #[test]
    fn dirac_lagrangian_vanishes_on_solutions() {
        let params = DiracParams { mass: 1.3, c: 0.8, hbar: 1.1 };
        for (b, i) in crate::plane_wave::FAMILIES {
            let s = solution_state(2.1, b, i, &params);
            let l = lagrangian_dirac(&s.psi, &s.dpsi_dt, &s.grad[1], &params);
            assert!(l.norm() < 1e-12 * s.psi.norm_sqr() * params.mass * params.c / params.hbar);
            let off = lagrangian_dirac(&s.psi, &s.dpsi_dt.scale_real(1.1), &s.grad[1], &params);
            assert!(off.norm() > 1e-3);
        }
        let z = Bispinor::zero();
        assert_eq!(lagrangian_dirac(&z, &z, &z, &params), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn field_form_on_solutions() {
        let s = solution_state(0.7, Branch::Positive, SpinIndex::One, &nat());
        let l = lagrangian_semiphoton(&FieldJet::from_local_state(&s), &nat()).unwrap();
        assert!(l.conservation.abs() < 1e-14);
        assert!(l.complete.norm() < 1e-14);
        assert!((l.printed - l.current_form).norm() < 1e-14);
        // the printed form keeps the mass term alone, so it survives
        let i1 = bilinear(&s.psi, build_alpha_set().beta()).re;
        assert!((l.printed.im + 2.0 / (8.0 * PI) * i1).abs() < 1e-14);
        assert!((l.dropped + l.printed).norm() < 1e-14);
    }

    #[test]
    fn static_field_reduces_to_mass_term() {
        let f = EMFieldPoint::real([0.5, 0.0, 1.0], [0.2, 0.0, 0.3]);
        let jet = FieldJet { f, df_dt: EMFieldPoint::zero(), df_dy: EMFieldPoint::zero() };
        let l = lagrangian_semiphoton(&jet, &nat()).unwrap();
        let e2h2 = f.e_real().norm_squared() - f.h_real().norm_squared();
        let expect = -I * (2.0 / (8.0 * PI)) * e2h2;
        assert!((l.printed - expect).norm() < 1e-15);
        assert!((l.current_form - expect).norm() < 1e-15);
        let zero = FieldJet { f: EMFieldPoint::zero(), df_dt: EMFieldPoint::zero(), df_dy: EMFieldPoint::zero() };
        assert_eq!(lagrangian_semiphoton(&zero, &nat()).unwrap().printed, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn nonlinear_forms_agree_through_fierz() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = NonlinearConfig::default();
        for _ in 0..200 {
            let mut z = || Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let b = |z: &mut dyn FnMut() -> Complex64| Bispinor::new(z(), z(), z(), z());
            let st = LocalState { psi: b(&mut z), dpsi_dt: b(&mut z), grad: [b(&mut z), b(&mut z), b(&mut z)] };
            let r = lagrangian_nonlinear(&st, &cfg, &nat());
            let scale = cfg.delta_tau / (8.0 * PI) * st.psi.norm_sqr().powi(2);
            assert!(r.form_mismatch() < 1e-12 * scale);
            assert!(r.is_finite());
        }
        let zero = LocalState::plane_wave(Bispinor::zero(), 1.0, &Vector3::zeros(), 1.0);
        let r = lagrangian_nonlinear(&zero, &cfg, &nat());
        assert_eq!(r.l_nonlinear_quantum, Complex64::new(0.0, 0.0));
        assert_eq!(r.l_nonlinear_scalar, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn printed_sign_breaks_the_equivalence() {
        let f = EMFieldPoint::real([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        let st = LocalState { psi: to_bispinor(&f).unwrap(), dpsi_dt: Bispinor::zero(), grad: [Bispinor::zero(); 3] };
        let cfg = NonlinearConfig::default();
        let r = lagrangian_nonlinear(&st, &cfg, &nat());
        let p = 2.0; // ψ⁺α₅ψ = 2 E·H
        let gap = (r.l_nonlinear_scalar - r.l_nonlinear_scalar_printed).re;
        assert!((gap - 2.0 * cfg.delta_tau / (8.0 * PI) * p * p).abs() < 1e-12);
    }

    #[test]
    fn dual_path_on_mapped_real_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = DiracParams { mass: 0.7, c: 1.9, hbar: 1.0 };
        let cfg = NonlinearConfig::for_params(&params);
        for _ in 0..200 {
            let mut v = || rng.random_range(-2.0..2.0);
            let f = EMFieldPoint::real([v(), 0.0, v()], [v(), 0.0, v()]);
            let st = LocalState { psi: to_bispinor(&f).unwrap(), dpsi_dt: Bispinor::zero(), grad: [Bispinor::zero(); 3] };
            let r = lagrangian_nonlinear(&st, &cfg, &params);
            assert!(r.dual_path_residual().unwrap() < 1e-12);
            assert!(r.em_identity_residual.unwrap() < 1e-12 * f.intensity().powi(2));
        }
    }

    #[test]
    fn photon_photon_symbolic_outputs() {
        let r = photon_photon_coefficient_compare(&PhysicalConstants::codata2018());
        let expect_cn = Monomial::rational(1, 256).with(Symbol::Hbar, 3).with(Symbol::Me, -4).with(Symbol::C, -5);
        assert_eq!(r.c_n, expect_cn);
        assert_eq!(r.ratio.coefficient(), Ratio::new(45, 512));
        assert_eq!(r.ratio.pi_exponent(), 0);
        assert_eq!((r.ratio.exponent(Symbol::Hbar), r.ratio.exponent(Symbol::C), r.ratio.exponent(Symbol::E)), (2, 2, -4));
        assert_eq!(r.ratio.exponent(Symbol::Me), 0);
        assert_eq!(r.inner_coefficients, (4, 7));
        let alpha = PhysicalConstants::codata2018().fine_structure();
        assert!((r.ratio_value / (45.0 / 512.0 / alpha.powi(2)) - 1.0).abs() < 1e-9);
    }
}
