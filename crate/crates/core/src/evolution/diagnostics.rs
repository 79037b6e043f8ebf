use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Derivative, FieldGrid1D, Integrator, Stencil};
use crate::error::{Error, Result};
use crate::spinor::{bilinear, build_alpha_set, from_bispinor, vector_bilinear, Bispinor, EMFieldPoint, MatrixSet, I};

/// Signs in
///
/// ```text
/// ∂_t E = curl_e · c rot H + j_e · iω E
/// ∂_t H = curl_h · c rot E + j_h · iω H
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellSigns {
    pub curl_e: f64,
    pub j_e: f64,
    pub curl_h: f64,
    pub j_h: f64,
}

impl MaxwellSigns {
    /// What the Dirac–Pauli system with `ψ = (E_z, E_x, iH_z, iH_x)` implies.
    pub const DERIVED: Self = Self {
        curl_e: -1.0,
        j_e: 1.0,
        curl_h: 1.0,
        j_h: -1.0,
    };
    /// `rot H − (1/c)∂_t E = i(ω/c)E`, `rot E + (1/c)∂_t H = −i(ω/c)H` read
    /// off literally. No traceless `β` can produce equal signs on both mass
    /// terms, so this form never closes against the spinor equation.
    pub const PRINTED: Self = Self {
        curl_e: 1.0,
        j_e: 1.0,
        curl_h: -1.0,
        j_h: 1.0,
    };
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaxwellResidual {
    /// max pointwise `|∂_t(E,H)|_Dirac − RHS_Maxwell|`
    pub residual: f64,
    /// max pointwise `|∂_t ψ|`
    pub rate_scale: f64,
    /// max `ω|ψ|`, the size of the current terms
    pub current_scale: f64,
}

impl MaxwellResidual {
    pub fn relative(&self) -> f64 {
        if self.rate_scale == 0.0 {
            self.residual
        } else {
            self.residual / self.rate_scale
        }
    }
}

/// Decodes `ψ` to `(E, H)`, forms the Maxwell-with-current right-hand side
/// with `signs`, and compares it with the decoded Dirac time derivative.
pub fn maxwell_current_residual(grid: &FieldGrid1D, stencil: Stencil, signs: MaxwellSigns) -> MaxwellResidual {
    let integrator = Integrator::new(grid, stencil);
    let dpsi = integrator.rhs(&grid.psi);
    let d = integrator.derivative();
    let c = grid.params.c;
    let omega = grid.mass_omega();

    let fields: Vec<EMFieldPoint> = grid.psi.iter().map(from_bispinor).collect();
    let col = |get: &dyn Fn(&EMFieldPoint) -> Complex64| d.apply(&fields.iter().map(get).collect::<Vec<_>>());
    let dy_ex = col(&|f| f.e[0]);
    let dy_ez = col(&|f| f.e[2]);
    let dy_hx = col(&|f| f.h[0]);
    let dy_hz = col(&|f| f.h[2]);

    let mut residual: f64 = 0.0;
    let mut rate_scale: f64 = 0.0;
    for j in 0..grid.n() {
        // rot A = (∂_y A_z, 0, −∂_y A_x) for A = A(y)
        let rot_e = Vector3::new(dy_ez[j], Complex64::new(0.0, 0.0), -dy_ex[j]);
        let rot_h = Vector3::new(dy_hz[j], Complex64::new(0.0, 0.0), -dy_hx[j]);
        let f = &fields[j];
        let de = rot_h * Complex64::from(signs.curl_e * c) + f.e * (I * signs.j_e * omega);
        let dh = rot_e * Complex64::from(signs.curl_h * c) + f.h * (I * signs.j_h * omega);
        let dirac = from_bispinor(&dpsi[j]);
        residual = residual
            .max((dirac.e - de).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .max((dirac.h - dh).iter().map(|z| z.norm()).fold(0.0, f64::max));
        rate_scale = rate_scale.max(dpsi[j].max_abs());
    }
    MaxwellResidual {
        residual,
        rate_scale,
        current_scale: omega * grid.max_abs(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    /// max over the lattice of `|ΔP/Δt + ∂_y S_pr|`
    pub residual: f64,
    /// `max P · c / dy`
    pub scale: f64,
}

impl ContinuityReport {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.residual
        } else {
            self.residual / self.scale
        }
    }
}

fn probability(grid: &FieldGrid1D) -> Vec<f64> {
    grid.psi.iter().map(Bispinor::norm_sqr).collect()
}

/// `ψ⁺α_kψ` along the lattice.
fn current(set: &MatrixSet, grid: &FieldGrid1D) -> Vec<Vector3<f64>> {
    grid.psi.iter().map(|p| vector_bilinear(set, p)).collect()
}

/// `P = ψ⁺ψ`, `S_pr = −c ψ⁺α_yψ`; forward difference in time, trapezoidal
/// average of the spatial divergence over the two snapshots.
pub fn continuity_residual(before: &FieldGrid1D, after: &FieldGrid1D, stencil: Stencil) -> Result<ContinuityReport> {
    before.compatible(after)?;
    let set = build_alpha_set();
    let d = Derivative::for_grid(stencil, before);
    let dt = after.time - before.time;
    let c = before.params.c;
    let flux = |g: &FieldGrid1D| -> Vec<f64> {
        d.apply_real(&current(&set, g).iter().map(|j| -c * j[1]).collect::<Vec<_>>())
    };
    let (p0, p1) = (probability(before), probability(after));
    let (s0, s1) = (flux(before), flux(after));
    let residual = (0..before.n())
        .map(|j| ((p1[j] - p0[j]) / dt + 0.5 * (s0[j] + s1[j])).abs())
        .fold(0.0, f64::max);
    let p_max = p0.iter().chain(&p1).copied().fold(0.0, f64::max);
    Ok(ContinuityReport {
        residual,
        scale: p_max * c / before.dy,
    })
}

/// Field energy flux `−(c/8π) ψ⁺α⃗ψ`. This is `S_pr/8π`, so it obeys
/// `∂_t U + div S = 0` with `U = ψ⁺ψ/8π`; for real fields it is minus the
/// Poynting vector of the decoded `(E, H)`.
pub fn energy_flux(set: &MatrixSet, psi: &Bispinor, c: f64) -> Vector3<f64> {
    vector_bilinear(set, psi) * (-c / (8.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressTensor {
    pub tau_ij: [[f64; 3]; 3],
    pub tau_i0: [f64; 3],
    pub tau_00: f64,
}

impl StressTensor {
    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.tau_ij[i][j] - self.tau_ij[j][i]).abs());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        (0..3).map(|i| self.tau_ij[i][i]).sum()
    }
}

/// `τ_ij = −(E_iE_j + H_iH_j) + ½δ_ij(E² + H²)`, `τ_i0 = (E×H)_i`,
/// `τ_00 = ½(E² + H²)`.
pub fn stress_tensor(f: &EMFieldPoint) -> Result<StressTensor> {
    if !f.is_real() {
        return Err(Error::invalid("field", "stress tensor needs a real field"));
    }
    let e = f.e_real();
    let h = f.h_real();
    let half = 0.5 * (e.norm_squared() + h.norm_squared());
    let mut tau_ij = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let v = -(e[i] * e[j] + h[i] * h[j]) + if i == j { half } else { 0.0 };
            tau_ij[i][j] = v;
            tau_ij[j][i] = v;
        }
    }
    let s = e.cross(&h);
    Ok(StressTensor {
        tau_ij,
        tau_i0: [s[0], s[1], s[2]],
        tau_00: half,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinAxis {
    /// spin along `z`, fields `(E_x, H_z)`
    Oz,
    /// spin along `x`, fields `(E_z, H_x)`
    Ox,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinningForce {
    /// normal component of the force density
    pub f2: f64,
    /// power density
    pub f0: f64,
}

/// Normal force of a field pair rotating at `ω_s`:
/// `f_2 = ±(1/4π)(ω_s/c) E H`, `f_0 = ±(1/4π)(ω_s/c) E²`, plus for `oz`.
pub fn spinning_force(e: f64, h: f64, omega_s: f64, c: f64, axis: SpinAxis) -> Result<SpinningForce> {
    if !(omega_s >= 0.0 && omega_s.is_finite()) {
        return Err(Error::invalid("omega_s", format!("must be non-negative, got {omega_s}")));
    }
    if !(c > 0.0) {
        return Err(Error::invalid("c", "must be positive"));
    }
    let sign = match axis {
        SpinAxis::Oz => 1.0,
        SpinAxis::Ox => -1.0,
    };
    let k = sign * omega_s / (4.0 * PI * c);
    Ok(SpinningForce {
        f2: k * e * h,
        f0: k * e * e,
    })
}

/// Max-over-lattice force densities between two snapshots, with
/// `U = ψ⁺ψ/8π`, `g = S/c²` and `S` the [`energy_flux`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LorentzForce {
    /// `−((1/c)∂_t U + c div g)`
    pub f0: f64,
    /// `−(∂_t g + grad U)`, y-component
    pub f2: f64,
    /// x-component of `−(∂_t g + grad U)`
    pub f1: f64,
    /// z-component of `−(∂_t g + grad U)`
    pub f3: f64,
}

pub fn lorentz_force(before: &FieldGrid1D, after: &FieldGrid1D, stencil: Stencil) -> Result<LorentzForce> {
    before.compatible(after)?;
    let set = build_alpha_set();
    let d = Derivative::for_grid(stencil, before);
    let dt = after.time - before.time;
    let c = before.params.c;
    let u = |g: &FieldGrid1D| -> Vec<f64> { probability(g).iter().map(|p| p / (8.0 * PI)).collect() };
    let mom = |g: &FieldGrid1D| -> Vec<Vector3<f64>> {
        g.psi.iter().map(|p| energy_flux(&set, p, c) / (c * c)).collect()
    };
    let (u0, u1) = (u(before), u(after));
    let (g0, g1) = (mom(before), mom(after));
    let du = {
        let a = d.apply_real(&u0);
        let b = d.apply_real(&u1);
        a.iter().zip(&b).map(|(a, b)| 0.5 * (a + b)).collect::<Vec<_>>()
    };
    let dg = {
        let a = d.apply_real(&g0.iter().map(|g| g[1]).collect::<Vec<_>>());
        let b = d.apply_real(&g1.iter().map(|g| g[1]).collect::<Vec<_>>());
        a.iter().zip(&b).map(|(a, b)| 0.5 * (a + b)).collect::<Vec<_>>()
    };
    let mut out = LorentzForce {
        f0: 0.0,
        f2: 0.0,
        f1: 0.0,
        f3: 0.0,
    };
    for j in 0..before.n() {
        let gt = (g1[j] - g0[j]) / dt;
        out.f0 = out.f0.max((-((u1[j] - u0[j]) / (c * dt) + c * dg[j])).abs());
        out.f2 = out.f2.max((-(gt[1] + du[j])).abs());
        out.f1 = out.f1.max(gt[0].abs());
        out.f3 = out.f3.max(gt[2].abs());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub total_u: f64,
    pub total_norm: f64,
    pub continuity_residual: f64,
    pub lorentz: LorentzForce,
    /// only populated by ring configurations
    pub lamb_residual: Option<f64>,
}

impl Diagnostics {
    pub fn is_finite(&self) -> bool {
        self.total_u.is_finite()
            && self.total_norm.is_finite()
            && self.continuity_residual.is_finite()
            && [self.lorentz.f0, self.lorentz.f1, self.lorentz.f2, self.lorentz.f3]
                .iter()
                .all(|x| x.is_finite())
            && self.lamb_residual.is_none_or(f64::is_finite)
    }
}

/// Diagnostics of the step `before → after`, totals taken at `after`.
pub fn diagnostics(before: &FieldGrid1D, after: &FieldGrid1D, stencil: Stencil) -> Result<Diagnostics> {
    Ok(Diagnostics {
        total_u: after.total_energy(),
        total_norm: after.total_norm(),
        continuity_residual: continuity_residual(before, after, stencil)?.residual,
        lorentz: lorentz_force(before, after, stencil)?,
        lamb_residual: None,
    })
}

/// `ψ⁺βψ` along the lattice, handy for reports.
pub fn scalar_density(grid: &FieldGrid1D) -> Vec<f64> {
    let set = build_alpha_set();
    grid.psi.iter().map(|p| bilinear(p, set.beta()).re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::DiracParams;
    use crate::evolution::{evolve, EvolutionConfig};
    use crate::plane_wave::{Branch, SpinIndex};
    use crate::spinor::invariant_report;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::TAU;

    fn eigen(stencil: Stencil, params: DiracParams) -> FieldGrid1D {
        FieldGrid1D::plane_wave_eigenstate(256, TAU, 1, Branch::Positive, SpinIndex::One, params, stencil)
            .unwrap()
            .0
    }

    /// Two modes on opposite branches so densities move.
    fn superposition(n: usize, params: DiracParams) -> FieldGrid1D {
        let a = FieldGrid1D::plane_wave_eigenstate(n, TAU, 1, Branch::Positive, SpinIndex::One, params, Stencil::Spectral)
            .unwrap()
            .0;
        let b = FieldGrid1D::plane_wave_eigenstate(n, TAU, 2, Branch::Negative, SpinIndex::Two, params, Stencil::Spectral)
            .unwrap()
            .0;
        FieldGrid1D {
            psi: a.psi.iter().zip(&b.psi).map(|(x, y)| *x + y.scale_real(0.6)).collect(),
            ..a
        }
    }

    #[test]
    fn derived_signs_close_and_printed_do_not() {
        for stencil in [Stencil::Central4, Stencil::Spectral] {
            let g = eigen(stencil, DiracParams::natural());
            let r = maxwell_current_residual(&g, stencil, MaxwellSigns::DERIVED);
            assert!(r.relative() < 1e-12, "{r:?}");
            let p = maxwell_current_residual(&g, stencil, MaxwellSigns::PRINTED);
            assert!(p.relative() > 0.1, "{p:?}");
        }
    }

    #[test]
    fn massless_state_has_no_current() {
        let params = DiracParams::natural().with_mass(0.0);
        let g = superposition(64, params);
        let r = maxwell_current_residual(&g, Stencil::Central4, MaxwellSigns::DERIVED);
        assert_eq!(r.current_scale, 0.0);
        assert!(r.relative() < 1e-12);
        let zero = FieldGrid1D::zeros(16, 0.1, params).unwrap();
        assert_eq!(maxwell_current_residual(&zero, Stencil::Central4, MaxwellSigns::DERIVED).residual, 0.0);
    }

    #[test]
    fn continuity_on_eigenstate_and_zero() {
        let g = eigen(Stencil::Central4, DiracParams::natural());
        let cfg = EvolutionConfig::new(0.5 * g.dy, 1);
        let next = evolve(&g, &cfg, |_, _, _| {}).unwrap();
        let r = continuity_residual(&g, &next, Stencil::Central4).unwrap();
        assert!(r.relative() < 1e-6, "{r:?}");

        let z = FieldGrid1D::zeros(32, 0.1, DiracParams::natural()).unwrap();
        let z1 = evolve(&z, &EvolutionConfig::new(0.01, 1), |_, _, _| {}).unwrap();
        assert_eq!(continuity_residual(&z, &z1, Stencil::Central4).unwrap().residual, 0.0);
        assert!(continuity_residual(&z1, &z, Stencil::Central4).is_err());
    }

    #[test]
    fn stress_tensor_examples() {
        let t = stress_tensor(&EMFieldPoint::real([0.0, 0.0, 1.0], [0.0; 3])).unwrap();
        assert_eq!(t.tau_00, 0.5);
        assert_eq!(t.tau_ij[2][2], -0.5);
        assert_eq!(t.tau_ij[0][0], 0.5);
        let z = stress_tensor(&EMFieldPoint::zero()).unwrap();
        assert_eq!(z.tau_00, 0.0);
        assert!(z.tau_ij.iter().flatten().chain(&z.tau_i0).all(|&x| x == 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let mut v = || [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)];
            let f = EMFieldPoint::real(v(), v());
            let t = stress_tensor(&f).unwrap();
            assert_eq!(t.asymmetry(), 0.0);
            // trace = (E² + H²)/2 = τ_00 in three dimensions
            assert!((t.trace() - t.tau_00).abs() < 1e-12);
            let inv = invariant_report(&f, 1.0);
            assert!((t.tau_00 - 4.0 * PI * inv.energy_density).abs() < 1e-12);
            for i in 0..3 {
                assert!((t.tau_i0[i] - 4.0 * PI * inv.poynting[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spinning_force_examples() {
        let oz = spinning_force(1.0, 1.0, 1.0, 1.0, SpinAxis::Oz).unwrap();
        assert_eq!(oz.f2, 1.0 / (4.0 * PI));
        assert_eq!(oz.f0, 1.0 / (4.0 * PI));
        let ox = spinning_force(1.0, 1.0, 1.0, 1.0, SpinAxis::Ox).unwrap();
        assert_eq!(ox.f2, -1.0 / (4.0 * PI));
        assert_eq!(ox.f0, -1.0 / (4.0 * PI));
        let z = spinning_force(0.0, 0.0, 3.0, 1.0, SpinAxis::Oz).unwrap();
        assert_eq!((z.f2, z.f0), (0.0, 0.0));
        let linear = spinning_force(2.0, 1.5, 0.0, 1.0, SpinAxis::Ox).unwrap();
        assert_eq!((linear.f2.abs(), linear.f0.abs()), (0.0, 0.0));
        assert!(spinning_force(1.0, 1.0, -1.0, 1.0, SpinAxis::Oz).is_err());
    }

    #[test]
    fn energy_flux_is_minus_poynting_for_real_fields() {
        let set = build_alpha_set();
        let f = EMFieldPoint::real([0.3, 0.0, -1.1], [0.8, 0.0, 0.4]);
        let psi = crate::spinor::to_bispinor(&f).unwrap();
        let s = energy_flux(&set, &psi, 2.0);
        let p = invariant_report(&f, 2.0).poynting;
        for k in 0..3 {
            assert!((s[k] + p[k]).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenstate_forces_vanish() {
        let g = eigen(Stencil::Central4, DiracParams::natural());
        let next = evolve(&g, &EvolutionConfig::new(0.5 * g.dy, 1), |_, _, _| {}).unwrap();
        let d = diagnostics(&g, &next, Stencil::Central4).unwrap();
        assert!(d.is_finite());
        assert!(d.lorentz.f1 < 1e-9 && d.lorentz.f3 < 1e-9, "{:?}", d.lorentz);
        assert!(d.lorentz.f0 < 1e-9 && d.lorentz.f2 < 1e-9, "{:?}", d.lorentz);
        assert!((d.total_u - d.total_norm / (8.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn continuity_converges_under_refinement() {
        let params = DiracParams::natural();
        let residual = |n: usize| {
            let g = superposition(n, params);
            let cfg = EvolutionConfig::new(0.05 * g.dy, 1);
            let next = evolve(&g, &cfg, |_, _, _| {}).unwrap();
            continuity_residual(&g, &next, Stencil::Central4).unwrap().residual
        };
        let ratio = residual(32) / residual(64);
        assert!(ratio >= 8.0, "refinement ratio {ratio}");
    }
}
