//! Periodic 1-D lattice integration of `(ε̂ + cα·p̂ + βmc²)ψ = 0` for
//! `ψ = ψ(y, t)`.
//!
//! With `ε̂ = iħ∂_t` and `p̂ = −iħ∂_y` the system is
//!
//! ```text
//! ∂_t ψ = c α_y ∂_y ψ + i ω β ψ,    ω = m c² / ħ
//! ```
//!
//! integrated with classical RK4 in time and either a 4th-order central or a
//! Fourier spectral derivative in space.

mod diagnostics;
mod ring;

pub use diagnostics::{
    continuity_residual, diagnostics, energy_flux, lorentz_force, maxwell_current_residual,
    scalar_density, spinning_force, stress_tensor, ContinuityReport, Diagnostics, LorentzForce, MaxwellResidual,
    MaxwellSigns, SpinAxis, SpinningForce, StressTensor,
};
pub use ring::{lamb_residual, CylPoint, CylVector, LambReport, RigidRing, RingField, RingSampling, ShearedRing};

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::Vector3;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::constants::DiracParams;
use crate::error::{Error, Result};
use crate::plane_wave::{build_spinor, Branch, PlaneWaveSolution, SpinIndex};
use crate::spinor::{build_alpha_set, from_bispinor, Bispinor, MatrixSet, I};

pub const MIN_POINTS: usize = 8;
pub const MAX_CFL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stencil {
    /// `(−f₊₂ + 8f₊₁ − 8f₋₁ + f₋₂) / 12h`
    Central4,
    /// `ifft(i k fft(f))`, Nyquist mode zeroed
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    Rk4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    pub dt: f64,
    pub steps: usize,
    pub scheme: Scheme,
    pub cfl: f64,
    pub stencil: Stencil,
}

impl EvolutionConfig {
    pub fn new(dt: f64, steps: usize) -> Self {
        Self {
            dt,
            steps,
            scheme: Scheme::Rk4,
            cfl: MAX_CFL,
            stencil: Stencil::Central4,
        }
    }

    pub fn with_stencil(self, stencil: Stencil) -> Self {
        Self { stencil, ..self }
    }

    /// Checks `c·dt/dy ≤ cfl ≤ 0.5`.
    pub fn check_cfl(&self, grid: &FieldGrid1D) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid("dt", format!("must be positive and finite, got {}", self.dt)));
        }
        let limit = self.cfl.min(MAX_CFL);
        let courant = grid.params.c * self.dt / grid.dy;
        if self.cfl > MAX_CFL || courant > limit {
            return Err(Error::CflViolation {
                courant,
                limit,
                suggested_dt: limit * grid.dy / grid.params.c,
            });
        }
        Ok(())
    }
}

/// Periodic lattice of bispinors along `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid1D {
    pub dy: f64,
    pub psi: Vec<Bispinor>,
    pub time: f64,
    pub params: DiracParams,
}

impl FieldGrid1D {
    pub fn new(psi: Vec<Bispinor>, dy: f64, params: DiracParams) -> Result<Self> {
        if psi.len() < MIN_POINTS {
            return Err(Error::GridTooSmall {
                min: MIN_POINTS,
                got: psi.len(),
            });
        }
        if !(dy > 0.0 && dy.is_finite()) {
            return Err(Error::invalid("dy", format!("must be positive and finite, got {dy}")));
        }
        Ok(Self {
            dy,
            psi,
            time: 0.0,
            params,
        })
    }

    pub fn zeros(n: usize, dy: f64, params: DiracParams) -> Result<Self> {
        Self::new(vec![Bispinor::zero(); n], dy, params)
    }

    /// Samples `f(y)` at `y_j = j·dy`.
    pub fn from_fn(n: usize, length: f64, params: DiracParams, f: impl Fn(f64) -> Bispinor) -> Result<Self> {
        let dy = length / n as f64;
        Self::new((0..n).map(|j| f(j as f64 * dy)).collect(), dy, params)
    }

    /// Plane-wave eigenstate of the *discrete* operator: wavenumber
    /// `k = 2π·mode/L` on the lattice, spinor built at the stencil's effective
    /// momentum `ħ k_eff` so the state only picks up a phase.
    pub fn plane_wave_eigenstate(
        n: usize,
        length: f64,
        mode: i64,
        branch: Branch,
        index: SpinIndex,
        params: DiracParams,
        stencil: Stencil,
    ) -> Result<(Self, PlaneWaveSolution)> {
        let dy = length / n as f64;
        let k = 2.0 * PI * mode as f64 / length;
        let k_eff = effective_wavenumber(k, dy, stencil);
        let sol = build_spinor(&Vector3::new(0.0, params.hbar * k_eff, 0.0), &params, branch, index, 0.0);
        let b = sol.spinor();
        let grid = Self::from_fn(n, length, params, |y| b.scale(Complex64::from_polar(1.0, k * y)))?;
        Ok((grid, sol))
    }

    /// Massless right-moving mode: eigenvector of `α_y` with eigenvalue −1,
    /// so `∂_t ψ = −c ∂_y ψ`.
    pub fn right_moving_mode(n: usize, length: f64, mode: i64, params: DiracParams) -> Result<Self> {
        let k = 2.0 * PI * mode as f64 / length;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // α_y v = −v for v = (1, 0, 0, i)/√2 in the Dirac–Pauli set
        let v = Bispinor::new(s.into(), 0.0.into(), 0.0.into(), I * s);
        Self::from_fn(n, length, params, |y| v.scale(Complex64::from_polar(1.0, k * y)))
    }

    pub fn n(&self) -> usize {
        self.psi.len()
    }

    pub fn length(&self) -> f64 {
        self.dy * self.n() as f64
    }

    pub fn mass_omega(&self) -> f64 {
        self.params.mass_omega()
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.dy
    }

    /// `∫ψ⁺ψ dy`
    pub fn total_norm(&self) -> f64 {
        self.psi.iter().map(Bispinor::norm_sqr).sum::<f64>() * self.dy
    }

    /// `∫U dy` with `U = (|E|² + |H|²)/8π` from the decoded fields.
    pub fn total_energy(&self) -> f64 {
        self.psi
            .iter()
            .map(|p| from_bispinor(p).intensity() / (8.0 * PI))
            .sum::<f64>()
            * self.dy
    }

    /// Rescaled so that `∫ψ′⁺ψ′ dy = 1`.
    pub fn normalized(&self) -> Result<Self> {
        let norm = self.total_norm();
        if norm == 0.0 {
            return Err(Error::ZeroNormalization);
        }
        let s = 1.0 / norm.sqrt();
        Ok(Self {
            psi: self.psi.iter().map(|p| p.scale_real(s)).collect(),
            ..self.clone()
        })
    }

    /// Rescaled so that the field energy `∫U dy` equals `m c²`; dividing
    /// that state by `√(8π m c²)` is then [`FieldGrid1D::normalized`].
    pub fn energy_normalized(&self) -> Result<Self> {
        let energy = self.total_energy();
        if energy == 0.0 {
            return Err(Error::ZeroNormalization);
        }
        let s = (self.params.rest_energy() / energy).sqrt();
        Ok(Self {
            psi: self.psi.iter().map(|p| p.scale_real(s)).collect(),
            ..self.clone()
        })
    }

    /// Max pointwise distance to another snapshot.
    pub fn max_distance(&self, other: &FieldGrid1D) -> f64 {
        self.psi
            .iter()
            .zip(&other.psi)
            .map(|(a, b)| (*a - *b).max_abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.psi.iter().map(Bispinor::max_abs).fold(0.0, f64::max)
    }

    pub fn component(&self, c: usize) -> Vec<Complex64> {
        self.psi.iter().map(|p| p.0[c]).collect()
    }

    fn compatible(&self, other: &FieldGrid1D) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::IncompatibleGrids("point counts differ"));
        }
        if self.dy != other.dy {
            return Err(Error::IncompatibleGrids("lattice spacings differ"));
        }
        if other.time <= self.time {
            return Err(Error::IncompatibleGrids("second grid must be later"));
        }
        Ok(())
    }
}

/// Wavenumber the stencil actually differentiates `e^{iky}` with.
pub fn effective_wavenumber(k: f64, dy: f64, stencil: Stencil) -> f64 {
    match stencil {
        Stencil::Central4 => (8.0 * (k * dy).sin() - (2.0 * k * dy).sin()) / (6.0 * dy),
        Stencil::Spectral => k,
    }
}

/// Spatial derivative operator on a fixed lattice size.
/// forward and inverse plans
type FftPair = (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>);

#[derive(Clone)]
pub struct Derivative {
    stencil: Stencil,
    dy: f64,
    n: usize,
    fft: Option<FftPair>,
}

impl std::fmt::Debug for Derivative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Derivative")
            .field("stencil", &self.stencil)
            .field("dy", &self.dy)
            .field("n", &self.n)
            .finish()
    }
}

impl Derivative {
    pub fn new(stencil: Stencil, n: usize, dy: f64) -> Self {
        let fft = match stencil {
            Stencil::Central4 => None,
            Stencil::Spectral => {
                let mut planner = FftPlanner::new();
                Some((planner.plan_fft_forward(n), planner.plan_fft_inverse(n)))
            }
        };
        Self { stencil, dy, n, fft }
    }

    pub fn for_grid(stencil: Stencil, grid: &FieldGrid1D) -> Self {
        Self::new(stencil, grid.n(), grid.dy)
    }

    pub fn apply(&self, f: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.n, "derivative operator built for a different lattice");
        let n = self.n;
        match &self.fft {
            None => {
                let inv = 1.0 / (12.0 * self.dy);
                (0..n)
                    .map(|j| {
                        let at = |o: isize| f[(j as isize + o).rem_euclid(n as isize) as usize];
                        (-at(2) + at(1) * 8.0 - at(-1) * 8.0 + at(-2)) * inv
                    })
                    .collect()
            }
            Some((fwd, inv)) => {
                let mut buf = f.to_vec();
                fwd.process(&mut buf);
                let length = self.dy * n as f64;
                for (m, z) in buf.iter_mut().enumerate() {
                    let signed = if m < n / 2 {
                        m as f64
                    } else if m == n / 2 && n.is_multiple_of(2) {
                        0.0
                    } else {
                        m as f64 - n as f64
                    };
                    *z *= I * (2.0 * PI * signed / length);
                }
                inv.process(&mut buf);
                let s = 1.0 / n as f64;
                buf.iter().map(|z| z * s).collect()
            }
        }
    }

    pub fn apply_real(&self, f: &[f64]) -> Vec<f64> {
        let z: Vec<Complex64> = f.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.apply(&z).into_iter().map(|z| z.re).collect()
    }

    /// Derivative of each bispinor component.
    pub fn apply_bispinor(&self, psi: &[Bispinor]) -> Vec<Bispinor> {
        let cols: Vec<Vec<Complex64>> = (0..4)
            .map(|c| self.apply(&psi.iter().map(|p| p.0[c]).collect::<Vec<_>>()))
            .collect();
        (0..psi.len())
            .map(|j| Bispinor::new(cols[0][j], cols[1][j], cols[2][j], cols[3][j]))
            .collect()
    }
}

/// RK4 integrator bound to one lattice and stencil.
#[derive(Debug, Clone)]
pub struct Integrator {
    set: MatrixSet,
    derivative: Derivative,
    c: f64,
    omega: f64,
}

impl Integrator {
    pub fn new(grid: &FieldGrid1D, stencil: Stencil) -> Self {
        Self::with_matrices(build_alpha_set(), grid, stencil)
    }

    pub fn with_matrices(set: MatrixSet, grid: &FieldGrid1D, stencil: Stencil) -> Self {
        Self {
            set,
            derivative: Derivative::for_grid(stencil, grid),
            c: grid.params.c,
            omega: grid.mass_omega(),
        }
    }

    pub fn derivative(&self) -> &Derivative {
        &self.derivative
    }

    /// `c α_y ∂_y ψ + i ω β ψ`
    pub fn rhs(&self, psi: &[Bispinor]) -> Vec<Bispinor> {
        let d = self.derivative.apply_bispinor(psi);
        let alpha_y = self.set.spatial(1) * Complex64::new(self.c, 0.0);
        let mass = self.set.beta() * (I * self.omega);
        psi.iter()
            .zip(d)
            .map(|(p, dp)| dp.apply(&alpha_y) + p.apply(&mass))
            .collect()
    }

    pub fn step(&self, grid: &FieldGrid1D, dt: f64) -> FieldGrid1D {
        let axpy = |base: &[Bispinor], k: &[Bispinor], s: f64| -> Vec<Bispinor> {
            base.iter().zip(k).map(|(b, k)| *b + k.scale_real(s)).collect()
        };
        let y0 = &grid.psi;
        let k1 = self.rhs(y0);
        let k2 = self.rhs(&axpy(y0, &k1, 0.5 * dt));
        let k3 = self.rhs(&axpy(y0, &k2, 0.5 * dt));
        let k4 = self.rhs(&axpy(y0, &k3, dt));
        let psi = (0..y0.len())
            .map(|j| y0[j] + (k1[j] + k2[j].scale_real(2.0) + k3[j].scale_real(2.0) + k4[j]).scale_real(dt / 6.0))
            .collect();
        FieldGrid1D {
            psi,
            time: grid.time + dt,
            ..grid.clone()
        }
    }
}

/// Advances `grid` by one `cfg.dt`; refuses if the CFL bound is violated.
pub fn step(grid: &FieldGrid1D, cfg: &EvolutionConfig) -> Result<FieldGrid1D> {
    cfg.check_cfl(grid)?;
    Ok(Integrator::new(grid, cfg.stencil).step(grid, cfg.dt))
}

/// Runs `cfg.steps` steps, calling `observe(step_index, before, after)`
/// after each one.
pub fn evolve(
    grid: &FieldGrid1D,
    cfg: &EvolutionConfig,
    mut observe: impl FnMut(usize, &FieldGrid1D, &FieldGrid1D),
) -> Result<FieldGrid1D> {
    cfg.check_cfl(grid)?;
    let integrator = Integrator::new(grid, cfg.stencil);
    let mut current = grid.clone();
    for s in 0..cfg.steps {
        let next = integrator.step(&current, cfg.dt);
        observe(s + 1, &current, &next);
        current = next;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> DiracParams {
        DiracParams::natural()
    }

    #[test]
    fn small_grids_are_rejected() {
        assert!(matches!(
            FieldGrid1D::zeros(4, 0.1, nat()),
            Err(Error::GridTooSmall { min: 8, got: 4 })
        ));
    }

    #[test]
    fn derivative_of_a_mode_uses_the_effective_wavenumber() {
        let n = 64;
        let length = 2.0 * PI;
        let dy = length / n as f64;
        let k = 3.0;
        let f: Vec<Complex64> = (0..n).map(|j| Complex64::from_polar(1.0, k * j as f64 * dy)).collect();
        for stencil in [Stencil::Central4, Stencil::Spectral] {
            let d = Derivative::new(stencil, n, dy).apply(&f);
            let ke = effective_wavenumber(k, dy, stencil);
            for j in 0..n {
                assert!((d[j] - I * ke * f[j]).norm() < 1e-12, "{stencil:?}");
            }
        }
    }

    #[test]
    fn central_stencil_is_fourth_order() {
        let err = |n: usize| {
            let dy = 2.0 * PI / n as f64;
            let f: Vec<f64> = (0..n).map(|j| (j as f64 * dy).sin()).collect();
            let d = Derivative::new(Stencil::Central4, n, dy).apply_real(&f);
            (0..n).map(|j| (d[j] - (j as f64 * dy).cos()).abs()).fold(0.0, f64::max)
        };
        let ratio = err(32) / err(64);
        assert!((14.0..18.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn cfl_violation_is_refused_with_suggestion() {
        let grid = FieldGrid1D::zeros(16, 0.1, nat()).unwrap();
        let cfg = EvolutionConfig::new(0.06, 1);
        match step(&grid, &cfg) {
            Err(Error::CflViolation { suggested_dt, .. }) => assert!((suggested_dt - 0.05).abs() < 1e-15),
            other => panic!("expected CFL refusal, got {other:?}"),
        }
        let cfg = EvolutionConfig { cfl: 0.8, ..EvolutionConfig::new(0.01, 1) };
        assert!(step(&grid, &cfg).is_err());
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let grid = FieldGrid1D::zeros(32, 0.1, nat()).unwrap();
        let next = step(&grid, &EvolutionConfig::new(0.04, 1)).unwrap();
        assert_eq!(next.max_abs(), 0.0);
        assert!((next.time - 0.04).abs() < 1e-16);
    }

    #[test]
    fn eigenstate_only_rotates_phase() {
        let n = 256;
        let (grid, sol) = FieldGrid1D::plane_wave_eigenstate(
            n,
            2.0 * PI,
            1,
            Branch::Positive,
            SpinIndex::One,
            nat(),
            Stencil::Central4,
        )
        .unwrap();
        let dt = 0.5 * grid.dy;
        let next = step(&grid, &EvolutionConfig::new(dt, 1)).unwrap();
        let phase = Complex64::from_polar(1.0, -sol.energy * dt);
        let mut worst: f64 = 0.0;
        for (a, b) in next.psi.iter().zip(&grid.psi) {
            worst = worst.max((*a - b.scale(phase)).max_abs());
        }
        assert!(worst < 1e-10, "phase error {worst}");
        assert!(((next.total_norm() - grid.total_norm()) / grid.total_norm()).abs() < 1e-10);
    }

    #[test]
    fn massless_mode_returns_after_one_period() {
        let n = 256;
        let length = 2.0 * PI;
        let params = nat().with_mass(0.0);
        let grid = FieldGrid1D::right_moving_mode(n, length, 1, params).unwrap();
        // period L/c split into an integer number of steps with c dt/dy = 0.5
        let steps = 2 * n;
        let dt = length / params.c / steps as f64;
        let cfg = EvolutionConfig::new(dt, steps).with_stencil(Stencil::Spectral);
        let end = evolve(&grid, &cfg, |_, _, _| {}).unwrap();
        let rel = end.max_distance(&grid) / grid.max_abs();
        assert!(rel < 1e-8, "relative return error {rel}");
    }

    #[test]
    fn normalization_wrappers() {
        let params = DiracParams { mass: 2.0, c: 1.5, hbar: 1.0 };
        let length = 3.0;
        let grid = FieldGrid1D::from_fn(64, length, params, |_| {
            Bispinor::new(Complex64::new(0.7, 0.0), 0.0.into(), Complex64::new(0.0, 0.2), 0.0.into())
        })
        .unwrap();
        let u = grid.normalized().unwrap();
        assert!((u.total_norm() - 1.0).abs() < 1e-12);
        let e = grid.energy_normalized().unwrap();
        assert!((e.total_energy() - params.rest_energy()).abs() < 1e-12 * params.rest_energy());
        let scaled = FieldGrid1D {
            psi: grid.psi.iter().map(|p| p.scale_real(7.5)).collect(),
            ..grid.clone()
        };
        assert!(scaled.normalized().unwrap().max_distance(&u) < 1e-15);
        assert!(FieldGrid1D::zeros(8, 0.1, params).unwrap().normalized().is_err());
    }
}
