//! Free-particle plane waves `ψ_j = b_j e^{i(k·r − ωt + φ)}`.
//!
//! Substituting the plane wave into `(ε̂ + cα·p̂ + βmc²)ψ = 0` gives a 4×4
//! linear system for `B_j = b_j e^{iφ}`; its determinant vanishes when
//! `ε² = c²p² + m²c⁴`. [`build_spinor`] returns the four closed-form
//! families (two per energy sign), stored unnormalized.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::DiracParams;
use crate::spinor::{Bispinor, Complex4x4, MatrixSet, I};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Positive,
    Negative,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Positive => 1.0,
            Branch::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinIndex {
    One,
    Two,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveSolution {
    pub momentum: Vector3<f64>,
    pub energy: f64,
    pub branch: Branch,
    pub index: SpinIndex,
    /// Published amplitudes `b_j`, before the phase factor.
    pub amplitudes: Bispinor,
    pub phase: f64,
}

impl PlaneWaveSolution {
    /// `B = b e^{iφ}`
    pub fn spinor(&self) -> Bispinor {
        self.amplitudes.scale(Complex64::from_polar(1.0, self.phase))
    }

    pub fn omega(&self, params: &DiracParams) -> f64 {
        self.energy / params.hbar
    }

    pub fn wave_vector(&self, params: &DiracParams) -> Vector3<f64> {
        self.momentum / params.hbar
    }

    /// `ε² − c²p² − m²c⁴` relative to `m²c⁴ + c²p²`.
    pub fn dispersion_defect(&self, params: &DiracParams) -> f64 {
        let mc2 = params.rest_energy();
        let cp2 = params.c * params.c * self.momentum.norm_squared();
        let scale = mc2 * mc2 + cp2;
        if scale == 0.0 {
            return self.energy.abs();
        }
        (self.energy * self.energy - cp2 - mc2 * mc2) / scale
    }
}

/// `ε_± = ±(c²p² + m²c⁴)^{1/2}`
pub fn dispersion_energy(p: &Vector3<f64>, params: &DiracParams, branch: Branch) -> f64 {
    let mc2 = params.rest_energy();
    let cp = params.c * p.norm();
    branch.sign() * cp.hypot(mc2)
}

/// Closed-form amplitudes for an arbitrary (possibly off-shell) energy.
pub fn spinor_amplitudes(
    p: &Vector3<f64>,
    energy: f64,
    params: &DiracParams,
    branch: Branch,
    index: SpinIndex,
) -> Bispinor {
    let c = params.c;
    let mc2 = params.rest_energy();
    let pz = Complex64::new(c * p[2], 0.0);
    let p_plus = Complex64::new(c * p[0], c * p[1]);
    let p_minus = Complex64::new(c * p[0], -c * p[1]);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    match (branch, index) {
        (Branch::Positive, SpinIndex::One) => {
            let d = energy + mc2;
            Bispinor::new(-pz / d, -p_plus / d, one, zero)
        }
        (Branch::Positive, SpinIndex::Two) => {
            let d = energy + mc2;
            Bispinor::new(-p_minus / d, pz / d, zero, one)
        }
        (Branch::Negative, SpinIndex::One) => {
            let d = -energy + mc2;
            Bispinor::new(one, zero, pz / d, p_plus / d)
        }
        (Branch::Negative, SpinIndex::Two) => {
            let d = -energy + mc2;
            Bispinor::new(zero, one, p_minus / d, -pz / d)
        }
    }
}

/// On-shell solution with `ε` from [`dispersion_energy`].
pub fn build_spinor(
    p: &Vector3<f64>,
    params: &DiracParams,
    branch: Branch,
    index: SpinIndex,
    phase: f64,
) -> PlaneWaveSolution {
    let energy = dispersion_energy(p, params, branch);
    PlaneWaveSolution {
        momentum: *p,
        energy,
        branch,
        index,
        amplitudes: spinor_amplitudes(p, energy, params, branch, index),
        phase,
    }
}

/// The same solution scaled to `B⁺B = 1`.
pub fn unit_normalized(sol: &PlaneWaveSolution) -> Bispinor {
    let b = sol.spinor();
    b.scale_real(1.0 / b.norm())
}

/// The four rows of the linear system, written out component by component.
pub fn system_rows(energy: f64, p: &Vector3<f64>, b: &Bispinor, params: &DiracParams) -> [Complex64; 4] {
    let c = params.c;
    let mc2 = params.rest_energy();
    let [b1, b2, b3, b4] = b.components();
    let pz = c * p[2];
    let p_plus = Complex64::new(c * p[0], c * p[1]);
    let p_minus = Complex64::new(c * p[0], -c * p[1]);
    [
        (energy + mc2) * b1 + pz * b3 + p_minus * b4,
        (energy + mc2) * b2 + p_plus * b3 - pz * b4,
        (energy - mc2) * b3 + pz * b1 + p_minus * b2,
        (energy - mc2) * b4 + p_plus * b1 - pz * b2,
    ]
}

/// Max absolute row value of the linear system at `(ε, p, B)`.
pub fn system_residual(sol: &PlaneWaveSolution, params: &DiracParams) -> f64 {
    system_rows(sol.energy, &sol.momentum, &sol.spinor(), params)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Natural size of the system rows: `(|ε| + mc² + c|p|)·‖B‖`.
pub fn system_scale(sol: &PlaneWaveSolution, params: &DiracParams) -> f64 {
    (sol.energy.abs() + params.rest_energy() + params.c * sol.momentum.norm()) * sol.spinor().norm()
}

/// `ε I + c α⃗·p + β m c²`, the matrix route to the same system.
pub fn dirac_matrix(set: &MatrixSet, energy: f64, p: &Vector3<f64>, params: &DiracParams) -> Complex4x4 {
    set.identity() * Complex64::new(energy, 0.0)
        + set.alpha_dot(&(p * params.c))
        + set.beta() * Complex64::new(params.rest_energy(), 0.0)
}

/// `ψ(r, t) = B e^{i(k·r − ωt)}`, with `φ` already inside `B`.
pub fn wavefunction(sol: &PlaneWaveSolution, r: &Vector3<f64>, t: f64, params: &DiracParams) -> Bispinor {
    let k = sol.wave_vector(params);
    let arg = k.dot(r) - sol.omega(params) * t;
    sol.spinor().scale(Complex64::from_polar(1.0, arg))
}

/// `‖(ε̂ + cα·p̂ + βmc²)ψ‖_max` at `(r, t)`, with the operators applied
/// analytically (`ε̂ψ = ħω ψ`, `p̂ψ = ħk ψ`).
pub fn dirac_operator_residual(
    set: &MatrixSet,
    sol: &PlaneWaveSolution,
    r: &Vector3<f64>,
    t: f64,
    params: &DiracParams,
) -> f64 {
    let psi = wavefunction(sol, r, t, params);
    let k = sol.wave_vector(params);
    let eps_psi = psi.scale_real(params.hbar * sol.omega(params));
    let mut out = eps_psi + psi.apply(set.beta()).scale_real(params.rest_energy());
    for axis in 0..3 {
        out = out + psi.apply(set.spatial(axis)).scale_real(params.c * params.hbar * k[axis]);
    }
    out.max_abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    /// `G[a][b] = ⟨B̂_a, B̂_b⟩` as `(re, im)` pairs.
    pub gram: [[(f64, f64); 2]; 2],
    pub max_off_diagonal: f64,
    pub max_diagonal_defect: f64,
}

/// Gram matrix of the unit-normalized index-1/index-2 spinors of one branch.
pub fn orthogonality_check(p: &Vector3<f64>, params: &DiracParams, branch: Branch) -> GramReport {
    let s = [SpinIndex::One, SpinIndex::Two]
        .map(|idx| unit_normalized(&build_spinor(p, params, branch, idx, 0.0)));
    let mut gram = [[(0.0, 0.0); 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            let z = s[a].inner(&s[b]);
            gram[a][b] = (z.re, z.im);
        }
    }
    let off = |z: (f64, f64)| z.0.hypot(z.1);
    GramReport {
        gram,
        max_off_diagonal: off(gram[0][1]).max(off(gram[1][0])),
        max_diagonal_defect: (0..2)
            .map(|a| (gram[a][a].0 - 1.0).hypot(gram[a][a].1))
            .fold(0.0, f64::max),
    }
}

/// Returns `(deviation, phase)` minimizing `max_j |a_j − e^{iθ} b_j|`
/// over a single global phase `θ = arg⟨b, a⟩`.
pub fn phase_matched_deviation(a: &Bispinor, b: &Bispinor) -> (f64, f64) {
    let overlap = b.inner(a);
    let theta = if overlap.norm() == 0.0 { 0.0 } else { overlap.arg() };
    let rotated = b.scale(Complex64::from_polar(1.0, theta));
    ((*a - rotated).max_abs(), theta)
}

/// Outcome of substituting `p_x = p_z = 0`, `p_y = mc`, `ε_± = ±mc²`, `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Specialization {
    pub branch: Branch,
    pub index: SpinIndex,
    pub spinor: Bispinor,
    /// The tabulated pattern for this family.
    pub published: Bispinor,
    /// Max deviation from `published` after one global phase.
    pub phase_matched_deviation: f64,
    /// Components expected to vanish for this family, 0-based.
    pub zero_components: [usize; 2],
    pub sparsity_exact: bool,
    /// `ε` used in the substitution (`±mc²`).
    pub literal_energy: f64,
    /// `ε` that the dispersion relation gives at `p_y = mc`.
    pub dispersion_energy: f64,
    /// `(ε² − c²p² − m²c⁴)/m²c⁴` at the literal energy; −1 means off shell
    /// by a full rest energy squared.
    pub dispersion_violation: f64,
    /// `|E-type component| / |H-type component|`, H read as `|ψ₃|, |ψ₄|`.
    pub e_to_h_ratio: f64,
    /// After rotating the E-type components real, the H-type slots are
    /// purely imaginary (E ⟂ H in the encoding).
    pub e_real_h_imaginary: bool,
}

/// The tabulated `p_y = mc`, `φ = π/2` spinors.
pub fn published_pattern(branch: Branch, index: SpinIndex) -> Bispinor {
    let h = Complex64::new(0.5, 0.0);
    let z = Complex64::new(0.0, 0.0);
    match (branch, index) {
        (Branch::Positive, SpinIndex::One) => Bispinor::new(z, h, I, z),
        (Branch::Positive, SpinIndex::Two) => Bispinor::new(-h, z, z, I),
        (Branch::Negative, SpinIndex::One) => Bispinor::new(I, z, z, -h),
        (Branch::Negative, SpinIndex::Two) => Bispinor::new(z, I, h, z),
    }
}

pub fn specialize_y(params: &DiracParams, branch: Branch, index: SpinIndex, phase: f64) -> Specialization {
    let p = Vector3::new(0.0, params.mass * params.c, 0.0);
    let mc2 = params.rest_energy();
    let literal_energy = branch.sign() * mc2;
    let b = spinor_amplitudes(&p, literal_energy, params, branch, index);
    let spinor = b.scale(Complex64::from_polar(1.0, phase));
    let published = published_pattern(branch, index);
    let zero_components = match (branch, index) {
        (Branch::Positive, SpinIndex::One) | (Branch::Negative, SpinIndex::Two) => [0, 3],
        (Branch::Positive, SpinIndex::Two) | (Branch::Negative, SpinIndex::One) => [1, 2],
    };
    let comps = spinor.components();
    let sparsity_exact = zero_components.iter().all(|&j| comps[j].norm() == 0.0)
        && (0..4)
            .filter(|j| !zero_components.contains(j))
            .all(|j| comps[j].norm() > 0.0);

    let e_mag = comps[0].norm().max(comps[1].norm());
    let h_mag = comps[2].norm().max(comps[3].norm());
    let e_comp = if comps[0].norm() >= comps[1].norm() { comps[0] } else { comps[1] };
    let rot = if e_mag > 0.0 { e_comp.conj() / e_mag } else { Complex64::new(1.0, 0.0) };
    let tol = 1e-14 * spinor.max_abs().max(1.0);
    let e_real_h_imaginary = (0..2).all(|j| (comps[j] * rot).im.abs() <= tol)
        && (2..4).all(|j| (comps[j] * rot).re.abs() <= tol);

    let cp = params.c * p.norm();
    Specialization {
        branch,
        index,
        spinor,
        published,
        phase_matched_deviation: phase_matched_deviation(&spinor, &published).0,
        zero_components,
        sparsity_exact,
        literal_energy,
        dispersion_energy: branch.sign() * cp.hypot(mc2),
        dispersion_violation: (literal_energy * literal_energy - cp * cp - mc2 * mc2) / (mc2 * mc2),
        e_to_h_ratio: e_mag / h_mag,
        e_real_h_imaginary,
    }
}

/// All four families at the default phase `φ = π/2`.
pub fn specialize_all(params: &DiracParams) -> [Specialization; 4] {
    [
        (Branch::Positive, SpinIndex::One),
        (Branch::Positive, SpinIndex::Two),
        (Branch::Negative, SpinIndex::One),
        (Branch::Negative, SpinIndex::Two),
    ]
    .map(|(b, i)| specialize_y(params, b, i, FRAC_PI_2))
}

pub const FAMILIES: [(Branch, SpinIndex); 4] = [
    (Branch::Positive, SpinIndex::One),
    (Branch::Positive, SpinIndex::Two),
    (Branch::Negative, SpinIndex::One),
    (Branch::Negative, SpinIndex::Two),
];
