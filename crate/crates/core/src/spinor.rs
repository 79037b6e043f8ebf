//! α-matrix algebra, the bispinor ↔ field mapping and bilinear covariants.
//!
//! The mapping is `ψ = (E_z, E_x, iH_z, iH_x)` for a wave along `y`
//! (`E_y = H_y = 0`). With the Dirac–Pauli matrices the bilinears become
//! field invariants:
//!
//! | bilinear   | field form        |
//! |------------|-------------------|
//! | `ψ⁺α₄ψ`    | `E² − H²`         |
//! | `ψ⁺α₀ψ`    | `E² + H² = 8πU`   |
//! | `ψ⁺α_yψ`   | `2 (E × H)_y`     |
//! | `ψ⁺α₅ψ`    | `2 E·H`           |

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix4, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::DiracParams;
use crate::error::{Error, Result};

pub type Complex4x4 = Matrix4<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Four complex field amplitudes; serialized as `[[re, im]; 4]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[Complex64; 4]", into = "[Complex64; 4]")]
pub struct Bispinor(pub Vector4<Complex64>);

impl From<[Complex64; 4]> for Bispinor {
    fn from(c: [Complex64; 4]) -> Self {
        Bispinor::from_array(c)
    }
}

impl From<Bispinor> for [Complex64; 4] {
    fn from(b: Bispinor) -> Self {
        b.components()
    }
}

impl Bispinor {
    pub fn new(c1: Complex64, c2: Complex64, c3: Complex64, c4: Complex64) -> Self {
        Self(Vector4::new(c1, c2, c3, c4))
    }

    pub fn zero() -> Self {
        Self(Vector4::zeros())
    }

    pub fn from_array(c: [Complex64; 4]) -> Self {
        Self(Vector4::from(c))
    }

    pub fn components(&self) -> [Complex64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    /// `ψ⁺ψ`
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `⟨self, other⟩ = self⁺ other`
    pub fn inner(&self, other: &Bispinor) -> Complex64 {
        self.0.dotc(&other.0)
    }

    pub fn scale(&self, s: Complex64) -> Bispinor {
        Bispinor(self.0 * s)
    }

    pub fn scale_real(&self, s: f64) -> Bispinor {
        Bispinor(self.0 * Complex64::new(s, 0.0))
    }

    /// `M ψ`
    pub fn apply(&self, m: &Complex4x4) -> Bispinor {
        Bispinor(m * self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }
}

impl Add for Bispinor {
    type Output = Bispinor;
    fn add(self, rhs: Bispinor) -> Bispinor {
        Bispinor(self.0 + rhs.0)
    }
}

impl Sub for Bispinor {
    type Output = Bispinor;
    fn sub(self, rhs: Bispinor) -> Bispinor {
        Bispinor(self.0 - rhs.0)
    }
}

impl Neg for Bispinor {
    type Output = Bispinor;
    fn neg(self) -> Bispinor {
        Bispinor(-self.0)
    }
}

impl Mul<Complex64> for Bispinor {
    type Output = Bispinor;
    fn mul(self, rhs: Complex64) -> Bispinor {
        self.scale(rhs)
    }
}

impl Mul<f64> for Bispinor {
    type Output = Bispinor;
    fn mul(self, rhs: f64) -> Bispinor {
        self.scale_real(rhs)
    }
}

/// Complex `E` and `H` at one spacetime point (Gaussian units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EMFieldPoint {
    pub e: Vector3<Complex64>,
    pub h: Vector3<Complex64>,
}

impl EMFieldPoint {
    pub fn new(e: Vector3<Complex64>, h: Vector3<Complex64>) -> Self {
        Self { e, h }
    }

    pub fn real(e: [f64; 3], h: [f64; 3]) -> Self {
        let c = |v: [f64; 3]| Vector3::new(v[0].into(), v[1].into(), v[2].into());
        Self { e: c(e), h: c(h) }
    }

    pub fn zero() -> Self {
        Self::real([0.0; 3], [0.0; 3])
    }

    pub fn is_real(&self) -> bool {
        self.e.iter().chain(self.h.iter()).all(|z| z.im == 0.0)
    }

    pub fn e_real(&self) -> Vector3<f64> {
        self.e.map(|z| z.re)
    }

    pub fn h_real(&self) -> Vector3<f64> {
        self.h.map(|z| z.re)
    }

    /// `|E|² + |H|²`
    pub fn intensity(&self) -> f64 {
        self.e.iter().chain(self.h.iter()).map(|z| z.norm_sqr()).sum()
    }
}

/// `α₀ = I`, `α₁..α₃`, `α₄ = β`, `α₅ = α₁α₂α₃α₄`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSet {
    alpha: [Complex4x4; 6],
}

impl MatrixSet {
    /// Assembles a set from explicit matrices `[α₀, …, α₅]`. No checks are made;
    /// use [`MatrixSet::anticommutation_defect`] and friends to audit it.
    pub fn from_matrices(alpha: [Complex4x4; 6]) -> Self {
        Self { alpha }
    }

    pub fn alpha(&self, mu: usize) -> &Complex4x4 {
        &self.alpha[mu]
    }

    pub fn matrices(&self) -> &[Complex4x4; 6] {
        &self.alpha
    }

    pub fn identity(&self) -> &Complex4x4 {
        &self.alpha[0]
    }

    pub fn beta(&self) -> &Complex4x4 {
        &self.alpha[4]
    }

    pub fn alpha5(&self) -> &Complex4x4 {
        &self.alpha[5]
    }

    /// Spatial α for axis 0 = x, 1 = y, 2 = z.
    pub fn spatial(&self, axis: usize) -> &Complex4x4 {
        &self.alpha[axis + 1]
    }

    /// `α⃗·v` for a real vector.
    pub fn alpha_dot(&self, v: &Vector3<f64>) -> Complex4x4 {
        (0..3).fold(Complex4x4::zeros(), |acc, k| {
            acc + self.spatial(k) * Complex64::new(v[k], 0.0)
        })
    }

    /// Returns a copy with `α_mu` replaced, for fault-injection suites.
    pub fn with_replaced(&self, mu: usize, m: Complex4x4) -> Self {
        let mut alpha = self.alpha;
        alpha[mu] = m;
        Self { alpha }
    }

    /// `max_{i,j∈1..4} ‖α_iα_j + α_jα_i − 2δ_ij I‖_max`
    pub fn anticommutation_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 1..=4 {
            for j in 1..=4 {
                let ac = self.alpha[i] * self.alpha[j] + self.alpha[j] * self.alpha[i];
                let target = if i == j {
                    Complex4x4::identity() * Complex64::new(2.0, 0.0)
                } else {
                    Complex4x4::zeros()
                };
                worst = worst.max(max_entry(&(ac - target)));
            }
        }
        worst
    }

    /// `‖α₅ − α₁α₂α₃α₄‖_max`
    pub fn pseudoscalar_defect(&self) -> f64 {
        let prod = self.alpha[1] * self.alpha[2] * self.alpha[3] * self.alpha[4];
        max_entry(&(self.alpha[5] - prod))
    }

    /// `max_μ ‖α_μ − α_μ⁺‖_max`
    pub fn hermiticity_defect(&self) -> f64 {
        self.alpha
            .iter()
            .map(|m| max_entry(&(m - m.adjoint())))
            .fold(0.0, f64::max)
    }

    pub fn identity_defect(&self) -> f64 {
        max_entry(&(self.alpha[0] - Complex4x4::identity()))
    }
}

impl Default for MatrixSet {
    fn default() -> Self {
        build_alpha_set()
    }
}

pub fn max_entry(m: &Complex4x4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn pauli() -> [[[Complex64; 2]; 2]; 3] {
    [
        [[ZERO, ONE], [ONE, ZERO]],
        [[ZERO, -I], [I, ZERO]],
        [[ONE, ZERO], [ZERO, -ONE]],
    ]
}

/// Dirac–Pauli representation: `α_k` off-diagonal Pauli blocks,
/// `β = diag(1, 1, −1, −1)`.
pub fn build_alpha_set() -> MatrixSet {
    let sigma = pauli();
    let alpha_k = |k: usize| {
        let s = sigma[k];
        let mut m = Complex4x4::zeros();
        for r in 0..2 {
            for c in 0..2 {
                m[(r, c + 2)] = s[r][c];
                m[(r + 2, c)] = s[r][c];
            }
        }
        m
    };
    let beta = Complex4x4::from_diagonal(&Vector4::new(ONE, ONE, -ONE, -ONE));
    let a1 = alpha_k(0);
    let a2 = alpha_k(1);
    let a3 = alpha_k(2);
    let a5 = a1 * a2 * a3 * beta;
    MatrixSet {
        alpha: [Complex4x4::identity(), a1, a2, a3, beta, a5],
    }
}

/// `(E_z, E_x, iH_z, iH_x)`; rejects any nonzero `E_y` or `H_y`.
pub fn to_bispinor(f: &EMFieldPoint) -> Result<Bispinor> {
    if f.e[1] != ZERO || f.h[1] != ZERO {
        return Err(Error::NotTransverse {
            e_y: f.e[1].norm(),
            h_y: f.h[1].norm(),
        });
    }
    Ok(Bispinor::new(f.e[2], f.e[0], I * f.h[2], I * f.h[0]))
}

/// Inverse of [`to_bispinor`]; the decoded field is always transverse.
pub fn from_bispinor(psi: &Bispinor) -> EMFieldPoint {
    let [c1, c2, c3, c4] = psi.components();
    EMFieldPoint {
        e: Vector3::new(c2, ZERO, c1),
        h: Vector3::new(-I * c4, ZERO, -I * c3),
    }
}

/// `ψ⁺ M ψ`
pub fn bilinear(psi: &Bispinor, m: &Complex4x4) -> Complex64 {
    psi.0.dotc(&(m * psi.0))
}

/// `(ψ⁺α_xψ, ψ⁺α_yψ, ψ⁺α_zψ)`, real parts.
pub fn vector_bilinear(set: &MatrixSet, psi: &Bispinor) -> Vector3<f64> {
    Vector3::new(
        bilinear(psi, set.spatial(0)).re,
        bilinear(psi, set.spatial(1)).re,
        bilinear(psi, set.spatial(2)).re,
    )
}

/// Field invariants and energy-momentum densities of a real field point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    /// `E² − H²`
    pub i1: f64,
    /// `2 E·H`
    pub pseudoscalar: f64,
    /// `U = (E² + H²)/8π`
    pub energy_density: f64,
    /// `S = (c/4π) E × H`
    pub poynting: [f64; 3],
    /// `g = S/c²`
    pub momentum_density: [f64; 3],
}

pub fn invariant_report(f: &EMFieldPoint, c: f64) -> InvariantReport {
    let e = f.e_real();
    let h = f.h_real();
    let s = e.cross(&h) * (c / (4.0 * PI));
    let g = s / (c * c);
    InvariantReport {
        i1: e.norm_squared() - h.norm_squared(),
        pseudoscalar: 2.0 * e.dot(&h),
        energy_density: (e.norm_squared() + h.norm_squared()) / (8.0 * PI),
        poynting: [s[0], s[1], s[2]],
        momentum_density: [g[0], g[1], g[2]],
    }
}

/// Absolute residuals between bilinears of `ψ = to_bispinor(f)` and the field
/// invariants they encode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BilinearResiduals {
    /// `|ψ⁺α₄ψ − (E² − H²)|`
    pub scalar: f64,
    /// `|ψ⁺α₀ψ − (E² + H²)|`
    pub energy: f64,
    /// `|ψ⁺α_yψ − 2(E×H)_y|`
    pub momentum_y: f64,
    /// `|ψ⁺α₅ψ − 2(E·H)|`
    pub pseudoscalar: f64,
    /// `E² + H²`, the natural scale of all four
    pub scale: f64,
}

impl BilinearResiduals {
    pub fn max(&self) -> f64 {
        self.scalar
            .max(self.energy)
            .max(self.momentum_y)
            .max(self.pseudoscalar)
    }

    /// Largest residual relative to `E² + H²` (zero for the zero field).
    pub fn max_relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.max()
        } else {
            self.max() / self.scale
        }
    }
}

pub fn bilinear_vs_field_check(set: &MatrixSet, f: &EMFieldPoint) -> Result<BilinearResiduals> {
    let psi = to_bispinor(f)?;
    let e = f.e_real();
    let h = f.h_real();
    let e2 = e.norm_squared();
    let h2 = h.norm_squared();
    Ok(BilinearResiduals {
        scalar: (bilinear(&psi, set.beta()) - (e2 - h2)).norm(),
        energy: (bilinear(&psi, set.identity()) - (e2 + h2)).norm(),
        momentum_y: (bilinear(&psi, set.spatial(1)) - 2.0 * e.cross(&h)[1]).norm(),
        pseudoscalar: (bilinear(&psi, set.alpha5()) - 2.0 * e.dot(&h)).norm(),
        scale: e2 + h2,
    })
}

/// `ψ′ = ψ / √(8π m c²)`, the rescaling under which an energy-normalized
/// field becomes a unit-normalized wavefunction.
pub fn normalize(psi: &Bispinor, params: &DiracParams) -> Result<Bispinor> {
    if psi.is_zero() {
        return Err(Error::ZeroNormalization);
    }
    let scale = (8.0 * PI * params.rest_energy()).sqrt();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::invalid("mass", "normalization needs m c² > 0"));
    }
    Ok(psi.scale_real(1.0 / scale))
}

/// Scales a bispinor to unit `ψ⁺ψ`.
pub fn unit(psi: &Bispinor) -> Result<Bispinor> {
    if psi.is_zero() {
        return Err(Error::ZeroNormalization);
    }
    Ok(psi.scale_real(1.0 / psi.norm()))
}
