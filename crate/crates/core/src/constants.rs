//! Physical constants in Gaussian CGS units and the reduced parameter set the
//! Dirac operators need.

use serde::{Deserialize, Serialize};

/// Reduced Planck constant, CODATA 2018 (erg·s).
pub const HBAR_CGS: f64 = 1.054_571_817e-27;
/// Speed of light (cm/s), exact.
pub const C_CGS: f64 = 2.997_924_58e10;
/// Electron mass, CODATA 2018 (g).
pub const M_E_CGS: f64 = 9.109_383_701_5e-28;
/// Elementary charge (statC): 1.602176634e-19 C × c/10.
pub const E_CGS: f64 = 4.803_204_712_570_263e-10;
/// Fine-structure constant, CODATA 2018.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub m_e: f64,
    pub e: f64,
}

impl PhysicalConstants {
    pub const fn codata2018() -> Self {
        Self {
            hbar: HBAR_CGS,
            c: C_CGS,
            m_e: M_E_CGS,
            e: E_CGS,
        }
    }

    /// ħ = c = m_e = 1, with `e` chosen so that `e²/ħc` is the measured α.
    pub fn natural() -> Self {
        Self {
            hbar: 1.0,
            c: 1.0,
            m_e: 1.0,
            e: FINE_STRUCTURE.sqrt(),
        }
    }

    /// Measured coupling `e²/ħc`.
    pub fn fine_structure(&self) -> f64 {
        self.e * self.e / (self.hbar * self.c)
    }

    pub fn rest_energy(&self) -> f64 {
        self.m_e * self.c * self.c
    }

    pub fn dirac(&self) -> DiracParams {
        DiracParams {
            mass: self.m_e,
            c: self.c,
            hbar: self.hbar,
        }
    }

    pub fn is_valid(&self) -> bool {
        [self.hbar, self.c, self.m_e, self.e]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

/// Mass, light speed and ħ for one Dirac field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiracParams {
    pub mass: f64,
    pub c: f64,
    pub hbar: f64,
}

impl DiracParams {
    pub const fn natural() -> Self {
        Self {
            mass: 1.0,
            c: 1.0,
            hbar: 1.0,
        }
    }

    pub fn with_mass(self, mass: f64) -> Self {
        Self { mass, ..self }
    }

    /// `m c²`
    pub fn rest_energy(&self) -> f64 {
        self.mass * self.c * self.c
    }

    /// `ω = m c² / ħ`, the frequency multiplying the current terms.
    pub fn mass_omega(&self) -> f64 {
        self.rest_energy() / self.hbar
    }
}

impl Default for DiracParams {
    fn default() -> Self {
        Self::natural()
    }
}
