//! Every pass/fail tolerance in one versioned table.

use serde::{Deserialize, Serialize};

pub const THRESHOLDS_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    /// bilinear vs field invariants, relative to `E² + H²`
    pub bilinear_relative: f64,
    /// Fierz identity, relative to `(ψ⁺ψ)²`
    pub fierz_relative: f64,
    /// `(E²+H²)² − 4(E×H)² = (E²−H²)² + 4(E·H)²`, relative
    pub em_identity_relative: f64,
    /// Clifford relations of the matrix set
    pub anticommutation: f64,
    /// plane-wave linear system, relative to `(|ε| + mc² + c|p|)‖B‖`
    pub system_relative: f64,
    /// specialized spinors vs published patterns after phase matching
    pub pattern_deviation: f64,
    /// `ε² − c²p² − m²c⁴`, relative to `ε²`
    pub dispersion_relative: f64,
    pub norm_drift: f64,
    pub energy_drift: f64,
    /// continuity residual reduction when halving `dy` and `dt`
    pub continuity_refinement_factor: f64,
    /// Maxwell-form vs Dirac-form time derivative, relative
    pub maxwell_relative: f64,
    /// massless single-mode return after one period, relative
    pub periodic_return: f64,
    pub eigenstate_phase: f64,
    pub alpha_q_absolute: f64,
    /// full-wave charge relative to `E_o S_tr`
    pub full_wave_charge_relative: f64,
    pub nonlinear_relative: f64,
    pub self_consistent_max_iters: usize,
    pub lagrangian_relative: f64,
    pub fierz_form_equivalence: f64,
}

impl Thresholds {
    pub const DEFAULT: Self = Self {
        bilinear_relative: 1e-12,
        fierz_relative: 1e-12,
        em_identity_relative: 1e-12,
        anticommutation: 1e-14,
        system_relative: 1e-12,
        pattern_deviation: 1e-14,
        dispersion_relative: 1e-12,
        norm_drift: 1e-8,
        energy_drift: 1e-6,
        continuity_refinement_factor: 8.0,
        maxwell_relative: 1e-10,
        periodic_return: 1e-8,
        eigenstate_phase: 1e-10,
        alpha_q_absolute: 1e-12,
        full_wave_charge_relative: 1e-12,
        nonlinear_relative: 1e-10,
        self_consistent_max_iters: 50,
        lagrangian_relative: 1e-10,
        fierz_form_equivalence: 1e-12,
    };
}

impl Default for Thresholds {
    fn default() -> Self {
        Self::DEFAULT
    }
}
