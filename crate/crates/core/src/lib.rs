//! Electrodynamic reading of the Dirac electron.
//!
//! The crate maps a transverse electromagnetic field point onto a Dirac
//! bispinor, `ψ = (E_z, E_x, iH_z, iH_x)`, and machine-checks what follows
//! from that mapping:
//!
//! * [`spinor`] — the α-matrix set, bispinor ↔ field mapping, bilinear covariants.
//! * [`plane_wave`] — free plane-wave spinors, their linear system and the
//!   `p_y = m_e c` specialization.
//! * [`evolution`] — periodic 1-D lattice integration of the Dirac system with
//!   continuity, stress-tensor, force and ring (Lamb-form) diagnostics.
//! * [`nonlinear`] — self-energy functionals, the nonlinear semi-photon
//!   equation, its self-consistent iteration and the Lagrangian identities.
//! * [`torus`] — the torus electron model: geometry, charge and mass
//!   quadratures, spin, magnetic moment and the coupling-constant chain.
//!
//! [`symbolic`] carries the exact monomial algebra used for the closed-form
//! constant chains and [`thresholds`] the single table of pass/fail limits.

pub mod constants;
pub mod error;
pub mod evolution;
pub mod nonlinear;
pub mod plane_wave;
pub mod quadrature;
pub mod spinor;
pub mod symbolic;
pub mod thresholds;
pub mod torus;

pub use constants::{DiracParams, PhysicalConstants};
pub use error::{Error, Result};
pub use spinor::{Bispinor, Complex4x4, EMFieldPoint, MatrixSet};
