use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A field point carried a nonzero longitudinal (y) component.
    #[error("field is not transverse: E_y = {e_y}, H_y = {h_y}")]
    NotTransverse { e_y: f64, h_y: f64 },

    #[error("cannot normalize a zero bispinor")]
    ZeroNormalization,

    #[error("courant number {courant:.4} exceeds limit {limit:.4}; use dt <= {suggested_dt:.6e}")]
    CflViolation {
        courant: f64,
        limit: f64,
        suggested_dt: f64,
    },

    #[error("grid needs at least {min} points, got {got}")]
    GridTooSmall { min: usize, got: usize },

    #[error("ring needs at least {min} samples, got {got}")]
    InsufficientSampling { min: usize, got: usize },

    #[error("grids are not consecutive snapshots of the same lattice: {0}")]
    IncompatibleGrids(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
