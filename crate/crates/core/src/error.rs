use thiserror::Error;

/// Errors surfaced by constructors, evaluators and the numerical engines.
#[derive(Debug, Clone, Error)]
pub enum LwError {
    /// A physical parameter or coordinate is outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid function argument (negative order, non-finite input, ...).
    #[error("argument error: {0}")]
    Argument(String),

    /// Slit/lens geometry is inconsistent (r >= f).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// Evaluation at a point where the expression diverges.
    #[error("singularity: {0}")]
    Singularity(String),

    /// Result would overflow the floating-point range.
    #[error("range error: |z| = {magnitude} exceeds the overflow guard {limit}")]
    Overflow { magnitude: f64, limit: f64 },

    /// A quadrature failed to meet the requested tolerance.
    #[error("quadrature tolerance not met: estimated error {error:.3e} for result magnitude {magnitude:.3e}")]
    ToleranceNotMet { error: f64, magnitude: f64 },

    /// Non-finite sample produced while integrating or filling a grid.
    #[error("non-finite evaluation at {location}")]
    NonFinite { location: String },

    /// Grid too coarse or otherwise malformed.
    #[error("grid error: {0}")]
    Grid(String),

    /// No admissible guided mode for the requested parameters.
    #[error("no admissible modes: requires Lambda_n <= m*V = {threshold}")]
    NoAdmissibleModes { threshold: f64 },

    /// A semi-infinite integral whose tail cannot be bounded as requested.
    #[error("integration-domain error: {0}")]
    IntegrationDomain(String),

    /// Measurement on a profile that does not behave as assumed.
    #[error("measurement error: {0}")]
    Measurement(String),

    /// I/O or serialization failure.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for LwError {
    fn from(e: std::io::Error) -> Self {
        LwError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for LwError {
    fn from(e: serde_json::Error) -> Self {
        LwError::Io(e.to_string())
    }
}
