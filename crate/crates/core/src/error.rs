use thiserror::Error;

/// Errors raised by the geometry and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("point lies on the lightlike cone (<p,p> = {value:e})")]
    OnCone { value: f64 },
    #[error("degenerate induced metric (EG - F^2 = {value:e})")]
    DegenerateMetric { value: f64 },
    #[error("alpha is indeterminate at this point (<N,X> = {value:e})")]
    IndeterminateAlpha { value: f64 },
    #[error("graph has the wrong causal type: |Du|^2 = {du2}")]
    WrongCausalType { du2: f64 },
    #[error("parameter {value} outside domain [{lo}, {hi}]")]
    Domain { value: f64, lo: f64, hi: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate probe configuration: {0}")]
    DegenerateProbe(String),
    #[error("ruling class is not constant along the interval: {0}")]
    MixedClass(String),
    #[error("ruling class mismatch: expected {expected}, found {found}")]
    ClassMismatch { expected: String, found: String },
    #[error("<w,w> changes sign or vanishes; the ruling cannot be unitized")]
    NonUnitizableRuling,
    #[error("w' vanishes; cannot normalize the lightlike ruling")]
    VanishingWPrime,
    #[error("surface samples cross the lightlike cone")]
    ConeCrossing,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid ODE branch: {0}")]
    InvalidCase(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
