use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a series whose constant term {0:e} is not a unit")]
    DivisionByNonUnit(f64),
    #[error("composition requires an inner series with zero constant term, got {0:e}")]
    NonVanishingInner(f64),
    #[error("invalid kernel parameter: {0}")]
    InvalidKernelParam(String),
    #[error("janowski target needs -1 <= D < C <= 1, got C={c}, D={d}")]
    InvalidJanowskiParams { c: f64, d: f64 },
    #[error("target series disagrees with its coefficients: {0}")]
    InconsistentSeries(String),
    #[error("series is not a Schwarz function: {0}")]
    NotSchwarz(String),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("point outside the closed unit disk: |{name}| = {modulus}")]
    OutOfDisk { name: &'static str, modulus: f64 },
    #[error("unknown specialization `{0}`")]
    UnknownSpecialization(String),
    #[error("configuration error: {0}")]
    Config(String),
}
