use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    Modulus(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degenerate point: {0}")]
    Degenerate(String),

    #[error("sampling failed after {attempts} attempts: {what}")]
    Resample { what: String, attempts: usize },

    #[error("case {0} is defective; contact analysis is undefined")]
    DefectiveCase(String),

    #[error("case {0} is not subgeneric: the Terracini span fills the ambient space")]
    NotSubgeneric(String),

    #[error("Groebner computation inconclusive: {0}")]
    Inconclusive(String),

    #[error("linear locus is empty (inconsistent system)")]
    EmptyLocus,

    #[error("dual variety of the zero tensor is undefined")]
    EmptyDualOfPoint,

    #[error("oracle mismatch in check `{check}`: {detail}")]
    OracleMismatch { check: String, detail: String },

    #[error("genericity failure: {0}")]
    Genericity(String),

    #[error("no orbit signature matches; retry with another prime")]
    NoOrbitMatch,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
