use thiserror::Error;

/// Errors shared by every layer of the engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("not a complex: {0}")]
    NotAComplex(String),

    #[error("object mismatch: {0}")]
    ObjectMismatch(String),

    #[error("missing monoidal data: {0}")]
    MissingMonoidal(String),

    #[error("missing duality data for object {0}")]
    MissingDuality(String),

    #[error("missing composition rule: {0}")]
    MissingComposition(String),

    #[error("dot budget exceeded: {0}")]
    DotBudget(String),

    #[error("window violation: {0}")]
    Window(String),

    #[error("sieve lattice limit exceeded: {0}")]
    LatticeLimit(String),

    #[error("validation failed:\n{0}")]
    Validation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}
