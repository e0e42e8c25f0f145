use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("element {element} does not lie in the group")]
    NotInGroup { element: String },

    #[error("{sub} is not a subgroup of {amb}")]
    NotSubgroup { sub: String, amb: String },

    #[error("group order exceeds the enumeration threshold ({threshold})")]
    OrderThreshold { threshold: usize },

    #[error("unsupported ambient group: {0}")]
    UnsupportedAmbient(String),

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("ill-defined homomorphism: {0}")]
    IllDefinedHom(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
