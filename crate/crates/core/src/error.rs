use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation not defined: {0}")]
    Undefined(String),
    #[error("no case of the insertion table applies to {0}")]
    NoCase(String),
    #[error("boundary error: carrier ended in {0} instead of the highest weight element")]
    Boundary(String),
    #[error("search budget of {0} elements exceeded")]
    Budget(usize),
    #[error("no isomorphism: {0}")]
    NoIsomorphism(String),
    #[error("isomorphism is not unique ({0} candidates succeeded)")]
    AmbiguousIsomorphism(usize),
    #[error("soliton detection failed: {0}")]
    Detection(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
