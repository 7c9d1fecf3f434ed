use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("objects start at [1]")]
    EmptyObject,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("size or category mismatch: {0}")]
    Mismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("computation failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
