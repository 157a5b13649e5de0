use thiserror::Error;

use crate::ring::Rational;

/// Errors raised when constructing or evaluating conditions, spaces and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("contraction factor must satisfy 0 < q^2 < 1, got q^2 = {0}")]
    ContractionFactor(Rational),

    #[error("invalid relaxation {family} with a={a}, b={b}: {reason}")]
    InvalidRelaxation { family: &'static str, a: u32, b: u32, reason: &'static str },

    #[error("term {0} compares a point with itself")]
    DegenerateTerm(String),

    #[error("condition has no terms")]
    EmptyCondition,

    #[error("condition may not contain d(Tx, Ty)")]
    SelfReferentialCondition,

    #[error("points belong to different spaces")]
    MixedSpaces,

    #[error("relaxation {0} is handled by the powers-of-two example; use verify_claim1")]
    WrongExample(String),

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
