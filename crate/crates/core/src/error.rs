use thiserror::Error;

use crate::fincat::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid category: {0}")]
    InvalidCategory(ValidationReport),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("unknown object {0}")]
    UnknownObject(usize),

    #[error("unknown morphism {0}")]
    UnknownMorphism(usize),

    #[error("objects {0} and {1} have morphisms both ways that are not inverse; the relation is not a partial order")]
    NotAPoset(usize, usize),

    #[error("{what} count {actual} exceeds cap {cap} (raise it with EXODROMY_CAPS)")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid ring homomorphism: {0}")]
    InvalidRingHom(String),

    #[error("characteristic {0} is not prime")]
    CharacteristicNotPrime(u64),

    #[error("level {level} is not divisible by residue degree {degree} (local factor {factor}, p = {prime})")]
    LevelNotDivisible {
        level: usize,
        degree: usize,
        factor: usize,
        prime: u64,
    },

    #[error("invalid splitting datum: {0}")]
    InvalidSplitting(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("diagram is not functorial: {0}")]
    NotFunctorial(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
