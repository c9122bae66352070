//! Crate-wide error type.
//!
//! Every fallible operation returns one of these variants; [`Error::code`]
//! gives the stable machine-readable name used by the CLI's JSON error output.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no square root of -1 in F_{0} (q = 3 mod 4)")]
    NoSolution(u64),
    #[error("alpha/beta search requires q = 3 mod 4, got q = {0}")]
    WrongResidueClass(u64),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("enumeration budget exceeded: need {needed} codeword evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("the zero code has no minimum distance")]
    ZeroCode,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("no self-dual code of length {n} exists over F_{q}: condition (*) fails")]
    StarViolated { q: u64, n: usize },
    #[error("code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("code already has dimension n/2")]
    AlreadyMaximal,
    #[error("the zero function has no valuation or divisor")]
    ZeroFunction,
    #[error("place has degree > 1; residues are only computed at rational places")]
    NonRationalPlace,
    #[error("evaluation divisor contains the infinite place")]
    InfinitePlaceInD,
    #[error("supports of G and D are not disjoint")]
    SupportOverlap,
    #[error("evaluation divisor must be a sum of distinct rational places with coefficient 1")]
    NonRationalEvaluationPlace,
    #[error("differential is not certified for this evaluation divisor")]
    OmegaNotCertified,
    #[error("argument outside domain: {0}")]
    DomainError(String),
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(u32),
    #[error("exponent must be odd and greater than 1, got {0}")]
    RequiresOddR(u32),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("entry {value} is not an element of F_{q}")]
    FieldMismatch { value: u64, q: u64 },
}

impl Error {
    /// Stable machine-readable error code (the CLI's `"error"` field).
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
            Error::DivisionByZero => "DivisionByZero",
            Error::NoSolution(_) => "NoSolution",
            Error::WrongResidueClass(_) => "WrongResidueClass",
            Error::Inconsistent => "Inconsistent",
            Error::LengthMismatch(_) => "LengthMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::ZeroCode => "ZeroCode",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::StarViolated { .. } => "StarViolated",
            Error::NotSelfOrthogonal => "NotSelfOrthogonal",
            Error::AlreadyMaximal => "AlreadyMaximal",
            Error::ZeroFunction => "ZeroFunction",
            Error::NonRationalPlace => "NonRationalPlace",
            Error::InfinitePlaceInD => "InfinitePlaceInD",
            Error::SupportOverlap => "SupportOverlap",
            Error::NonRationalEvaluationPlace => "NonRationalEvaluationPlace",
            Error::OmegaNotCertified => "OmegaNotCertified",
            Error::DomainError(_) => "DomainError",
            Error::RankTooSmall(_) => "RankTooSmall",
            Error::RequiresOddR(_) => "RequiresOddR",
            Error::ParseError(_) => "ParseError",
            Error::FieldMismatch { .. } => "FieldMismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
