use thiserror::Error;

/// Errors raised by the algebra, code and lattice layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structure constants are inconsistent with rank {rank}: {detail}")]
    BadShape { rank: usize, detail: String },
    #[error("multiplication table is not associative on basis triple ({0}, {1}, {2})")]
    NonAssociativeTable(usize, usize, usize),
    #[error("unity law fails on basis element {0}")]
    BadUnity(usize),
    #[error("basis is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("ideal basis has zero determinant")]
    ZeroDeterminant,
    #[error("enumeration of {what} needs {needed} steps, bound is {bound}")]
    TooLarge { what: String, needed: u128, bound: u128 },
    #[error("map does not preserve the ideal: {0}")]
    IdealNotStable(String),
    #[error("map check failed: {0}")]
    BadMap(String),
    #[error("trace form is not positive definite (leading minor {index} is {minor})")]
    NotPositiveDefinite { index: usize, minor: i128 },
    #[error("leading coefficient is not invertible")]
    LeadingCoeffNotInvertible,
    #[error("sigma is not invertible on the coefficient ring")]
    SigmaNotInvertible,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("element length {got} does not match algebra degree {expected}")]
    AlgebraMismatch { expected: usize, got: usize },
    #[error("coefficient ring is not a field")]
    CoefficientRingNotField,
    #[error("operation needs a finite coefficient ring")]
    InfiniteRing,
    #[error("rho has the wrong multiplicative order: {0}")]
    RhoOrderWrong(String),
    #[error("c is not fixed by rho")]
    CNotFixed,
    #[error("cyclic algebra table is not associative: {0}")]
    AssociativityFail(String),
    #[error("sigma does not commute with rho")]
    DoesNotCommute,
    #[error("sigma moves c")]
    CMoved,
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("g is not a right divisor of f")]
    NotARightDivisor,
    #[error("h is not central")]
    HNotCentral,
    #[error("factorization check failed: {0}")]
    FactorizationWrong(String),
    #[error("code is the zero code")]
    ZeroCode,
    #[error("dual hypothesis {which} failed{}", index.map(|i| format!(" at index {i}")).unwrap_or_default())]
    HypothesisFailed { which: String, index: Option<usize> },
    #[error("map is not stable on the order: {0}")]
    NotStable(String),
    #[error("code does not belong to this reduced algebra: {0}")]
    CodeAlgebraMismatch(String),
    #[error("lattice ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("polynomial does not have the shape t^m - c: {0}")]
    WrongShape(String),
    #[error("determinant mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("skew derivation must be zero here")]
    DerivationNotZero,
    #[error("coefficient ring must be commutative here")]
    NotCommutative,
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
