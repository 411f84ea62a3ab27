use thiserror::Error;

use crate::decompose::ParityWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("composition requires vanishing constant term")]
    CompositionConstantTerm,
    #[error("cannot differentiate order-0 jet")]
    DifferentiateOrderZero,
    #[error("division by the zero jet")]
    DivisionByZero,
    #[error("jet is not even: nonzero coefficient at degree {degree}")]
    NotEven { degree: usize },
    #[error("series inverse requires a nonzero constant term")]
    NotAUnit,
    #[error("not certified nonnegative: {0}")]
    NotNonnegative(String),
    #[error("interior germ: {0}")]
    InvalidInterior(String),
    #[error("flat germ has no finite jet representation")]
    FlatGerm,
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("truncation order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("negative tensor degree {0}")]
    NegativeDegree(i64),
    #[error("expected a degree-{expected} tensor, got degree {got}")]
    WrongDegree { expected: u32, got: u32 },
    #[error("valuation {valuation} below the configured minimum {min}")]
    ValuationBelowMinimum { valuation: i64, min: i64 },
    #[error("not a smooth tensor on Δ: capacity exceeded (pole order {pole_order}, pullback by t^2 has valuation {witness_valuation})")]
    CapacityExceeded { pole_order: u32, witness_valuation: i64 },
    #[error("singular cross term: violates odd-odd parity ({0})")]
    SingularCrossTerm(ParityWitness),
    #[error("not a smooth tensor on C₂ ({0})")]
    NotSmoothQuadrant(ParityWitness),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("function not nonnegative on interval: f({at}) = {value}")]
    FunctionNegative { at: f64, value: f64 },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
