use thiserror::Error;

/// Errors raised by abelian group arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {0} exceeds the configured maximum {1}")]
    OrderTooLarge(u128, u64),
    #[error("invariant factor must be at least 1, got 0")]
    ZeroFactor,
    #[error("element has {got} coordinates, group has {expected} factors")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinate {index} = {value} is not reduced modulo {modulus}")]
    UnreducedCoordinate {
        index: usize,
        value: u64,
        modulus: u64,
    },
    #[error("factor list {0:?} is not a canonical divisor chain")]
    NotCanonical(Vec<u64>),
    #[error("subset is not closed under addition")]
    NotClosed,
    #[error("order census matches no finite abelian group")]
    InvalidCensus,
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Errors raised when a structure table fails to define a ring.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("table is {rows}x{cols}, group has {expected} generators")]
    TableShape {
        rows: usize,
        cols: usize,
        expected: usize,
    },
    #[error("product of generators {0} and {1} is not well defined")]
    NotWellDefined(usize, usize),
    #[error("generator triple ({0}, {1}, {2}) is not associative")]
    NotAssociative(usize, usize, usize),
}

/// Errors from reading ring and corpus documents.
#[derive(Debug, Error)]
pub enum FileError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format version {0}")]
    Version(u64),
    #[error("invalid ring: {0}")]
    Invalid(#[from] RingError),
    #[error("corrupted corpus record {line}: {reason}")]
    Corrupted { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from table enumeration and isomorphism reduction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("search space of 2^{bits} tables exceeds budget 2^{budget}")]
    BudgetExceeded { bits: u64, budget: u64 },
    #[error("automorphism search over {candidates} candidate maps exceeds budget {budget}")]
    AutomorphismBudget { candidates: u128, budget: u128 },
    #[error("worker id {0} is not below worker count {1}")]
    BadPartition(usize, usize),
    #[error("rings do not share one additive group")]
    MixedGroups,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Errors from theorem checks and corpus assembly.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("{id}: corpus has no complete enumeration covering {scope}")]
    MissingCompleteness { id: &'static str, scope: String },
    #[error("bad corpus request: {0}")]
    Request(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    File(#[from] FileError),
    #[error("coset structure violated: {0}")]
    Profile(#[from] crate::centralizer::ProfileViolation),
}
