use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("the zero polynomial has infinitely many roots over Q")]
    ZeroPolynomialOverInfiniteField,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },
    #[error("basis change matrix is singular")]
    SingularBasisChange,
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("budget exceeded: {required} elements required, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("operation requires a finite prime field")]
    NotFiniteField,
    #[error("rank condition failed: block-column rank {rank}, expected {expected}")]
    RankConditionFailed { rank: usize, expected: usize },
    #[error("trace of the new first block must be nonzero")]
    TraceConditionFailed,
    #[error("augmented rank condition failed: rank {rank}, expected {expected}")]
    AugmentedRankFailed { rank: usize, expected: usize },
    #[error("first row of the new first block (off the corner) must be nonzero")]
    FirstRowZero,
    #[error("input algebra is not simple")]
    NotSimpleInput,
    #[error("parameter search exhausted at dimension {stage} after {attempts} attempts")]
    SearchExhausted { stage: usize, attempts: usize },
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("family {family} requires {expected}, field has characteristic {found}")]
    CharMismatch {
        family: String,
        expected: String,
        found: u64,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
