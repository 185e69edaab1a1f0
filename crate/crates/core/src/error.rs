use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("operands have different generator counts ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("cannot combine commutative and noncommutative coefficient expressions")]
    ModeMismatch,
    #[error("graded commutator needs homogeneous operands")]
    MixedGrade,
    #[error("expected a form of degree {expected}, found {found}")]
    Degree { expected: u8, found: String },
    #[error("pairing parameter mu must be nonzero")]
    ZeroMu,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
