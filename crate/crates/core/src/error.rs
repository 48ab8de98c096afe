use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid index in {letter}: {reason}")]
    InvalidIndex { letter: String, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidSpec(String),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("rule with empty left-hand side")]
    EmptyLhs,
    #[error("two rules share the left-hand side {0}")]
    DuplicateLhs(String),
    #[error("reduction budget of {0} steps exceeded")]
    BudgetExceeded(u64),
    #[error("word {word} has degree {degree}, expected 0")]
    NonZeroDegree { word: String, degree: i64 },
    #[error("word {0} is not prime")]
    NotPrime(String),
    #[error("word {0} is not a product of prime xy words")]
    NotXyWord(String),
    #[error("word {0} is not ordered")]
    NotOrdered(String),
    #[error("word {0} is not admissible")]
    NotAdmissible(String),
    #[error("word {0} contains a letter outside x/y")]
    ForeignLetter(String),
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index ({row},{col}) out of range for {rows}x{cols}")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("block has {size} words, above the cap of {cap}")]
    BlockTooLarge { size: usize, cap: usize },
    #[error("integrity failure: {0}")]
    Integrity(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
