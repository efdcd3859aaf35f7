use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {0} unsupported (need 2..=16)")]
    InvalidDimension(usize),
    #[error("rank {0} out of range")]
    RankOutOfRange(usize),
    #[error("letter {letter} out of range for dimension {dim}")]
    LetterOutOfRange { letter: usize, dim: usize },
    #[error("mixed ranks: expected {expected}, found {found}")]
    MixedRanks { expected: usize, found: usize },
    #[error("translation generator e present where an e-free element is required")]
    EGeneratorPresent,
    #[error("rank {rank} too small (need at least {min})")]
    RankTooSmall { rank: usize, min: usize },
    #[error("rank {0} is even; exceptional elements exist only in odd rank")]
    EvenRank(usize),
    #[error("term of degree {found} exceeds filtration degree {max}")]
    DegreeExceeded { found: i32, max: i32 },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
