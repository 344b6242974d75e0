use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),
    #[error("modified basis needs xi != eta (both were {0})")]
    DegenerateBasis(usize),
    #[error("minimum distance must be at least 2 (got {0})")]
    DistanceTooSmall(usize),
    #[error("residue {value} out of range for p = {p}")]
    ResidueOutOfRange { value: u8, p: u8 },
    #[error("arithmetic overflow in natural-number conversion")]
    Overflow,
    #[error("search needs coordinate index {needed}, budget allows indices below {limit}")]
    SearchBudgetExceeded { needed: usize, limit: usize },
    #[error("index {index} has more base-p digits than the {rows} available generators")]
    DigitOverflow { index: u128, rows: usize },
    #[error("naive scan passed the rank ceiling without finding a codeword")]
    RankCeilingExceeded,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate code: {0}")]
    Degenerate(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
