use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("player {player} out of range 1..={players}")]
    PlayerOutOfRange { player: usize, players: usize },

    #[error("strategy {strategy} of player {player} out of range 1..={cardinality}")]
    StrategyOutOfRange {
        player: usize,
        strategy: usize,
        cardinality: usize,
    },

    #[error("profile has {found} coordinates, expected {expected}")]
    ProfileLength { expected: usize, found: usize },

    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error("{path}: weight must be strictly positive, found {value}")]
    NonPositiveWeight { path: String, value: f64 },

    #[error("{0}: value is not finite")]
    NonFinite(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("game and weights have different shapes")]
    ShapeMismatch,

    #[error("malformed document at `{path}`: {message}")]
    Parse { path: String, message: String },

    #[error("harmonic basis column {column} fails the kernel check (residual {residual:e})")]
    KernelCheck { column: usize, residual: f64 },

    #[error("decomposition basis is singular (condition number {condition:e})")]
    SingularBasis { condition: f64 },
}

impl Error {
    /// True for failures that indicate a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::KernelCheck { .. } | Error::SingularBasis { .. })
    }
}
