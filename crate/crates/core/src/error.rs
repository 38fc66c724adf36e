use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid rank {0}: must be at least 1")]
    InvalidRank(usize),

    #[error("chop count {k} out of range for rank {n} (need 0 <= k <= n-1)")]
    ChopOutOfRange { n: usize, k: usize },

    #[error("family level {k} out of range for rank {n}")]
    LevelOutOfRange { n: usize, k: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error(
        "grading violation at level {level}: leading eps exponent {found}, expected {expected}"
    )]
    GradingViolation {
        level: usize,
        expected: u32,
        found: u32,
    },

    #[error("family entry ({k},{i}) is not an eigenvector of ad {generator}")]
    CharacterFailure {
        k: usize,
        i: usize,
        generator: String,
    },

    #[error("element is not in the Borel subalgebra: contains {0}")]
    NotInBorel(String),

    #[error("expression references coordinate x[{i},{j}] outside the lower triangle")]
    UpperCoordinate { i: u8, j: u8 },

    #[error("expression has unexpected spectral variables: {0}")]
    SpectralVariable(String),

    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },

    #[error("overflow in exponential coupling at t = {t}")]
    Overflow { t: f64 },

    #[error("invalid simulation parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
