use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("orbital dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("incompatible shapes: {0}")]
    ShapeMismatch(String),

    #[error("invalid spin label: two_m={two_m} for two_s={two_s}")]
    InvalidSpin { two_s: i32, two_m: i32 },

    #[error("particle count {n} exceeds enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid permutation mapping {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("transposition requires two distinct slots, got slot {0} twice")]
    NotATransposition(usize),

    #[error("overall phase factor-out requires equal spin components on every slot")]
    MixedSpinComponents,

    #[error("no standard (projector) form exists for general eta weights")]
    NoStandardForm,

    #[error("chained amplitude needs at least one intermediate state")]
    EmptyIntermediates,

    #[error("intermediate state must have unit norm, got {0}")]
    NonUnitIntermediate(f64),

    #[error("dense dimension {dim} exceeds cap {cap}")]
    DenseTooLarge { dim: usize, cap: usize },

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
