use thiserror::Error;

use crate::text::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ambient dimension {dim} exceeds the cap of {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },

    #[error("verification needs an ambient dimension of at least 1")]
    ZeroDimension,

    #[error("blade mask {mask:#b} is not valid in dimension {dim}")]
    InvalidBlade { mask: u32, dim: usize },

    #[error("expected a unit vector, got norm {norm}")]
    NonUnitVector { norm: f64 },

    #[error("elements are linearly dependent: numerical rank {rank} of {count}")]
    LinearlyDependent { rank: usize, count: usize },

    #[error("chain is not ascending at position {index}")]
    ChainNotAscending { index: usize },

    #[error("chain member {index} is not contained in the ambient subspace")]
    ChainOutsideSubspace { index: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn check_dims(left: usize, right: usize) -> Result<()> {
        if left == right {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left, right })
        }
    }
}
