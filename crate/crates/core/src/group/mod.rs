//! Enumerated matrix groups `G(R)` for `G` in `GL_n`, `SL_n`, `Sp_n`.

mod enumerate;
mod finite;
mod kernel;
mod matrix;
mod scheme;

pub use enumerate::{enumerate_points, EnumOptions, MatrixGroup, DEFAULT_MAX_ORDER};
pub use finite::{ConjugacyClassData, FiniteGroup};
pub use kernel::Twist;
pub use matrix::{Key, MatrixRing};
pub use scheme::{Family, GroupScheme};

pub(crate) use finite::lcm;

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {required} exceeds the configured bound {bound} (raise --max-order)")]
    BoundExceeded { required: u128, bound: u128 },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse group descriptor {0:?}")]
    Parse(String),
    #[error("matrix is not in the Lie algebra of {0}")]
    NotInLieAlgebra(String),
    #[error("element is not in the congruence kernel")]
    NotInKernel,
    #[error(transparent)]
    Ring(#[from] RingError),
}
