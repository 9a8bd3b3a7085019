//! Orbit-by-orbit Clifford predictions of character degrees for `G(R)`, `R`
//! of length two, checked against the character table oracle.

mod compare;
mod context;
mod extension;

pub use compare::{
    compare_rings, compare_rings_with, is_exploratory, ComparisonReport, Fresh, OrbitPairing, RingReport, TableSource, Verdicts,
};
pub use context::{AnalysisOptions, CountingRecord, LengthTwoContext, OrbitPrediction, OrbitRow};
pub use extension::ExtensionWitness;

use thiserror::Error;

use crate::chartab::ChartabError;
use crate::group::GroupError;
use crate::liedual::LieError;
use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Chartab(#[from] ChartabError),
    #[error("{required} conjugacy classes exceed the bound {bound}")]
    TooManyClasses { required: u128, bound: u128 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliffordError {
    /// Whether the error is a refusal on a size bound rather than a failure.
    pub fn is_bound_refusal(&self) -> bool {
        matches!(
            self,
            CliffordError::Group(GroupError::BoundExceeded { .. })
                | CliffordError::Lie(LieError::BoundExceeded { .. })
                | CliffordError::Lie(LieError::Group(GroupError::BoundExceeded { .. }))
                | CliffordError::TooManyClasses { .. }
        )
    }
}
