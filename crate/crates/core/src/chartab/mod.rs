//! Character tables modulo a split prime by the Dixon-Schneider method, and
//! the degree bookkeeping built on them.

mod degrees;
mod dixon;
pub mod modp;
mod structure;

pub use degrees::{restriction_multiplicities, DegreeMultiset};
pub use dixon::ModularCharacterTable;
pub use modp::split_prime;
pub use structure::StructureConstants;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartabError {
    #[error("character table invariant violated: {0}")]
    Invariant(String),
    #[error("no class matrix splits a common eigenspace of dimension {dim}")]
    Stalled { dim: usize },
}
