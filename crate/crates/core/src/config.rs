//! The resolved configuration of a run, embedded in every report.

use serde::{Deserialize, Serialize};

/// Bumped whenever cached or reported data would change shape or meaning.
pub const CODE_VERSION: &str = concat!("witt2rep-", env!("CARGO_PKG_VERSION"), "-r1");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub scheme: String,
    pub rings: Vec<String>,
    pub q: Option<u32>,
    pub max_order: u128,
    pub max_orbit_space: u128,
    pub max_classes: u128,
    pub seed: u64,
    pub cache_dir: Option<String>,
    pub out: String,
    pub version: String,
}
