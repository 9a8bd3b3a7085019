//! Finite group schemes over length-two local rings: point enumeration,
//! coadjoint orbits, modular character tables and Clifford-theoretic
//! predictions of irreducible character degrees.

pub mod cache;
pub mod chartab;
pub mod clifford;
pub mod config;
pub mod group;
pub mod liedual;
pub mod linalg;
pub mod par;
pub mod ring;
