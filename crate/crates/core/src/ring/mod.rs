//! Exact arithmetic in the finite local rings `F_q[t]/t^r`, `Z/p^r` and `W_2(F_q)`.

mod field;
mod local;
mod text;

pub use field::{is_prime, prime_power, GaloisField, Poly, MAX_EXTENSION_DEGREE, MAX_FIELD_ORDER};
pub use local::{LocalRing, LocalRingClass, RingKind, MAX_RING_ORDER};
pub use text::{parse_field, parse_ring};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus {0} is reducible")]
    Reducible(String),
    #[error("unsupported ring: {0}")]
    Unsupported(String),
    #[error("cannot parse descriptor: {0}")]
    Parse(String),
    #[error("operation needs a {expected} ring, got {found}")]
    KindMismatch { expected: &'static str, found: String },
    #[error("coordinates {0:?} do not describe an element")]
    BadCoordinates(Vec<u32>),
}
