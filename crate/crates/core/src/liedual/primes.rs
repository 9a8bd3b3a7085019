use std::fmt;
use std::str::FromStr;

use super::LieError;

/// Cartan type of a simple root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootType {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl RootType {
    fn valid_rank(self, rank: u32) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B | RootType::C => rank >= 2,
            RootType::D => rank >= 4,
            RootType::G2 => rank == 2,
            RootType::F4 => rank == 4,
            RootType::E6 => rank == 6,
            RootType::E7 => rank == 7,
            RootType::E8 => rank == 8,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A => "A",
            RootType::B => "B",
            RootType::C => "C",
            RootType::D => "D",
            RootType::G2 => "G2",
            RootType::F4 => "F4",
            RootType::E6 => "E6",
            RootType::E7 => "E7",
            RootType::E8 => "E8",
        };
        f.write_str(s)
    }
}

/// Parses `A3`, `C2`, `E8`, ... into type and rank.
pub fn parse_root_system(s: &str) -> Result<(RootType, u32), LieError> {
    let s = s.trim();
    let bad = || LieError::UnknownType(s.to_string());
    let (head, rank) = s.split_at(1.min(s.len()));
    let rank: u32 = rank.parse().map_err(|_| bad())?;
    let t = match (head, rank) {
        ("A", _) => RootType::A,
        ("B", _) => RootType::B,
        ("C", _) => RootType::C,
        ("D", _) => RootType::D,
        ("G", 2) => RootType::G2,
        ("F", 4) => RootType::F4,
        ("E", 6) => RootType::E6,
        ("E", 7) => RootType::E7,
        ("E", 8) => RootType::E8,
        _ => return Err(bad()),
    };
    if !t.valid_rank(rank) {
        return Err(bad());
    }
    Ok((t, rank))
}

impl FromStr for RootType {
    type Err = LieError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_root_system(s).map(|(t, _)| t)
    }
}

/// Good primes: always for `A_n`; `p != 2` for `B, C, D`; `p > 3` for
/// `G2, F4, E6, E7`; `p > 5` for `E8`.
pub fn is_good_prime(t: RootType, rank: u32, p: u32) -> Result<bool, LieError> {
    if !t.valid_rank(rank) {
        return Err(LieError::UnknownType(format!("{t}{rank}")));
    }
    Ok(match t {
        RootType::A => true,
        RootType::B | RootType::C | RootType::D => p != 2,
        RootType::G2 | RootType::F4 | RootType::E6 | RootType::E7 => p > 3,
        RootType::E8 => p > 5,
    })
}

/// Very good: good, and additionally `p` does not divide `n + 1` in type `A_n`.
pub fn is_very_good_prime(t: RootType, rank: u32, p: u32) -> Result<bool, LieError> {
    let good = is_good_prime(t, rank, p)?;
    Ok(good && (t != RootType::A || (rank + 1) % p != 0))
}
