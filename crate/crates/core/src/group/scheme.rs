use std::fmt;

use crate::linalg;
use crate::ring::GaloisField;

use super::GroupError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    GL,
    SL,
    Sp,
}

/// A split classical group scheme: `GL_n`, `SL_n` or `Sp_n` (`n` even,
/// antidiagonal symplectic form).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroupScheme {
    pub family: Family,
    pub n: usize,
}

impl GroupScheme {
    pub fn new(family: Family, n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > 4 {
            return Err(GroupError::Unsupported(format!("matrix size {n} outside 1..=4")));
        }
        if family == Family::Sp && n % 2 != 0 {
            return Err(GroupError::Unsupported(format!("sp({n}) needs even size")));
        }
        Ok(GroupScheme { family, n })
    }

    pub fn gl(n: usize) -> Self {
        Self::new(Family::GL, n).unwrap()
    }
    pub fn sl(n: usize) -> Self {
        Self::new(Family::SL, n).unwrap()
    }
    pub fn sp(n: usize) -> Self {
        Self::new(Family::Sp, n).unwrap()
    }

    /// Dimension of the Lie algebra.
    pub fn lie_dim(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::GL => n * n,
            Family::SL => n * n - 1,
            Family::Sp => n * (n + 1) / 2,
        }
    }

    /// The symplectic form: `+1` on the upper half of the antidiagonal, `-1`
    /// on the lower half, as integers.
    pub fn symplectic_form(n: usize) -> Vec<i64> {
        let mut j = vec![0i64; n * n];
        for i in 0..n {
            j[i * n + (n - 1 - i)] = if i < n / 2 { 1 } else { -1 };
        }
        j
    }

    /// `|G(F_q)|`.
    pub fn order_over_field(&self, q: u64) -> u128 {
        let q = q as u128;
        let n = self.n as u32;
        match self.family {
            Family::GL => (0..n).map(|i| q.pow(n) - q.pow(i)).product(),
            Family::SL => (0..n).map(|i| q.pow(n) - q.pow(i)).product::<u128>() / (q - 1),
            Family::Sp => {
                let m = n / 2;
                q.pow(m * m) * (1..=m).map(|i| q.pow(2 * i) - 1).product::<u128>()
            }
        }
    }

    /// `|G(R)| = |G(F_q)| q^((r-1) dim g)` for a length-`r` ring with residue `F_q`.
    pub fn order_over_ring(&self, q: u64, r: u32) -> u128 {
        self.order_over_field(q) * (q as u128).pow((r - 1) * self.lie_dim() as u32)
    }

    /// Linear equations cutting the Lie algebra out of `M_n(F_q)`, in row-major
    /// coordinates.
    pub fn lie_equations(&self, k: &GaloisField) -> Vec<Vec<u32>> {
        let n = self.n;
        match self.family {
            Family::GL => Vec::new(),
            Family::SL => {
                let mut row = vec![0u32; n * n];
                for i in 0..n {
                    row[i * n + i] = 1;
                }
                vec![row]
            }
            Family::Sp => {
                // (X^T J + J X)_{ab} = sum_c X_{ca} J_{cb} + J_{ac} X_{cb}
                let j = Self::symplectic_form(n);
                let mut rows = Vec::new();
                for a in 0..n {
                    for b in a..n {
                        let mut row = vec![0u32; n * n];
                        for c in 0..n {
                            let x_ca = c * n + a;
                            row[x_ca] = k.add(row[x_ca], k.from_int(j[c * n + b]));
                            let x_cb = c * n + b;
                            row[x_cb] = k.add(row[x_cb], k.from_int(j[a * n + c]));
                        }
                        rows.push(row);
                    }
                }
                rows
            }
        }
    }

    /// Whether the field matrix `x` (row-major) lies in the Lie algebra.
    pub fn lie_contains(&self, k: &GaloisField, x: &[u32]) -> bool {
        self.lie_equations(k).iter().all(|row| {
            row.iter().zip(x).fold(0, |acc, (&a, &b)| k.add(acc, k.mul(a, b))) == 0
        })
    }

    /// Canonical basis of the Lie algebra over `F_q`, from the reduced echelon
    /// form of [`Self::lie_equations`]. Also returns the coordinate positions:
    /// the coordinates of a Lie algebra element are its entries at these
    /// row-major positions.
    pub fn lie_basis(&self, k: &GaloisField) -> (Vec<Vec<u32>>, Vec<usize>) {
        let n = self.n;
        linalg::nullspace(k, &self.lie_equations(k), n * n)
    }

    /// Cartan type and rank of the derived group, for the good-prime tables.
    pub fn root_type(&self) -> Option<(crate::liedual::RootType, u32)> {
        use crate::liedual::RootType;
        let n = self.n as u32;
        match self.family {
            Family::GL | Family::SL if n >= 2 => Some((RootType::A, n - 1)),
            Family::Sp if n == 2 => Some((RootType::A, 1)),
            Family::Sp if n >= 4 => Some((RootType::C, n / 2)),
            _ => None,
        }
    }
}

impl fmt::Display for GroupScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::GL => "gl",
            Family::SL => "sl",
            Family::Sp => "sp",
        };
        write!(f, "{name}({})", self.n)
    }
}

impl std::str::FromStr for GroupScheme {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || GroupError::Parse(s.clone());
        let open = s.find('(').ok_or_else(bad)?;
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let n: usize = inner.trim().parse().map_err(|_| bad())?;
        let family = match &s[..open] {
            "gl" => Family::GL,
            "sl" => Family::SL,
            "sp" => Family::Sp,
            _ => return Err(bad()),
        };
        GroupScheme::new(family, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["gl(2)", "sl(2)", "sp(4)", "gl(1)"] {
            assert_eq!(s.parse::<GroupScheme>().unwrap().to_string(), s);
        }
        assert!("sp(3)".parse::<GroupScheme>().is_err());
        assert!("so(3)".parse::<GroupScheme>().is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(GroupScheme::gl(2).order_over_field(2), 6);
        assert_eq!(GroupScheme::sl(2).order_over_field(3), 24);
        assert_eq!(GroupScheme::sp(4).order_over_field(2), 720);
        assert_eq!(GroupScheme::sl(2).order_over_ring(2, 2), 48);
        assert_eq!(GroupScheme::gl(2).order_over_ring(2, 2), 96);
        assert_eq!(GroupScheme::sl(2).order_over_ring(2, 3), 384);
        assert_eq!(GroupScheme::sl(2).order_over_ring(5, 2), 15000);
    }

    #[test]
    fn lie_dimensions_match_bases() {
        for q in [2, 3, 4] {
            let k = GaloisField::of_order(q).unwrap();
            for s in [GroupScheme::gl(2), GroupScheme::sl(2), GroupScheme::sl(3), GroupScheme::sp(2), GroupScheme::sp(4)] {
                let (basis, _) = s.lie_basis(&k);
                assert_eq!(basis.len(), s.lie_dim(), "{s} over F_{q}");
                for b in &basis {
                    assert!(s.lie_contains(&k, b));
                }
            }
        }
    }
}
