//! Square matrices over a [`LocalRing`], packed into `u128` keys.

use crate::ring::LocalRing;

use super::GroupError;

/// A matrix packed big-endian and row-major, so integer order on keys is the
/// lexicographic order of the row-major coordinate tuple.
pub type Key = u128;

/// `M_n(R)` with packed keys.
#[derive(Clone, Debug)]
pub struct MatrixRing {
    ring: LocalRing,
    n: usize,
    bits: u32,
    perms: Vec<(Vec<usize>, bool)>,
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !prefix.contains(&i) {
                prefix.push(i);
                rec(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), n, &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            (p, inversions % 2 == 1)
        })
        .collect()
}

impl MatrixRing {
    pub fn new(ring: LocalRing, n: usize) -> Result<Self, GroupError> {
        let bits = 32 - (ring.order() - 1).max(1).leading_zeros();
        if bits as usize * n * n > 128 {
            return Err(GroupError::Unsupported(format!("{n}x{n} matrices over {ring} do not fit a 128-bit key")));
        }
        Ok(MatrixRing { ring, n, bits, perms: permutations(n) })
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn encode(&self, m: &[u32]) -> Key {
        m.iter().fold(0u128, |acc, &x| (acc << self.bits) | x as u128)
    }

    pub fn decode(&self, key: Key) -> Vec<u32> {
        let nn = self.n * self.n;
        let mask = (1u128 << self.bits) - 1;
        (0..nn).map(|i| ((key >> (self.bits as usize * (nn - 1 - i))) & mask) as u32).collect()
    }

    pub fn identity(&self) -> Vec<u32> {
        let n = self.n;
        let one = self.ring.one();
        (0..n * n).map(|i| if i / n == i % n { one } else { 0 }).collect()
    }

    pub fn identity_key(&self) -> Key {
        self.encode(&self.identity())
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = self.n;
        let r = &self.ring;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = r.add(out[i * n + j], r.mul(aik, b[k * n + j]));
                }
            }
        }
        out
    }

    pub fn mul_keys(&self, a: Key, b: Key) -> Key {
        self.encode(&self.mul(&self.decode(a), &self.decode(b)))
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.ring.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.ring.sub(x, y)).collect()
    }

    pub fn transpose(&self, a: &[u32]) -> Vec<u32> {
        let n = self.n;
        (0..n * n).map(|i| a[(i % n) * n + i / n]).collect()
    }

    /// Leibniz expansion; fine for `n <= 4`.
    pub fn det(&self, a: &[u32]) -> u32 {
        let n = self.n;
        let r = &self.ring;
        let mut acc = 0;
        for (perm, odd) in &self.perms {
            let term = (0..n).fold(r.one(), |t, i| r.mul(t, a[i * n + perm[i]]));
            acc = if *odd { r.sub(acc, term) } else { r.add(acc, term) };
        }
        acc
    }

    pub fn trace(&self, a: &[u32]) -> u32 {
        (0..self.n).fold(0, |t, i| self.ring.add(t, a[i * self.n + i]))
    }

    /// Gauss-Jordan inverse; `None` when the determinant is not a unit.
    pub fn inverse(&self, a: &[u32]) -> Option<Vec<u32>> {
        let n = self.n;
        let r = &self.ring;
        let mut m = a.to_vec();
        let mut inv = self.identity();
        for col in 0..n {
            let piv = (col..n).find(|&row| r.is_unit(m[row * n + col]))?;
            if piv != col {
                for j in 0..n {
                    m.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let s = r.inv(m[col * n + col]).unwrap();
            for j in 0..n {
                m[col * n + j] = r.mul(m[col * n + j], s);
                inv[col * n + j] = r.mul(inv[col * n + j], s);
            }
            for row in 0..n {
                let f = m[row * n + col];
                if row != col && f != 0 {
                    for j in 0..n {
                        m[row * n + j] = r.sub(m[row * n + j], r.mul(f, m[col * n + j]));
                        inv[row * n + j] = r.sub(inv[row * n + j], r.mul(f, inv[col * n + j]));
                    }
                }
            }
        }
        Some(inv)
    }

    /// Entrywise map into another matrix ring of the same size.
    pub fn map_entries(&self, a: &[u32], f: impl Fn(u32) -> u32) -> Vec<u32> {
        a.iter().map(|&x| f(x)).collect()
    }

    /// Integer matrix mapped into the ring.
    pub fn from_ints(&self, a: &[i64]) -> Vec<u32> {
        a.iter().map(|&x| self.ring.from_int(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{GaloisField, LocalRing};

    #[test]
    fn key_order_is_lexicographic() {
        let r = LocalRing::integers_mod(3, 2).unwrap();
        let m = MatrixRing::new(r, 2).unwrap();
        let a = m.encode(&[0, 8, 8, 8]);
        let b = m.encode(&[1, 0, 0, 0]);
        assert!(a < b);
        assert_eq!(m.decode(a), vec![0, 8, 8, 8]);
    }

    #[test]
    fn inverse_and_det() {
        let k = GaloisField::new(2, 2).unwrap();
        let r = LocalRing::witt2(k).unwrap();
        let m = MatrixRing::new(r.clone(), 2).unwrap();
        let a = vec![r.one(), 5, 3, 7];
        let d = m.det(&a);
        if r.is_unit(d) {
            let ai = m.inverse(&a).unwrap();
            assert_eq!(m.mul(&a, &ai), m.identity());
            assert_eq!(r.mul(d, m.det(&ai)), r.one());
        }
        let singular = vec![0, 0, 0, r.one()];
        assert!(m.inverse(&singular).is_none());
    }

    #[test]
    fn det_is_multiplicative_over_z8() {
        let r = LocalRing::integers_mod(2, 3).unwrap();
        let m = MatrixRing::new(r.clone(), 3).unwrap();
        let a = vec![1, 2, 3, 4, 5, 6, 7, 1, 3];
        let b = vec![2, 7, 1, 0, 3, 5, 6, 6, 1];
        assert_eq!(m.det(&m.mul(&a, &b)), r.mul(m.det(&a), m.det(&b)));
    }
}
