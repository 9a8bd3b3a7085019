//! Arithmetic and linear algebra over a prime field `F_l` with `l < 2^31`.

use crate::ring::is_prime;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fl {
    pub l: u64,
}

impl Fl {
    pub fn new(l: u64) -> Self {
        debug_assert!(is_prime(l) && l < 1 << 31);
        Fl { l }
    }
    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.l {
            s - self.l
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.l - b
        }
    }
    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.l - a
        }
    }
    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }
    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.l;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    pub fn inv(self, a: u64) -> Option<u64> {
        (a % self.l != 0).then(|| self.pow(a, self.l - 2))
    }
    pub fn from_u64(self, n: u64) -> u64 {
        n % self.l
    }
    /// Integer in `(-l/2, l/2]` congruent to `a`.
    pub fn symmetric(self, a: u64) -> i64 {
        if a > self.l / 2 {
            a as i64 - self.l as i64
        } else {
            a as i64
        }
    }

    /// Smallest primitive root.
    pub fn primitive_root(self) -> u64 {
        let n = self.l - 1;
        let factors = prime_factors(n);
        (1..self.l).find(|&g| factors.iter().all(|&f| self.pow(g, n / f) != 1)).expect("prime field has a primitive root")
    }

    /// Primitive `e`-th root of unity `g^((l-1)/e)`, `g` the smallest
    /// primitive root. `None` unless `e | l - 1`.
    pub fn root_of_unity(self, e: u64) -> Option<u64> {
        ((self.l - 1) % e == 0).then(|| self.pow(self.primitive_root(), (self.l - 1) / e))
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, p);
            let s = self.inv(rows[r][c]).unwrap();
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, s);
            }
            for i in 0..rows.len() {
                let f = rows[i][c];
                if i != r && f != 0 {
                    for j in c..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{ x : A x = 0 }` for a square or rectangular `A` given by rows.
    pub fn nullspace(self, a: &[Vec<u64>], ncols: usize) -> Vec<Vec<u64>> {
        let mut rows = a.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; ncols];
                v[f] = 1;
                for (row, &pc) in rows.iter().zip(&pivots) {
                    v[pc] = self.neg(row[f]);
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - A)`, coefficients low to high, via
    /// reduction to Hessenberg form.
    pub fn charpoly(self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else { continue };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let piv_inv = self.inv(h[c + 1][c]).unwrap();
            for i in c + 2..n {
                let f = self.mul(h[i][c], piv_inv);
                if f == 0 {
                    continue;
                }
                // row_i -= f row_{c+1}; col_{c+1} += f col_i
                for j in 0..n {
                    let t = self.mul(f, h[c + 1][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(f, row[i]);
                    row[c + 1] = self.add(row[c + 1], t);
                }
            }
        }
        // p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![0u64; m + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(h[m][m], c));
            }
            let mut prod = 1u64;
            for i in (0..m).rev() {
                prod = self.mul(prod, h[i + 1][i]);
                if prod == 0 {
                    break;
                }
                let f = self.mul(h[i][m], prod);
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(f, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Square root in `[0, l)` when one exists; the smaller of the two.
    pub fn sqrt_small(self, a: u64) -> Option<u64> {
        (0..=self.l / 2).find(|&x| self.mul(x, x) == a)
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest prime `l = 1 mod e` with `l^2 > 4 |G|`.
pub fn split_prime(exponent: u64, group_order: u64) -> u64 {
    let mut l = exponent + 1;
    while !(is_prime(l) && (l as u128) * (l as u128) > 4 * group_order as u128) {
        l += exponent;
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_brute(f: Fl, a: &[Vec<u64>]) -> u64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        let mut acc = 0;
        for c in 0..n {
            let minor: Vec<Vec<u64>> =
                a[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect()).collect();
            let t = f.mul(a[0][c], det_brute(f, &minor));
            acc = if c % 2 == 0 { f.add(acc, t) } else { f.sub(acc, t) };
        }
        acc
    }

    #[test]
    fn charpoly_matches_determinant() {
        let f = Fl::new(101);
        let a: Vec<Vec<u64>> = vec![vec![3, 0, 7, 1], vec![0, 0, 2, 5], vec![9, 4, 1, 0], vec![6, 0, 0, 8]];
        let cp = f.charpoly(&a);
        assert_eq!(cp.len(), 5);
        for x in [0u64, 1, 5, 77] {
            let m: Vec<Vec<u64>> = (0..4)
                .map(|i| (0..4).map(|j| f.sub(if i == j { x } else { 0 }, a[i][j])).collect())
                .collect();
            assert_eq!(f.eval(&cp, x), det_brute(f, &m));
        }
    }

    #[test]
    fn split_prime_examples() {
        // |S_3| = 6, exponent 6: need l = 1 mod 6 and l^2 > 24
        assert_eq!(split_prime(6, 6), 7);
        assert_eq!(split_prime(12, 24), 13);
        let l = split_prime(24, 48);
        assert!(l % 24 == 1 && l * l > 4 * 48);
    }

    #[test]
    fn roots_of_unity_and_nullspace() {
        let f = Fl::new(13);
        assert_eq!(f.primitive_root(), 2);
        let z = f.root_of_unity(3).unwrap();
        assert_eq!(f.pow(z, 3), 1);
        assert_ne!(z, 1);
        assert!(f.root_of_unity(5).is_none());
        let ns = f.nullspace(&[vec![1, 2, 3], vec![2, 4, 6]], 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(f.add(f.add(v[0], f.mul(2, v[1])), f.mul(3, v[2])), 0);
        }
        assert_eq!(f.sqrt_small(f.mul(5, 5)), Some(5));
    }
}
