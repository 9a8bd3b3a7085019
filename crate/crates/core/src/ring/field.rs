//! Finite fields `F_q`, `q = p^f`, as `F_p[x]/(m(x))` with table-driven arithmetic.
//!
//! Elements are `u32` codes: the coefficient vector `(c_0, .., c_{f-1})` of the
//! residue polynomial read as base-`p` digits, so `c_0 + c_1 p + ...`. The prime
//! subfield therefore sits at codes `0..p`, with `0` and `1` the additive and
//! multiplicative identities.

use std::fmt;
use std::sync::Arc;

use super::RingError;

/// Largest field order we build tables for.
pub const MAX_FIELD_ORDER: u32 = 1024;
/// Largest extension degree accepted.
pub const MAX_EXTENSION_DEGREE: u32 = 4;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Monic polynomial over `F_p`, coefficients low to high.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<u32>,
}

impl Poly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The `index`-th monic polynomial of degree `deg`, lower coefficients read
    /// as base-`p` digits of `index`.
    fn monic_from_index(p: u32, deg: u32, mut index: u64) -> Poly {
        let mut coeffs = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            coeffs.push((index % p as u64) as u32);
            index /= p as u64;
        }
        coeffs.push(1);
        Poly { coeffs }
    }

    fn rem(&self, divisor: &Poly, p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = self.coeffs.clone();
        let d = divisor.degree();
        // divisor is monic
        while r.len() > d {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - d;
            if lead != 0 {
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    let sub = (lead as u64 * c as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        r
    }

    /// Irreducibility over `F_p` by trial division with every monic polynomial
    /// of degree at most half.
    pub fn is_irreducible(&self, p: u32) -> bool {
        let n = self.degree() as u32;
        if n == 0 {
            return false;
        }
        for d in 1..=n / 2 {
            let count = (p as u64).pow(d);
            for idx in 0..count {
                let div = Poly::monic_from_index(p, d, idx);
                if self.rem(&div, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// First monic irreducible of degree `deg` in base-`p` index order of its
    /// lower coefficients: `x^2+x+1` over `F_2`, `x^2+1` over `F_3`.
    pub fn default_irreducible(p: u32, deg: u32) -> Poly {
        let count = (p as u64).pow(deg);
        (0..count)
            .map(|i| Poly::monic_from_index(p, deg, i))
            .find(|m| m.is_irreducible(p))
            .expect("irreducible polynomials exist in every degree")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

struct FieldTables {
    p: u32,
    f: u32,
    q: u32,
    modulus: Poly,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
    trace: Vec<u16>,
}

/// The finite field `F_q`. Cheap to clone.
#[derive(Clone)]
pub struct GaloisField(Arc<FieldTables>);

impl GaloisField {
    /// `F_p` itself.
    pub fn prime(p: u32) -> Result<Self, RingError> {
        Self::with_modulus(p, Poly { coeffs: vec![0, 1] })
    }

    /// `F_{p^f}` with the default modulus.
    pub fn new(p: u32, f: u32) -> Result<Self, RingError> {
        if !is_prime(p as u64) {
            return Err(RingError::NotPrime(p as u64));
        }
        if f == 0 || f > MAX_EXTENSION_DEGREE {
            return Err(RingError::Unsupported(format!(
                "extension degree {f} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        let modulus = if f == 1 {
            Poly { coeffs: vec![0, 1] }
        } else {
            Poly::default_irreducible(p, f)
        };
        Self::with_modulus(p, modulus)
    }

    /// Field of order `q` with the default modulus.
    pub fn of_order(q: u32) -> Result<Self, RingError> {
        let (p, f) = prime_power(q as u64).ok_or(RingError::NotPrimePower(q as u64))?;
        Self::new(p as u32, f)
    }

    pub fn with_modulus(p: u32, modulus: Poly) -> Result<Self, RingError> {
        if !is_prime(p as u64) {
            return Err(RingError::NotPrime(p as u64));
        }
        let f = modulus.degree() as u32;
        if f == 0 || f > MAX_EXTENSION_DEGREE {
            return Err(RingError::Unsupported(format!(
                "extension degree {f} outside 1..={MAX_EXTENSION_DEGREE}"
            )));
        }
        if modulus.coeffs.iter().any(|&c| c >= p) || *modulus.coeffs.last().unwrap() != 1 {
            return Err(RingError::Parse(format!("modulus {modulus} is not a monic polynomial mod {p}")));
        }
        if f > 1 && !modulus.is_irreducible(p) {
            return Err(RingError::Reducible(modulus.to_string()));
        }
        let q64 = (p as u64).pow(f);
        if q64 > MAX_FIELD_ORDER as u64 {
            return Err(RingError::Unsupported(format!("field order {q64} exceeds {MAX_FIELD_ORDER}")));
        }
        let q = q64 as u32;
        Ok(GaloisField(Arc::new(build_tables(p, f, q, modulus))))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn degree(&self) -> u32 {
        self.0.f
    }
    pub fn order(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize] as u32
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize] as u32
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize] as u32
    }
    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.0.inv[a as usize] as u32)
        }
    }
    pub fn pow(&self, mut a: u32, mut e: u64) -> u32 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }
    /// `x -> x^p`.
    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        self.0.frob[a as usize] as u32
    }
    /// Inverse of [`Self::frobenius`], i.e. `x -> x^{p^{f-1}}`.
    pub fn frobenius_inv(&self, a: u32) -> u32 {
        let mut x = a;
        for _ in 1..self.0.f {
            x = self.frobenius(x);
        }
        x
    }
    /// Absolute trace `F_q -> F_p`, returned as a code in `0..p`.
    #[inline]
    pub fn trace(&self, a: u32) -> u32 {
        self.0.trace[a as usize] as u32
    }
    /// Integer `n` reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Coefficients `(c_0, .., c_{f-1})` of the code.
    pub fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.0.f as usize);
        for _ in 0..self.0.f {
            out.push(a % self.0.p);
            a /= self.0.p;
        }
        out
    }

    /// A fixed generator of `F_q` over `F_p` (the class of `x`), `1` when `f = 1`.
    pub fn generator(&self) -> u32 {
        if self.0.f == 1 {
            1
        } else {
            self.0.p
        }
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.modulus == other.0.modulus
    }
}
impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.f == 1 {
            write!(f, "gf({})", self.0.p)
        } else {
            write!(f, "gf({};{})", self.0.q, self.0.modulus)
        }
    }
}

/// `n = p^k` with `k >= 1`, or `None`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let (mut m, mut k) = (n, 0);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn build_tables(p: u32, f: u32, q: u32, modulus: Poly) -> FieldTables {
    let qs = q as usize;
    let digits = |mut a: u32| -> Vec<u32> {
        let mut d = vec![0; f as usize];
        for x in d.iter_mut() {
            *x = a % p;
            a /= p;
        }
        d
    };
    let undigits = |d: &[u32]| -> u32 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

    let mut add = vec![0u16; qs * qs];
    let mut mul = vec![0u16; qs * qs];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[(a * q + b) as usize] = undigits(&sum) as u16;

            let mut prod = vec![0u32; 2 * f as usize - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let reduced = Poly { coeffs: prod }.rem(&modulus, p);
            let mut r = reduced;
            r.resize(f as usize, 0);
            mul[(a * q + b) as usize] = undigits(&r) as u16;
        }
    }
    let neg: Vec<u16> = (0..q)
        .map(|a| {
            let d: Vec<u32> = digits(a).iter().map(|&c| (p - c) % p).collect();
            undigits(&d) as u16
        })
        .collect();
    let mut inv = vec![0u16; qs];
    for a in 1..q {
        for b in 1..q {
            if mul[(a * q + b) as usize] == 1 {
                inv[a as usize] = b as u16;
                break;
            }
        }
    }
    let pow = |a: u32, e: u32| -> u32 {
        let mut acc = 1u32;
        for _ in 0..e {
            acc = mul[(acc * q + a) as usize] as u32;
        }
        acc
    };
    let frob: Vec<u16> = (0..q).map(|a| pow(a, p) as u16).collect();
    let trace: Vec<u16> = (0..q)
        .map(|a| {
            let mut t = 0u32;
            let mut x = a;
            for _ in 0..f {
                t = add[(t * q + x) as usize] as u32;
                x = frob[x as usize] as u32;
            }
            t as u16
        })
        .collect();
    FieldTables { p, f, q, modulus, add, mul, neg, inv, frob, trace }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(GaloisField::new(2, 2).unwrap().to_string(), "gf(4;x^2+x+1)");
        assert_eq!(GaloisField::new(3, 2).unwrap().to_string(), "gf(9;x^2+1)");
        assert_eq!(GaloisField::prime(5).unwrap().to_string(), "gf(5)");
    }

    #[test]
    fn reducible_modulus_rejected() {
        let m = Poly { coeffs: vec![1, 0, 1] }; // (x+1)^2 over F_2
        assert!(matches!(GaloisField::with_modulus(2, m), Err(RingError::Reducible(_))));
    }

    #[test]
    fn field_axioms_small() {
        for (p, f) in [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1), (2, 4)] {
            let k = GaloisField::new(p, f).unwrap();
            for a in k.elements() {
                if a != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
                }
                assert_eq!(k.add(a, k.neg(a)), 0);
                for b in k.elements() {
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    // Frobenius is a ring homomorphism
                    assert_eq!(k.frobenius(k.mul(a, b)), k.mul(k.frobenius(a), k.frobenius(b)));
                    assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
                }
            }
        }
    }

    #[test]
    fn frobenius_order_and_trace_surjective() {
        for (p, f) in [(2, 2), (3, 2), (2, 3), (2, 4)] {
            let k = GaloisField::new(p, f).unwrap();
            for a in k.elements() {
                assert_eq!(k.pow(a, k.order() as u64), a);
                let mut x = a;
                for _ in 0..f {
                    x = k.frobenius(x);
                }
                assert_eq!(x, a);
                assert_eq!(k.frobenius_inv(k.frobenius(a)), a);
            }
            // order is exactly f
            assert_ne!(k.frobenius(k.generator()), k.generator());
            let image: std::collections::BTreeSet<u32> = k.elements().map(|a| k.trace(a)).collect();
            assert_eq!(image.len() as u32, p);
        }
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(25), Some((5, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }
}
