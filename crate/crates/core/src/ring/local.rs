use std::fmt;
use std::sync::Arc;

use super::{GaloisField, RingError};

/// Largest ring we tabulate.
pub const MAX_RING_ORDER: u32 = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_q[t]/t^r`; with `r = 1` this is the residue field itself.
    TruncatedPoly { r: u32 },
    /// `Z/p^r`, residue field `F_p`.
    IntegersModPrimePower { r: u32 },
    /// Witt vectors of length two over `F_q`.
    WittLength2,
}

/// Outcome of classifying a length-two ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalRingClass {
    /// Equal characteristic: isomorphic to `F_q[t]/t^2`.
    DualNumbers(GaloisField),
    /// Characteristic `p^2`: isomorphic to `W_2(F_q)`.
    Witt(GaloisField),
}

struct RingTables {
    kind: RingKind,
    field: GaloisField,
    length: u32,
    size: u32,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    reduce: Vec<u16>,
}

/// A finite local ring with tabulated arithmetic.
///
/// Elements are `u32` codes whose numeric order is the lexicographic order of
/// the coordinate tuple: `(c_0, .., c_{r-1})` for truncated polynomials (the
/// coefficients of `1, t, ..`), `(a_0, a_1)` for Witt vectors, and the integer
/// representative in `[0, p^r)` for `Z/p^r`.
#[derive(Clone)]
pub struct LocalRing(Arc<RingTables>);

const NO_INVERSE: u16 = u16::MAX;

impl LocalRing {
    pub fn truncated_poly(field: GaloisField, r: u32) -> Result<Self, RingError> {
        if r == 0 {
            return Err(RingError::Unsupported("length must be at least 1".into()));
        }
        Self::build(RingKind::TruncatedPoly { r }, field)
    }

    /// The residue field viewed as a length-one ring.
    pub fn field(field: GaloisField) -> Self {
        Self::truncated_poly(field, 1).expect("fields are within table bounds")
    }

    pub fn integers_mod(p: u32, r: u32) -> Result<Self, RingError> {
        if r == 0 {
            return Err(RingError::Unsupported("length must be at least 1".into()));
        }
        let field = GaloisField::prime(p)?;
        Self::build(RingKind::IntegersModPrimePower { r }, field)
    }

    pub fn witt2(field: GaloisField) -> Result<Self, RingError> {
        Self::build(RingKind::WittLength2, field)
    }

    /// The mixed-characteristic length-`r` ring with residue field `field`:
    /// `Z/p^r` over a prime field, `W_2` otherwise (only for `r = 2`).
    pub fn mixed(field: GaloisField, r: u32) -> Result<Self, RingError> {
        if field.degree() == 1 {
            Self::integers_mod(field.p(), r)
        } else if r == 2 {
            Self::witt2(field)
        } else {
            Err(RingError::Unsupported(format!(
                "mixed characteristic length {r} over {field} (only W_2 is implemented)"
            )))
        }
    }

    fn build(kind: RingKind, field: GaloisField) -> Result<Self, RingError> {
        let q = field.order() as u64;
        let p = field.p() as u64;
        let (length, size) = match kind {
            RingKind::TruncatedPoly { r } => (r, q.checked_pow(r)),
            RingKind::IntegersModPrimePower { r } => (r, p.checked_pow(r)),
            RingKind::WittLength2 => (2, Some(q * q)),
        };
        let size = size
            .filter(|&s| s <= MAX_RING_ORDER as u64)
            .ok_or_else(|| RingError::Unsupported(format!("ring order exceeds {MAX_RING_ORDER}")))?
            as u32;
        let n = size as usize;
        let mut proto = RingTables {
            kind,
            field,
            length,
            size,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            reduce: Vec::new(),
        };
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..size {
            for b in 0..size {
                add[(a * size + b) as usize] = proto.slow_add(a, b) as u16;
                mul[(a * size + b) as usize] = proto.slow_mul(a, b) as u16;
            }
        }
        let mut neg = vec![0u16; n];
        for a in 0..size {
            neg[a as usize] = (0..size).find(|&b| add[(a * size + b) as usize] == 0).unwrap() as u16;
        }
        let reduce: Vec<u16> = (0..size).map(|a| proto.slow_reduce(a) as u16).collect();
        let one = proto.one_code() as u16;
        let mut inv = vec![NO_INVERSE; n];
        for a in 0..size {
            if reduce[a as usize] != 0 {
                inv[a as usize] =
                    (0..size).find(|&b| mul[(a * size + b) as usize] == one).expect("units are invertible") as u16;
            }
        }
        proto.add = add;
        proto.mul = mul;
        proto.neg = neg;
        proto.inv = inv;
        proto.reduce = reduce;
        Ok(LocalRing(Arc::new(proto)))
    }

    pub fn kind(&self) -> RingKind {
        self.0.kind
    }
    pub fn residue_field(&self) -> &GaloisField {
        &self.0.field
    }
    pub fn length(&self) -> u32 {
        self.0.length
    }
    pub fn order(&self) -> u32 {
        self.0.size
    }
    pub fn is_field(&self) -> bool {
        self.0.length == 1
    }
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.size + b) as usize] as u32
    }
    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.size + b) as usize] as u32
    }
    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize] as u32
    }
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        let i = self.0.inv[a as usize];
        (i != NO_INVERSE).then_some(i as u32)
    }
    pub fn is_unit(&self, a: u32) -> bool {
        self.0.reduce[a as usize] != 0
    }
    pub fn zero(&self) -> u32 {
        0
    }
    pub fn one(&self) -> u32 {
        self.0.one_code()
    }

    /// The residue map `R -> F_q`.
    #[inline]
    pub fn reduce(&self, a: u32) -> u32 {
        self.0.reduce[a as usize] as u32
    }

    /// Coordinatewise section `F_q -> R` of [`Self::reduce`] (the Teichmüller
    /// lift for Witt vectors, the integer representative for `Z/p^r`).
    pub fn lift(&self, c: u32) -> u32 {
        self.0.lift_code(c)
    }

    /// The element `eps^(r-1) * c` in the last layer `m^(r-1)` of the maximal
    /// ideal, `eps` being `t`, `p` or `V(1)`. For `r = 2`: `t*c`, `p*c` or `V(c)`.
    pub fn top_ideal(&self, c: u32) -> u32 {
        let t = &self.0;
        match t.kind {
            RingKind::TruncatedPoly { .. } | RingKind::WittLength2 => c,
            RingKind::IntegersModPrimePower { r } => c * t.field.p().pow(r - 1),
        }
    }

    /// Inverse of [`Self::top_ideal`] on `m^(r-1)`; `None` elsewhere.
    pub fn top_ideal_coord(&self, a: u32) -> Option<u32> {
        let t = &self.0;
        match t.kind {
            RingKind::TruncatedPoly { .. } | RingKind::WittLength2 => (a < t.field.order()).then_some(a),
            RingKind::IntegersModPrimePower { r } => {
                let unit = t.field.p().pow(r - 1);
                (a % unit == 0).then_some(a / unit)
            }
        }
    }

    /// Elements of the maximal ideal, in code order.
    pub fn maximal_ideal(&self) -> Vec<u32> {
        self.elements().filter(|&a| self.reduce(a) == 0).collect()
    }

    /// Characteristic, i.e. the additive order of `1`.
    pub fn characteristic(&self) -> u32 {
        let one = self.one();
        let mut x = one;
        let mut n = 1;
        while x != 0 {
            x = self.add(x, one);
            n += 1;
        }
        n
    }

    /// The integer `n` as `n * 1`.
    pub fn from_int(&self, n: i64) -> u32 {
        let m = n.rem_euclid(self.characteristic() as i64) as u64;
        let one = self.one();
        let mut acc = 0;
        for _ in 0..m {
            acc = self.add(acc, one);
        }
        acc
    }

    pub fn coords(&self, a: u32) -> Vec<u32> {
        self.0.coords(a)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<u32, RingError> {
        let t = &self.0;
        let q = t.field.order();
        let bad = || RingError::BadCoordinates(coords.to_vec());
        match t.kind {
            RingKind::TruncatedPoly { r } => {
                if coords.len() != r as usize || coords.iter().any(|&c| c >= q) {
                    return Err(bad());
                }
                Ok(coords.iter().fold(0, |acc, &c| acc * q + c))
            }
            RingKind::IntegersModPrimePower { .. } => match coords {
                [n] if *n < t.size => Ok(*n),
                _ => Err(bad()),
            },
            RingKind::WittLength2 => match coords {
                [a0, a1] if *a0 < q && *a1 < q => Ok(a0 * q + a1),
                _ => Err(bad()),
            },
        }
    }

    fn require_witt(&self) -> Result<(), RingError> {
        if self.0.kind == RingKind::WittLength2 {
            Ok(())
        } else {
            Err(RingError::KindMismatch { expected: "W_2", found: self.to_string() })
        }
    }

    /// Witt vector sum, evaluated from the universal polynomials.
    pub fn witt_add(&self, a: u32, b: u32) -> Result<u32, RingError> {
        self.require_witt()?;
        Ok(self.0.slow_add(a, b))
    }

    /// Witt vector product, evaluated from the universal polynomials.
    pub fn witt_mul(&self, a: u32, b: u32) -> Result<u32, RingError> {
        self.require_witt()?;
        Ok(self.0.slow_mul(a, b))
    }

    /// `V(x) = (0, x)`.
    pub fn verschiebung(&self, x: u32) -> Result<u32, RingError> {
        self.require_witt()?;
        self.from_coords(&[0, x])
    }

    /// `[x] = (x, 0)`.
    pub fn teichmuller(&self, x: u32) -> Result<u32, RingError> {
        self.require_witt()?;
        self.from_coords(&[x, 0])
    }

    /// Coordinatewise `x -> x^p`, a ring automorphism of order `f` fixing the
    /// corresponding ring over `F_p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        let t = &self.0;
        match t.kind {
            RingKind::IntegersModPrimePower { .. } => a,
            _ => {
                let c: Vec<u32> = t.coords(a).iter().map(|&x| t.field.frobenius(x)).collect();
                self.from_coords(&c).unwrap()
            }
        }
    }

    /// Coordinatewise `x -> x^(p^base_degree)`: the Frobenius relative to the
    /// subfield of degree `base_degree`. Its fixed ring is the same kind of
    /// ring over that subfield.
    pub fn frobenius_over(&self, a: u32, base_degree: u32) -> Result<u32, RingError> {
        let f = self.0.field.degree();
        if base_degree == 0 || f % base_degree != 0 {
            return Err(RingError::Unsupported(format!(
                "F_(p^{base_degree}) is not a subfield of {}",
                self.0.field
            )));
        }
        let mut x = a;
        for _ in 0..base_degree {
            x = self.frobenius(x);
        }
        Ok(x)
    }

    /// Equal or mixed characteristic class of a length-two ring.
    pub fn classify(&self) -> Result<LocalRingClass, RingError> {
        if self.0.length != 2 {
            return Err(RingError::Unsupported(format!(
                "classification needs length 2, {self} has length {}",
                self.0.length
            )));
        }
        let p = self.0.field.p();
        let field = self.0.field.clone();
        if self.characteristic() == p {
            Ok(LocalRingClass::DualNumbers(field))
        } else {
            debug_assert_eq!(self.characteristic(), p * p);
            Ok(LocalRingClass::Witt(field))
        }
    }
}

impl RingTables {
    fn one_code(&self) -> u32 {
        match self.kind {
            RingKind::TruncatedPoly { r } => self.field.order().pow(r - 1),
            RingKind::IntegersModPrimePower { .. } => 1,
            RingKind::WittLength2 => self.field.order(),
        }
    }

    fn lift_code(&self, c: u32) -> u32 {
        match self.kind {
            RingKind::TruncatedPoly { r } => c * self.field.order().pow(r - 1),
            RingKind::IntegersModPrimePower { .. } => c,
            RingKind::WittLength2 => c * self.field.order(),
        }
    }

    fn coords(&self, mut a: u32) -> Vec<u32> {
        let q = self.field.order();
        match self.kind {
            RingKind::TruncatedPoly { r } => {
                let mut c = vec![0; r as usize];
                for x in c.iter_mut().rev() {
                    *x = a % q;
                    a /= q;
                }
                c
            }
            RingKind::IntegersModPrimePower { .. } => vec![a],
            RingKind::WittLength2 => vec![a / q, a % q],
        }
    }

    fn slow_reduce(&self, a: u32) -> u32 {
        match self.kind {
            RingKind::IntegersModPrimePower { .. } => a % self.field.p(),
            _ => self.coords(a)[0],
        }
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        let k = &self.field;
        let q = k.order();
        match self.kind {
            RingKind::TruncatedPoly { .. } => {
                let (ca, cb) = (self.coords(a), self.coords(b));
                ca.iter().zip(&cb).fold(0, |acc, (&x, &y)| acc * q + k.add(x, y))
            }
            RingKind::IntegersModPrimePower { .. } => (a + b) % self.size,
            RingKind::WittLength2 => {
                let (a0, a1) = (a / q, a % q);
                let (b0, b1) = (b / q, b % q);
                let s0 = k.add(a0, b0);
                let mut s1 = k.add(a1, b1);
                for (i, &c) in witt_carry_coefficients(k.p()).iter().enumerate() {
                    let i = i as u64 + 1;
                    let term = k.mul(k.pow(a0, i), k.pow(b0, k.p() as u64 - i));
                    s1 = k.sub(s1, k.mul(k.from_int(c as i64), term));
                }
                s0 * q + s1
            }
        }
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let k = &self.field;
        let q = k.order();
        match self.kind {
            RingKind::TruncatedPoly { r } => {
                let (ca, cb) = (self.coords(a), self.coords(b));
                let mut prod = vec![0u32; r as usize];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate().take(r as usize - i) {
                        prod[i + j] = k.add(prod[i + j], k.mul(x, y));
                    }
                }
                prod.iter().fold(0, |acc, &c| acc * q + c)
            }
            RingKind::IntegersModPrimePower { .. } => (a as u64 * b as u64 % self.size as u64) as u32,
            RingKind::WittLength2 => {
                let (a0, a1) = (a / q, a % q);
                let (b0, b1) = (b / q, b % q);
                let p0 = k.mul(a0, b0);
                let p1 = k.add(k.mul(k.frobenius(a0), b1), k.mul(k.frobenius(b0), a1));
                p0 * q + p1
            }
        }
    }
}

/// `binom(p, i) / p mod p` for `i = 1..p-1`: the carry coefficients in the
/// second Witt sum polynomial `S_1 = a_1 + b_1 - sum_i binom(p,i)/p a_0^i b_0^(p-i)`.
pub(crate) fn witt_carry_coefficients(p: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(p as usize - 1);
    let mut binom: u128 = 1;
    for i in 1..p as u128 {
        binom = binom * (p as u128 - i + 1) / i;
        out.push(((binom / p as u128) % p as u128) as u64);
    }
    out
}

impl PartialEq for LocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.0.kind == other.0.kind && self.0.field == other.0.field
    }
}
impl Eq for LocalRing {}

impl fmt::Display for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = &self.0.field;
        match self.0.kind {
            RingKind::TruncatedPoly { r: 1 } => write!(f, "{k}"),
            RingKind::TruncatedPoly { r } => write!(f, "truncpoly({k},r={r})"),
            RingKind::IntegersModPrimePower { r } => write!(f, "zmod({}^{r})", k.p()),
            RingKind::WittLength2 => write!(f, "witt2({k})"),
        }
    }
}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2(p: u32, f: u32) -> LocalRing {
        LocalRing::witt2(GaloisField::new(p, f).unwrap()).unwrap()
    }

    #[test]
    fn carry_coefficients() {
        assert_eq!(witt_carry_coefficients(2), vec![1]);
        assert_eq!(witt_carry_coefficients(3), vec![1, 1]);
        // binom(5,i)/5 = 1, 2, 2, 1
        assert_eq!(witt_carry_coefficients(5), vec![1, 2, 2, 1]);
    }

    #[test]
    fn witt_sum_examples() {
        let r = w2(2, 1);
        let one = r.from_coords(&[1, 0]).unwrap();
        assert_eq!(r.coords(r.witt_add(one, one).unwrap()), vec![0, 1]);

        let r = w2(3, 1);
        let a = r.from_coords(&[2, 1]).unwrap();
        let b = r.from_coords(&[1, 0]).unwrap();
        let s = r.witt_add(a, b).unwrap();
        assert_eq!(r.coords(s), vec![0, 1]);
        assert_eq!(s, r.from_int(3));
    }

    #[test]
    fn witt_product_examples() {
        let r = w2(2, 1);
        let v = r.verschiebung(1).unwrap();
        assert_eq!(r.witt_mul(v, v).unwrap(), 0);
        let r4 = w2(2, 2);
        for a in r4.elements() {
            assert_eq!(r4.witt_mul(a, r4.one()).unwrap(), a);
            assert_eq!(r4.witt_add(a, 0).unwrap(), a);
        }
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let z = LocalRing::integers_mod(2, 2).unwrap();
        assert!(matches!(z.witt_add(1, 1), Err(RingError::KindMismatch { .. })));
        assert!(z.verschiebung(1).is_err());
    }

    #[test]
    fn reduce_examples() {
        let k3 = GaloisField::prime(3).unwrap();
        let d = LocalRing::truncated_poly(k3, 2).unwrap();
        assert_eq!(d.reduce(d.from_coords(&[2, 1]).unwrap()), 2);
        let z9 = LocalRing::integers_mod(3, 2).unwrap();
        assert_eq!(z9.reduce(7), 1);
        let w = w2(2, 2);
        for a in w.elements() {
            assert_eq!(w.reduce(a), w.coords(a)[0]);
        }
    }

    #[test]
    fn classification() {
        let z4 = LocalRing::integers_mod(2, 2).unwrap();
        assert_eq!(z4.classify().unwrap(), LocalRingClass::Witt(GaloisField::prime(2).unwrap()));
        let f4 = GaloisField::new(2, 2).unwrap();
        let d = LocalRing::truncated_poly(f4.clone(), 2).unwrap();
        assert_eq!(d.classify().unwrap(), LocalRingClass::DualNumbers(f4));
        assert!(LocalRing::integers_mod(2, 3).unwrap().classify().is_err());
        let w3 = w2(3, 1);
        assert!(matches!(w3.classify().unwrap(), LocalRingClass::Witt(_)));
        // (1,0) generates the additive group: W_2(F_3) is Z/9
        let mut seen = std::collections::BTreeSet::new();
        let mut x = 0;
        for _ in 0..9 {
            x = w3.add(x, w3.one());
            seen.insert(x);
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn frobenius_examples() {
        let k = GaloisField::new(2, 2).unwrap();
        let w = LocalRing::witt2(k.clone()).unwrap();
        let omega = k.generator();
        let x = w.teichmuller(omega).unwrap();
        assert_eq!(w.coords(w.frobenius_over(x, 1).unwrap()), vec![k.mul(omega, omega), 0]);
        for a in w.elements() {
            assert_eq!(w.frobenius(w.frobenius(a)), a);
            assert_eq!(w.frobenius_over(a, 2).unwrap(), a);
        }
        let k2 = LocalRing::truncated_poly(GaloisField::prime(2).unwrap(), 2).unwrap();
        for a in k2.elements() {
            assert_eq!(k2.frobenius(a), a);
        }
        assert!(w.frobenius_over(1, 3).is_err());
    }

    #[test]
    fn sections() {
        let w = w2(3, 2);
        let k = w.residue_field().clone();
        for x in k.elements() {
            for y in k.elements() {
                let (vx, vy) = (w.verschiebung(x).unwrap(), w.verschiebung(y).unwrap());
                assert_eq!(w.add(vx, vy), w.verschiebung(k.add(x, y)).unwrap());
                let (tx, ty) = (w.teichmuller(x).unwrap(), w.teichmuller(y).unwrap());
                assert_eq!(w.mul(tx, ty), w.teichmuller(k.mul(x, y)).unwrap());
            }
            assert_eq!(w.reduce(w.verschiebung(x).unwrap()), 0);
            assert_eq!(w.verschiebung(x).unwrap(), w.top_ideal(x));
        }
    }

    #[test]
    fn top_ideal_layers() {
        let z8 = LocalRing::integers_mod(2, 3).unwrap();
        assert_eq!(z8.top_ideal(1), 4);
        assert_eq!(z8.top_ideal_coord(4), Some(1));
        assert_eq!(z8.top_ideal_coord(2), None);
        let t = LocalRing::truncated_poly(GaloisField::prime(2).unwrap(), 3).unwrap();
        assert_eq!(t.coords(t.top_ideal(1)), vec![0, 0, 1]);
    }
}
