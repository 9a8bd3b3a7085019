//! The Lie algebra `g(F_q)`, its dual, the coadjoint action and the kernel
//! characters `psi_beta`.

mod characters;
mod orbits;
mod primes;

pub use characters::{character_stabilizer, predicted_stabilizer, psi_beta, KernelCharacters};
pub use orbits::{functional_stabilizer, OrbitDecomposition, DEFAULT_MAX_ORBIT_SPACE};
pub use primes::{is_good_prime, is_very_good_prime, RootType};

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupScheme, MatrixRing};
use crate::ring::{GaloisField, LocalRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("orbit space of size {required} exceeds the bound {bound}")]
    BoundExceeded { required: u128, bound: u128 },
    #[error("unknown root system type {0:?}")]
    UnknownType(String),
    #[error("functional has {found} values, the Lie algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `Lie(G)(F_q)` with its canonical basis.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    scheme: GroupScheme,
    field: GaloisField,
    mats: MatrixRing,
    basis: Vec<Vec<u32>>,
    coord_pos: Vec<usize>,
}

/// An element of `g*(F_q)`, stored as its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional(pub Vec<u32>);

impl LieAlgebra {
    pub fn new(scheme: GroupScheme, field: GaloisField) -> Self {
        let (basis, coord_pos) = scheme.lie_basis(&field);
        let mats = MatrixRing::new(LocalRing::field(field.clone()), scheme.n).expect("field matrices fit a key");
        LieAlgebra { scheme, field, mats, basis, coord_pos }
    }

    pub fn scheme(&self) -> GroupScheme {
        self.scheme
    }
    pub fn field(&self) -> &GaloisField {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    /// Coordinates of a Lie algebra element in the basis.
    pub fn coords(&self, x: &[u32]) -> Vec<u32> {
        self.coord_pos.iter().map(|&i| x[i]).collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> Vec<u32> {
        let k = &self.field;
        let mut x = vec![0u32; self.scheme.n * self.scheme.n];
        for (&ci, b) in c.iter().zip(&self.basis) {
            if ci != 0 {
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi = k.add(*xi, k.mul(ci, bi));
                }
            }
        }
        x
    }

    pub fn bracket(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        self.mats.sub(&self.mats.mul(x, y), &self.mats.mul(y, x))
    }

    pub fn contains(&self, x: &[u32]) -> bool {
        self.scheme.lie_contains(&self.field, x)
    }

    /// `<beta, X>`.
    pub fn pair(&self, beta: &Functional, x: &[u32]) -> u32 {
        let k = &self.field;
        self.coord_pos.iter().zip(&beta.0).fold(0, |acc, (&i, &b)| k.add(acc, k.mul(b, x[i])))
    }

    pub fn zero(&self) -> Functional {
        Functional(vec![0; self.dim()])
    }

    /// `X -> Tr(B X)` restricted to the Lie algebra.
    pub fn trace_functional(&self, b: &[u32]) -> Functional {
        Functional(self.basis.iter().map(|x| self.mats.trace(&self.mats.mul(b, x))).collect())
    }

    /// For `gl_n`: the unique `B` with `beta = Tr(B .)`.
    pub fn trace_matrix(&self, beta: &Functional) -> Option<Vec<u32>> {
        if self.scheme.family != crate::group::Family::GL {
            return None;
        }
        let n = self.scheme.n;
        // basis is E_ij in row-major order, and Tr(B E_ij) = B_ji
        Some((0..n * n).map(|idx| beta.0[(idx % n) * n + idx / n]).collect())
    }

    pub fn add(&self, a: &Functional, b: &Functional) -> Functional {
        Functional(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn check(&self, beta: &Functional) -> Result<(), LieError> {
        if beta.0.len() != self.dim() {
            return Err(LieError::DimensionMismatch { expected: self.dim(), found: beta.0.len() });
        }
        Ok(())
    }

    /// Number of functionals, `q^dim`.
    pub fn dual_size(&self) -> u128 {
        (self.field.order() as u128).pow(self.dim() as u32)
    }

    /// Index of a functional in `0..q^dim`, increasing with lexicographic
    /// order of the value vector.
    pub fn index_of(&self, beta: &Functional) -> usize {
        let q = self.field.order() as usize;
        beta.0.iter().fold(0, |acc, &v| acc * q + v as usize)
    }

    pub fn functional_at(&self, mut idx: usize) -> Functional {
        let q = self.field.order() as usize;
        let mut v = vec![0u32; self.dim()];
        for x in v.iter_mut().rev() {
            *x = (idx % q) as u32;
            idx /= q;
        }
        Functional(v)
    }

    /// Matrix `A` with `(Ad*(g) beta)_i = sum_j A[i][j] beta_j`, i.e. row `i`
    /// holds the coordinates of `g^-1 b_i g`.
    pub fn coadjoint_matrix(&self, g: &[u32], ginv: &[u32]) -> Vec<Vec<u32>> {
        self.basis.iter().map(|b| self.coords(&self.mats.mul(&self.mats.mul(ginv, b), g))).collect()
    }

    pub fn apply(&self, a: &[Vec<u32>], beta: &Functional) -> Functional {
        let k = &self.field;
        Functional(a.iter().map(|row| row.iter().zip(&beta.0).fold(0, |acc, (&x, &y)| k.add(acc, k.mul(x, y)))).collect())
    }

    /// `Ad*(g) beta = beta o Ad(g)^-1` for an element of `G(F_q)`.
    pub fn coadjoint(&self, group: &FiniteGroup, g: u32, beta: &Functional) -> Functional {
        let a = self.coadjoint_matrix(&group.matrix(g), &group.matrix(group.inv(g)));
        self.apply(&a, beta)
    }

    /// `sigma*`: the `p`-th power on values. The basis is defined over `F_p`,
    /// so for `gl_n` this is `B -> sigma(B)` on trace matrices.
    pub fn sigma_star(&self, beta: &Functional) -> Functional {
        Functional(beta.0.iter().map(|&x| self.field.frobenius(x)).collect())
    }

    pub fn sigma_star_inv(&self, beta: &Functional) -> Functional {
        Functional(beta.0.iter().map(|&x| self.field.frobenius_inv(x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_points, EnumOptions};
    use crate::ring::parse_ring;

    #[test]
    fn bracket_closure_on_basis() {
        for q in [2, 3, 4] {
            let k = GaloisField::of_order(q).unwrap();
            for s in [GroupScheme::gl(2), GroupScheme::sl(2), GroupScheme::sp(4)] {
                let lie = LieAlgebra::new(s, k.clone());
                for x in lie.basis() {
                    for y in lie.basis() {
                        assert!(lie.contains(&lie.bracket(x, y)));
                    }
                    assert_eq!(lie.from_coords(&lie.coords(x)), *x);
                }
            }
        }
    }

    #[test]
    fn coadjoint_example_gl2_f2() {
        let g = enumerate_points(GroupScheme::gl(2), parse_ring("gf(2)").unwrap(), &EnumOptions::default()).unwrap();
        let lie = LieAlgebra::new(GroupScheme::gl(2), g.ring().residue_field().clone());
        let e12 = vec![0, 1, 0, 0];
        let beta = lie.trace_functional(&e12);
        assert_eq!(lie.trace_matrix(&beta).unwrap(), e12);
        let w = g.group().id_of(&[0, 1, 1, 0]).unwrap();
        let image = lie.coadjoint(g.group(), w, &beta);
        assert_eq!(lie.trace_matrix(&image).unwrap(), vec![0, 0, 1, 0]);
        let id = g.group().identity();
        assert_eq!(lie.coadjoint(g.group(), id, &beta), beta);
    }

    #[test]
    fn coadjoint_is_an_action() {
        let g = enumerate_points(GroupScheme::sl(2), parse_ring("gf(3)").unwrap(), &EnumOptions::default()).unwrap();
        let grp = g.group();
        let lie = LieAlgebra::new(GroupScheme::sl(2), g.ring().residue_field().clone());
        for (a, b, bi) in [(1u32, 5u32, 7usize), (3, 11, 20), (23, 2, 13)] {
            let beta = lie.functional_at(bi);
            let lhs = lie.coadjoint(grp, grp.mul(a, b), &beta);
            let rhs = lie.coadjoint(grp, a, &lie.coadjoint(grp, b, &beta));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn index_round_trip_and_order() {
        let lie = LieAlgebra::new(GroupScheme::sl(2), GaloisField::prime(3).unwrap());
        for i in 0..27 {
            assert_eq!(lie.index_of(&lie.functional_at(i)), i);
        }
        assert!(lie.functional_at(1) < lie.functional_at(3));
    }

    #[test]
    fn sigma_star_prime_field_is_identity() {
        let lie = LieAlgebra::new(GroupScheme::gl(2), GaloisField::prime(3).unwrap());
        for i in 0..81 {
            let b = lie.functional_at(i);
            assert_eq!(lie.sigma_star(&b), b);
        }
        assert_eq!(lie.sigma_star(&lie.zero()), lie.zero());
    }
}
