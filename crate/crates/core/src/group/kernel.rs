//! The congruence kernel of a length-two group and its identification with
//! the Lie algebra.
//!
//! `exp(X)` is `I + tX` over `F_q[t]/t^2`, `I + V(X)` entrywise over `W_2(F_q)`
//! and `I + pX~` over `Z/p^2`. Conjugation by `g` acts on the Lie side through
//! `Ad(gbar)` in equal characteristic and through `Ad(sigma(gbar))` in mixed
//! characteristic, `sigma` the entrywise `p`-th power.

use crate::ring::RingKind;

use super::{GroupError, MatrixGroup};

/// Exponent `i` in `g exp(X) g^-1 = exp(Ad(sigma^i(gbar)) X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Twist {
    /// `i = 0`.
    Untwisted,
    /// `i = 1`.
    Frobenius,
}

impl Twist {
    pub fn exponent(self) -> u32 {
        match self {
            Twist::Untwisted => 0,
            Twist::Frobenius => 1,
        }
    }
}

impl MatrixGroup {
    fn require_length_two(&self) -> Result<(), GroupError> {
        if self.ring().length() == 2 {
            Ok(())
        } else {
            Err(GroupError::Unsupported(format!("exp needs a length-two ring, got {}", self.ring())))
        }
    }

    /// The twist exponent this ring is declared to have.
    pub fn twist(&self) -> Twist {
        match self.ring().kind() {
            RingKind::TruncatedPoly { .. } => Twist::Untwisted,
            _ => Twist::Frobenius,
        }
    }

    /// `exp` of a Lie algebra element given as a row-major matrix over `F_q`.
    pub fn exp(&self, x: &[u32]) -> Result<u32, GroupError> {
        self.require_length_two()?;
        let field = self.ring().residue_field();
        if !self.scheme().lie_contains(field, x) {
            return Err(GroupError::NotInLieAlgebra(self.scheme().to_string()));
        }
        let mats = self.group().matrices();
        let y: Vec<u32> = x.iter().map(|&c| self.ring().top_ideal(c)).collect();
        let m = mats.add(&mats.identity(), &y);
        self.group().id_of(&m).ok_or_else(|| GroupError::Invariant("exp(X) is not a group element".into()))
    }

    /// Inverse of [`Self::exp`] on the kernel.
    pub fn log(&self, u: u32) -> Result<Vec<u32>, GroupError> {
        self.require_length_two()?;
        if !self.is_in_kernel(u) {
            return Err(GroupError::NotInKernel);
        }
        let mats = self.group().matrices();
        let y = mats.sub(&self.group().matrix(u), &mats.identity());
        y.iter()
            .map(|&e| self.ring().top_ideal_coord(e).ok_or(GroupError::NotInKernel))
            .collect()
    }

    /// `Ad(sigma^i(gbar)) X` for a residue element id and a field matrix.
    pub fn adjoint(&self, gbar: u32, x: &[u32], twist: Twist) -> Vec<u32> {
        let res = self.residue().group();
        let fm = res.matrices();
        let field = self.ring().residue_field();
        let sig = |m: Vec<u32>| -> Vec<u32> {
            match twist {
                Twist::Untwisted => m,
                Twist::Frobenius => m.iter().map(|&c| field.frobenius(c)).collect(),
            }
        };
        let g = sig(res.matrix(gbar));
        let ginv = sig(res.matrix(res.inv(gbar)));
        fm.mul(&fm.mul(&g, x), &ginv)
    }

    /// Whether `g exp(X) g^-1 = exp(Ad(sigma^i(gbar)) X)`.
    pub fn twist_law_holds(&self, g: u32, x: &[u32], twist: Twist) -> Result<bool, GroupError> {
        let lhs = self.group().conj(g, self.exp(x)?);
        let rhs = self.exp(&self.adjoint(self.rho(g), x, twist))?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_points, EnumOptions};
    use crate::ring::parse_ring;

    fn build(s: &str, r: &str) -> MatrixGroup {
        enumerate_points(s.parse().unwrap(), parse_ring(r).unwrap(), &EnumOptions::default()).unwrap()
    }

    #[test]
    fn exp_zero_and_inverse() {
        let g = build("sl(2)", "truncpoly(gf(3),r=2)");
        let k = g.ring().residue_field().clone();
        let id = g.group().identity();
        assert_eq!(g.exp(&[0, 0, 0, 0]).unwrap(), id);
        let x = vec![1, 2, 1, 2];
        let minus: Vec<u32> = x.iter().map(|&c| k.neg(c)).collect();
        let e = g.group().mul(g.exp(&x).unwrap(), g.exp(&minus).unwrap());
        assert_eq!(e, id);
        assert_eq!(g.log(g.exp(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn exp_rejects_non_lie_elements() {
        let g = build("sl(2)", "zmod(3^2)");
        assert!(matches!(g.exp(&[1, 0, 0, 0]), Err(GroupError::NotInLieAlgebra(_))));
        let non_kernel = g.group().ids().find(|&i| !g.is_in_kernel(i)).unwrap();
        assert_eq!(g.log(non_kernel), Err(GroupError::NotInKernel));
        let g3 = build("sl(2)", "zmod(2^3)");
        assert!(g3.exp(&[0, 0, 0, 0]).is_err());
    }

    #[test]
    fn witt_twist_is_forced() {
        let g = build("gl(2)", "witt2(gf(4;x^2+x+1))");
        assert_eq!(g.twist(), Twist::Frobenius);
        let omega = g.ring().residue_field().generator();
        let x = vec![omega, 0, 0, 0];
        let mut frob_ok = true;
        let mut plain_fails = false;
        let x12 = vec![0, 1, 0, 0];
        for gi in g.group().ids().step_by(7) {
            frob_ok &= g.twist_law_holds(gi, &x, Twist::Frobenius).unwrap();
            frob_ok &= g.twist_law_holds(gi, &x12, Twist::Frobenius).unwrap();
            plain_fails |= !g.twist_law_holds(gi, &x12, Twist::Untwisted).unwrap();
        }
        assert!(frob_ok);
        assert!(plain_fails);
    }
}
