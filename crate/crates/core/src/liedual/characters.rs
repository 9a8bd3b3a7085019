use crate::group::{GroupError, MatrixGroup, Twist};
use crate::par;

use super::{functional_stabilizer, Functional, LieAlgebra, LieError};

/// `psi_beta(u) = Tr <beta, log u>`, an element of `Z/p`.
pub fn psi_beta(lie: &LieAlgebra, group: &MatrixGroup, beta: &Functional, u: u32) -> Result<u32, LieError> {
    lie.check(beta)?;
    let x = group.log(u)?;
    Ok(lie.field().trace(lie.pair(beta, &x)))
}

/// The logarithms of the kernel elements, kept for repeated evaluation of
/// `psi_beta` over the whole kernel.
#[derive(Clone, Debug)]
pub struct KernelCharacters {
    ids: Vec<u32>,
    logs: Vec<Vec<u32>>,
}

impl KernelCharacters {
    pub fn new(group: &MatrixGroup) -> Result<Self, LieError> {
        let ids = group.kernel().to_vec();
        let logs = ids.iter().map(|&u| group.log(u)).collect::<Result<Vec<_>, GroupError>>()?;
        Ok(KernelCharacters { ids, logs })
    }

    /// Kernel element ids, sorted.
    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    /// `psi_beta` on [`Self::ids`].
    pub fn values(&self, lie: &LieAlgebra, beta: &Functional) -> Vec<u32> {
        self.logs.iter().map(|x| lie.field().trace(lie.pair(beta, x))).collect()
    }
}

/// `exp(alpha^j b_i)` for the basis `b_i` and `j < f`: an `F_p`-basis of the
/// kernel.
fn kernel_basis(lie: &LieAlgebra, group: &MatrixGroup) -> Result<Vec<u32>, GroupError> {
    let k = lie.field();
    let alpha = k.generator();
    let mut out = Vec::new();
    for b in lie.basis() {
        for j in 0..k.degree() {
            let c = k.pow(alpha, j as u64);
            out.push(group.exp(&b.iter().map(|&x| k.mul(c, x)).collect::<Vec<_>>())?);
        }
    }
    Ok(out)
}

/// `{ g in G(R) : psi_beta(g^-1 u g) = psi_beta(u) for all u in N }` by
/// scanning the group. Sorted ids.
pub fn character_stabilizer(lie: &LieAlgebra, group: &MatrixGroup, beta: &Functional) -> Result<Vec<u32>, LieError> {
    lie.check(beta)?;
    let basis = kernel_basis(lie, group)?;
    let psi = |u: u32| -> u32 { lie.field().trace(lie.pair(beta, &group.log(u).expect("conjugate of a kernel element"))) };
    let target: Vec<u32> = basis.iter().map(|&u| psi(u)).collect();
    let g = group.group();
    let hits = par::filter_range(g.exec(), 0..g.order(), |x| {
        let xi = g.inv(x as u32);
        basis.iter().zip(&target).all(|(&u, &t)| psi(g.conj(xi, u)) == t)
    });
    Ok(hits.into_iter().map(|x| x as u32).collect())
}

/// `rho^-1(C(beta))` in equal characteristic and `rho^-1(C(sigma*^-1 beta))`
/// in mixed characteristic. Sorted ids.
pub fn predicted_stabilizer(lie: &LieAlgebra, group: &MatrixGroup, beta: &Functional) -> Result<Vec<u32>, LieError> {
    lie.check(beta)?;
    let f = match group.twist() {
        Twist::Untwisted => beta.clone(),
        Twist::Frobenius => lie.sigma_star_inv(beta),
    };
    Ok(group.preimage(&functional_stabilizer(lie, group.residue().group(), &f)))
}
