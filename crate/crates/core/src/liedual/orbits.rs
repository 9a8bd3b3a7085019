use crate::group::FiniteGroup;
use crate::par;

use super::{Functional, LieAlgebra, LieError};

/// Largest `q^dim` the exhaustive orbit scan accepts by default.
pub const DEFAULT_MAX_ORBIT_SPACE: u128 = 1_000_000;

/// Coadjoint orbits of `G(F_q)` on `g*(F_q)`.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    /// Lexicographically least member of each orbit, in increasing order.
    pub reps: Vec<Functional>,
    pub sizes: Vec<u64>,
    /// Orbit number of each functional, indexed by [`LieAlgebra::index_of`].
    pub orbit_of: Vec<u32>,
    group_order: u64,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let up = self.0[self.0[x as usize] as usize];
            self.0[x as usize] = up;
            x = up;
        }
        x
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so roots are orbit minima
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi as usize] = lo;
        }
    }
}

impl OrbitDecomposition {
    /// Union-find over the images of every functional under each generator of
    /// `group`. Images are computed in parallel, merged sequentially.
    pub fn compute(lie: &LieAlgebra, group: &FiniteGroup, max_space: u128) -> Result<Self, LieError> {
        let size = lie.dual_size();
        if size > max_space {
            return Err(LieError::BoundExceeded { required: size, bound: max_space });
        }
        let size = size as usize;
        let mut uf = UnionFind((0..size as u32).collect());
        for &g in group.generators() {
            let a = lie.coadjoint_matrix(&group.matrix(g), &group.matrix(group.inv(g)));
            let images = par::map_range(group.exec(), 0..size, |i| lie.index_of(&lie.apply(&a, &lie.functional_at(i))) as u32);
            for (i, j) in images.into_iter().enumerate() {
                uf.union(i as u32, j);
            }
        }
        let mut orbit_of = vec![u32::MAX; size];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for i in 0..size {
            let root = uf.find(i as u32) as usize;
            if root == i {
                orbit_of[i] = reps.len() as u32;
                reps.push(lie.functional_at(i));
                sizes.push(1);
            } else {
                let o = orbit_of[root];
                orbit_of[i] = o;
                sizes[o as usize] += 1;
            }
        }
        Ok(OrbitDecomposition { reps, sizes, orbit_of, group_order: group.order() as u64 })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
    /// `|G(F_q)| / |orbit|`.
    pub fn stabilizer_order(&self, i: usize) -> u64 {
        self.group_order / self.sizes[i]
    }
    pub fn orbit_index(&self, lie: &LieAlgebra, beta: &Functional) -> usize {
        self.orbit_of[lie.index_of(beta)] as usize
    }
}

/// `C(beta) = { g in G(F_q) : Ad*(g) beta = beta }`, sorted ids.
pub fn functional_stabilizer(lie: &LieAlgebra, group: &FiniteGroup, beta: &Functional) -> Vec<u32> {
    par::filter_range(group.exec(), 0..group.order(), |g| lie.coadjoint(group, g as u32, beta) == *beta)
        .into_iter()
        .map(|g| g as u32)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_points, EnumOptions, GroupScheme};
    use crate::ring::parse_ring;
    use std::collections::BTreeSet;

    fn setup(s: &str, r: &str) -> (LieAlgebra, crate::group::MatrixGroup) {
        let g = enumerate_points(s.parse().unwrap(), parse_ring(r).unwrap(), &EnumOptions::default()).unwrap();
        let lie = LieAlgebra::new(g.scheme(), g.ring().residue_field().clone());
        (lie, g)
    }

    /// Orbits by applying every group element to every functional.
    fn brute_orbits(lie: &LieAlgebra, grp: &FiniteGroup) -> BTreeSet<BTreeSet<usize>> {
        let size = lie.dual_size() as usize;
        (0..size)
            .map(|i| grp.ids().map(|g| lie.index_of(&lie.coadjoint(grp, g, &lie.functional_at(i)))).collect())
            .collect()
    }

    #[test]
    fn matches_brute_force() {
        for (s, r) in [("gl(2)", "gf(2)"), ("sl(2)", "gf(3)"), ("gl(2)", "gf(3)"), ("sl(2)", "gf(4)")] {
            let (lie, g) = setup(s, r);
            let od = OrbitDecomposition::compute(&lie, g.group(), DEFAULT_MAX_ORBIT_SPACE).unwrap();
            let mut ours: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); od.len()];
            for (i, &o) in od.orbit_of.iter().enumerate() {
                ours[o as usize].insert(i);
            }
            let ours: BTreeSet<_> = ours.into_iter().collect();
            assert_eq!(ours, brute_orbits(&lie, g.group()), "{s} {r}");
            assert_eq!(od.sizes.iter().sum::<u64>() as u128, lie.dual_size());
            for (i, rep) in od.reps.iter().enumerate() {
                let stab = functional_stabilizer(&lie, g.group(), rep);
                assert_eq!(stab.len() as u64, od.stabilizer_order(i));
                assert_eq!(od.orbit_index(&lie, rep), i);
            }
        }
    }

    #[test]
    fn gl2_f2_orbit_count() {
        // similarity classes in M_2(F_2): q^2 + q
        let (lie, g) = setup("gl(2)", "gf(2)");
        let od = OrbitDecomposition::compute(&lie, g.group(), DEFAULT_MAX_ORBIT_SPACE).unwrap();
        assert_eq!(od.len(), 6);
        assert_eq!(od.reps[0], lie.zero());
    }

    #[test]
    fn bound_is_enforced() {
        let (lie, g) = setup("gl(2)", "gf(3)");
        assert_eq!(
            OrbitDecomposition::compute(&lie, g.group(), 80).unwrap_err(),
            LieError::BoundExceeded { required: 81, bound: 80 }
        );
    }

    #[test]
    fn centralizer_of_split_semisimple() {
        let (lie, g) = setup("sl(2)", "gf(3)");
        let beta = lie.trace_functional(&[1, 0, 0, 2]);
        assert_eq!(functional_stabilizer(&lie, g.group(), &beta).len(), 2);
        assert_eq!(GroupScheme::sl(2).lie_dim(), lie.dim());
    }
}
