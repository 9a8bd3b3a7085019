use crate::group::FiniteGroup;
use crate::par;

/// Class multiplication coefficients `a_ijk = #{ x in K_i : x^-1 z_k in K_j }`
/// with `z_k` the representative of class `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    r: usize,
    a: Vec<u32>,
}

impl StructureConstants {
    /// One pass over the group per class, classes handled in parallel.
    pub fn compute(group: &FiniteGroup) -> Self {
        let cls = group.classes();
        let r = cls.len();
        let per_k = par::map_range(group.exec(), 0..r, |k| {
            let z = cls.reps[k];
            let mut counts = vec![0u32; r * r];
            for x in group.ids() {
                let i = cls.class_of[x as usize] as usize;
                let j = cls.class_of[group.mul(group.inv(x), z) as usize] as usize;
                counts[i * r + j] += 1;
            }
            counts
        });
        let mut a = vec![0u32; r * r * r];
        for (k, counts) in per_k.into_iter().enumerate() {
            for (ij, c) in counts.into_iter().enumerate() {
                a[ij * r + k] = c;
            }
        }
        StructureConstants { r, a }
    }

    pub fn num_classes(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.a[(i * self.r + j) * self.r + k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::MatrixRing;
    use crate::par::Exec;
    use crate::ring::{GaloisField, LocalRing};

    fn s3() -> FiniteGroup {
        let mats = MatrixRing::new(LocalRing::field(GaloisField::prime(2).unwrap()), 3).unwrap();
        let gens = vec![vec![0, 1, 0, 1, 0, 0, 0, 0, 1], vec![0, 1, 0, 0, 0, 1, 1, 0, 0]];
        FiniteGroup::generated_by(mats, &gens, Exec::Parallel).unwrap()
    }

    #[test]
    fn matches_pair_count() {
        let g = s3();
        let sc = StructureConstants::compute(&g);
        let cls = g.classes();
        let r = cls.len();
        assert_eq!(r, 3);
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let pairs = g
                        .ids()
                        .flat_map(|x| g.ids().map(move |y| (x, y)))
                        .filter(|&(x, y)| {
                            cls.class_of[x as usize] as usize == i
                                && cls.class_of[y as usize] as usize == j
                                && g.mul(x, y) == cls.reps[k]
                        })
                        .count();
                    assert_eq!(sc.get(i, j, k) as usize, pairs);
                }
            }
        }
    }

    #[test]
    fn transposition_square() {
        let g = s3();
        let sc = StructureConstants::compute(&g);
        let cls = g.classes();
        let by_size = |s: u64| cls.sizes.iter().position(|&x| x == s).unwrap();
        let (e, t, c) = (cls.class_of[g.identity() as usize] as usize, by_size(3), by_size(2));
        assert_eq!(sc.get(t, t, e), 3);
        assert_eq!(sc.get(t, t, c), 3);
        assert_eq!(sc.get(t, t, t), 0);
        assert_eq!(sc.get(c, c, c), 1);
    }
}
