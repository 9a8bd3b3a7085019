use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;

use super::modp::{split_prime, Fl};
use super::{ChartabError, DegreeMultiset, StructureConstants};

/// Random combinations tried on a subspace before falling back to the
/// individual class matrices.
const RANDOM_ATTEMPTS: u64 = 4;

/// Irreducible characters of a finite group reduced modulo a split prime `l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularCharacterTable {
    pub ell: u64,
    pub group_order: u64,
    pub class_sizes: Vec<u64>,
    pub inverse_class: Vec<u32>,
    pub identity_class: usize,
    /// `table[c][k] = chi_c(z_k) mod l`; rows sorted by degree, then values.
    pub table: Vec<Vec<u64>>,
    pub degrees: Vec<u64>,
}

/// A subspace of `F_l^r` kept in reduced echelon form.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

/// Matrix of `m` restricted to the invariant subspace `s`, in the echelon
/// basis: `A[s][t] = (m b_t)[p_s]`.
fn restrict(f: Fl, m: &[Vec<u64>], s: &Subspace) -> Vec<Vec<u64>> {
    let images: Vec<Vec<u64>> = s.rows.iter().map(|b| mat_vec(f, m, b)).collect();
    s.pivots.iter().map(|&p| images.iter().map(|img| img[p]).collect()).collect()
}

fn mat_vec(f: Fl, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
    m.iter().map(|row| row.iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))).collect()
}

/// Eigenspaces of `m` on `s`, or `None` if `m` acts as a scalar there.
fn split(f: Fl, m: &[Vec<u64>], s: &Subspace) -> Result<Option<Vec<Subspace>>, ChartabError> {
    let d = s.rows.len();
    let a = restrict(f, m, s);
    let cp = f.charpoly(&a);
    let roots: Vec<u64> = (0..f.l).filter(|&x| f.eval(&cp, x) == 0).collect();
    if roots.len() == 1 {
        return Ok(None);
    }
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { f.sub(a[i][j], lambda) } else { a[i][j] }).collect())
            .collect();
        let coeffs = f.nullspace(&shifted, d);
        total += coeffs.len();
        let mut rows: Vec<Vec<u64>> = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0u64; s.rows[0].len()];
                for (&ct, b) in c.iter().zip(&s.rows) {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.add(*x, f.mul(ct, y));
                    }
                }
                v
            })
            .collect();
        let pivots = f.rref(&mut rows);
        parts.push(Subspace { rows, pivots });
    }
    if total != d {
        return Err(ChartabError::Invariant(format!("class matrix not diagonalisable mod {}", f.l)));
    }
    Ok(Some(parts))
}

impl ModularCharacterTable {
    /// Dixon-Schneider over `F_l`, `l` the smallest prime `= 1 mod exp(G)`
    /// with `l > 2 sqrt|G|`. The seed drives the random splitting
    /// combinations only; the finished table does not depend on it.
    pub fn compute(group: &FiniteGroup, seed: u64) -> Result<Self, ChartabError> {
        let order = group.order() as u64;
        let ell = split_prime(group.exponent(), order);
        let sc = StructureConstants::compute(group);
        Self::from_structure_constants(group, &sc, ell, seed)
    }

    pub fn from_structure_constants(
        group: &FiniteGroup,
        sc: &StructureConstants,
        ell: u64,
        seed: u64,
    ) -> Result<Self, ChartabError> {
        let f = Fl::new(ell);
        let cls = group.classes();
        let r = cls.len();
        let order = group.order() as u64;
        let class_matrix = |coef: &[u64]| -> Vec<Vec<u64>> {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|k| {
                            coef.iter().enumerate().filter(|(_, &c)| c != 0).fold(0u64, |acc, (i, &c)| {
                                f.add(acc, f.mul(c, sc.get(i, j, k) as u64))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut done: Vec<Vec<u64>> = Vec::new();
        let mut queue = vec![Subspace { rows: (0..r).map(|i| unit(r, i)).collect(), pivots: (0..r).collect() }];
        while let Some(s) = queue.pop() {
            if s.rows.len() == 1 {
                done.push(s.rows.into_iter().next().unwrap());
                continue;
            }
            let mut parts = None;
            for _ in 0..RANDOM_ATTEMPTS {
                let coef: Vec<u64> = (0..r).map(|_| rng.gen_range(0..ell)).collect();
                parts = split(f, &class_matrix(&coef), &s)?;
                if parts.is_some() {
                    break;
                }
            }
            if parts.is_none() {
                for i in 0..r {
                    parts = split(f, &class_matrix(&unit(r, i)), &s)?;
                    if parts.is_some() {
                        break;
                    }
                }
            }
            match parts {
                Some(p) => queue.extend(p),
                None => return Err(ChartabError::Stalled { dim: s.rows.len() }),
            }
        }
        if done.len() != r {
            return Err(ChartabError::Invariant(format!("{} characters for {r} classes", done.len())));
        }
        let id = cls.class_of[group.identity() as usize] as usize;
        let g_mod = f.from_u64(order);
        let mut rows = Vec::with_capacity(r);
        for mut w in done {
            let s = f.inv(w[id]).ok_or_else(|| ChartabError::Invariant("eigenvector vanishes at 1".into()))?;
            w.iter_mut().for_each(|x| *x = f.mul(*x, s));
            // sum_k w_k w_k* / |K_k| = |G| / d^2
            let mut sum = 0;
            for k in 0..r {
                let kinv = f.inv(f.from_u64(cls.sizes[k])).unwrap();
                sum = f.add(sum, f.mul(f.mul(w[k], w[cls.inverse_class[k] as usize]), kinv));
            }
            let d2 = f.mul(g_mod, f.inv(sum).ok_or_else(|| ChartabError::Invariant("zero norm".into()))?);
            let d = f
                .sqrt_small(d2)
                .filter(|&d| d >= 1 && d * d <= order)
                .ok_or_else(|| ChartabError::Invariant(format!("no degree with square {d2} mod {ell}")))?;
            let row: Vec<u64> = (0..r)
                .map(|k| f.mul(f.mul(d, w[k]), f.inv(f.from_u64(cls.sizes[k])).unwrap()))
                .collect();
            rows.push((d, row));
        }
        rows.sort();
        let table = ModularCharacterTable {
            ell,
            group_order: order,
            class_sizes: cls.sizes.clone(),
            inverse_class: cls.inverse_class.clone(),
            identity_class: id,
            degrees: rows.iter().map(|(d, _)| *d).collect(),
            table: rows.into_iter().map(|(_, row)| row).collect(),
        };
        table.sanity()?;
        Ok(table)
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn degree_multiset(&self) -> DegreeMultiset {
        self.degrees.iter().copied().collect()
    }

    /// Number of irreducibles equals number of classes, `sum d^2 = |G|`,
    /// every `d` divides `|G|`, and both orthogonality relations hold mod `l`.
    pub fn sanity(&self) -> Result<(), ChartabError> {
        let f = Fl::new(self.ell);
        let r = self.num_classes();
        let fail = |what: &str| Err(ChartabError::Invariant(what.to_string()));
        if self.table.len() != r || self.degrees.len() != r {
            return fail("number of irreducibles differs from number of classes");
        }
        if self.degrees.iter().map(|d| d * d).sum::<u64>() != self.group_order {
            return fail("sum of squared degrees differs from the group order");
        }
        if self.degrees.iter().any(|d| self.group_order % d != 0) {
            return fail("a degree does not divide the group order");
        }
        for (row, &d) in self.table.iter().zip(&self.degrees) {
            if row[self.identity_class] != d % self.ell {
                return fail("character value at 1 differs from its degree");
            }
        }
        let g = f.from_u64(self.group_order);
        for a in 0..r {
            for b in 0..r {
                let s = (0..r).fold(0, |acc, k| {
                    let t = f.mul(self.table[a][k], self.table[b][self.inverse_class[k] as usize]);
                    f.add(acc, f.mul(f.from_u64(self.class_sizes[k]), t))
                });
                if s != if a == b { g } else { 0 } {
                    return fail("row orthogonality fails");
                }
            }
        }
        for k in 0..r {
            for l in 0..r {
                let s = self.table.iter().fold(0, |acc, row| {
                    f.add(acc, f.mul(row[k], row[self.inverse_class[l] as usize]))
                });
                let centralizer = f.from_u64(self.group_order / self.class_sizes[k]);
                if s != if k == l { centralizer } else { 0 } {
                    return fail("column orthogonality fails");
                }
            }
        }
        Ok(())
    }

    /// `dimension,count` lines.
    pub fn to_csv(&self) -> String {
        self.degree_multiset().to_csv()
    }
}

fn unit(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; r];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{enumerate_points, EnumOptions, MatrixRing};
    use crate::par::Exec;
    use crate::ring::{parse_ring, GaloisField, LocalRing};

    fn table(s: &str, r: &str, seed: u64) -> ModularCharacterTable {
        let g = enumerate_points(s.parse().unwrap(), parse_ring(r).unwrap(), &EnumOptions::default()).unwrap();
        ModularCharacterTable::compute(g.group(), seed).unwrap()
    }

    #[test]
    fn s3_table() {
        let mats = MatrixRing::new(LocalRing::field(GaloisField::prime(2).unwrap()), 3).unwrap();
        let gens = vec![vec![0, 1, 0, 1, 0, 0, 0, 0, 1], vec![0, 1, 0, 0, 0, 1, 1, 0, 0]];
        let g = FiniteGroup::generated_by(mats, &gens, Exec::Sequential).unwrap();
        let t = ModularCharacterTable::compute(&g, 1).unwrap();
        assert_eq!(t.ell, 7);
        assert_eq!(t.degrees, vec![1, 1, 2]);
    }

    #[test]
    fn known_degree_multisets() {
        // SL_2(F_3): 1,1,1,2,2,2,3
        let t = table("sl(2)", "gf(3)", 0);
        assert_eq!(t.degrees, vec![1, 1, 1, 2, 2, 2, 3]);
        // GL_2(F_2) = S_3
        assert_eq!(table("gl(2)", "gf(2)", 0).degrees, vec![1, 1, 2]);
        // GL_2(F_3): 1,1,2,2,2,3,3,4
        assert_eq!(table("gl(2)", "gf(3)", 0).degrees, vec![1, 1, 2, 2, 2, 3, 3, 4]);
        // SL_2(F_5) = 2.A_5: 1,2,2,3,3,4,4,5,6
        assert_eq!(table("sl(2)", "gf(5)", 0).degrees, vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn seed_does_not_change_the_table() {
        let a = table("gl(2)", "zmod(2^2)", 1);
        let b = table("gl(2)", "zmod(2^2)", 99);
        assert_eq!(a, b);
        assert_eq!(a.degrees.iter().map(|d| d * d).sum::<u64>(), 96);
    }

    #[test]
    fn sanity_rejects_tampering() {
        let mut t = table("sl(2)", "gf(3)", 0);
        t.table[3][1] = (t.table[3][1] + 1) % t.ell;
        assert!(t.sanity().is_err());
    }
}
