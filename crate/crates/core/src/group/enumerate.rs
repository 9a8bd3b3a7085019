use std::fmt;
use std::sync::Arc;

use crate::linalg;
use crate::par::{self, Exec};
use crate::ring::LocalRing;

use super::finite::FiniteGroup;
use super::matrix::{Key, MatrixRing};
use super::scheme::{Family, GroupScheme};
use super::GroupError;

pub const DEFAULT_MAX_ORDER: u128 = 100_000;
/// Largest brute-force scan over matrix entries.
const MAX_SCAN: u128 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub max_order: u128,
    pub exec: Exec,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { max_order: DEFAULT_MAX_ORDER, exec: Exec::default() }
    }
}

/// `G(R)` fully enumerated, with the reduction map onto `G(F_q)` and its
/// kernel.
pub struct MatrixGroup {
    scheme: GroupScheme,
    ring: LocalRing,
    group: FiniteGroup,
    residue: Option<Arc<MatrixGroup>>,
    rho: Vec<u32>,
    kernel: Vec<u32>,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixGroup({}, order {})", self.descriptor(), self.order())
    }
}

/// Defining equation of the scheme, evaluated over the ring.
pub(crate) fn satisfies(scheme: &GroupScheme, mats: &MatrixRing, m: &[u32]) -> bool {
    let r = mats.ring();
    match scheme.family {
        Family::GL => r.is_unit(mats.det(m)),
        Family::SL => mats.det(m) == r.one(),
        Family::Sp => {
            let j = mats.from_ints(&GroupScheme::symplectic_form(scheme.n));
            mats.mul(&mats.mul(&mats.transpose(m), &j), m) == j
        }
    }
}

/// Enumerate `G(R)`: scan `G(F_q)`, lift each point to `R`, correct the lift
/// onto the scheme, then multiply by every element of the congruence kernel.
pub fn enumerate_points(scheme: GroupScheme, ring: LocalRing, opts: &EnumOptions) -> Result<MatrixGroup, GroupError> {
    let q = ring.residue_field().order() as u64;
    let expected = scheme.order_over_ring(q, ring.length());
    if expected > opts.max_order {
        return Err(GroupError::BoundExceeded { required: expected, bound: opts.max_order });
    }
    if ring.length() > 3 {
        return Err(GroupError::Unsupported(format!("length {} > 3", ring.length())));
    }
    let mats = MatrixRing::new(ring.clone(), scheme.n)?;
    if ring.is_field() {
        let group = enumerate_over_field(&scheme, &mats, opts.exec)?;
        check_order(&group, expected)?;
        let rho = group.ids().collect();
        let kernel = vec![group.identity()];
        return Ok(MatrixGroup { scheme, ring, group, residue: None, rho, kernel });
    }

    let residue = Arc::new(enumerate_points(scheme, LocalRing::field(ring.residue_field().clone()), opts)?);
    let kernel_keys = kernel_elements(&scheme, &mats)?;
    let kernel_mats: Vec<Vec<u32>> = kernel_keys.iter().map(|&k| mats.decode(k)).collect();
    let rg = &residue.group;
    let lifted: Vec<Result<Vec<Key>, GroupError>> = par::map_range(opts.exec, 0..rg.order(), |i| {
        let l = corrected_lift(&scheme, &mats, &rg.matrix(i as u32))?;
        Ok(kernel_mats.iter().map(|k| mats.encode(&mats.mul(&l, k))).collect())
    });
    let mut keys = Vec::with_capacity(expected as usize);
    for chunk in lifted {
        keys.extend(chunk?);
    }
    let group = FiniteGroup::from_keys(mats.clone(), keys, opts.exec)?;
    check_order(&group, expected)?;

    let field = ring.residue_field().clone();
    let rmats = rg.matrices().clone();
    let rho: Vec<u32> = par::map_range(opts.exec, 0..group.order(), |i| {
        let m = group.matrix(i as u32);
        let red: Vec<u32> = m.iter().map(|&x| ring.reduce(x)).collect();
        rg.id_of_key(rmats.encode(&red)).unwrap_or(u32::MAX)
    });
    if rho.contains(&u32::MAX) {
        return Err(GroupError::Invariant(format!("reduction leaves G({field})")));
    }
    let kernel: Vec<u32> = group.ids().filter(|&i| rho[i as usize] == rg.identity()).collect();
    Ok(MatrixGroup { scheme, ring, group, residue: Some(residue), rho, kernel })
}

fn check_order(group: &FiniteGroup, expected: u128) -> Result<(), GroupError> {
    if group.order() as u128 != expected {
        return Err(GroupError::Invariant(format!("enumerated {} points, expected {expected}", group.order())));
    }
    Ok(())
}

fn enumerate_over_field(scheme: &GroupScheme, mats: &MatrixRing, exec: Exec) -> Result<FiniteGroup, GroupError> {
    let q = mats.ring().order() as u128;
    let nn = (scheme.n * scheme.n) as u32;
    let total = q.pow(nn);
    if total > MAX_SCAN {
        return Err(GroupError::Unsupported(format!("scan of {total} matrices")));
    }
    let decode = |mut idx: usize| -> Vec<u32> {
        let mut m = vec![0u32; nn as usize];
        for x in m.iter_mut().rev() {
            *x = (idx as u128 % q) as u32;
            idx = (idx as u128 / q) as usize;
        }
        m
    };
    let hits = par::filter_range(exec, 0..total as usize, |i| satisfies(scheme, mats, &decode(i)));
    let keys = hits.into_iter().map(|i| mats.encode(&decode(i))).collect();
    FiniteGroup::from_keys(mats.clone(), keys, exec)
}

/// Keys of the congruence kernel `{ g in G(R) : g = I mod m }`.
fn kernel_elements(scheme: &GroupScheme, mats: &MatrixRing) -> Result<Vec<Key>, GroupError> {
    let ring = mats.ring();
    let field = ring.residue_field();
    let n = scheme.n;
    let id = mats.identity();
    if ring.length() == 2 {
        // I + eps X for X in the Lie algebra
        let (basis, _) = scheme.lie_basis(field);
        let q = field.order() as u128;
        let count = q.pow(basis.len() as u32);
        if count > MAX_SCAN {
            return Err(GroupError::Unsupported(format!("kernel of size {count}")));
        }
        let mut out = Vec::with_capacity(count as usize);
        for mut idx in 0..count {
            let mut x = vec![0u32; n * n];
            for b in &basis {
                let c = (idx % q) as u32;
                idx /= q;
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi = field.add(*xi, field.mul(c, bi));
                }
            }
            let y: Vec<u32> = x.iter().map(|&c| ring.top_ideal(c)).collect();
            out.push(mats.encode(&mats.add(&id, &y)));
        }
        return Ok(out);
    }
    kernel_by_scan(scheme, mats)
}

/// Brute-force kernel: all `I + Y` with `Y` over the maximal ideal that satisfy
/// the defining equation.
pub(crate) fn kernel_by_scan(scheme: &GroupScheme, mats: &MatrixRing) -> Result<Vec<Key>, GroupError> {
    let ring = mats.ring();
    let ideal = ring.maximal_ideal();
    let nn = scheme.n * scheme.n;
    let total = (ideal.len() as u128).pow(nn as u32);
    if total > MAX_SCAN {
        return Err(GroupError::Unsupported(format!("kernel scan of {total} matrices")));
    }
    let id = mats.identity();
    let mut out = Vec::new();
    for mut idx in 0..total as usize {
        let mut y = vec![0u32; nn];
        for x in y.iter_mut() {
            *x = ideal[idx % ideal.len()];
            idx /= ideal.len();
        }
        let g = mats.add(&id, &y);
        if satisfies(scheme, mats, &g) {
            out.push(mats.encode(&g));
        }
    }
    Ok(out)
}

/// Lift a point of `G(F_q)` coordinatewise to `R` and correct it onto the
/// scheme: `SL` rescales the first row by the inverse determinant, `Sp`
/// solves the linearised equation in the last ideal layer (length two only).
fn corrected_lift(scheme: &GroupScheme, mats: &MatrixRing, gbar: &[u32]) -> Result<Vec<u32>, GroupError> {
    let ring = mats.ring();
    let n = scheme.n;
    let mut l: Vec<u32> = gbar.iter().map(|&c| ring.lift(c)).collect();
    match scheme.family {
        Family::GL => {}
        Family::SL => {
            let d = mats.det(&l);
            let dinv = ring.inv(d).ok_or_else(|| GroupError::Invariant("lift has non-unit determinant".into()))?;
            for x in l.iter_mut().take(n) {
                *x = ring.mul(*x, dinv);
            }
        }
        Family::Sp => {
            if ring.length() != 2 {
                return Err(GroupError::Unsupported("Sp lifts beyond length two".into()));
            }
            let field = ring.residue_field();
            let jint = GroupScheme::symplectic_form(n);
            let j = mats.from_ints(&jint);
            let a = mats.mul(&mats.mul(&mats.transpose(&l), &j), &l);
            let e = mats.sub(&j, &a);
            let mut rhs = Vec::with_capacity(n * n);
            for &x in &e {
                rhs.push(ring.top_ideal_coord(x).ok_or_else(|| GroupError::Invariant("Sp defect outside the ideal".into()))?);
            }
            // (c^T J + J c)_{ab} = sum_k c_{ka} J_{kb} + J_{ak} c_{kb}
            let mut rows = vec![vec![0u32; n * n]; n * n];
            for a_ in 0..n {
                for b in 0..n {
                    let row = &mut rows[a_ * n + b];
                    for k in 0..n {
                        row[k * n + a_] = field.add(row[k * n + a_], field.from_int(jint[k * n + b]));
                        row[k * n + b] = field.add(row[k * n + b], field.from_int(jint[a_ * n + k]));
                    }
                }
            }
            let c = linalg::solve(field, &rows, &rhs)
                .ok_or_else(|| GroupError::Invariant("Sp lift correction has no solution".into()))?;
            let y: Vec<u32> = c.iter().map(|&x| ring.top_ideal(x)).collect();
            l = mats.mul(&l, &mats.add(&mats.identity(), &y));
        }
    }
    if !satisfies(scheme, mats, &l) {
        return Err(GroupError::Invariant("corrected lift misses the scheme".into()));
    }
    Ok(l)
}

impl MatrixGroup {
    pub fn scheme(&self) -> GroupScheme {
        self.scheme
    }
    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }
    pub fn order(&self) -> usize {
        self.group.order()
    }
    /// `G(F_q)`; the group itself when the ring is a field.
    pub fn residue(&self) -> &MatrixGroup {
        self.residue.as_deref().unwrap_or(self)
    }
    /// Reduction `G(R) -> G(F_q)` on element ids.
    pub fn rho(&self, i: u32) -> u32 {
        self.rho[i as usize]
    }
    /// Sorted ids of the congruence kernel.
    pub fn kernel(&self) -> &[u32] {
        &self.kernel
    }
    pub fn is_in_kernel(&self, i: u32) -> bool {
        self.rho[i as usize] == self.residue().group.identity()
    }
    /// `sl(2)@zmod(2^3)`.
    pub fn descriptor(&self) -> String {
        format!("{}@{}", self.scheme, self.ring)
    }
    /// `rho^-1(H)` for a set of residue ids.
    pub fn preimage(&self, residue_ids: &[u32]) -> Vec<u32> {
        let mut member = vec![false; self.residue().order()];
        residue_ids.iter().for_each(|&i| member[i as usize] = true);
        self.group.ids().filter(|&i| member[self.rho(i) as usize]).collect()
    }

    /// Reassemble from cached element keys.
    pub(crate) fn from_cached_keys(
        scheme: GroupScheme,
        ring: LocalRing,
        keys: Vec<Key>,
        opts: &EnumOptions,
    ) -> Result<MatrixGroup, GroupError> {
        let mats = MatrixRing::new(ring.clone(), scheme.n)?;
        if keys.iter().any(|&k| !satisfies(&scheme, &mats, &mats.decode(k))) {
            return Err(GroupError::Invariant("cached element is not a point of the scheme".into()));
        }
        let group = FiniteGroup::from_keys(mats, keys, opts.exec)?;
        let q = ring.residue_field().order() as u64;
        check_order(&group, scheme.order_over_ring(q, ring.length()))?;
        if ring.is_field() {
            let rho = group.ids().collect();
            let kernel = vec![group.identity()];
            return Ok(MatrixGroup { scheme, ring, group, residue: None, rho, kernel });
        }
        let residue = Arc::new(enumerate_points(scheme, LocalRing::field(ring.residue_field().clone()), opts)?);
        let rg = &residue.group;
        let rho: Vec<u32> = group
            .ids()
            .map(|i| {
                let red: Vec<u32> = group.matrix(i).iter().map(|&x| ring.reduce(x)).collect();
                rg.id_of(&red).ok_or_else(|| GroupError::Invariant("cached element reduces outside G(F_q)".into()))
            })
            .collect::<Result<_, _>>()?;
        let kernel = group.ids().filter(|&i| rho[i as usize] == rg.identity()).collect();
        Ok(MatrixGroup { scheme, ring, group, residue: Some(residue), rho, kernel })
    }

    pub(crate) fn set_class_partition(&self, class_of: Vec<u32>) -> bool {
        self.group.set_class_partition(class_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_ring, GaloisField};

    fn build(s: &str, r: &str) -> MatrixGroup {
        enumerate_points(s.parse().unwrap(), parse_ring(r).unwrap(), &EnumOptions::default()).unwrap()
    }

    #[test]
    fn orders_from_enumeration() {
        assert_eq!(build("sl(2)", "zmod(2^2)").order(), 48);
        assert_eq!(build("gl(2)", "truncpoly(gf(2),r=2)").order(), 96);
        assert_eq!(build("sl(2)", "zmod(2^3)").order(), 384);
        assert_eq!(build("gl(1)", "zmod(2^2)").order(), 2);
        assert_eq!(build("sp(2)", "witt2(gf(2))").order(), 48);
    }

    #[test]
    fn bound_refusal() {
        let opts = EnumOptions { max_order: 100, exec: Exec::Sequential };
        let err = enumerate_points(GroupScheme::gl(2), parse_ring("zmod(3^2)").unwrap(), &opts).unwrap_err();
        assert_eq!(err, GroupError::BoundExceeded { required: 3888, bound: 100 });
    }

    #[test]
    fn kernel_routes_agree() {
        for (s, r) in [("sl(2)", "zmod(3^2)"), ("gl(2)", "witt2(gf(4;x^2+x+1))"), ("sp(2)", "truncpoly(gf(3),r=2)")] {
            let scheme: GroupScheme = s.parse().unwrap();
            let mats = MatrixRing::new(parse_ring(r).unwrap(), 2).unwrap();
            let mut a = kernel_elements(&scheme, &mats).unwrap();
            let mut b = kernel_by_scan(&scheme, &mats).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{s}@{r}");
        }
    }

    #[test]
    fn reduction_is_a_surjective_homomorphism() {
        let g = build("sl(2)", "zmod(3^2)");
        let res = g.residue();
        let mut fiber = vec![0usize; res.order()];
        for i in g.group().ids() {
            fiber[g.rho(i) as usize] += 1;
        }
        assert!(fiber.iter().all(|&c| c == 27));
        for (a, b) in [(3u32, 100u32), (17, 400), (600, 5)] {
            assert_eq!(g.rho(g.group().mul(a, b)), res.group().mul(g.rho(a), g.rho(b)));
        }
        assert_eq!(g.kernel().len(), 27);
        assert!(g.group().subgroup(g.kernel()).unwrap().is_abelian());
    }

    #[test]
    fn symplectic_two_is_special_linear_two() {
        let k = GaloisField::prime(3).unwrap();
        let ring = LocalRing::truncated_poly(k, 2).unwrap();
        let opts = EnumOptions::default();
        let a = enumerate_points(GroupScheme::sp(2), ring.clone(), &opts).unwrap();
        let b = enumerate_points(GroupScheme::sl(2), ring, &opts).unwrap();
        assert_eq!(a.group().keys(), b.group().keys());
    }

    #[test]
    fn symplectic_four_over_f2() {
        let g = build("sp(4)", "gf(2)");
        assert_eq!(g.order(), 720);
    }

    #[test]
    fn sequential_and_parallel_enumerations_match() {
        let scheme = GroupScheme::gl(2);
        let ring = parse_ring("witt2(gf(2))").unwrap();
        let a = enumerate_points(scheme, ring.clone(), &EnumOptions { exec: Exec::Sequential, ..Default::default() }).unwrap();
        let b = enumerate_points(scheme, ring, &EnumOptions { exec: Exec::Parallel, ..Default::default() }).unwrap();
        assert_eq!(a.group().keys(), b.group().keys());
    }
}
