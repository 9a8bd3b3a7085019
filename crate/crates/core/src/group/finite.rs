use std::collections::HashMap;
use std::sync::OnceLock;

use crate::par::{self, Exec};

use super::matrix::{Key, MatrixRing};
use super::GroupError;

/// Conjugacy classes of a [`FiniteGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassData {
    /// Minimal element (in key order) of each class; classes are listed in
    /// increasing order of representative.
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
    /// Element id -> class id.
    pub class_of: Vec<u32>,
    pub centralizer_orders: Vec<u64>,
    /// Class of the inverses of the class.
    pub inverse_class: Vec<u32>,
    /// Order of the elements in the class.
    pub element_orders: Vec<u64>,
}

impl ConjugacyClassData {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A fully enumerated finite group of matrices, elements indexed `0..order`
/// in key order.
pub struct FiniteGroup {
    mats: MatrixRing,
    elements: Vec<Key>,
    index: HashMap<Key, u32>,
    inverse: Vec<u32>,
    identity: u32,
    exec: Exec,
    gens: OnceLock<Vec<u32>>,
    classes: OnceLock<ConjugacyClassData>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("ring", self.mats.ring())
            .field("n", &self.mats.n())
            .field("order", &self.elements.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Group from its full element list. Fails if the identity is missing or
    /// the set is not closed under inversion.
    pub fn from_keys(mats: MatrixRing, mut keys: Vec<Key>, exec: Exec) -> Result<Self, GroupError> {
        keys.sort_unstable();
        keys.dedup();
        let index: HashMap<Key, u32> = keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect();
        let identity = *index
            .get(&mats.identity_key())
            .ok_or_else(|| GroupError::Invariant("identity missing".into()))?;
        let inverse = par::map_slice(exec, &keys, |&k| {
            mats.inverse(&mats.decode(k)).and_then(|m| index.get(&mats.encode(&m)).copied())
        });
        let inverse: Vec<u32> = inverse
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| GroupError::Invariant("element set not closed under inverses".into()))?;
        Ok(FiniteGroup { mats, elements: keys, index, inverse, identity, exec, gens: OnceLock::new(), classes: OnceLock::new() })
    }

    /// Subgroup of `M_n(R)^x` generated by the given matrices.
    pub fn generated_by(mats: MatrixRing, gens: &[Vec<u32>], exec: Exec) -> Result<Self, GroupError> {
        let gkeys: Vec<Key> = gens.iter().map(|g| mats.encode(g)).collect();
        let id = mats.identity_key();
        let mut seen: std::collections::HashSet<Key> = [id].into_iter().collect();
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            let xm = mats.decode(x);
            for &g in &gkeys {
                let y = mats.encode(&mats.mul(&xm, &mats.decode(g)));
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self::from_keys(mats, seen.into_iter().collect(), exec)
    }

    pub fn matrices(&self) -> &MatrixRing {
        &self.mats
    }
    pub fn exec(&self) -> Exec {
        self.exec
    }
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn identity(&self) -> u32 {
        self.identity
    }
    pub fn key(&self, i: u32) -> Key {
        self.elements[i as usize]
    }
    pub fn keys(&self) -> &[Key] {
        &self.elements
    }
    pub fn matrix(&self, i: u32) -> Vec<u32> {
        self.mats.decode(self.elements[i as usize])
    }
    pub fn id_of_key(&self, k: Key) -> Option<u32> {
        self.index.get(&k).copied()
    }
    pub fn id_of(&self, m: &[u32]) -> Option<u32> {
        self.id_of_key(self.mats.encode(m))
    }
    pub fn ids(&self) -> std::ops::Range<u32> {
        0..self.elements.len() as u32
    }
    #[inline]
    pub fn inv(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    pub fn try_mul(&self, a: u32, b: u32) -> Option<u32> {
        self.id_of_key(self.mats.mul_keys(self.key(a), self.key(b)))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.try_mul(a, b).expect("group is closed under multiplication")
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        let gm = self.matrix(g);
        let t = self.mats.mul(&self.mats.mul(&gm, &self.matrix(x)), &self.matrix(self.inv(g)));
        self.id_of(&t).expect("group is closed under conjugation")
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn element_order(&self, i: u32) -> u64 {
        let mut x = i;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, i);
            n += 1;
        }
        n
    }

    /// Sorted ids of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[self.identity as usize] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// A small generating set, chosen greedily in key order.
    pub fn generators(&self) -> &[u32] {
        self.gens.get_or_init(|| {
            let mut gens = Vec::new();
            let mut member = vec![false; self.order()];
            member[self.identity as usize] = true;
            let mut size = 1;
            for x in self.ids() {
                if size == self.order() {
                    break;
                }
                if !member[x as usize] {
                    gens.push(x);
                    member.iter_mut().for_each(|m| *m = false);
                    let h = self.closure(&gens);
                    size = h.len();
                    for y in h {
                        member[y as usize] = true;
                    }
                }
            }
            gens
        })
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `{ g : g x = x g }`.
    pub fn centralizer_of(&self, x: u32) -> Vec<u32> {
        let xm = self.matrix(x);
        par::filter_range(self.exec, 0..self.order(), |g| {
            let gm = self.matrix(g as u32);
            self.mats.mul(&gm, &xm) == self.mats.mul(&xm, &gm)
        })
        .into_iter()
        .map(|g| g as u32)
        .collect()
    }

    /// The derived subgroup, as the normal closure of the commutators of the
    /// generators. Sorted ids.
    pub fn derived_subgroup(&self) -> Vec<u32> {
        let gens = self.generators().to_vec();
        let mut dgens: Vec<u32> = Vec::new();
        for &a in &gens {
            for &b in &gens {
                let c = self.commutator(a, b);
                if c != self.identity && !dgens.contains(&c) {
                    dgens.push(c);
                }
            }
        }
        let mut member = vec![false; self.order()];
        let mut h = self.closure(&dgens);
        h.iter().for_each(|&y| member[y as usize] = true);
        loop {
            let mut grew = false;
            let snapshot = dgens.clone();
            for &x in &snapshot {
                for &g in &gens {
                    let y = self.conj(g, x);
                    if !member[y as usize] {
                        dgens.push(y);
                        h = self.closure(&dgens);
                        member.iter_mut().for_each(|m| *m = false);
                        h.iter().for_each(|&z| member[z as usize] = true);
                        grew = true;
                    }
                }
            }
            if !grew {
                return h;
            }
        }
    }

    /// The subgroup on the given element ids as a group in its own right.
    pub fn subgroup(&self, ids: &[u32]) -> Result<FiniteGroup, GroupError> {
        let keys = ids.iter().map(|&i| self.key(i)).collect();
        FiniteGroup::from_keys(self.mats.clone(), keys, self.exec)
    }

    /// Whether the id set is a subgroup: it is rebuilt greedily as the closure
    /// of some of its own elements, failing as soon as a product escapes.
    pub fn is_subgroup(&self, ids: &[u32]) -> bool {
        let mut member = vec![false; self.order()];
        ids.iter().for_each(|&i| member[i as usize] = true);
        if !member[self.identity as usize] {
            return false;
        }
        let mut reached = vec![false; self.order()];
        reached[self.identity as usize] = true;
        let mut gens = Vec::new();
        let mut size = 1;
        for &x in ids {
            if reached[x as usize] {
                continue;
            }
            gens.push(x);
            let h = self.closure(&gens);
            if h.iter().any(|&y| !member[y as usize]) {
                return false;
            }
            size = h.len();
            h.into_iter().for_each(|y| reached[y as usize] = true);
        }
        let mut distinct = ids.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        size == distinct.len()
    }

    /// Install a class partition (from a cache) given as element id -> class
    /// id, class ids numbered in order of their least element. False if it is
    /// malformed or classes were already present.
    pub(crate) fn set_class_partition(&self, class_of: Vec<u32>) -> bool {
        if class_of.len() != self.order() {
            return false;
        }
        let mut reps: Vec<u32> = Vec::new();
        let mut sizes: Vec<u64> = Vec::new();
        for (x, &c) in class_of.iter().enumerate() {
            match (c as usize).cmp(&reps.len()) {
                std::cmp::Ordering::Less => sizes[c as usize] += 1,
                std::cmp::Ordering::Equal => {
                    reps.push(x as u32);
                    sizes.push(1);
                }
                std::cmp::Ordering::Greater => return false,
            }
        }
        let order = self.order() as u64;
        let centralizer_orders = sizes.iter().map(|&s| order / s).collect();
        let inverse_class = reps.iter().map(|&r| class_of[self.inv(r) as usize]).collect();
        let element_orders = par::map_slice(self.exec, &reps, |&r| self.element_order(r));
        let data = ConjugacyClassData { reps, sizes, class_of, centralizer_orders, inverse_class, element_orders };
        self.classes.set(data).is_ok()
    }

    pub fn classes(&self) -> &ConjugacyClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ConjugacyClassData {
        let gens = self.generators().to_vec();
        let order = self.order();
        let mut class_of = vec![u32::MAX; order];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in self.ids() {
            if class_of[x as usize] != u32::MAX {
                continue;
            }
            let cid = reps.len() as u32;
            reps.push(x);
            class_of[x as usize] = cid;
            let mut orbit = vec![x];
            let mut i = 0;
            while i < orbit.len() {
                let y = orbit[i];
                for &g in &gens {
                    let z = self.conj(g, y);
                    if class_of[z as usize] == u32::MAX {
                        class_of[z as usize] = cid;
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            sizes.push(orbit.len() as u64);
        }
        let centralizer_orders = sizes.iter().map(|&s| order as u64 / s).collect();
        let inverse_class = reps.iter().map(|&r| class_of[self.inv(r) as usize]).collect();
        let element_orders = par::map_slice(self.exec, &reps, |&r| self.element_order(r));
        ConjugacyClassData { reps, sizes, class_of, centralizer_orders, inverse_class, element_orders }
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes().element_orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
