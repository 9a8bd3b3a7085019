use serde::{Deserialize, Serialize};

use crate::group::lcm;

use super::{CliffordError, LengthTwoContext};
use crate::liedual::Functional;

/// A linear character of the stabiliser `S` restricting to `psi_beta` on the
/// kernel, with values `values[i] / exponent` in `Q/Z` on `elements[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionWitness {
    pub exponent: u64,
    pub elements: Vec<u32>,
    pub values: Vec<u64>,
}

impl LengthTwoContext {
    /// Sorted ids of `[S, S]`.
    fn derived_of(&self, stab: &[u32]) -> Result<Vec<u32>, CliffordError> {
        let g = self.group.group();
        let sub = g.subgroup(stab)?;
        let mut out: Vec<u32> = sub
            .derived_subgroup()
            .into_iter()
            .map(|i| g.id_of_key(sub.key(i)).expect("subgroup element lies in the group"))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `psi_beta` trivial on `[S, S] cap N`.
    pub fn extension_exists(&self, beta: &Functional, stab: &[u32]) -> Result<bool, CliffordError> {
        let derived = self.derived_of(stab)?;
        let values = self.kernel_chars.values(&self.lie, beta);
        let ids = self.kernel_chars.ids();
        Ok(derived.iter().all(|d| match ids.binary_search(d) {
            Ok(pos) => values[pos] == 0,
            Err(_) => true,
        }))
    }

    /// Pulls `psi_beta` back to `N [S,S]` and extends over the abelian
    /// quotient one cyclic factor at a time. `None` if no extension exists.
    pub fn construct_extension(&self, beta: &Functional, stab: &[u32]) -> Result<Option<ExtensionWitness>, CliffordError> {
        if !self.extension_exists(beta, stab)? {
            return Ok(None);
        }
        let g = self.group.group();
        let p = self.lie.field().p() as u64;
        let exponent = stab.iter().fold(1, |acc, &s| lcm(acc, g.element_order(s)));
        let scale = exponent / p;
        let undefined = u64::MAX;
        let mut lambda = vec![undefined; g.order()];
        let mut members = Vec::new();
        let values = self.kernel_chars.values(&self.lie, beta);
        for d in self.derived_of(stab)? {
            for (&n, &v) in self.kernel_chars.ids().iter().zip(&values) {
                let x = g.mul(d, n);
                let val = v as u64 * scale % exponent;
                if lambda[x as usize] == undefined {
                    lambda[x as usize] = val;
                    members.push(x);
                } else if lambda[x as usize] != val {
                    return Err(CliffordError::Invariant("psi_beta not trivial on [S,S] cap N".into()));
                }
            }
        }
        while members.len() < stab.len() {
            let s = *stab.iter().find(|&&s| lambda[s as usize] == undefined).expect("S is larger than H");
            let mut power = s;
            let mut m = 1;
            while lambda[power as usize] == undefined {
                power = g.mul(power, s);
                m += 1;
            }
            let target = lambda[power as usize];
            let x = (0..exponent)
                .find(|&x| x * m % exponent == target)
                .ok_or_else(|| CliffordError::Invariant("no root of the extension value".into()))?;
            let base = members.clone();
            let mut sj = g.identity();
            for j in 1..m {
                sj = g.mul(sj, s);
                for &h in &base {
                    let y = g.mul(sj, h);
                    lambda[y as usize] = (j * x + lambda[h as usize]) % exponent;
                    members.push(y);
                }
            }
        }
        let witness = ExtensionWitness {
            exponent,
            elements: stab.to_vec(),
            values: stab.iter().map(|&s| lambda[s as usize]).collect(),
        };
        if !self.is_extension(beta, &witness)? {
            return Err(CliffordError::Invariant("constructed extension is not a homomorphism".into()));
        }
        Ok(Some(witness))
    }

    /// Whether the witness is a homomorphism on `S` restricting to `psi_beta`.
    pub fn is_extension(&self, beta: &Functional, w: &ExtensionWitness) -> Result<bool, CliffordError> {
        let g = self.group.group();
        let value = |x: u32| w.elements.binary_search(&x).ok().map(|i| w.values[i]);
        let sub = g.subgroup(&w.elements)?;
        let gens: Vec<u32> = sub.generators().iter().map(|&i| g.id_of_key(sub.key(i)).unwrap()).collect();
        for &a in &gens {
            for (&s, &vs) in w.elements.iter().zip(&w.values) {
                match (value(g.mul(a, s)), value(a)) {
                    (Some(vas), Some(va)) if vas == (va + vs) % w.exponent => {}
                    _ => return Ok(false),
                }
            }
        }
        let p = self.lie.field().p() as u64;
        let values = self.kernel_chars.values(&self.lie, beta);
        Ok(self
            .kernel_chars
            .ids()
            .iter()
            .zip(&values)
            .all(|(&n, &v)| value(n) == Some(v as u64 * (w.exponent / p) % w.exponent)))
    }
}
