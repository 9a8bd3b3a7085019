use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::modp::Fl;
use super::{ChartabError, ModularCharacterTable};

/// Degrees of irreducible characters with their multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeMultiset(pub BTreeMap<u64, u64>);

impl DegreeMultiset {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn insert(&mut self, d: u64, count: u64) {
        if count > 0 {
            *self.0.entry(d).or_insert(0) += count;
        }
    }
    pub fn extend_from(&mut self, other: &DegreeMultiset) {
        for (&d, &c) in &other.0 {
            self.insert(d, c);
        }
    }
    /// Number of characters counted.
    pub fn count(&self) -> u64 {
        self.0.values().sum()
    }
    /// `sum d^2` over the multiset.
    pub fn sum_of_squares(&self) -> u64 {
        self.0.iter().map(|(d, c)| d * d * c).sum()
    }
    /// Every degree multiplied by `e`.
    pub fn scaled(&self, e: u64) -> DegreeMultiset {
        DegreeMultiset(self.0.iter().map(|(&d, &c)| (d * e, c)).collect())
    }
    pub fn to_csv(&self) -> String {
        let mut s = String::from("dimension,count\n");
        for (d, c) in &self.0 {
            s.push_str(&format!("{d},{c}\n"));
        }
        s
    }
}

impl FromIterator<u64> for DegreeMultiset {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let mut m = DegreeMultiset::new();
        for d in iter {
            m.insert(d, 1);
        }
        m
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(d, c)| format!("{d}^{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `<chi|_N, psi>` for every row of the table, where `psi(u) = zeta^v(u)` and
/// `zeta = g^((l-1)/p)`. `kernel_classes[u]` is the class of the `u`-th kernel
/// element and `values[u]` its `v(u)` in `Z/p`.
///
/// With `zeta` a fixed root mod `l` the character tested is a Galois
/// conjugate `psi^k` of the intended one; degree data per fibre is unchanged.
pub fn restriction_multiplicities(
    table: &ModularCharacterTable,
    kernel_classes: &[u32],
    values: &[u32],
    p: u64,
) -> Result<Vec<u64>, ChartabError> {
    let f = Fl::new(table.ell);
    let zeta = f
        .root_of_unity(p)
        .ok_or_else(|| ChartabError::Invariant(format!("{p} does not divide {} - 1", table.ell)))?;
    let zinv = f.pow(zeta, p - 1);
    let r = table.num_classes();
    let mut counts = vec![0u64; r * p as usize];
    for (&k, &v) in kernel_classes.iter().zip(values) {
        counts[k as usize * p as usize + v as usize] += 1;
    }
    let powers: Vec<u64> = (0..p).map(|v| f.pow(zinv, v)).collect();
    // weight[k] = sum_v count(k, v) zeta^-v
    let weight: Vec<u64> = (0..r)
        .map(|k| (0..p as usize).fold(0, |acc, v| f.add(acc, f.mul(f.from_u64(counts[k * p as usize + v]), powers[v]))))
        .collect();
    let ninv = f
        .inv(f.from_u64(kernel_classes.len() as u64))
        .ok_or_else(|| ChartabError::Invariant("kernel order divisible by l".into()))?;
    table
        .table
        .iter()
        .zip(&table.degrees)
        .map(|(row, &d)| {
            let s = (0..r).fold(0, |acc, k| f.add(acc, f.mul(row[k], weight[k])));
            let m = f.mul(s, ninv);
            if m > d {
                Err(ChartabError::Invariant(format!("multiplicity {m} exceeds degree {d}")))
            } else {
                Ok(m)
            }
        })
        .collect()
}
