use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::chartab::{restriction_multiplicities, DegreeMultiset, ModularCharacterTable};
use crate::group::{enumerate_points, EnumOptions, GroupScheme, MatrixGroup, Twist, DEFAULT_MAX_ORDER};
use crate::liedual::{
    character_stabilizer, functional_stabilizer, predicted_stabilizer, Functional, KernelCharacters, LieAlgebra,
    OrbitDecomposition, DEFAULT_MAX_ORBIT_SPACE,
};
use crate::par::{self, Exec};
use crate::ring::LocalRing;

use super::CliffordError;

/// Default bound on the number of conjugacy classes handed to the table.
pub const DEFAULT_MAX_CLASSES: u128 = 5_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub max_order: u128,
    pub max_orbit_space: u128,
    pub max_classes: u128,
    pub seed: u64,
    pub exec: Exec,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_order: DEFAULT_MAX_ORDER,
            max_orbit_space: DEFAULT_MAX_ORBIT_SPACE,
            max_classes: DEFAULT_MAX_CLASSES,
            seed: 0,
            exec: Exec::default(),
        }
    }
}

impl AnalysisOptions {
    pub fn enum_options(&self) -> EnumOptions {
        EnumOptions { max_order: self.max_order, exec: self.exec }
    }
}

/// The three counts attached to an orbit: characters above `psi_beta`,
/// classes of `C(beta)`, and the order of `C(beta)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingRecord {
    pub n1: u64,
    pub n2: u64,
    pub n3: u64,
    pub n1_eq_n2: bool,
    pub n1_eq_n3: bool,
}

/// Clifford prediction for one orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPrediction {
    pub beta: Vec<u32>,
    /// `|C_{G(F_q)}(f)|`, `f = beta` or `sigma*^-1 beta`.
    pub stab_order: u64,
    pub index: u64,
    pub centralizer_degrees: DegreeMultiset,
    pub extension_exists: bool,
    /// `{ index * d : d in centralizer_degrees }`, present only when an
    /// extension exists.
    pub predicted: Option<DegreeMultiset>,
}

/// One row of a ring's orbit table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRow {
    pub beta: Vec<u32>,
    pub orbit_size: u64,
    pub stab_order: u64,
    pub index: u64,
    pub extension_exists: bool,
    pub fiber_degrees: DegreeMultiset,
    pub predicted_degrees: Option<DegreeMultiset>,
    pub centralizer_degrees: DegreeMultiset,
    /// Scanned stabiliser of `psi_beta` equals the predicted preimage.
    pub stabilizer_formula_holds: bool,
    /// `rho` maps the stabiliser onto `C(f)` with kernel `N`.
    pub reduction_onto_centralizer: bool,
    /// Fibre equals prediction; `None` without an extension.
    pub dim_formula_holds: Option<bool>,
    /// Every fibre degree is a multiple of the index.
    pub clifford_bound_holds: bool,
    pub extension_witness_verified: Option<bool>,
    pub counting: CountingRecord,
}

/// `G(R)` for a length-two `R` with its character table and kernel data.
pub struct LengthTwoContext {
    pub group: MatrixGroup,
    pub lie: LieAlgebra,
    pub orbits: OrbitDecomposition,
    pub table: ModularCharacterTable,
    pub(super) kernel_chars: KernelCharacters,
    kernel_classes: Vec<u32>,
    opts: AnalysisOptions,
}

impl LengthTwoContext {
    pub fn build(scheme: GroupScheme, ring: LocalRing, opts: &AnalysisOptions) -> Result<Self, CliffordError> {
        let group = enumerate_points(scheme, ring, &opts.enum_options())?;
        Self::from_group(group, None, opts)
    }

    /// Reuses a previously computed table of `group` when given.
    pub fn from_group(
        group: MatrixGroup,
        table: Option<ModularCharacterTable>,
        opts: &AnalysisOptions,
    ) -> Result<Self, CliffordError> {
        if group.ring().length() != 2 {
            return Err(CliffordError::Invariant(format!("{} is not of length two", group.ring())));
        }
        let lie = LieAlgebra::new(group.scheme(), group.ring().residue_field().clone());
        let orbits = OrbitDecomposition::compute(&lie, group.residue().group(), opts.max_orbit_space)?;
        let classes = group.group().classes();
        if classes.len() as u128 > opts.max_classes {
            return Err(CliffordError::TooManyClasses { required: classes.len() as u128, bound: opts.max_classes });
        }
        let table = match table {
            Some(t) => {
                t.sanity()?;
                t
            }
            None => ModularCharacterTable::compute(group.group(), opts.seed)?,
        };
        let kernel_chars = KernelCharacters::new(&group)?;
        let kernel_classes = kernel_chars.ids().iter().map(|&u| classes.class_of[u as usize]).collect();
        Ok(LengthTwoContext { group, lie, orbits, table, kernel_chars, kernel_classes, opts: *opts })
    }

    pub fn options(&self) -> &AnalysisOptions {
        &self.opts
    }

    /// The functional whose centraliser is the image of the stabiliser of
    /// `psi_beta`.
    pub fn untwisted(&self, beta: &Functional) -> Functional {
        match self.group.twist() {
            Twist::Untwisted => beta.clone(),
            Twist::Frobenius => self.lie.sigma_star_inv(beta),
        }
    }

    /// `C_{G(F_q)}(f)` as residue ids.
    pub fn centralizer(&self, beta: &Functional) -> Vec<u32> {
        functional_stabilizer(&self.lie, self.group.residue().group(), &self.untwisted(beta))
    }

    /// Stabiliser of `psi_beta` in `G(R)` by scanning.
    pub fn stabilizer(&self, beta: &Functional) -> Result<Vec<u32>, CliffordError> {
        Ok(character_stabilizer(&self.lie, &self.group, beta)?)
    }

    /// Indices of the table rows above `psi_beta` with their degrees.
    pub fn fiber(&self, beta: &Functional) -> Result<(Vec<usize>, DegreeMultiset), CliffordError> {
        let m = self.multiplicities(beta)?;
        let rows: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
        let degrees = rows.iter().map(|&i| self.table.degrees[i]).collect();
        Ok((rows, degrees))
    }

    fn multiplicities(&self, beta: &Functional) -> Result<Vec<u64>, CliffordError> {
        let values = self.kernel_chars.values(&self.lie, beta);
        let p = self.lie.field().p() as u64;
        Ok(restriction_multiplicities(&self.table, &self.kernel_classes, &values, p)?)
    }

    fn centralizer_table(&self, cent: &[u32]) -> Result<(DegreeMultiset, u64), CliffordError> {
        let sub = self.group.residue().group().subgroup(cent)?;
        let t = ModularCharacterTable::compute(&sub, self.opts.seed)?;
        Ok((t.degree_multiset(), t.num_classes() as u64))
    }

    pub fn predict_orbit(&self, beta: &Functional, stab: &[u32]) -> Result<OrbitPrediction, CliffordError> {
        let cent = self.centralizer(beta);
        let (centralizer_degrees, _) = self.centralizer_table(&cent)?;
        let index = (self.group.residue().order() / cent.len()) as u64;
        let extension_exists = self.extension_exists(beta, stab)?;
        let predicted = extension_exists.then(|| centralizer_degrees.scaled(index));
        Ok(OrbitPrediction {
            beta: beta.0.clone(),
            stab_order: cent.len() as u64,
            index,
            centralizer_degrees,
            extension_exists,
            predicted,
        })
    }

    pub fn verify_counting(&self, beta: &Functional) -> Result<CountingRecord, CliffordError> {
        let (rows, _) = self.fiber(beta)?;
        let cent = self.centralizer(beta);
        let (_, n2) = self.centralizer_table(&cent)?;
        let (n1, n3) = (rows.len() as u64, cent.len() as u64);
        Ok(CountingRecord { n1, n2, n3, n1_eq_n2: n1 == n2, n1_eq_n3: n1 == n3 })
    }

    /// Fibre over `psi_beta` equals the predicted multiset. `None` when no
    /// extension exists.
    pub fn verify_dim_formula(&self, beta: &Functional) -> Result<Option<bool>, CliffordError> {
        let stab = self.stabilizer(beta)?;
        let pred = self.predict_orbit(beta, &stab)?;
        let (_, fiber) = self.fiber(beta)?;
        Ok(pred.predicted.map(|p| p == fiber))
    }

    /// `rho(S) = C(f)` and `S cap ker rho = N`.
    fn reduction_onto_centralizer(&self, stab: &[u32], cent: &[u32]) -> bool {
        let image: BTreeSet<u32> = stab.iter().map(|&s| self.group.rho(s)).collect();
        let kernel_part = stab.iter().filter(|&&s| self.group.is_in_kernel(s)).count();
        image.into_iter().eq(cent.iter().copied()) && kernel_part == self.group.kernel().len()
    }

    /// Full analysis of one orbit representative.
    pub fn orbit_row(&self, i: usize) -> Result<OrbitRow, CliffordError> {
        let beta = &self.orbits.reps[i];
        let stab = self.stabilizer(beta)?;
        let pred = self.predict_orbit(beta, &stab)?;
        let (rows, fiber) = self.fiber(beta)?;
        let cent = self.centralizer(beta);
        let n2 = pred.centralizer_degrees.count();
        let counting = CountingRecord {
            n1: rows.len() as u64,
            n2,
            n3: cent.len() as u64,
            n1_eq_n2: rows.len() as u64 == n2,
            n1_eq_n3: rows.len() == cent.len(),
        };
        let witness_ok = match self.construct_extension(beta, &stab)? {
            Some(w) => Some(self.is_extension(beta, &w)?),
            None => None,
        };
        let predicted_stab = predicted_stabilizer(&self.lie, &self.group, beta)?;
        Ok(OrbitRow {
            beta: beta.0.clone(),
            orbit_size: self.orbits.sizes[i],
            stab_order: pred.stab_order,
            index: pred.index,
            extension_exists: pred.extension_exists,
            dim_formula_holds: pred.predicted.as_ref().map(|p| *p == fiber),
            clifford_bound_holds: fiber.0.keys().all(|d| d % pred.index == 0),
            stabilizer_formula_holds: stab == predicted_stab,
            reduction_onto_centralizer: self.reduction_onto_centralizer(&stab, &cent),
            extension_witness_verified: witness_ok,
            fiber_degrees: fiber,
            predicted_degrees: pred.predicted,
            centralizer_degrees: pred.centralizer_degrees,
            counting,
        })
    }

    /// Rows for every orbit, computed concurrently, plus a check that the
    /// fibres partition the irreducibles.
    pub fn orbit_table(&self) -> Result<Vec<OrbitRow>, CliffordError> {
        let rows = par::map_range(self.opts.exec, 0..self.orbits.len(), |i| self.orbit_row(i));
        let rows: Vec<OrbitRow> = rows.into_iter().collect::<Result<_, _>>()?;
        let mut seen = vec![0u32; self.table.degrees.len()];
        for beta in &self.orbits.reps {
            for i in self.fiber(beta)?.0 {
                seen[i] += 1;
            }
        }
        if seen.iter().any(|&c| c != 1) {
            return Err(CliffordError::Invariant("fibres do not partition the irreducibles".into()));
        }
        Ok(rows)
    }

    /// Union of per-orbit predictions and whether any orbit lacked one.
    pub fn clifford_degree_multiset(rows: &[OrbitRow]) -> (DegreeMultiset, bool) {
        let mut total = DegreeMultiset::new();
        let mut partial = false;
        for r in rows {
            match &r.predicted_degrees {
                Some(p) => total.extend_from(p),
                None => partial = true,
            }
        }
        (total, partial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    fn ctx(s: &str, r: &str) -> LengthTwoContext {
        LengthTwoContext::build(s.parse().unwrap(), parse_ring(r).unwrap(), &AnalysisOptions::default()).unwrap()
    }

    #[test]
    fn zero_orbit_contributes_residue_degrees() {
        let c = ctx("gl(2)", "truncpoly(gf(2),r=2)");
        let zero = c.lie.zero();
        let stab = c.stabilizer(&zero).unwrap();
        assert_eq!(stab.len(), c.group.order());
        let pred = c.predict_orbit(&zero, &stab).unwrap();
        assert_eq!(pred.index, 1);
        assert_eq!(pred.predicted.unwrap().0.into_iter().collect::<Vec<_>>(), vec![(1, 2), (2, 1)]);
        let rec = c.verify_counting(&zero).unwrap();
        assert_eq!((rec.n1, rec.n2, rec.n3), (3, 3, 6));
        assert!(c.construct_extension(&zero, &stab).unwrap().is_some());
    }

    #[test]
    fn gl2_f2_t2_union_matches_table() {
        let c = ctx("gl(2)", "truncpoly(gf(2),r=2)");
        let rows = c.orbit_table().unwrap();
        let (pred, partial) = LengthTwoContext::clifford_degree_multiset(&rows);
        assert!(!partial);
        assert_eq!(pred, c.table.degree_multiset());
        let total: u64 = rows.iter().map(|r| r.counting.n2).sum();
        assert_eq!(total as usize, c.group.group().classes().len());
        for r in &rows {
            assert!(r.extension_exists && r.stabilizer_formula_holds && r.reduction_onto_centralizer);
            assert_eq!(r.dim_formula_holds, Some(true));
            assert_eq!(r.extension_witness_verified, Some(true));
        }
    }

    #[test]
    fn sl2_f3_regular_semisimple_fiber() {
        let c = ctx("sl(2)", "truncpoly(gf(3),r=2)");
        let beta = c.lie.trace_functional(&[1, 0, 0, 2]);
        assert_eq!(c.verify_dim_formula(&beta).unwrap(), Some(true));
        let (_, fiber) = c.fiber(&beta).unwrap();
        // C(beta) is the split torus of order 2, index 12
        assert_eq!(fiber.0.into_iter().collect::<Vec<_>>(), vec![(12, 2)]);
        let rec = c.verify_counting(&beta).unwrap();
        assert!(rec.n1_eq_n2 && rec.n1_eq_n3);
    }
}
