use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::chartab::{DegreeMultiset, ModularCharacterTable};
use crate::config::RunConfig;
use crate::group::{enumerate_points, Family, GroupScheme, MatrixGroup, Twist};
use crate::liedual::{is_very_good_prime, Functional};
use crate::ring::{GaloisField, LocalRing};

use super::{AnalysisOptions, CliffordError, LengthTwoContext, OrbitRow};

/// One ring's side of a comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub ring_descriptor: String,
    pub order: u64,
    pub num_classes: u64,
    pub degree_multiset: DegreeMultiset,
    pub clifford_multiset: DegreeMultiset,
    pub clifford_partial: bool,
    pub split_prime: u64,
    pub twist: Twist,
    pub orbit_table: Vec<OrbitRow>,
}

/// The fibre over `psi_beta` for the mixed ring next to the equal
/// characteristic fibres over `psi_{sigma* beta}` and `psi_{sigma*^-1 beta}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPairing {
    pub beta: Vec<u32>,
    pub sigma_beta: Vec<u32>,
    pub sigma_inv_beta: Vec<u32>,
    pub mixed_fiber: DegreeMultiset,
    pub equal_fiber_sigma: DegreeMultiset,
    pub equal_fiber_sigma_inv: DegreeMultiset,
    pub matches_sigma: bool,
    pub matches_sigma_inv: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub global_equal: bool,
    pub per_orbit_equal: bool,
    pub clifford_matches_oracle: bool,
    pub exploratory: bool,
    pub extension_all: bool,
    pub dim_formula_all: bool,
    pub stabilizer_formula_all: bool,
    pub reduction_onto_centralizer_all: bool,
    pub clifford_bound_all: bool,
    pub counting_n1_eq_n2_all: bool,
    pub counting_n1_eq_n3_all: bool,
}

impl Verdicts {
    /// Derive every verdict from the raw ring data and pairings.
    pub fn from_data(rings: &[RingReport], pairing: &[OrbitPairing], exploratory: bool) -> Verdicts {
        let rows = || rings.iter().flat_map(|r| r.orbit_table.iter());
        Verdicts {
            global_equal: rings.windows(2).all(|w| w[0].degree_multiset == w[1].degree_multiset),
            per_orbit_equal: pairing.iter().all(|p| p.matches_sigma),
            clifford_matches_oracle: rings.iter().all(|r| !r.clifford_partial && r.clifford_multiset == r.degree_multiset),
            exploratory,
            extension_all: rows().all(|r| r.extension_exists),
            dim_formula_all: rows().all(|r| r.dim_formula_holds == Some(true)),
            stabilizer_formula_all: rows().all(|r| r.stabilizer_formula_holds),
            reduction_onto_centralizer_all: rows().all(|r| r.reduction_onto_centralizer),
            clifford_bound_all: rows().all(|r| r.clifford_bound_holds),
            counting_n1_eq_n2_all: rows().all(|r| r.counting.n1_eq_n2),
            counting_n1_eq_n3_all: rows().all(|r| r.counting.n1_eq_n3),
        }
    }

    /// Name of the first asserted verdict that fails. The `n1 = n3` reading
    /// of the orbit count is reported but not asserted.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("global_equal", self.global_equal),
            ("per_orbit_equal", self.per_orbit_equal),
            ("clifford_matches_oracle", self.clifford_matches_oracle),
            ("extension_all", self.extension_all),
            ("dim_formula_all", self.dim_formula_all),
            ("stabilizer_formula_all", self.stabilizer_formula_all),
            ("reduction_onto_centralizer_all", self.reduction_onto_centralizer_all),
            ("clifford_bound_all", self.clifford_bound_all),
            ("counting_n1_eq_n2_all", self.counting_n1_eq_n2_all),
        ]
        .into_iter()
        .find(|(_, ok)| !ok)
        .map(|(name, _)| name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub scheme: String,
    pub q: u32,
    pub field: String,
    /// Equal characteristic first, then mixed.
    pub rings: Vec<RingReport>,
    pub orbit_pairing: Vec<OrbitPairing>,
    pub verdicts: Verdicts,
    pub seed: u64,
    pub timings_ms: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub config: Option<RunConfig>,
}

impl ComparisonReport {
    /// Exploratory reports always pass; otherwise every asserted verdict must.
    pub fn passes(&self) -> bool {
        self.verdicts.exploratory || self.verdicts.first_failure().is_none()
    }
}

/// Outside the range where the comparison is expected to hold: neither
/// `GL_n` nor `p` very good for the root system.
pub fn is_exploratory(scheme: GroupScheme, p: u32) -> bool {
    if scheme.family == Family::GL {
        return false;
    }
    match scheme.root_type() {
        Some((t, rank)) => !is_very_good_prime(t, rank, p).unwrap_or(false),
        None => true,
    }
}

fn ring_report(ctx: &LengthTwoContext, rows: Vec<OrbitRow>) -> RingReport {
    let (clifford_multiset, clifford_partial) = LengthTwoContext::clifford_degree_multiset(&rows);
    RingReport {
        ring_descriptor: ctx.group.ring().to_string(),
        order: ctx.group.order() as u64,
        num_classes: ctx.table.num_classes() as u64,
        degree_multiset: ctx.table.degree_multiset(),
        clifford_multiset,
        clifford_partial,
        split_prime: ctx.table.ell,
        twist: ctx.group.twist(),
        orbit_table: rows,
    }
}

/// Pairs each mixed-characteristic orbit with the equal-characteristic orbits
/// of `sigma* beta` and `sigma*^-1 beta`.
fn pair_orbits(eq: &LengthTwoContext, eq_rows: &[OrbitRow], mixed_rows: &[OrbitRow]) -> Vec<OrbitPairing> {
    let lie = &eq.lie;
    mixed_rows
        .iter()
        .map(|row| {
            let beta = Functional(row.beta.clone());
            let s = lie.sigma_star(&beta);
            let si = lie.sigma_star_inv(&beta);
            let fs = eq_rows[eq.orbits.orbit_index(lie, &s)].fiber_degrees.clone();
            let fsi = eq_rows[eq.orbits.orbit_index(lie, &si)].fiber_degrees.clone();
            OrbitPairing {
                beta: row.beta.clone(),
                sigma_beta: s.0,
                sigma_inv_beta: si.0,
                matches_sigma: fs == row.fiber_degrees,
                matches_sigma_inv: fsi == row.fiber_degrees,
                mixed_fiber: row.fiber_degrees.clone(),
                equal_fiber_sigma: fs,
                equal_fiber_sigma_inv: fsi,
            }
        })
        .collect()
}

/// Hooks for reusing cached groups and tables.
pub trait TableSource {
    fn group(&self, scheme: GroupScheme, ring: LocalRing, opts: &AnalysisOptions) -> Result<MatrixGroup, CliffordError> {
        Ok(enumerate_points(scheme, ring, &opts.enum_options())?)
    }
    fn table(&self, group: &MatrixGroup, opts: &AnalysisOptions) -> Result<ModularCharacterTable, CliffordError> {
        Ok(ModularCharacterTable::compute(group.group(), opts.seed)?)
    }
}

/// Computes everything from scratch.
pub struct Fresh;
impl TableSource for Fresh {}

/// `G(F_q[t]/t^2)` against `G(W_2(F_q))` (`Z/p^2` when `q = p`).
pub fn compare_rings(scheme: GroupScheme, q: u32, opts: &AnalysisOptions) -> Result<ComparisonReport, CliffordError> {
    compare_rings_with(scheme, q, opts, &Fresh)
}

pub fn compare_rings_with(
    scheme: GroupScheme,
    q: u32,
    opts: &AnalysisOptions,
    source: &dyn TableSource,
) -> Result<ComparisonReport, CliffordError> {
    let field = GaloisField::of_order(q)?;
    let rings = [LocalRing::truncated_poly(field.clone(), 2)?, LocalRing::mixed(field.clone(), 2)?];
    let mut timings = BTreeMap::new();
    let mut reports = Vec::new();
    let mut contexts = Vec::new();
    for (name, ring) in ["equal", "mixed"].into_iter().zip(rings) {
        let t0 = Instant::now();
        let group = source.group(scheme, ring, opts)?;
        let t1 = Instant::now();
        let table = source.table(&group, opts)?;
        let t2 = Instant::now();
        let ctx = LengthTwoContext::from_group(group, Some(table), opts)?;
        let rows = ctx.orbit_table()?;
        let t3 = Instant::now();
        timings.insert(format!("{name}_enumerate"), (t1 - t0).as_millis() as u64);
        timings.insert(format!("{name}_table"), (t2 - t1).as_millis() as u64);
        timings.insert(format!("{name}_orbits"), (t3 - t2).as_millis() as u64);
        reports.push(ring_report(&ctx, rows));
        contexts.push(ctx);
    }
    let orbit_pairing = pair_orbits(&contexts[0], &reports[0].orbit_table, &reports[1].orbit_table);
    let exploratory = is_exploratory(scheme, field.p());
    let verdicts = Verdicts::from_data(&reports, &orbit_pairing, exploratory);
    Ok(ComparisonReport {
        scheme: scheme.to_string(),
        q,
        field: field.to_string(),
        rings: reports,
        orbit_pairing,
        verdicts,
        seed: opts.seed,
        timings_ms: timings,
        config: None,
    })
}
