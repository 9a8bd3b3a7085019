use std::sync::OnceLock;

use proptest::prelude::*;

use witt2rep::group::{enumerate_points, EnumOptions, MatrixGroup, Twist};
use witt2rep::liedual::{psi_beta, Functional, LieAlgebra};
use witt2rep::ring::{parse_ring, LocalRing};

const RINGS: [&str; 8] = [
    "zmod(2^3)",
    "zmod(5^2)",
    "truncpoly(gf(4),r=2)",
    "truncpoly(gf(3),r=3)",
    "witt2(gf(4))",
    "witt2(gf(9))",
    "witt2(gf(8))",
    "gf(7)",
];

fn ring(i: usize) -> LocalRing {
    parse_ring(RINGS[i]).unwrap()
}

struct Case {
    group: MatrixGroup,
    lie: LieAlgebra,
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        [("gl(2)", "witt2(gf(4))"), ("gl(2)", "truncpoly(gf(4),r=2)"), ("sl(2)", "zmod(5^2)"), ("sl(2)", "truncpoly(gf(5),r=2)")]
            .into_iter()
            .map(|(s, r)| {
                let group = enumerate_points(s.parse().unwrap(), parse_ring(r).unwrap(), &EnumOptions::default()).unwrap();
                let lie = LieAlgebra::new(group.scheme(), group.ring().residue_field().clone());
                Case { group, lie }
            })
            .collect()
    })
}

fn lie_element(lie: &LieAlgebra, seed: &[u32]) -> Vec<u32> {
    let q = lie.field().order();
    let c: Vec<u32> = (0..lie.dim()).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 7) % q).collect();
    lie.from_coords(&c)
}

fn functional(lie: &LieAlgebra, seed: &[u32]) -> Functional {
    let q = lie.field().order();
    Functional((0..lie.dim()).map(|i| seed[i % seed.len()].wrapping_mul(i as u32 + 3) % q).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(i in 0..RINGS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let r = ring(i);
        let n = r.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.is_unit(a), r.reduce(a) != r.residue_field().from_int(0));
        if let Some(inv) = r.inv(a) {
            prop_assert_eq!(r.mul(a, inv), r.one());
        }
    }

    #[test]
    fn residue_map_is_a_ring_map(i in 0..RINGS.len(), a in any::<u32>(), b in any::<u32>()) {
        let r = ring(i);
        let k = r.residue_field();
        let (a, b) = (a % r.order(), b % r.order());
        prop_assert_eq!(r.reduce(r.add(a, b)), k.add(r.reduce(a), r.reduce(b)));
        prop_assert_eq!(r.reduce(r.mul(a, b)), k.mul(r.reduce(a), r.reduce(b)));
        prop_assert_eq!(r.reduce(r.lift(r.reduce(a))), r.reduce(a));
    }

    #[test]
    fn coadjoint_is_an_action(ci in 0..4usize, g in any::<u32>(), h in any::<u32>(), seed in prop::collection::vec(any::<u32>(), 1..6)) {
        let case = &cases()[ci];
        let res = case.group.residue().group();
        let (g, h) = (g % res.order() as u32, h % res.order() as u32);
        let beta = functional(&case.lie, &seed);
        let lhs = case.lie.coadjoint(res, res.mul(g, h), &beta);
        let rhs = case.lie.coadjoint(res, g, &case.lie.coadjoint(res, h, &beta));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(case.lie.coadjoint(res, res.identity(), &beta), beta);
    }

    #[test]
    fn coadjoint_preserves_pairing(ci in 0..4usize, g in any::<u32>(), seed in prop::collection::vec(any::<u32>(), 1..6)) {
        let case = &cases()[ci];
        let res = case.group.residue().group();
        let g = g % res.order() as u32;
        let beta = functional(&case.lie, &seed);
        let x = lie_element(&case.lie, &seed);
        let adx = case.group.adjoint(g, &x, Twist::Untwisted);
        prop_assert_eq!(case.lie.pair(&case.lie.coadjoint(res, g, &beta), &adx), case.lie.pair(&beta, &x));
    }

    #[test]
    fn exp_is_additive(ci in 0..4usize, s1 in prop::collection::vec(any::<u32>(), 1..6), s2 in prop::collection::vec(any::<u32>(), 1..6)) {
        let case = &cases()[ci];
        let k = case.lie.field();
        let x = lie_element(&case.lie, &s1);
        let y = lie_element(&case.lie, &s2);
        let sum: Vec<u32> = x.iter().zip(&y).map(|(&a, &b)| k.add(a, b)).collect();
        let g = &case.group;
        prop_assert_eq!(g.exp(&sum).unwrap(), g.group().mul(g.exp(&x).unwrap(), g.exp(&y).unwrap()));
        prop_assert_eq!(g.log(g.exp(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn twist_law(ci in 0..4usize, gi in any::<u32>(), seed in prop::collection::vec(any::<u32>(), 1..6)) {
        let case = &cases()[ci];
        let g = gi % case.group.order() as u32;
        let x = lie_element(&case.lie, &seed);
        prop_assert!(case.group.twist_law_holds(g, &x, case.group.twist()).unwrap());
    }

    #[test]
    fn psi_is_a_character(ci in 0..4usize, a in any::<u32>(), b in any::<u32>(), seed in prop::collection::vec(any::<u32>(), 1..6)) {
        let case = &cases()[ci];
        let n = case.group.kernel();
        let (u, v) = (n[a as usize % n.len()], n[b as usize % n.len()]);
        let beta = functional(&case.lie, &seed);
        let p = case.lie.field().p();
        let psi = |w| psi_beta(&case.lie, &case.group, &beta, w).unwrap();
        prop_assert_eq!(psi(case.group.group().mul(u, v)), (psi(u) + psi(v)) % p);
    }
}
