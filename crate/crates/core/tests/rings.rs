use proptest::prelude::*;

use ringlab::abelian::Normalization;
use ringlab::constructions::{Canonicalizer, DedupMode, DEFAULT_AUTOMORPHISM_BUDGET};
use ringlab::{
    direct_sum, enumerate_tables, make_ring, pr_pairs, ring_from_file, ring_to_file,
    triangular_ring, EnumerationOptions, FiniteRing, GroupElement, InvariantFactors, Rational,
    RingInvariants, StructureTable,
};

fn group(f: &[u64]) -> InvariantFactors {
    InvariantFactors::from_canonical(f.to_vec()).unwrap()
}

fn rings_on(f: &[u64], dedup: DedupMode) -> Vec<FiniteRing> {
    let opts = EnumerationOptions {
        dedup,
        ..EnumerationOptions::default()
    };
    enumerate_tables(&group(f), &opts)
        .unwrap()
        .map(|e| e.ring)
        .collect()
}

#[test]
fn enumerated_rings_round_trip_through_files() {
    for f in [&[8][..], &[2, 4], &[2, 2, 2]] {
        for r in rings_on(f, DedupMode::None) {
            assert!(make_ring(r.group().clone(), r.table().clone()).is_ok());
            let text = ring_to_file(&r);
            let back = ring_from_file(&text).unwrap();
            assert_eq!(back, r);
            assert_eq!(ring_to_file(&back), text);
        }
    }
}

#[test]
fn swapped_presentation_multiplies_like_the_original() {
    // Z4 + Z2 with generators a (order 4), b (order 2): a*a = a, a*b = b, b*a = b, b*b = 0.
    let raw = StructureTable::from_coords(vec![
        vec![vec![1, 0], vec![0, 1]],
        vec![vec![0, 1], vec![0, 0]],
    ]);
    let r = FiniteRing::from_presentation(&[4, 2], &raw).unwrap();
    assert_eq!(r.group().factors(), &[2, 4]);
    let n = Normalization::new(&[4, 2], 1 << 20).unwrap();
    let raw_mul = |x: &[u64], y: &[u64]| {
        let a = (x[0] * y[0]) % 4;
        let b = (x[0] * y[1] + x[1] * y[0]) % 2;
        vec![a, b]
    };
    for x0 in 0..4 {
        for x1 in 0..2 {
            for y0 in 0..4 {
                for y1 in 0..2 {
                    let (x, y) = ([x0, x1], [y0, y1]);
                    let got = r.mul(&n.forward(&x), &n.forward(&y));
                    assert_eq!(n.backward(&got), raw_mul(&x, &y), "{x:?} * {y:?}");
                }
            }
        }
    }
}

#[test]
fn parsed_files_are_rejected_when_not_rings() {
    let not_assoc = r#"{"version":1,"factors":[2,2],"table":[[[0,1],[0,0]],[[1,0],[0,0]]]}"#;
    assert!(ring_from_file(not_assoc).is_err());
    let bad_version = r#"{"version":9,"factors":[2],"table":[[[0]]]}"#;
    assert!(ring_from_file(bad_version).is_err());
    let unreduced = r#"{"version":1,"factors":[2],"table":[[[3]]]}"#;
    assert!(ring_from_file(unreduced).is_err());
}

#[test]
fn isomorphic_rings_share_invariants() {
    for f in [&[2, 4][..], &[2, 2, 2]] {
        let canon = Canonicalizer::new(&group(f), DEFAULT_AUTOMORPHISM_BUDGET).unwrap();
        let classes = rings_on(f, DedupMode::AdditiveAutomorphism);
        let keys: Vec<_> = classes.iter().map(|r| canon.canonical_key(r)).collect();
        for r in rings_on(f, DedupMode::None) {
            let rep = canon.canonical_ring(&r);
            let pos = keys
                .iter()
                .position(|k| *k == canon.canonical_key(&r))
                .expect("class present");
            assert_eq!(classes[pos], rep);
            let (a, b) = (
                RingInvariants::compute(&r).unwrap(),
                RingInvariants::compute(&rep).unwrap(),
            );
            assert_eq!(a, b);
        }
    }
}

fn small_ring() -> impl Strategy<Value = FiniteRing> {
    let mut pool = Vec::new();
    for f in [&[2][..], &[3], &[4], &[2, 2]] {
        pool.extend(rings_on(f, DedupMode::AdditiveAutomorphism));
    }
    pool.push(triangular_ring(2).unwrap());
    proptest::sample::select(pool)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pr_is_multiplicative_over_direct_sums(a in small_ring(), b in small_ring()) {
        let s = direct_sum(&a, &b).unwrap();
        prop_assert_eq!(s.order(), a.order() * b.order());
        prop_assert_eq!(pr_pairs(&s), pr_pairs(&a) * pr_pairs(&b));
        prop_assert_eq!(s.is_commutative(), a.is_commutative() && b.is_commutative());
    }

    #[test]
    fn pr_is_one_exactly_for_commutative_rings(a in small_ring()) {
        prop_assert_eq!(pr_pairs(&a) == Rational::integer(1), a.is_commutative());
    }

    #[test]
    fn products_are_bilinear(a in small_ring(), xi in 0usize..64, yi in 0usize..64, zi in 0usize..64) {
        let g = a.group();
        let n = g.order() as usize;
        let (x, y, z): (GroupElement, GroupElement, GroupElement) =
            (g.element(xi % n), g.element(yi % n), g.element(zi % n));
        let left = a.mul(&g.add(&x, &y).unwrap(), &z);
        prop_assert_eq!(left, g.add(&a.mul(&x, &z), &a.mul(&y, &z)).unwrap());
        let assoc_l = a.mul(&a.mul(&x, &y), &z);
        prop_assert_eq!(assoc_l, a.mul(&x, &a.mul(&y, &z)));
    }
}
