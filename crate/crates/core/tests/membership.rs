use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use tseq::group::{GroupElement, GroupSpec};
use tseq::neighborhood::{
    cover_by_translates, enumerate_truncation, enumerate_with_witnesses, member, sp_member, Config, NeighborhoodExpr,
};
use tseq::scheme::{IndexScheme, SchemeFamily};
use tseq::sequence::SequenceSpec;

fn int(x: &GroupElement) -> BigInt {
    match x {
        GroupElement::Int(v) => v.clone(),
        other => panic!("{other} is not an integer"),
    }
}

/// Signed sums of at most `terms` values of `pool`, repeats allowed.
fn sums(pool: &[BigInt], terms: usize) -> BTreeSet<BigInt> {
    let mut all = BTreeSet::from([BigInt::from(0)]);
    for _ in 0..terms {
        let mut next = all.clone();
        for s in &all {
            for u in pool {
                next.insert(s + u);
                next.insert(s - u);
            }
        }
        all = next;
    }
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn geometric_repeat_sums_match_windows(base in 2i64..6, k in 0u64..3, m in 0u64..4, x in -300i64..300) {
        let seq = Arc::new(SequenceSpec::geometric("g", base, 0).unwrap());
        let pool: Vec<BigInt> = (m..m + 8).map(|n| int(&seq.eval(n))).collect();
        let in_window = sums(&pool, k as usize + 1).contains(&BigInt::from(x));
        let xe = GroupElement::int(x);
        let v = member(&xe, &NeighborhoodExpr::sum_repeat(seq, k, m), &Config::default()).unwrap();
        if let Some(w) = v.witness() {
            prop_assert!(w.verifies(&GroupSpec::Int, &xe));
        }
        if in_window {
            prop_assert!(v.is_in(), "{}", v);
        }
    }

    #[test]
    fn basis_sums_are_balls(k in 0u64..4, coeffs in proptest::collection::vec(-3i64..=3, 1..6)) {
        let e = Arc::new(SequenceSpec::basis_vectors("e"));
        let x = GroupElement::vector((1..).zip(coeffs.iter().copied()));
        let l1: i64 = coeffs.iter().map(|c| c.abs()).sum();
        let v = member(&x, &NeighborhoodExpr::sum_repeat(e, k, 0), &Config::default()).unwrap();
        prop_assert_eq!(v.is_in(), l1 <= k as i64 + 1, "{}", v);
        if let Some(w) = v.witness() {
            prop_assert!(w.verifies(&GroupSpec::IntVec, &x));
        }
    }

    #[test]
    fn prefix_sums_agree_with_enumeration(start in 0u64..3, depth in 0u64..3, x in -60i64..60) {
        let seq = Arc::new(SequenceSpec::geometric("g", 3, 0).unwrap());
        let schemes = SchemeFamily::uniform(IndexScheme::from_start(start));
        let expr = NeighborhoodExpr::sum_prefix(vec![seq], schemes, depth);
        let window = enumerate_truncation(&expr, 6, &Config::default()).unwrap();
        let xe = GroupElement::int(x);
        let v = member(&xe, &expr, &Config::default()).unwrap();
        if window.contains(&xe) {
            prop_assert!(v.is_in(), "{}", v);
        }
        if v.is_exact_not_in() {
            prop_assert!(!window.contains(&xe));
        }
    }
}

#[test]
fn free_products_contain_their_truncations() {
    let x = Arc::new(SequenceSpec::free_letters("x"));
    let g = GroupElement::word(&[(1, 1)]);
    let schemes = SchemeFamily::uniform(IndexScheme::from_start(1)).with_conjugator(g.clone(), IndexScheme::from_start(2));
    let expr = NeighborhoodExpr::sp_product(vec![x], schemes, 1, vec![g]);
    let cfg = Config::default();
    let free = GroupSpec::free(None);
    for (y, w) in enumerate_with_witnesses(&expr, 2, &cfg).unwrap() {
        assert!(w.verifies(&free, &y));
        let v = sp_member(&y, &expr, &cfg).unwrap();
        assert!(v.witness().is_some_and(|w| w.verifies(&free, &y)), "{y}: {v}");
    }
}

#[test]
fn compact_sets_are_covered() {
    let seq = Arc::new(SequenceSpec::geometric("g", 2, 0).unwrap());
    let k: Vec<GroupElement> = (-20..=20).map(GroupElement::int).collect();
    let cfg = Config::default();
    let cover = cover_by_translates(&k, &seq, 2, 3, &cfg).unwrap().expect("a cover");
    assert!(cover.len() <= 3);
    let a = NeighborhoodExpr::sum_repeat(seq, 2, 0);
    for x in &k {
        let hit = cover.iter().any(|g| {
            let d = GroupSpec::Int.op(x, &GroupSpec::Int.invert(g).unwrap()).unwrap();
            member(&d, &a, &cfg).unwrap().is_in()
        });
        assert!(hit, "{x} uncovered by {cover:?}");
    }
}

#[test]
fn identity_belongs_everywhere() {
    let cfg = Config::default();
    let seq = Arc::new(SequenceSpec::factorial("f", 1).unwrap());
    for k in 0..3 {
        for m in 0..4 {
            let v = member(&GroupElement::int(0), &NeighborhoodExpr::sum_repeat(seq.clone(), k, m), &cfg).unwrap();
            assert!(v.is_in());
        }
    }
}
