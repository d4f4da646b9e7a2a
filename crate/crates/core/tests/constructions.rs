use std::sync::Arc;

use proptest::prelude::*;

use tseq::constructions::{
    fan_member, fan_points, fan_projection_check, hemicompact_fragment, hemicompact_truncation, product_scheme_split,
    quotient_apply, FanFamily, FanNeighborhood, FanPoint,
};
use tseq::group::{GroupElement, GroupSpec};
use tseq::neighborhood::{sp_member, Config, NeighborhoodExpr, Provenance};
use tseq::scheme::{IndexScheme, SchemeFamily};
use tseq::sequence::{pair_interleave, Generator, SequenceSpec};

fn word() -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec((1u64..=5, prop_oneof![Just(1i8), Just(-1i8)]), 0..=8)
        .prop_map(|letters| GroupElement::word(&letters))
}

fn vector() -> impl Strategy<Value = GroupElement> {
    proptest::collection::vec((1u64..=10, -20i64..=20), 0..=4).prop_map(GroupElement::vector)
}

proptest! {
    #[test]
    fn free_quotients_respect_products(a in word(), b in word()) {
        let free = GroupSpec::free(None);
        let g = GroupElement::word(&[(2, 1)]);
        let target = tseq::sequence::conjugate_sequence(&g, Arc::new(SequenceSpec::free_letters("x"))).unwrap();
        let lhs = quotient_apply(&free.op(&a, &b).unwrap(), &target).unwrap();
        let rhs = free.op(&quotient_apply(&a, &target).unwrap(), &quotient_apply(&b, &target).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_quotients_respect_sums(a in vector(), b in vector()) {
        let target = SequenceSpec::factorial("f", 1).unwrap();
        let lhs = quotient_apply(&GroupSpec::IntVec.op(&a, &b).unwrap(), &target).unwrap();
        let rhs = GroupSpec::Int
            .op(&quotient_apply(&a, &target).unwrap(), &quotient_apply(&b, &target).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fan_cuts_intersect_at_their_max(b1 in 0u64..6, b2 in 0u64..6, c1 in 0u64..6, c2 in 0u64..6) {
        let mut family = FanFamily::new();
        family.register(Arc::new(SequenceSpec::geometric("a", 2, 0).unwrap()), 32).unwrap();
        family.register(Arc::new(SequenceSpec::geometric("b", 3, 0).unwrap()), 32).unwrap();
        let w1 = FanNeighborhood::uniform(b1).with("b", c1);
        let w2 = FanNeighborhood::uniform(b2).with("b", c2);
        let both = w1.max(&w2);
        for p in fan_points(&family, &FanNeighborhood::uniform(0), 10) {
            let lhs = fan_member(&p, &w1, &family).unwrap() && fan_member(&p, &w2, &family).unwrap();
            prop_assert_eq!(lhs, fan_member(&p, &both, &family).unwrap(), "{}", p);
        }
    }
}

#[test]
fn generators_go_to_terms() {
    let target = SequenceSpec::geometric("g", 3, 0).unwrap();
    for n in 1..=100u64 {
        assert_eq!(quotient_apply(&GroupElement::vector([(n, 1)]), &target).unwrap(), target.eval(n - 1));
    }
}

#[test]
fn fan_apex_is_in_every_cut() {
    let mut family = FanFamily::new();
    family.register(Arc::new(SequenceSpec::geometric("a", 2, 0).unwrap()), 32).unwrap();
    assert!(fan_member(&FanPoint::Apex, &FanNeighborhood::uniform(7), &family).unwrap());
    assert!(!fan_member(&FanPoint::node("a", 6), &FanNeighborhood::uniform(7), &family).unwrap());
}

#[test]
fn fan_projection_passes() {
    let mut family = FanFamily::new();
    family.register(Arc::new(SequenceSpec::basis_vectors("e")), 32).unwrap();
    let schemes = SchemeFamily::uniform(IndexScheme::from_start(2));
    let r = fan_projection_check(&family, &schemes, 4, None, &Config::default()).unwrap();
    assert!(r.passed(), "{}", r.to_json());
}

#[test]
fn fragments_grow_with_n() {
    let e = Arc::new(SequenceSpec::basis_vectors("e"));
    let blk = Arc::new(
        SequenceSpec::new(
            "blk",
            GroupSpec::IntVec,
            Generator::Embed {
                inner: Arc::new(SequenceSpec::geometric("g", 2, 0).unwrap()),
                coordinate: 1,
            },
        )
        .unwrap(),
    );
    let family = [e, blk];
    let cfg = Config::default();
    let mut previous = hemicompact_truncation(&family, 0, 3, &cfg).unwrap();
    for n in 1..=2 {
        let next = hemicompact_truncation(&family, n, 3, &cfg).unwrap();
        assert!(previous.is_subset(&next), "fragment {n} drops points");
        assert!(next.len() > previous.len());
        previous = next;
    }
    let v = hemicompact_fragment(&family, 1, &GroupElement::vector([(1, 5)]), &cfg).unwrap();
    assert!(v.is_in(), "{v}");
}

#[test]
fn identity_pair_at_depth_one() {
    let u = Arc::new(SequenceSpec::geometric("ten", 10, 0).unwrap());
    let d = Arc::new(pair_interleave(u.clone(), u.clone()).unwrap());
    let l = SchemeFamily::uniform(IndexScheme::from_start(1));
    let w = NeighborhoodExpr::sp_product(vec![d], l, 1, vec![]);
    let e = GroupElement::pair(GroupElement::int(0), GroupElement::int(0));
    assert!(sp_member(&e, &w, &Config::default()).unwrap().is_in());
}

#[test]
fn split_terms_land_on_alternate_levels() {
    let u = Arc::new(SequenceSpec::geometric("ten", 10, 0).unwrap());
    let d = Arc::new(pair_interleave(u.clone(), u.clone()).unwrap());
    let l = SchemeFamily::uniform(IndexScheme::from_start(1));
    let w = NeighborhoodExpr::sp_product(vec![d.clone()], l.clone(), 1, vec![]);
    // (u_0, e)·(e, v_1) = d_1·d_2
    let x = GroupElement::pair(u.eval(0), u.eval(1));
    let v = sp_member(&x, &w, &Config::default()).unwrap();
    let witness = v.witness().expect("in");
    let mut placed: Vec<(usize, u64)> = witness
        .factors
        .iter()
        .map(|f| match &f.source {
            Provenance::Term { index, .. } => (f.level.unwrap(), *index),
            other => panic!("{other:?}"),
        })
        .collect();
    placed.sort();
    assert_eq!(placed, vec![(0, 1), (1, 2)]);

    let r = product_scheme_split(&u, &u, &l, 0, 3, &Config::default()).unwrap();
    assert!(r.passed(), "{}", r.to_json());
    assert_eq!(r.target_depth, 1);
    assert_eq!((r.left.default.value(0), r.right.default.value(0)), (0, 1));
}
