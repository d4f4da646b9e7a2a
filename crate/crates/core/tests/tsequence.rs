use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use tseq::error::Error;
use tseq::group::GroupElement;
use tseq::neighborhood::Config;
use tseq::scheme::{IndexScheme, SchemeFamily};
use tseq::sequence::SequenceSpec;
use tseq::tsequence::{
    check_base_axiom_inclusions, check_tsequence_certificate, separation_witness, AxiomOptions, TSequenceCheck,
};

fn int(x: &GroupElement) -> BigInt {
    match x {
        GroupElement::Int(v) => v.clone(),
        other => panic!("{other} is not an integer"),
    }
}

/// Sums with at most one signed term per level `l ≤ depth`, drawn from
/// indices `scheme(l)..scheme(l)+window`.
fn prefix_sums(seq: &SequenceSpec, scheme: &IndexScheme, depth: u64, window: u64) -> BTreeSet<BigInt> {
    let mut sums = BTreeSet::from([BigInt::from(0)]);
    for l in 0..=depth {
        let s = scheme.value(l);
        let mut next = sums.clone();
        for n in s..s + window {
            let u = int(&seq.eval(n));
            for a in &sums {
                next.insert(a + &u);
                next.insert(a - &u);
            }
        }
        sums = next;
    }
    sums
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_avoid_their_target(base in 3i64..8, x in -500i64..500, depth in 0u64..3) {
        prop_assume!(x != 0);
        let seq = Arc::new(SequenceSpec::geometric("g", base, 0).unwrap().with_ratio(base, 0).unwrap());
        let r = separation_witness(&GroupElement::int(x), &seq, depth, &Config::default()).unwrap();
        prop_assert_eq!(r.trace.len() as u64, depth + 1);
        for entry in &r.trace {
            prop_assert!(entry.verdict.is_exact_not_in());
            prop_assert!(!prefix_sums(&seq, &r.scheme, entry.depth, 6).contains(&BigInt::from(x)));
        }
        if base as u64 > depth + 1 {
            prop_assert!(r.closed_form.is_some());
        }
    }
}

#[test]
fn identity_has_no_witness() {
    let seq = Arc::new(SequenceSpec::geometric("g", 10, 0).unwrap().with_ratio(10, 0).unwrap());
    assert!(matches!(
        separation_witness(&GroupElement::int(0), &seq, 2, &Config::default()),
        Err(Error::IdentityTarget)
    ));
}

#[test]
fn certificates_are_required() {
    let seq = Arc::new(SequenceSpec::geometric("g", 10, 0).unwrap());
    assert!(matches!(
        separation_witness(&GroupElement::int(3), &seq, 2, &Config::default()),
        Err(Error::NoCertificate(_))
    ));
}

#[test]
fn powers_of_ten_certify() {
    let seq = Arc::new(SequenceSpec::geometric("g", 10, 0).unwrap().with_ratio(10, 0).unwrap());
    match check_tsequence_certificate(&seq, 50, &Config::default()) {
        TSequenceCheck::CertifiedSeparated { samples, .. } => assert_eq!(samples.len(), 100),
        TSequenceCheck::Unknown { reason } => panic!("{reason}"),
    }
}

#[test]
fn finite_tables_are_unknown() {
    let seq = Arc::new(SequenceSpec::int_table("t", &[1, 2, 3]));
    assert!(matches!(
        check_tsequence_certificate(&seq, 10, &Config::default()),
        TSequenceCheck::Unknown { .. }
    ));
}

#[test]
fn free_letters_satisfy_the_axioms() {
    let x = Arc::new(SequenceSpec::free_letters("x"));
    let schemes = SchemeFamily::uniform(IndexScheme::from_start(0));
    let r = check_base_axiom_inclusions(&[x], &schemes, 1, 2, &AxiomOptions::default(), &Config::default()).unwrap();
    assert!(r.all_passed(), "{}", r.to_json());
}

#[test]
fn basis_axioms_with_a_shifted_scheme() {
    let e = Arc::new(SequenceSpec::basis_vectors("e"));
    let schemes = SchemeFamily::uniform(IndexScheme::from_prefix(vec![1, 3, 4]).unwrap());
    let r = check_base_axiom_inclusions(&[e], &schemes, 1, 3, &AxiomOptions::default(), &Config::default()).unwrap();
    assert!(r.all_passed(), "{}", r.to_json());
}
