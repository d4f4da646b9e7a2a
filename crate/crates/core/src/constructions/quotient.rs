use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::sequence::SequenceSpec;

/// Sends the `i`-th free generator `e_i` to the `i`-th term `u_{i-1}` and
/// extends multiplicatively.
///
/// Free words are substituted letter by letter and reduced in the target.
/// Integer vectors go to `Σ c_i·u_i`, which needs an abelian target.
pub fn quotient_apply(word: &GroupElement, target: &SequenceSpec) -> Result<GroupElement> {
    let group = &target.group;
    match word {
        GroupElement::Word(w) => {
            let terms: Vec<GroupElement> = w
                .letters()
                .iter()
                .map(|l| target.eval(l.index - 1).signed(l.exponent))
                .collect();
            group.product_of(terms.iter())
        }
        GroupElement::Vector(v) => {
            if !group.is_abelian() {
                return Err(Error::KindMismatch(format!(
                    "coefficient vectors need an abelian target, `{}` lives in {}",
                    target.id, group
                )));
            }
            let terms = v
                .iter()
                .map(|(i, c)| group.pow(&target.eval(i - 1), c))
                .collect::<Result<Vec<_>>>()?;
            group.product_of(terms.iter())
        }
        other => Err(Error::KindMismatch(format!(
            "{other} is neither a free word nor a coefficient vector"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn coefficients_against_powers_of_two() {
        let geo = SequenceSpec::geometric("geo2", 2, 1).unwrap();
        let x = GroupElement::vector([(1, 3), (3, 1)]);
        assert_eq!(quotient_apply(&x, &geo).unwrap(), GroupElement::int(14));
    }

    #[test]
    fn letters_substitute() {
        let x = SequenceSpec::free_letters("x");
        let w = GroupElement::word(&[(1, 1), (2, -1), (1, 1)]);
        // the target's i-th term is the letter x_i, so substitution is the identity map
        assert_eq!(quotient_apply(&w, &x).unwrap(), w);
        let e = GroupElement::word(&[]);
        assert!(quotient_apply(&e, &x).unwrap().is_identity());
    }

    #[test]
    fn vectors_need_abelian_targets() {
        let x = SequenceSpec::free_letters("x");
        let v = GroupElement::vector([(1, 1)]);
        assert!(matches!(quotient_apply(&v, &x), Err(Error::KindMismatch(_))));
        assert!(matches!(quotient_apply(&GroupElement::int(1), &x), Err(Error::KindMismatch(_))));
    }

    fn arb_word() -> impl Strategy<Value = GroupElement> {
        proptest::collection::vec((1u64..6, prop_oneof![Just(1i8), Just(-1i8)]), 0..8)
            .prop_map(|p| GroupElement::word(&p))
    }

    proptest! {
        #[test]
        fn free_words_into_integers(a in arb_word(), b in arb_word()) {
            let geo = SequenceSpec::geometric("geo3", 3, 0).unwrap();
            let lhs = quotient_apply(&a.mul(&b), &geo).unwrap();
            let rhs = quotient_apply(&a, &geo).unwrap().mul(&quotient_apply(&b, &geo).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
