//! Finite models of the structural maps built from T-sequences.

mod fan;
mod product;
mod quotient;

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::Result;
use crate::group::GroupElement;
use crate::neighborhood::{enumerate_hemicompact, hemicompact_member, Config, Verdict};
use crate::sequence::SequenceSpec;

pub use fan::{
    beta_from_schemes, fan_member, fan_points, fan_projection_check, FanFamily, FanNeighborhood, FanPoint,
    FanProjectionReport,
};
pub use product::{product_scheme_split, ProductSplitReport};
pub use quotient::quotient_apply;

/// Decides `x ∈ K_n ⋯ K_n` (`n+1` factors), where `K_n` is the union of the
/// signed tails of the first `n+1` sequences of `family`.
pub fn hemicompact_fragment(family: &[Arc<SequenceSpec>], n: u64, x: &GroupElement, cfg: &Config) -> Result<Verdict> {
    hemicompact_member(family, n, x, cfg)
}

/// The same set with every tail cut at `tail_depth`.
pub fn hemicompact_truncation(
    family: &[Arc<SequenceSpec>],
    n: u64,
    tail_depth: u64,
    cfg: &Config,
) -> Result<BTreeSet<GroupElement>> {
    Ok(enumerate_hemicompact(family, n, tail_depth, cfg)?.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::sequence::Generator;

    #[test]
    fn fragments_grow() {
        let e = Arc::new(SequenceSpec::basis_vectors("e"));
        let inner = Arc::new(SequenceSpec::geometric("g", 2, 0).unwrap());
        let embed = Generator::Embed { inner, coordinate: 1 };
        let g = Arc::new(SequenceSpec::new("g1", GroupSpec::IntVec, embed).unwrap());
        let fam = vec![e, g];
        let cfg = Config::default();
        let mut prev = hemicompact_truncation(&fam, 0, 3, &cfg).unwrap();
        for n in 1..=2 {
            let next = hemicompact_truncation(&fam, n, 3, &cfg).unwrap();
            assert!(prev.is_subset(&next));
            prev = next;
        }
    }

    #[test]
    fn fragment_examples() {
        let e = vec![Arc::new(SequenceSpec::basis_vectors("e"))];
        let cfg = Config::default();
        assert!(hemicompact_fragment(&e, 3, &GroupElement::vector::<i64>([]), &cfg).unwrap().is_in());
        let v = hemicompact_fragment(&e, 1, &GroupElement::vector([(1, 1), (2, 1)]), &cfg).unwrap();
        assert_eq!(v.witness().unwrap().factors.len(), 2);
        let far = hemicompact_fragment(&e, 1, &GroupElement::vector([(1, 5)]), &cfg).unwrap();
        assert!(far.is_exact_not_in());
    }
}
