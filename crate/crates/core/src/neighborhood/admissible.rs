//! Direct validation of a decomposition against an untruncated SP set.

use std::sync::Arc;

use crate::group::{GroupElement, GroupSpec};
use crate::sequence::SequenceSpec;
use crate::scheme::SchemeFamily;

use super::verdict::{Factor, Provenance, Witness};
use super::NeighborhoodExpr;

/// The untruncated SP set of one scheme, used as the target of inclusions.
pub(crate) struct Target<'a> {
    pub group: &'a GroupSpec,
    pub family: &'a [Arc<SequenceSpec>],
    pub schemes: &'a SchemeFamily,
    pub depth: u64,
}

impl Target<'_> {
    /// Why `w` fails to place `x` in this set, if it does.
    pub fn reject(&self, w: &Witness, x: &GroupElement) -> Option<String> {
        if !w.verifies(self.group, x) {
            return Some("factors do not recombine".into());
        }
        let mut used = 0u128;
        for f in &w.factors {
            let Some(level) = f.level else {
                return Some("factor without a level".into());
            };
            if level as u64 > self.depth || level >= 128 {
                return Some(format!("level {level} beyond depth {}", self.depth));
            }
            if used & (1 << level) != 0 {
                return Some(format!("level {level} used twice"));
            }
            used |= 1 << level;
            if let Some(why) = self.reject_factor(f, level as u64) {
                return Some(why);
            }
        }
        None
    }

    fn reject_factor(&self, f: &Factor, level: u64) -> Option<String> {
        let Provenance::Term {
            sequence,
            index,
            exponent,
            conjugator,
        } = &f.source
        else {
            return Some("factor is not a sequence term".into());
        };
        let Some(seq) = self.family.iter().find(|s| &s.id == sequence) else {
            return Some(format!("sequence `{sequence}` is not in the family"));
        };
        let e = self.group.identity();
        let g = conjugator.as_ref().unwrap_or(&e);
        let start = if self.group.is_abelian() {
            self.schemes.min_over_conjugators(sequence).value(level)
        } else {
            self.schemes.value(level, sequence, g)
        };
        if *index < start {
            return Some(format!("`{sequence}` index {index} below start {start} at level {level}"));
        }
        let term = seq.eval(*index).signed(*exponent).conjugated_by(g);
        (term != f.value).then(|| format!("factor {} is not the recorded term", f.value))
    }

    pub fn expr(&self, conjugators: &[GroupElement]) -> NeighborhoodExpr {
        NeighborhoodExpr::sp_product(self.family.to_vec(), self.schemes.clone(), self.depth, conjugators.to_vec())
    }
}

