use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::json;
use crate::sequence::{interleave_finite, SequenceSpec};

#[derive(Debug, Clone)]
pub struct BlockReport {
    pub q: usize,
    /// Observed support of each sequence over the probed prefix.
    pub blocks: Vec<(String, BTreeSet<u64>)>,
    pub interleaved: String,
    /// Every probed interleaved term lies in the first `q` blocks.
    pub inside: bool,
    /// Every probed term of sequence `q` avoids those blocks; `None` when no
    /// such sequence was supplied.
    pub outside: Option<bool>,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.inside && self.outside != Some(false)
    }

    pub fn to_json(&self) -> Value {
        let blocks = self
            .blocks
            .iter()
            .map(|(id, b)| {
                json::obj([
                    ("sequence", Value::from(id.clone())),
                    ("support", Value::from(b.iter().copied().collect::<Vec<_>>())),
                ])
            })
            .collect();
        json::obj([
            ("q", Value::from(self.q)),
            ("blocks", Value::Array(blocks)),
            ("interleaved", Value::from(self.interleaved.clone())),
            ("inside", Value::from(self.inside)),
            ("outside", self.outside.map(Value::from).unwrap_or(Value::Null)),
            ("passed", Value::from(self.passed())),
        ])
    }
}

fn support(x: &GroupElement) -> BTreeSet<u64> {
    match x {
        GroupElement::Vector(v) => v.support().collect(),
        _ => BTreeSet::new(),
    }
}

/// Interleaves the first `q` sequences and checks, on `probe` terms per
/// sequence, that the result stays inside their blocks while sequence `q`
/// stays outside. Sequences must live on pairwise disjoint coordinates.
pub fn direct_sum_blocks(q: usize, seqs: &[Arc<SequenceSpec>], probe: u64) -> Result<BlockReport> {
    if q == 0 || q > seqs.len() {
        return Err(Error::InvalidInput(format!(
            "q = {q} needs between 1 and {} sequences",
            seqs.len()
        )));
    }
    let mut blocks: Vec<(String, BTreeSet<u64>)> = Vec::new();
    for s in seqs {
        if s.group != GroupSpec::IntVec {
            return Err(Error::KindMismatch(format!(
                "`{}` lives in {}, blocks need integer vectors",
                s.id, s.group
            )));
        }
        let b: BTreeSet<u64> = s.prefix(probe).iter().flat_map(support).collect();
        if let Some((other, _)) = blocks.iter().find(|(_, o)| !o.is_disjoint(&b)) {
            return Err(Error::KindMismatch(format!(
                "`{}` and `{other}` share coordinates",
                s.id
            )));
        }
        blocks.push((s.id.clone(), b));
    }
    let first: BTreeSet<u64> = blocks[..q].iter().flat_map(|(_, b)| b.iter().copied()).collect();
    let d = interleave_finite(&seqs[..q])?;
    let inside = (0..probe * q as u64).all(|n| support(&d.eval(n)).is_subset(&first));
    let outside = seqs
        .get(q)
        .map(|next| (0..probe).all(|n| support(&next.eval(n)).is_disjoint(&first)));
    Ok(BlockReport {
        q,
        blocks,
        interleaved: d.id,
        inside,
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Generator;

    fn on(coordinate: u64) -> Arc<SequenceSpec> {
        let inner = Arc::new(SequenceSpec::geometric("two", 2, 0).unwrap());
        let id = format!("two@{coordinate}");
        Arc::new(SequenceSpec::new(id, GroupSpec::IntVec, Generator::Embed { inner, coordinate }).unwrap())
    }

    #[test]
    fn later_blocks_are_missed() {
        let r = direct_sum_blocks(2, &[on(1), on(2), on(3)], 10).unwrap();
        assert!(r.passed());
        assert_eq!(r.outside, Some(true));
        let r = direct_sum_blocks(1, &[on(1)], 10).unwrap();
        assert!(r.passed());
        assert_eq!(r.outside, None);
    }

    #[test]
    fn overlapping_blocks() {
        assert!(matches!(
            direct_sum_blocks(1, &[on(1), on(1)], 5),
            Err(Error::KindMismatch(_))
        ));
    }
}
