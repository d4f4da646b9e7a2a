use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::sequence::SequenceSpec;

use super::config::Config;
use super::enumerate::enumerate_truncation;
use super::member::member;
use super::NeighborhoodExpr;

/// Tail depth used to propose translates `x − a`.
const PROPOSAL_DEPTH: u64 = 4;

/// Finds at most `max_translates` elements `g_i` with `K ⊆ ⋃ (g_i + A(n,0))`.
///
/// Candidates are `x − a` for `x ∈ K` and `a` in a truncation of `A(n,0)`;
/// coverage is confirmed through [`member`]. Greedy first, then an exhaustive
/// search over the candidates when greedy needs too many.
pub fn cover_by_translates(
    k: &[GroupElement],
    seq: &Arc<SequenceSpec>,
    n: u64,
    max_translates: usize,
    cfg: &Config,
) -> Result<Option<Vec<GroupElement>>> {
    if !seq.is_abelian() {
        return Err(Error::KindMismatch(format!(
            "translates need an abelian carrier, `{}` lives in {}",
            seq.id, seq.group
        )));
    }
    for x in k {
        seq.group.check(x)?;
    }
    let targets: Vec<GroupElement> = k.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if targets.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let set = NeighborhoodExpr::sum_repeat(seq.clone(), n, 0);
    let near = enumerate_truncation(&set, PROPOSAL_DEPTH.min(cfg.index_cap), cfg)?;
    let mut pool: BTreeSet<GroupElement> = BTreeSet::from([seq.group.identity()]);
    for x in &targets {
        for a in &near {
            pool.insert(x.mul(&a.inverse()));
        }
    }
    if pool.len().saturating_mul(targets.len()) > cfg.element_cap {
        return Err(Error::BudgetExceeded(format!(
            "{} candidate translates for {} points",
            pool.len(),
            targets.len()
        )));
    }
    let pool: Vec<GroupElement> = pool.into_iter().collect();
    let mut covers: Vec<Vec<bool>> = Vec::with_capacity(pool.len());
    for g in &pool {
        let mut row = Vec::with_capacity(targets.len());
        for x in &targets {
            row.push(member(&x.mul(&g.inverse()), &set, cfg)?.is_in());
        }
        covers.push(row);
    }

    let greedy = greedy_cover(&covers, targets.len());
    if let Some(chosen) = &greedy {
        if chosen.len() <= max_translates {
            return Ok(Some(chosen.iter().map(|&i| pool[i].clone()).collect()));
        }
    }
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    let found = exact_cover(&covers, &mut vec![false; targets.len()], max_translates, &mut chosen, &mut nodes, cfg.node_cap)?;
    Ok(found.then(|| chosen.iter().map(|&i| pool[i].clone()).collect()))
}

fn greedy_cover(covers: &[Vec<bool>], n: usize) -> Option<Vec<usize>> {
    let mut covered = vec![false; n];
    let mut chosen = Vec::new();
    while covered.iter().any(|c| !c) {
        let gain = |row: &Vec<bool>| row.iter().zip(&covered).filter(|(r, c)| **r && !**c).count();
        let (best, count) = covers
            .iter()
            .enumerate()
            .map(|(i, row)| (i, gain(row)))
            .fold((0, 0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if count == 0 {
            return None;
        }
        chosen.push(best);
        for (c, r) in covered.iter_mut().zip(&covers[best]) {
            *c |= *r;
        }
    }
    Some(chosen)
}

fn exact_cover(
    covers: &[Vec<bool>],
    covered: &mut Vec<bool>,
    left: usize,
    chosen: &mut Vec<usize>,
    nodes: &mut u64,
    node_cap: u64,
) -> Result<bool> {
    let Some(first) = covered.iter().position(|c| !c) else {
        return Ok(true);
    };
    if left == 0 {
        return Ok(false);
    }
    for (i, row) in covers.iter().enumerate() {
        if !row[first] {
            continue;
        }
        *nodes += 1;
        if *nodes > node_cap {
            return Err(Error::BudgetExceeded(format!("cover search exceeded {node_cap} nodes")));
        }
        let saved = covered.clone();
        for (c, r) in covered.iter_mut().zip(row) {
            *c |= *r;
        }
        chosen.push(i);
        if exact_cover(covers, covered, left - 1, chosen, nodes, node_cap)? {
            return Ok(true);
        }
        chosen.pop();
        *covered = saved;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_ball_needs_one_translate() {
        let e = Arc::new(SequenceSpec::basis_vectors("e"));
        let k = vec![
            GroupElement::vector::<i64>([]),
            GroupElement::vector([(1, 1)]),
            GroupElement::vector([(1, 1), (2, 1)]),
        ];
        let got = cover_by_translates(&k, &e, 2, 1, &Config::default()).unwrap().unwrap();
        assert_eq!(got.len(), 1);
    }

    #[test]
    fn powers_of_two_sit_in_the_tail() {
        let geo = Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap());
        let k: Vec<_> = (0..10).map(|a| GroupElement::int(1i64 << a)).collect();
        let got = cover_by_translates(&k, &geo, 0, 1, &Config::default()).unwrap().unwrap();
        assert_eq!(got, vec![GroupElement::int(0)]);
    }

    #[test]
    fn too_few_translates() {
        let e = Arc::new(SequenceSpec::basis_vectors("e"));
        let k = vec![GroupElement::vector([(1, 5)]), GroupElement::vector([(1, -5)])];
        assert_eq!(cover_by_translates(&k, &e, 0, 1, &Config::default()).unwrap(), None);
        assert!(cover_by_translates(&k, &e, 0, 2, &Config::default()).unwrap().is_some());
    }
}
