//! Decomposition search over level problems.
//!
//! Both searches deepen iteratively on the number of nonidentity picks, so
//! the first decomposition found uses as few terms as possible; ties go to
//! the lexicographically smallest (index, source, sign) keys.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::group::GroupElement;

use super::levels::{Candidate, LevelProblem, Order};
use super::verdict::{Factor, Witness};

/// Shared node accounting.
pub(crate) struct Budget {
    pub cap: u64,
    pub nodes: u64,
}

impl Budget {
    pub fn new(cap: u64) -> Self {
        Budget { cap, nodes: 0 }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(Error::BudgetExceeded(format!(
                "search exceeded {} nodes",
                self.cap
            )));
        }
        Ok(())
    }
}

pub(crate) fn norm_u128(x: &GroupElement) -> u128 {
    x.norm().to_u128().unwrap_or(u128::MAX)
}

/// Values the commutative search adds and subtracts.
trait Additive: Clone + Eq + Hash {
    fn minus(&self, other: &Self) -> Self;
    fn size(&self) -> u128;
    fn zero(&self) -> bool;
}

impl Additive for i128 {
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn size(&self) -> u128 {
        self.unsigned_abs()
    }
    fn zero(&self) -> bool {
        *self == 0
    }
}

impl Additive for GroupElement {
    fn minus(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }
    fn size(&self) -> u128 {
        norm_u128(self)
    }
    fn zero(&self) -> bool {
        self.is_identity()
    }
}

/// Finds a multiset of at most `levels` candidates summing to `x` that can
/// be assigned to distinct admitting levels.
pub(crate) fn search_commutative(
    problem: &LevelProblem,
    cands: &[Candidate],
    x: &GroupElement,
    budget: &mut Budget,
) -> Result<Option<Witness>> {
    if x.is_identity() {
        return Ok(Some(Witness::empty()));
    }
    if cands.is_empty() {
        return Ok(None);
    }
    let small = |v: &GroupElement| match v {
        GroupElement::Int(n) => n.to_i64().filter(|n| n.unsigned_abs() < 1 << 56),
        _ => None,
    };
    let fits = small(x).is_some() && cands.iter().all(|c| small(&c.value).is_some());
    let picks = if fits {
        let vals: Vec<i128> = cands.iter().map(|c| small(&c.value).unwrap() as i128).collect();
        CommSearch::new(problem, cands, vals, budget).run(small(x).unwrap() as i128)?
    } else {
        let vals: Vec<GroupElement> = cands.iter().map(|c| c.value.clone()).collect();
        CommSearch::new(problem, cands, vals, budget).run(x.clone())?
    };
    Ok(picks.map(|assigned| {
        let mut factors: Vec<Factor> = assigned
            .into_iter()
            .map(|(i, level)| {
                let c = &cands[i];
                let src = &problem.levels[c.level_source.0].sources[c.level_source.1];
                Factor {
                    value: c.value.clone(),
                    level: Some(level),
                    source: src.provenance(c.index, c.sign),
                }
            })
            .collect();
        factors.sort_by_key(|f| f.level);
        Witness { factors }
    }))
}

struct CommSearch<'a, V> {
    masks: Vec<u64>,
    vals: Vec<V>,
    prefmax: Vec<u128>,
    by_value: HashMap<V, Vec<usize>>,
    levels: usize,
    identical: bool,
    chosen: Vec<usize>,
    budget: &'a mut Budget,
}

impl<'a, V: Additive> CommSearch<'a, V> {
    fn new(problem: &LevelProblem, cands: &[Candidate], vals: Vec<V>, budget: &'a mut Budget) -> Self {
        let mut prefmax = Vec::with_capacity(vals.len());
        let mut best = 0u128;
        for v in &vals {
            best = best.max(v.size());
            prefmax.push(best);
        }
        let mut by_value: HashMap<V, Vec<usize>> = HashMap::new();
        for (i, v) in vals.iter().enumerate() {
            by_value.entry(v.clone()).or_default().push(i);
        }
        CommSearch {
            masks: cands.iter().map(|c| c.mask).collect(),
            vals,
            prefmax,
            by_value,
            levels: problem.levels.len(),
            identical: problem.all_identical(),
            chosen: Vec::new(),
            budget,
        }
    }

    /// Returns `(candidate, level)` pairs.
    fn run(mut self, x: V) -> Result<Option<Vec<(usize, usize)>>> {
        let last = self.vals.len() - 1;
        for count in 1..=self.levels {
            if self.dfs(&x, count, last)? {
                let mut chosen = self.chosen.clone();
                chosen.sort_unstable();
                let levels = if self.identical {
                    (0..chosen.len()).collect()
                } else {
                    self.assignment(&chosen).expect("feasibility was checked")
                };
                return Ok(Some(chosen.into_iter().zip(levels).collect()));
            }
        }
        Ok(None)
    }

    fn dfs(&mut self, y: &V, remaining: usize, limit: usize) -> Result<bool> {
        if y.size() > (remaining as u128).saturating_mul(self.prefmax[limit]) {
            return Ok(false);
        }
        if remaining == 1 {
            let Some(list) = self.by_value.get(y) else {
                return Ok(false);
            };
            for &i in list.clone().iter().take_while(|&&i| i <= limit) {
                self.budget.tick()?;
                self.chosen.push(i);
                if self.feasible() {
                    return Ok(true);
                }
                self.chosen.pop();
            }
            return Ok(false);
        }
        for i in 0..=limit {
            self.budget.tick()?;
            let rest = y.minus(&self.vals[i]);
            // A zero remainder would need further picks cancelling to zero;
            // a shorter decomposition was already ruled out.
            if rest.zero() || rest.size() > ((remaining - 1) as u128).saturating_mul(self.prefmax[i]) {
                continue;
            }
            self.chosen.push(i);
            if self.feasible() && self.dfs(&rest, remaining - 1, i)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }

    fn feasible(&self) -> bool {
        self.identical || self.assignment(&self.chosen).is_some()
    }

    fn assignment(&self, chosen: &[usize]) -> Option<Vec<usize>> {
        let masks: Vec<u64> = chosen.iter().map(|&i| self.masks[i]).collect();
        assign_levels(&masks, self.levels)
    }
}

/// Bipartite matching of items (admitting-level masks) to distinct levels.
pub(crate) fn assign_levels(masks: &[u64], levels: usize) -> Option<Vec<usize>> {
    fn augment(item: usize, masks: &[u64], owner: &mut [Option<usize>], seen: &mut u64, levels: usize) -> bool {
        for l in 0..levels {
            if masks[item] & (1 << l) == 0 || *seen & (1 << l) != 0 {
                continue;
            }
            *seen |= 1 << l;
            if owner[l].is_none_or(|other| augment(other, masks, owner, seen, levels)) {
                owner[l] = Some(item);
                return true;
            }
        }
        false
    }
    if masks.len() > levels {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; levels];
    for item in 0..masks.len() {
        let mut seen = 0u64;
        if !augment(item, masks, &mut owner, &mut seen, levels) {
            return None;
        }
    }
    let mut out = vec![0; masks.len()];
    for (l, o) in owner.iter().enumerate() {
        if let Some(item) = o {
            out[*item] = l;
        }
    }
    Some(out)
}

/// Product search `x = f_0·f_1·⋯` with each factor from a distinct level,
/// in level order (`Order::Fixed`) or any order (`Order::Any`).
pub(crate) fn search_ordered(
    problem: &LevelProblem,
    per_level: &[Vec<Candidate>],
    x: &GroupElement,
    budget: &mut Budget,
) -> Result<Option<Witness>> {
    if x.is_identity() {
        return Ok(Some(Witness::empty()));
    }
    let maxnorm: Vec<u128> = per_level
        .iter()
        .map(|c| c.iter().map(|c| norm_u128(&c.value)).max().unwrap_or(0))
        .collect();
    let by_value: Vec<HashMap<GroupElement, usize>> = per_level
        .iter()
        .map(|cands| {
            let mut m = HashMap::new();
            for (i, c) in cands.iter().enumerate() {
                m.entry(c.value.clone()).or_insert(i);
            }
            m
        })
        .collect();
    let mut s = OrdSearch {
        problem,
        per_level,
        maxnorm,
        by_value,
        stack: Vec::new(),
        budget,
    };
    for count in 1..=problem.levels.len() {
        if s.dfs(x, count, 0, None)? {
            let factors = s
                .stack
                .iter()
                .map(|&(l, i)| {
                    let c = &per_level[l][i];
                    let src = &problem.levels[l].sources[c.level_source.1];
                    Factor {
                        value: c.value.clone(),
                        level: Some(l),
                        source: src.provenance(c.index, c.sign),
                    }
                })
                .collect();
            return Ok(Some(Witness { factors }));
        }
    }
    Ok(None)
}

struct OrdSearch<'a> {
    problem: &'a LevelProblem,
    per_level: &'a [Vec<Candidate>],
    maxnorm: Vec<u128>,
    by_value: Vec<HashMap<GroupElement, usize>>,
    stack: Vec<(usize, usize)>,
    budget: &'a mut Budget,
}

impl OrdSearch<'_> {
    fn available(&self, used: u64, last: Option<usize>) -> Vec<usize> {
        let n = self.problem.levels.len();
        match self.problem.order {
            Order::Fixed | Order::Commutative => (last.map_or(0, |l| l + 1)..n).collect(),
            Order::Any => (0..n)
                .filter(|&l| used & (1 << l) == 0)
                .filter(|&l| {
                    // Among identical levels, always take the lowest unused.
                    let c = self.problem.class[l];
                    !(0..l).any(|p| self.problem.class[p] == c && used & (1 << p) == 0)
                })
                .collect(),
        }
    }

    fn dfs(&mut self, y: &GroupElement, remaining: usize, used: u64, last: Option<usize>) -> Result<bool> {
        let avail = self.available(used, last);
        let mut caps: Vec<u128> = avail.iter().map(|&l| self.maxnorm[l]).collect();
        caps.sort_unstable_by(|a, b| b.cmp(a));
        let reach = caps.iter().take(remaining).fold(0u128, |s, &c| s.saturating_add(c));
        if norm_u128(y) > reach {
            return Ok(false);
        }
        if remaining == 1 {
            for &l in &avail {
                self.budget.tick()?;
                if let Some(&i) = self.by_value[l].get(y) {
                    self.stack.push((l, i));
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        for &l in &avail {
            for i in 0..self.per_level[l].len() {
                self.budget.tick()?;
                let f = &self.per_level[l][i].value;
                let rest = f.inverse().mul(y);
                if rest.is_identity() {
                    continue;
                }
                self.stack.push((l, i));
                if self.dfs(&rest, remaining - 1, used | (1 << l), Some(l))? {
                    return Ok(true);
                }
                self.stack.pop();
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_respects_masks() {
        // Item 0 only fits level 0; item 1 fits levels 0 and 1.
        assert_eq!(assign_levels(&[0b01, 0b11], 2), Some(vec![0, 1]));
        assert_eq!(assign_levels(&[0b11, 0b01], 2), Some(vec![1, 0]));
        assert_eq!(assign_levels(&[0b01, 0b01], 2), None);
        assert_eq!(assign_levels(&[0b1, 0b1, 0b1], 2), None);
    }
}
