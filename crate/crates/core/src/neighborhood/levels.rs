//! Lowering of tail-based expressions to a list of levels.
//!
//! Every tail-based set has the same shape: a product (or sum) of at most one
//! element from each of finitely many levels, where a level is a union of
//! conjugated tails `g⁻¹·{e, u_n^{±1} : n ≥ start}·g`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::sequence::SequenceSpec;

use super::config::Config;
use super::verdict::Provenance;
use super::NeighborhoodExpr;

#[derive(Debug, Clone)]
pub(crate) struct Source {
    pub seq: Arc<SequenceSpec>,
    pub conjugator: Option<GroupElement>,
    pub start: u64,
}

impl Source {
    /// `(g⁻¹·u_index·g)^sign`.
    pub fn term(&self, index: u64, sign: i8) -> GroupElement {
        let u = self.seq.eval(index).signed(sign);
        match &self.conjugator {
            Some(g) => u.conjugated_by(g),
            None => u,
        }
    }

    pub fn provenance(&self, index: u64, sign: i8) -> Provenance {
        Provenance::Term {
            sequence: self.seq.id.clone(),
            index,
            exponent: sign,
            conjugator: self.conjugator.clone(),
        }
    }

    fn same_tail(&self, other: &Source) -> bool {
        self.seq.id == other.seq.id && self.conjugator == other.conjugator && self.start == other.start
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Level {
    pub sources: Vec<Source>,
}

impl Level {
    fn same_as(&self, other: &Level) -> bool {
        self.sources.len() == other.sources.len()
            && self.sources.iter().zip(&other.sources).all(|(a, b)| a.same_tail(b))
    }
}

/// How the picks from the levels combine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Order {
    /// Abelian carrier: a sum, order irrelevant.
    Commutative,
    /// Product in level order.
    Fixed,
    /// Product of picks from distinct levels in any order.
    Any,
}

#[derive(Debug, Clone)]
pub(crate) struct LevelProblem {
    pub group: GroupSpec,
    pub levels: Vec<Level>,
    pub order: Order,
    /// `class[l]` is the least level identical to level `l`.
    pub class: Vec<usize>,
}

impl LevelProblem {
    pub fn new(group: GroupSpec, levels: Vec<Level>, order: Order, cfg: &Config) -> Result<Self> {
        if levels.len() > cfg.level_cap {
            return Err(Error::BudgetExceeded(format!(
                "{} levels exceed the level cap {}",
                levels.len(),
                cfg.level_cap
            )));
        }
        let order = if group.is_abelian() { Order::Commutative } else { order };
        let class = (0..levels.len())
            .map(|l| (0..=l).find(|&p| levels[p].same_as(&levels[l])).unwrap_or(l))
            .collect();
        Ok(LevelProblem {
            group,
            levels,
            order,
            class,
        })
    }

    pub fn all_identical(&self) -> bool {
        self.class.iter().all(|&c| c == 0)
    }

    /// The single sequence feeding every level, if there is one.
    pub fn uniform_sequence(&self) -> Option<&Arc<SequenceSpec>> {
        let first = &self.levels.first()?.sources.first()?.seq;
        let uniform = self
            .levels
            .iter()
            .flat_map(|l| &l.sources)
            .all(|s| s.seq.id == first.id && s.conjugator.is_none());
        uniform.then_some(first)
    }

    pub fn min_start(&self) -> u64 {
        self.levels
            .iter()
            .flat_map(|l| &l.sources)
            .map(|s| s.start)
            .min()
            .unwrap_or(0)
    }
}

/// Lowers tail-based expressions; other node kinds return `None`.
pub(crate) fn lower(expr: &NeighborhoodExpr, cfg: &Config) -> Result<Option<LevelProblem>> {
    let plain = |seq: &Arc<SequenceSpec>, start: u64| Source {
        seq: seq.clone(),
        conjugator: None,
        start,
    };
    let problem = match expr {
        NeighborhoodExpr::Tail { seq, m } => LevelProblem::new(
            seq.group.clone(),
            vec![Level {
                sources: vec![plain(seq, *m)],
            }],
            Order::Fixed,
            cfg,
        )?,
        NeighborhoodExpr::SumRepeat { seq, k, m } => {
            let count = level_count(*k, cfg)?;
            let levels = (0..count)
                .map(|_| Level {
                    sources: vec![plain(seq, *m)],
                })
                .collect();
            LevelProblem::new(seq.group.clone(), levels, Order::Fixed, cfg)?
        }
        NeighborhoodExpr::SumPrefix {
            family,
            schemes,
            depth,
        } => {
            let group = family_group(family)?;
            let count = level_count(*depth, cfg)?;
            let abelian = group.is_abelian();
            let per_seq: Vec<_> = family
                .iter()
                .map(|s| {
                    if abelian {
                        schemes.min_over_conjugators(&s.id)
                    } else {
                        schemes.lookup(&s.id, &group.identity()).clone()
                    }
                })
                .collect();
            let levels = (0..count as u64)
                .map(|k| Level {
                    sources: family
                        .iter()
                        .zip(&per_seq)
                        .map(|(s, sch)| plain(s, sch.value(k)))
                        .collect(),
                })
                .collect();
            LevelProblem::new(group, levels, Order::Fixed, cfg)?
        }
        NeighborhoodExpr::SpProduct {
            family,
            schemes,
            depth,
            conjugators,
        } => {
            let group = family_group(family)?;
            if group.is_abelian() {
                // Conjugation is trivial, so each level collapses to the
                // minimal start over all conjugators.
                let collapsed = NeighborhoodExpr::SumPrefix {
                    family: family.clone(),
                    schemes: schemes.clone(),
                    depth: *depth,
                };
                return lower(&collapsed, cfg);
            }
            let count = level_count(*depth, cfg)?;
            let e = group.identity();
            let mut conj: Vec<GroupElement> = vec![e.clone()];
            for g in conjugators {
                group.check(g)?;
                if !conj.contains(g) {
                    conj.push(g.clone());
                }
            }
            let levels = (0..count as u64)
                .map(|k| Level {
                    sources: family
                        .iter()
                        .flat_map(|s| {
                            conj.iter().map(move |g| (s, g))
                        })
                        .map(|(s, g)| Source {
                            seq: s.clone(),
                            conjugator: (!g.is_identity()).then(|| g.clone()),
                            start: schemes.value(k, &s.id, g),
                        })
                        .collect(),
                })
                .collect();
            LevelProblem::new(group, levels, Order::Any, cfg)?
        }
        _ => return Ok(None),
    };
    Ok(Some(problem))
}

/// `n+1` identical levels, each the union of the first `min(n+1, |S|)`
/// tails from index 0.
pub(crate) fn hemicompact_levels(family: &[Arc<SequenceSpec>], n: u64, cfg: &Config) -> Result<LevelProblem> {
    let group = family_group(family)?;
    let used = family.len().min(usize::try_from(n + 1).unwrap_or(usize::MAX));
    let count = level_count(n, cfg)?;
    let level = Level {
        sources: family[..used]
            .iter()
            .map(|s| Source {
                seq: s.clone(),
                conjugator: None,
                start: 0,
            })
            .collect(),
    };
    LevelProblem::new(group, vec![level; count], Order::Fixed, cfg)
}

fn level_count(last: u64, cfg: &Config) -> Result<usize> {
    let count = usize::try_from(last).ok().and_then(|c| c.checked_add(1));
    match count {
        Some(c) if c <= cfg.level_cap => Ok(c),
        _ => Err(Error::BudgetExceeded(format!(
            "{} levels exceed the level cap {}",
            last as u128 + 1,
            cfg.level_cap
        ))),
    }
}

pub(crate) fn family_group(family: &[Arc<SequenceSpec>]) -> Result<GroupSpec> {
    let first = family
        .first()
        .ok_or_else(|| Error::InvalidInput("sequence family is empty".into()))?;
    for s in family {
        if s.group != first.group {
            return Err(Error::KindMismatch(format!(
                "family mixes {} (`{}`) and {} (`{}`)",
                first.group, first.id, s.group, s.id
            )));
        }
    }
    Ok(first.group.clone())
}

/// A sequence term offered to the search, with the levels that admit it.
#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub value: GroupElement,
    /// Bit `l` set when level `l` admits this term.
    pub mask: u64,
    pub source: usize,
    pub level_source: (usize, usize),
    pub index: u64,
    pub sign: i8,
}

/// Inclusive index window `[lo, hi]` per source, or `None` for an empty window.
pub(crate) type Window = dyn Fn(&Source) -> Option<(u64, u64)>;

/// Distinct terms over all levels, each once, with admitting levels as a
/// bitmask. Sorted by (index, source, sign), positive sign first.
pub(crate) fn commutative_candidates(problem: &LevelProblem, window: &Window) -> Vec<Candidate> {
    // Distinct (sequence, conjugator) pairs across levels.
    let mut keys: Vec<(String, Option<GroupElement>)> = Vec::new();
    let mut by_key: Vec<(usize, usize)> = Vec::new();
    for (l, level) in problem.levels.iter().enumerate() {
        for (s, src) in level.sources.iter().enumerate() {
            let key = (src.seq.id.clone(), src.conjugator.clone());
            if !keys.contains(&key) {
                keys.push(key);
                by_key.push((l, s));
            }
        }
    }
    let mut out = Vec::new();
    for (k, key) in keys.iter().enumerate() {
        // Union of windows over levels using this key.
        let mut spans: Vec<(usize, u64, u64)> = Vec::new();
        for (l, level) in problem.levels.iter().enumerate() {
            for src in &level.sources {
                if (src.seq.id.clone(), src.conjugator.clone()) == *key {
                    if let Some((lo, hi)) = window(src) {
                        spans.push((l, lo, hi));
                    }
                }
            }
        }
        let Some(lo) = spans.iter().map(|s| s.1).min() else { continue };
        let hi = spans.iter().map(|s| s.2).max().unwrap_or(lo);
        let (l0, s0) = by_key[k];
        let src = &problem.levels[l0].sources[s0];
        for index in lo..=hi {
            let mask = spans
                .iter()
                .filter(|(_, a, b)| *a <= index && index <= *b)
                .fold(0u64, |m, (l, _, _)| m | (1u64 << l));
            if mask == 0 {
                continue;
            }
            let u = src.term(index, 1);
            if u.is_identity() {
                continue;
            }
            for sign in [1i8, -1] {
                out.push(Candidate {
                    value: if sign > 0 { u.clone() } else { u.inverse() },
                    mask,
                    source: k,
                    level_source: (l0, s0),
                    index,
                    sign,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.index, c.source, -c.sign));
    out
}

/// Terms of one level inside its windows, sorted by (index, source, sign).
pub(crate) fn level_candidates(problem: &LevelProblem, l: usize, window: &Window) -> Vec<Candidate> {
    let mut out = Vec::new();
    for (s, src) in problem.levels[l].sources.iter().enumerate() {
        let Some((lo, hi)) = window(src) else { continue };
        for index in lo..=hi {
            let u = src.term(index, 1);
            if u.is_identity() {
                continue;
            }
            for sign in [1i8, -1] {
                out.push(Candidate {
                    value: if sign > 0 { u.clone() } else { u.inverse() },
                    mask: 1u64 << l,
                    source: s,
                    level_source: (l, s),
                    index,
                    sign,
                });
            }
        }
    }
    out.sort_by_key(|c| (c.index, c.source, -c.sign));
    // Two sources of one level may produce the same term; keep the first.
    let mut seen = std::collections::HashSet::new();
    out.retain(|c| seen.insert(c.value.clone()));
    out
}
