use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::sequence::SequenceSpec;

use super::config::Config;
use super::exact;
use super::levels::{self, LevelProblem, Order, Source};
use super::search::{search_commutative, search_ordered, Budget};
use super::verdict::{Certificate, Factor, Provenance, Rule, SearchBound, Side, Verdict, Witness};
use super::NeighborhoodExpr;

/// Largest index window an exact rule may ask the search to cover.
const EXACT_WINDOW_CAP: u64 = 100_000;

/// Decides `x ∈ expr`.
///
/// `In` always carries a decomposition that recombines to `x`. `NotIn` is
/// returned only when a bound argument makes the search exhaustive; otherwise
/// the answer is `NotInWithinBound`, or `UnsupportedExactDecision` in strict
/// mode.
pub fn member(x: &GroupElement, expr: &NeighborhoodExpr, cfg: &Config) -> Result<Verdict> {
    expr.group()?.check(x)?;
    let mut budget = Budget::new(cfg.node_cap);
    finish(decide(x, expr, cfg, &mut budget)?, cfg)
}

/// Decides membership in an SP product truncation, searching factorizations
/// `x = a_0·a_1·⋯·a_n` with the factors drawn from distinct levels in any order.
pub fn sp_member(x: &GroupElement, expr: &NeighborhoodExpr, cfg: &Config) -> Result<Verdict> {
    if !matches!(expr, NeighborhoodExpr::SpProduct { .. }) {
        return Err(Error::InvalidInput(format!("expected an SP product, got {expr}")));
    }
    member(x, expr, cfg)
}

/// Decides `x ∈ K_n⋯K_n` (`n+1` factors) where `K_n` is the union of the full
/// tails of the first `n+1` sequences.
pub fn hemicompact_member(
    family: &[Arc<SequenceSpec>],
    n: u64,
    x: &GroupElement,
    cfg: &Config,
) -> Result<Verdict> {
    let problem = levels::hemicompact_levels(family, n, cfg)?;
    problem.group.check(x)?;
    let mut budget = Budget::new(cfg.node_cap);
    finish(decide_levels(&problem, x, cfg, &mut budget)?, cfg)
}

fn finish(verdict: Verdict, cfg: &Config) -> Result<Verdict> {
    match verdict {
        Verdict::NotInWithinBound(b) if cfg.strict => Err(Error::UnsupportedExactDecision(format!(
            "no exclusion certificate applies; search up to index {} found nothing",
            b.max_index
        ))),
        v => Ok(v),
    }
}

fn decide(x: &GroupElement, expr: &NeighborhoodExpr, cfg: &Config, budget: &mut Budget) -> Result<Verdict> {
    match expr {
        NeighborhoodExpr::DyadicSubgroup { n } => Ok(exact::dyadic(x, *n)),
        NeighborhoodExpr::BasisBall { k } => Ok(exact::basis_ball(x, *k)),
        NeighborhoodExpr::ProductBox { left, right } => {
            let GroupElement::Pair(a, b) = x else {
                return Err(Error::KindMismatch(format!("{x} is not a pair")));
            };
            let lv = decide(a, left, cfg, budget)?;
            let rv = decide(b, right, cfg, budget)?;
            Ok(combine_box(left, right, lv, rv)?)
        }
        NeighborhoodExpr::ConjClosure { inner, conjugators } => {
            let group = inner.group()?;
            let mut conj = vec![group.identity()];
            if !group.is_abelian() {
                for g in conjugators {
                    group.check(g)?;
                    if !conj.contains(g) {
                        conj.push(g.clone());
                    }
                }
            }
            let mut bound: Option<SearchBound> = None;
            let mut details = Vec::new();
            for g in &conj {
                // x = g⁻¹·y·g with y in the inner set.
                let y = x.conjugated_by(&g.inverse());
                match decide(&y, inner, cfg, budget)? {
                    Verdict::In(w) => {
                        let factors = w.factors.iter().map(|f| f.conjugated(g)).collect();
                        return Ok(Verdict::In(Witness { factors }));
                    }
                    Verdict::NotIn(c) => details.push(format!("[{g}] {}", c.detail)),
                    Verdict::NotInWithinBound(b) => {
                        bound = Some(match bound {
                            Some(prev) if prev.max_index >= b.max_index => prev,
                            _ => b,
                        })
                    }
                }
            }
            Ok(match bound {
                Some(mut b) => {
                    b.nodes = budget.nodes;
                    Verdict::NotInWithinBound(b)
                }
                None => Verdict::NotIn(Certificate::new(Rule::AllConjugates, None, details.join("; "))),
            })
        }
        _ => {
            let problem = levels::lower(expr, cfg)?.expect("tail-based node");
            decide_levels(&problem, x, cfg, budget)
        }
    }
}

pub(crate) fn combine_box(left: &NeighborhoodExpr, right: &NeighborhoodExpr, lv: Verdict, rv: Verdict) -> Result<Verdict> {
    let (lg, rg) = (left.group()?, right.group()?);
    Ok(match (lv, rv) {
        (Verdict::In(a), Verdict::In(b)) => {
            let wrap = |f: &Factor, side: Side| Factor {
                value: match side {
                    Side::Left => GroupElement::pair(f.value.clone(), rg.identity()),
                    Side::Right => GroupElement::pair(lg.identity(), f.value.clone()),
                },
                level: f.level,
                source: Provenance::Side {
                    side,
                    inner: Box::new(f.source.clone()),
                },
            };
            let factors = a
                .factors
                .iter()
                .map(|f| wrap(f, Side::Left))
                .chain(b.factors.iter().map(|f| wrap(f, Side::Right)))
                .collect();
            Verdict::In(Witness { factors })
        }
        (Verdict::NotIn(c), _) => Verdict::NotIn(Certificate::new(
            Rule::Component,
            c.exclusion_index,
            format!("left coordinate: {}", c.detail),
        )),
        (_, Verdict::NotIn(c)) => Verdict::NotIn(Certificate::new(
            Rule::Component,
            c.exclusion_index,
            format!("right coordinate: {}", c.detail),
        )),
        (Verdict::NotInWithinBound(b), _) | (_, Verdict::NotInWithinBound(b)) => Verdict::NotInWithinBound(b),
    })
}

pub(crate) fn decide_levels(
    problem: &LevelProblem,
    x: &GroupElement,
    cfg: &Config,
    budget: &mut Budget,
) -> Result<Verdict> {
    if x.is_identity() {
        return Ok(Verdict::In(Witness::empty()));
    }
    let commutative = problem.order == Order::Commutative;
    let too_long = exact::norm_exclusion(problem, x);
    if commutative {
        if let Some(c) = too_long {
            return Ok(Verdict::NotIn(c));
        }
        if let Some(v) = exact::basis_assignment(problem, x) {
            return Ok(v);
        }
        if let Some(ex) = exact::index_exclusion(problem, x) {
            if ex.index.saturating_sub(problem.min_start()) > EXACT_WINDOW_CAP {
                return Err(Error::BudgetExceeded(format!(
                    "exact search would need indices up to {}",
                    ex.index
                )));
            }
            let window = move |s: &Source| (s.start < ex.index).then(|| (s.start, ex.index - 1));
            let cands = levels::commutative_candidates(problem, &window);
            return Ok(match search_commutative(problem, &cands, x, budget)? {
                Some(w) => Verdict::In(w),
                None => Verdict::NotIn(Certificate::new(
                    ex.rule,
                    Some(ex.index),
                    format!("{}; no decomposition below index {}", ex.detail, ex.index),
                )),
            });
        }
    }
    let cap = cfg.index_cap;
    let max_index = problem
        .levels
        .iter()
        .flat_map(|l| &l.sources)
        .map(|s| s.start.saturating_add(cap))
        .max()
        .unwrap_or(cap);
    if let Some(c) = too_long {
        // Not exact on non-commutative carriers by policy; report the bound.
        return Ok(Verdict::NotInWithinBound(SearchBound {
            max_index,
            nodes: budget.nodes,
            note: format!("length bound: {}", c.detail),
        }));
    }
    let window = move |s: &Source| Some((s.start, s.start.saturating_add(cap)));
    let found = if commutative {
        let cands = levels::commutative_candidates(problem, &window);
        search_commutative(problem, &cands, x, budget)?
    } else {
        let per_level: Vec<_> = (0..problem.levels.len())
            .map(|l| levels::level_candidates(problem, l, &window))
            .collect();
        search_ordered(problem, &per_level, x, budget)?
    };
    Ok(match found {
        Some(w) => Verdict::In(w),
        None => Verdict::NotInWithinBound(SearchBound {
            max_index,
            nodes: budget.nodes,
            note: format!("searched {cap} indices past each tail start"),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::scheme::{IndexScheme, SchemeFamily};

    fn geo2() -> Arc<SequenceSpec> {
        Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap())
    }

    fn int(n: i64) -> GroupElement {
        GroupElement::int(n)
    }

    #[test]
    fn three_is_one_plus_two() {
        let expr = NeighborhoodExpr::sum_repeat(geo2(), 1, 0);
        let v = member(&int(3), &expr, &Config::default()).unwrap();
        let w = v.witness().unwrap();
        assert!(w.verifies(&GroupSpec::Int, &int(3)));
        let values: Vec<_> = w.factors.iter().map(|f| f.value.clone()).collect();
        assert_eq!(values, vec![int(1), int(2)]);
    }

    #[test]
    fn eleven_is_excluded_exactly() {
        let expr = NeighborhoodExpr::sum_repeat(geo2(), 1, 0);
        match member(&int(11), &expr, &Config::default()).unwrap() {
            Verdict::NotIn(c) => {
                assert!(c.exclusion_index.unwrap() <= 6);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn identity_is_always_in() {
        let expr = NeighborhoodExpr::tail(geo2(), 7);
        assert_eq!(member(&int(0), &expr, &Config::default()).unwrap(), Verdict::In(Witness::empty()));
    }

    #[test]
    fn factorial_sums() {
        let fact = Arc::new(SequenceSpec::factorial("fact", 1).unwrap());
        // 5 = 3! − 1! with tails from index 0.
        let v = member(&int(5), &NeighborhoodExpr::sum_repeat(fact.clone(), 1, 0), &Config::default()).unwrap();
        assert!(v.witness().unwrap().verifies(&GroupSpec::Int, &int(5)));
        // From index 1 the terms are 2, 6, 24, …; no two of them give 5.
        let v = member(&int(5), &NeighborhoodExpr::sum_repeat(fact, 1, 1), &Config::default()).unwrap();
        assert!(v.is_exact_not_in());
    }

    #[test]
    fn free_words_need_search() {
        let letters = Arc::new(SequenceSpec::free_letters("x"));
        let schemes = SchemeFamily::uniform(IndexScheme::from_prefix(vec![0, 1]).unwrap());
        let expr = NeighborhoodExpr::sp_product(vec![letters], schemes, 2, vec![]);
        let x = GroupElement::word(&[(3, 1), (5, 1)]);
        let v = sp_member(&x, &expr, &Config::default()).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.shape_n(), 1);
        assert_eq!(w.sigma(), vec![0, 1]);
        let long = GroupElement::word(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1), (7, 1)]);
        assert!(matches!(
            sp_member(&long, &expr, &Config::default()).unwrap(),
            Verdict::NotInWithinBound(_)
        ));
        assert!(matches!(
            sp_member(&long, &expr, &Config::default().strict()),
            Err(Error::UnsupportedExactDecision(_))
        ));
    }

    #[test]
    fn conjugated_letters() {
        let letters = Arc::new(SequenceSpec::free_letters("x"));
        let g = GroupElement::word(&[(1, 1)]);
        let expr = NeighborhoodExpr::sp_product(
            vec![letters],
            SchemeFamily::uniform(IndexScheme::from_start(1)),
            1,
            vec![g.clone()],
        );
        // x1⁻¹ x3 x1 is a conjugated tail term.
        let x = GroupElement::word(&[(1, -1), (3, 1), (1, 1)]);
        let v = sp_member(&x, &expr, &Config::default()).unwrap();
        assert!(v.witness().unwrap().verifies(&expr.group().unwrap(), &x));
    }

    #[test]
    fn product_box_splits() {
        let expr = NeighborhoodExpr::ProductBox {
            left: Box::new(NeighborhoodExpr::sum_repeat(geo2(), 1, 0)),
            right: Box::new(NeighborhoodExpr::BasisBall { k: 1 }),
        };
        let x = GroupElement::pair(int(3), GroupElement::vector([(2, 2)]));
        let v = member(&x, &expr, &Config::default()).unwrap();
        assert!(v.witness().unwrap().verifies(&expr.group().unwrap(), &x));
        let y = GroupElement::pair(int(11), GroupElement::vector([(2, 2)]));
        assert!(member(&y, &expr, &Config::default()).unwrap().is_exact_not_in());
    }

    #[test]
    fn hemicompact_norm_bound() {
        let e = Arc::new(SequenceSpec::basis_vectors("e"));
        let cfg = Config::default();
        let x = GroupElement::vector([(1, 1), (2, 1)]);
        assert_eq!(hemicompact_member(&[e.clone()], 1, &x, &cfg).unwrap().witness().unwrap().factors.len(), 2);
        let far = GroupElement::vector([(1, 3), (2, 2)]);
        assert!(hemicompact_member(&[e], 1, &far, &cfg).unwrap().is_exact_not_in());
    }
}
