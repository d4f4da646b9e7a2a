use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::{GroupElement, IntVector};

use super::config::Config;
use super::exact;
use super::levels::{self, LevelProblem, Order};
use super::member::combine_box;
use super::verdict::{Factor, Verdict, Witness};
use super::NeighborhoodExpr;

/// Subset DP over levels is exponential; refuse beyond this many.
const ANY_ORDER_LEVEL_CAP: usize = 16;

/// Every element of `expr` with each tail cut at its start index plus
/// `tail_depth`. Closed-form sets are cut to support `[1, tail_depth+1]`.
pub fn enumerate_truncation(expr: &NeighborhoodExpr, tail_depth: u64, cfg: &Config) -> Result<BTreeSet<GroupElement>> {
    Ok(enumerate_with_witnesses(expr, tail_depth, cfg)?.into_keys().collect())
}

/// Like [`enumerate_truncation`], with one decomposition per element: the
/// first found when levels are filled in order and terms by ascending index.
pub fn enumerate_with_witnesses(
    expr: &NeighborhoodExpr,
    tail_depth: u64,
    cfg: &Config,
) -> Result<BTreeMap<GroupElement, Witness>> {
    let top = tail_depth + 1;
    match expr {
        NeighborhoodExpr::DyadicSubgroup { n } => {
            let step = BigInt::one() << *n;
            let coeffs = [-step.clone(), BigInt::from(0), step];
            let points = vectors(top, cfg, &mut |_, _| coeffs.to_vec())?;
            Ok(with_closed_form(points, |x| exact::dyadic(x, *n)))
        }
        NeighborhoodExpr::BasisBall { k } => {
            let radius = k + 1;
            let points = vectors(top, cfg, &mut |_, used| {
                let left = radius - used;
                (-(left as i64)..=left as i64).map(BigInt::from).collect()
            })?;
            Ok(with_closed_form(points, |x| exact::basis_ball(x, *k)))
        }
        NeighborhoodExpr::ConjClosure { inner, conjugators } => {
            let group = inner.group()?;
            let base = enumerate_with_witnesses(inner, tail_depth, cfg)?;
            let mut out = base.clone();
            for g in conjugators {
                group.check(g)?;
                for (y, w) in &base {
                    let factors = w.factors.iter().map(|f| f.conjugated(g)).collect();
                    out.entry(y.conjugated_by(g)).or_insert(Witness { factors });
                }
                cap(out.len(), cfg)?;
            }
            Ok(out)
        }
        NeighborhoodExpr::ProductBox { left, right } => {
            let ls = enumerate_with_witnesses(left, tail_depth, cfg)?;
            let rs = enumerate_with_witnesses(right, tail_depth, cfg)?;
            cap(ls.len().saturating_mul(rs.len()), cfg)?;
            let mut out = BTreeMap::new();
            for (a, wa) in &ls {
                for (b, wb) in &rs {
                    let v = combine_box(left, right, Verdict::In(wa.clone()), Verdict::In(wb.clone()))?;
                    if let Verdict::In(w) = v {
                        out.insert(GroupElement::pair(a.clone(), b.clone()), w);
                    }
                }
            }
            Ok(out)
        }
        _ => {
            let problem = levels::lower(expr, cfg)?.expect("tail-based node");
            enumerate_levels(&problem, tail_depth, cfg)
        }
    }
}

/// The product of `n+1` copies of `K_n` with every tail cut at `tail_depth`.
pub fn enumerate_hemicompact(
    family: &[std::sync::Arc<crate::sequence::SequenceSpec>],
    n: u64,
    tail_depth: u64,
    cfg: &Config,
) -> Result<BTreeMap<GroupElement, Witness>> {
    let problem = levels::hemicompact_levels(family, n, cfg)?;
    enumerate_levels(&problem, tail_depth, cfg)
}

fn cap(size: usize, cfg: &Config) -> Result<()> {
    if size > cfg.element_cap {
        return Err(Error::BudgetExceeded(format!(
            "enumeration exceeds {} elements",
            cfg.element_cap
        )));
    }
    Ok(())
}

fn with_closed_form(points: Vec<IntVector>, decide: impl Fn(&GroupElement) -> Verdict) -> BTreeMap<GroupElement, Witness> {
    points
        .into_iter()
        .map(GroupElement::Vector)
        .filter_map(|x| match decide(&x) {
            Verdict::In(w) => Some((x, w)),
            _ => None,
        })
        .collect()
}

/// Vectors on coordinates `1..=top` whose coefficient at each coordinate is
/// drawn from `choices(coordinate, ℓ¹ used so far)`.
fn vectors(
    top: u64,
    cfg: &Config,
    choices: &mut dyn FnMut(u64, u64) -> Vec<BigInt>,
) -> Result<Vec<IntVector>> {
    let mut out = vec![(IntVector::zero(), 0u64)];
    for i in 1..=top {
        let mut next = Vec::new();
        for (v, used) in &out {
            for c in choices(i, *used) {
                let step = u64::try_from(c.magnitude()).unwrap_or(u64::MAX);
                next.push((v.add(&IntVector::from_pairs([(i, c)])), used.saturating_add(step)));
            }
        }
        cap(next.len(), cfg)?;
        out = next;
    }
    Ok(out.into_iter().map(|(v, _)| v).collect())
}

/// Terms of one level inside the truncation window, with their factors.
fn level_terms(problem: &LevelProblem, l: usize, tail_depth: u64) -> Vec<(GroupElement, Factor)> {
    let window = move |s: &levels::Source| Some((s.start, s.start.saturating_add(tail_depth)));
    levels::level_candidates(problem, l, &window)
        .into_iter()
        .map(|c| {
            let src = &problem.levels[l].sources[c.source];
            let factor = Factor {
                value: c.value.clone(),
                level: Some(l),
                source: src.provenance(c.index, c.sign),
            };
            (c.value, factor)
        })
        .collect()
}

fn extend(
    from: &BTreeMap<GroupElement, Witness>,
    terms: &[(GroupElement, Factor)],
    into: &mut BTreeMap<GroupElement, Witness>,
    cfg: &Config,
) -> Result<()> {
    for (y, w) in from {
        into.entry(y.clone()).or_insert_with(|| w.clone());
        for (t, f) in terms {
            into.entry(y.mul(t)).or_insert_with(|| {
                let mut w = w.clone();
                w.factors.push(f.clone());
                w
            });
        }
        cap(into.len(), cfg)?;
    }
    Ok(())
}

pub(crate) fn enumerate_levels(
    problem: &LevelProblem,
    tail_depth: u64,
    cfg: &Config,
) -> Result<BTreeMap<GroupElement, Witness>> {
    let terms: Vec<_> = (0..problem.levels.len())
        .map(|l| level_terms(problem, l, tail_depth))
        .collect();
    let start = BTreeMap::from([(problem.group.identity(), Witness::empty())]);
    match problem.order {
        Order::Commutative | Order::Fixed => {
            let mut acc = start;
            for t in &terms {
                let mut next = BTreeMap::new();
                extend(&acc, t, &mut next, cfg)?;
                acc = next;
            }
            Ok(acc)
        }
        Order::Any => {
            let n = problem.levels.len();
            if n > ANY_ORDER_LEVEL_CAP {
                return Err(Error::BudgetExceeded(format!(
                    "{n} levels in any order exceed {ANY_ORDER_LEVEL_CAP}"
                )));
            }
            // sets[mask]: products using levels in `mask`, last factor from
            // any of them.
            let mut sets: Vec<BTreeMap<GroupElement, Witness>> = vec![BTreeMap::new(); 1 << n];
            sets[0] = start;
            for mask in 1usize..1 << n {
                let mut here = BTreeMap::new();
                for (l, t) in terms.iter().enumerate() {
                    if mask & (1 << l) != 0 {
                        extend(&sets[mask & !(1 << l)], t, &mut here, cfg)?;
                    }
                }
                sets[mask] = here;
            }
            Ok(sets.pop().expect("at least one mask"))
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::sequence::SequenceSpec;

    fn ints(xs: &[i64]) -> BTreeSet<GroupElement> {
        xs.iter().map(|&x| GroupElement::int(x)).collect()
    }

    #[test]
    fn tail_window() {
        let geo = Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap());
        let got = enumerate_truncation(&NeighborhoodExpr::tail(geo, 2), 1, &Config::default()).unwrap();
        assert_eq!(got, ints(&[0, 4, -4, 8, -8]));
    }

    #[test]
    fn signed_pairs() {
        let geo = Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap());
        let got = enumerate_truncation(&NeighborhoodExpr::sum_repeat(geo, 1, 0), 2, &Config::default()).unwrap();
        let mut want = BTreeSet::new();
        for a in 0..3 {
            for b in 0..3 {
                for e in -1i64..=1 {
                    for d in -1i64..=1 {
                        want.insert(GroupElement::int(e * (1 << a) + d * (1 << b)));
                    }
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn ball_on_two_coordinates() {
        let got = enumerate_truncation(&NeighborhoodExpr::BasisBall { k: 1 }, 1, &Config::default()).unwrap();
        // ℓ¹ ≤ 2 on two coordinates: 1 + 4 + 8 = 13 points.
        assert_eq!(got.len(), 13);
    }

    #[test]
    fn witnesses_recombine() {
        let geo = Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap());
        let expr = NeighborhoodExpr::sum_repeat(geo, 2, 1);
        let group = expr.group().unwrap();
        for (x, w) in enumerate_with_witnesses(&expr, 3, &Config::default()).unwrap() {
            assert!(w.verifies(&group, &x));
        }
    }

    #[test]
    fn element_cap_is_enforced() {
        let cfg = Config {
            element_cap: 10,
            ..Config::default()
        };
        assert!(matches!(
            enumerate_truncation(&NeighborhoodExpr::DyadicSubgroup { n: 1 }, 4, &cfg),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
