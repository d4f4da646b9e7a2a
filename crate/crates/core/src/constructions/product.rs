use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::json;
use crate::neighborhood::admissible::Target;
use crate::neighborhood::{enumerate_with_witnesses, sp_member, Config, Factor, NeighborhoodExpr, Provenance, Witness};
use crate::scheme::{IndexScheme, SchemeFamily};
use crate::sequence::{pair_interleave, SequenceSpec};

/// Pairs additionally pushed through the general search as a cross-check.
const SEARCH_SAMPLE: usize = 64;

#[derive(Debug, Clone)]
pub struct ProductSplitReport {
    /// `l^u(k, g) = l′(k, (g, e_H))`, keyed by the left sequence.
    pub left: SchemeFamily,
    /// `l^v(k, h) = l″(k, (e_G, h))`, keyed by the right sequence.
    pub right: SchemeFamily,
    /// Depth of the target set, `2N + 1`.
    pub target_depth: u64,
    pub left_size: usize,
    pub right_size: usize,
    pub checked: u64,
    pub searched: u64,
    pub counterexample: Option<Value>,
}

impl ProductSplitReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("left", self.left.to_json()),
            ("right", self.right.to_json()),
            ("targetDepth", Value::from(self.target_depth)),
            ("leftSize", Value::from(self.left_size)),
            ("rightSize", Value::from(self.right_size)),
            ("checked", Value::from(self.checked)),
            ("searched", Value::from(self.searched)),
            ("counterexample", self.counterexample.clone().unwrap_or(Value::Null)),
            ("passed", Value::from(self.passed())),
        ])
    }
}

/// Splits `l`, a scheme for the interleaving `d` of `u` and `v`, into schemes
/// for the two factors and checks `W_u × W_v ⊆ W` on truncations, where the
/// factor sets have depth `depth` and `W` has depth `2·depth + 1`.
///
/// A `u`-term at level `k` lands at level `2k` of `W` as `d_{2n+1}`; a
/// `v`-term at level `k` lands at level `2k+1` as `d_{2n}`.
pub fn product_scheme_split(
    u: &Arc<SequenceSpec>,
    v: &Arc<SequenceSpec>,
    l: &SchemeFamily,
    depth: u64,
    tail_depth: u64,
    cfg: &Config,
) -> Result<ProductSplitReport> {
    let d = Arc::new(pair_interleave(u.clone(), v.clone())?);
    let (eg, eh) = (u.group.identity(), v.group.identity());
    let mut left_keys = Vec::new();
    let mut right_keys = Vec::new();
    for key in l.conjugator_keys() {
        d.group.check(&key)?;
        if let GroupElement::Pair(g, h) = &key {
            if h.is_identity() && !g.is_identity() {
                left_keys.push((**g).clone());
            } else if g.is_identity() && !h.is_identity() {
                right_keys.push((**h).clone());
            }
        }
    }

    let split = |key: &GroupElement| -> Result<(IndexScheme, IndexScheme)> {
        let s = l.lookup(&d.id, key);
        s.parity_split().ok_or_else(|| {
            Error::ParityDecompositionUnavailable(format!(
                "scheme {} at conjugator {key} is not odd on even positions and even on odd ones",
                s.to_json()
            ))
        })
    };
    let base = split(&GroupElement::pair(eg.clone(), eh.clone()))?;
    let mut left = SchemeFamily::uniform(base.0);
    let mut right = SchemeFamily::uniform(base.1);
    for g in &left_keys {
        left = left.with_conjugator(g.clone(), split(&GroupElement::pair(g.clone(), eh.clone()))?.0);
    }
    for h in &right_keys {
        right = right.with_conjugator(h.clone(), split(&GroupElement::pair(eg.clone(), h.clone()))?.1);
    }

    let wu = NeighborhoodExpr::sp_product(vec![u.clone()], left.clone(), depth, left_keys.clone());
    let wv = NeighborhoodExpr::sp_product(vec![v.clone()], right.clone(), depth, right_keys.clone());
    let us = enumerate_with_witnesses(&wu, tail_depth, cfg)?;
    let vs = enumerate_with_witnesses(&wv, tail_depth, cfg)?;
    let pairs = us.len().saturating_mul(vs.len());
    if pairs > cfg.element_cap.saturating_mul(16) {
        return Err(Error::BudgetExceeded(format!(
            "{} × {} products exceed the element budget",
            us.len(),
            vs.len()
        )));
    }

    let target_depth = 2 * depth + 1;
    let family = [d.clone()];
    let target = Target {
        group: &d.group,
        family: &family,
        schemes: l,
        depth: target_depth,
    };
    let w_conjugators: Vec<GroupElement> = left_keys
        .iter()
        .map(|g| GroupElement::pair(g.clone(), eh.clone()))
        .chain(right_keys.iter().map(|h| GroupElement::pair(eg.clone(), h.clone())))
        .collect();
    let w = target.expr(&w_conjugators);
    let stride = (pairs / SEARCH_SAMPLE).max(1);

    let mut report = ProductSplitReport {
        left,
        right,
        target_depth,
        left_size: us.len(),
        right_size: vs.len(),
        checked: 0,
        searched: 0,
        counterexample: None,
    };
    let mut seen = 0usize;
    'outer: for (a, wa) in &us {
        for (b, wb) in &vs {
            report.checked += 1;
            let x = GroupElement::pair(a.clone(), b.clone());
            let witness = lift(&d.id, wa, wb, &eg, &eh);
            let direct = target.reject(&witness, &x);
            let sampled = seen % stride == 0;
            seen += 1;
            if direct.is_none() && !sampled {
                continue;
            }
            report.searched += 1;
            let verdict = sp_member(&x, &w, cfg)?;
            if !verdict.is_in() {
                report.counterexample = Some(json::obj([
                    ("left", a.to_json()),
                    ("right", b.to_json()),
                    ("verdict", verdict.to_json()),
                    ("lifted", direct.map(Value::from).unwrap_or(Value::Null)),
                ]));
                break 'outer;
            }
        }
    }
    Ok(report)
}

/// Places a `W_u` witness on the even levels and a `W_v` witness on the odd
/// levels of the interleaved set.
fn lift(d_id: &str, wa: &Witness, wb: &Witness, eg: &GroupElement, eh: &GroupElement) -> Witness {
    let place = |f: &Factor, left: bool| -> Factor {
        let Provenance::Term {
            index,
            exponent,
            conjugator,
            ..
        } = &f.source
        else {
            unreachable!("SP witnesses are made of sequence terms")
        };
        let (value, conj, index, level) = if left {
            (
                GroupElement::pair(f.value.clone(), eh.clone()),
                conjugator.as_ref().map(|g| GroupElement::pair(g.clone(), eh.clone())),
                2 * index + 1,
                f.level.map(|k| 2 * k),
            )
        } else {
            (
                GroupElement::pair(eg.clone(), f.value.clone()),
                conjugator.as_ref().map(|h| GroupElement::pair(eg.clone(), h.clone())),
                2 * index,
                f.level.map(|k| 2 * k + 1),
            )
        };
        Factor {
            value,
            level,
            source: Provenance::Term {
                sequence: d_id.to_string(),
                index,
                exponent: *exponent,
                conjugator: conj,
            },
        }
    };
    Witness {
        factors: wa
            .factors
            .iter()
            .map(|f| place(f, true))
            .chain(wb.factors.iter().map(|f| place(f, false)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powers_of_ten() -> Arc<SequenceSpec> {
        Arc::new(SequenceSpec::geometric("ten", 10, 0).unwrap())
    }

    #[test]
    fn integer_box_splits() {
        let u = powers_of_ten();
        let l = SchemeFamily::uniform(IndexScheme::from_start(1));
        let r = product_scheme_split(&u, &u, &l, 1, 2, &Config::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.left.default.values(3), vec![0, 1, 2]);
        assert_eq!(r.right.default.values(3), vec![1, 2, 3]);
        assert_eq!(r.checked as usize, r.left_size * r.right_size);
    }

    #[test]
    fn wrong_parities_are_refused() {
        let u = powers_of_ten();
        let l = SchemeFamily::uniform(IndexScheme::from_start(0));
        assert!(matches!(
            product_scheme_split(&u, &u, &l, 1, 2, &Config::default()),
            Err(Error::ParityDecompositionUnavailable(_))
        ));
    }

    #[test]
    fn free_letters_split() {
        let x = Arc::new(SequenceSpec::free_letters("x"));
        let g = GroupElement::word(&[(1, 1)]);
        let e = GroupElement::word(&[]);
        let l = SchemeFamily::uniform(IndexScheme::from_start(1))
            .with_conjugator(GroupElement::pair(g.clone(), e), IndexScheme::from_start(3));
        let r = product_scheme_split(&x, &x, &l, 1, 1, &Config::default()).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.left.value(0, "x", &g), 1);
        assert!(r.right.per_conjugator.is_empty());
    }
}
