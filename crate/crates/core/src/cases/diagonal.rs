use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::json;
use crate::neighborhood::{enumerate_truncation, member, Config, NeighborhoodExpr};
use crate::scheme::{IndexScheme, SchemeFamily};
use crate::sequence::SequenceSpec;

/// Points `2ⁿ·e_i` shown to lie in both `U_n` and a prefix sum for `𝐞`.
#[derive(Debug, Clone)]
pub struct TailPointsReport {
    pub n: u64,
    /// First coordinate probed: the scheme value at position `2ⁿ`.
    pub first_coordinate: u64,
    /// Prefix depth `2ⁿ − 1`: one level per summand.
    pub depth: u64,
    /// `(point, in U_n, in the prefix sum)`.
    pub points: Vec<(GroupElement, bool, bool)>,
}

impl TailPointsReport {
    pub fn passed(&self) -> bool {
        self.points.iter().all(|(_, a, b)| *a && *b)
    }

    pub fn verified(&self) -> usize {
        self.points.iter().filter(|(_, a, b)| *a && *b).count()
    }

    pub fn to_json(&self) -> Value {
        let points = self
            .points
            .iter()
            .map(|(x, d, s)| {
                json::obj([
                    ("point", x.to_json()),
                    ("inDyadic", Value::from(*d)),
                    ("inPrefixSum", Value::from(*s)),
                ])
            })
            .collect();
        json::obj([
            ("n", Value::from(self.n)),
            ("firstCoordinate", Value::from(self.first_coordinate)),
            ("depth", Value::from(self.depth)),
            ("points", Value::Array(points)),
            ("verified", Value::from(self.verified())),
            ("passed", Value::from(self.passed())),
        ])
    }
}

/// Exhibits `probe_count` points `2ⁿ·e_i`, `i ≥ scheme(2ⁿ)`, of the
/// intersection of `U_n` with `Σ_{l < 2ⁿ} A_{scheme(l)}` for the basis vectors.
/// Every point is re-checked through [`member`].
pub fn diagonal_tail_points(n: u64, scheme: &IndexScheme, probe_count: u64, cfg: &Config) -> Result<TailPointsReport> {
    let summands = 1u64
        .checked_shl(u32::try_from(n).unwrap_or(u32::MAX))
        .filter(|&s| s as u128 <= cfg.level_cap as u128)
        .ok_or_else(|| {
            Error::BudgetExceeded(format!(
                "2^{n} summands exceed the level cap {}",
                cfg.level_cap
            ))
        })?;
    let e = Arc::new(SequenceSpec::basis_vectors("e"));
    let depth = summands - 1;
    let prefix = NeighborhoodExpr::sum_prefix(vec![e], SchemeFamily::uniform(scheme.clone()), depth);
    let dyadic = NeighborhoodExpr::DyadicSubgroup { n };
    // Coordinate i carries the term u_{i-1}, so i ≥ scheme(2ⁿ) puts u_{i-1}
    // at or beyond every start scheme(l), l < 2ⁿ.
    let first = scheme.value(summands).max(1);
    let mut points = Vec::new();
    for i in first..first + probe_count {
        let x = GroupElement::vector([(i, BigInt::from(summands))]);
        let in_dyadic = member(&x, &dyadic, cfg)?.is_in();
        let in_prefix = member(&x, &prefix, cfg)?.is_in();
        points.push((x, in_dyadic, in_prefix));
    }
    Ok(TailPointsReport {
        n,
        first_coordinate: first,
        depth,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeparationConfig {
    pub k: u64,
    /// Only vectors supported on coordinates `1..=support_bound` are paired.
    pub support_bound: u64,
    pub tail_depth: u64,
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub config: SeparationConfig,
    pub elements: usize,
    pub pairs: u64,
    /// Largest coefficient magnitude seen in a difference `a − b`.
    pub max_difference: BigInt,
    /// `2(k+1)`, the a priori bound on difference coefficients.
    pub difference_bound: u64,
    /// `2^{4k}`.
    pub modulus: BigInt,
    pub counterexamples: Vec<(GroupElement, GroupElement)>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let counterexamples = self
            .counterexamples
            .iter()
            .map(|(a, b)| Value::Array(vec![a.to_json(), b.to_json()]))
            .collect();
        json::obj([
            ("k", Value::from(self.config.k)),
            ("supportBound", Value::from(self.config.support_bound)),
            ("tailDepth", Value::from(self.config.tail_depth)),
            ("elements", Value::from(self.elements)),
            ("pairs", Value::from(self.pairs)),
            ("maxDifference", json::bigint_json(&self.max_difference)),
            ("differenceBound", Value::from(self.difference_bound)),
            ("modulus", json::bigint_json(&self.modulus)),
            ("counterexamples", Value::Array(counterexamples)),
            ("passed", Value::from(self.passed())),
        ])
    }
}

/// Reported counterexamples are capped; the count of failing pairs is not.
const COUNTEREXAMPLE_CAP: usize = 16;

/// Checks `a − b ∉ U_{4k}` for all distinct `a, b` in the truncation of
/// `A(k,0)` for `𝐞`. Since `U_{8k} − U_{8k} ⊆ U_{4k}`, this makes the cosets
/// `a + U_{8k}` pairwise disjoint.
pub fn diagonal_separation(config: SeparationConfig, cfg: &Config) -> Result<SeparationReport> {
    let SeparationConfig {
        k,
        support_bound,
        tail_depth,
    } = config;
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let e = Arc::new(SequenceSpec::basis_vectors("e"));
    let set = enumerate_truncation(&NeighborhoodExpr::sum_repeat(e, k, 0), tail_depth, cfg)?;
    let elements: Vec<GroupElement> = set
        .into_iter()
        .filter(|x| match x {
            GroupElement::Vector(v) => v.max_index().is_none_or(|i| i <= support_bound),
            _ => false,
        })
        .collect();
    let modulus = BigInt::one() << (4 * k);
    let mut report = SeparationReport {
        config,
        elements: elements.len(),
        pairs: 0,
        max_difference: BigInt::zero(),
        difference_bound: 2 * (k + 1),
        modulus: modulus.clone(),
        counterexamples: Vec::new(),
    };
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            report.pairs += 1;
            let GroupElement::Vector(diff) = a.mul(&b.inverse()) else {
                unreachable!("vectors subtract to vectors")
            };
            for (_, c) in diff.iter() {
                if c.abs() > report.max_difference {
                    report.max_difference = c.abs();
                }
            }
            let escapes = diff.iter().any(|(_, c)| !c.is_multiple_of(&modulus));
            if !escapes && report.counterexamples.len() < COUNTEREXAMPLE_CAP {
                report.counterexamples.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubled_basis_points() {
        let s = IndexScheme::from_start(0);
        let r = diagonal_tail_points(1, &s, 3, &Config::default()).unwrap();
        assert!(r.passed());
        assert_eq!(r.depth, 1);
        assert_eq!(r.points[0].0, GroupElement::vector([(2, 2)]));

        let r = diagonal_tail_points(0, &s, 3, &Config::default()).unwrap();
        assert_eq!(r.depth, 0);
        assert_eq!(r.points[0].0, GroupElement::vector([(1, 1)]));
        assert!(r.passed());
    }

    #[test]
    fn too_many_summands() {
        let cfg = Config {
            level_cap: 8,
            ..Config::default()
        };
        let s = IndexScheme::from_start(0);
        assert!(matches!(
            diagonal_tail_points(4, &s, 1, &cfg),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn small_separation() {
        let cfg = SeparationConfig {
            k: 1,
            support_bound: 4,
            tail_depth: 4,
        };
        let r = diagonal_separation(cfg, &Config::default()).unwrap();
        assert!(r.passed());
        // the ℓ¹ ball of radius 2 in four coordinates
        assert_eq!(r.elements, 41);
        assert!(r.max_difference <= BigInt::from(r.difference_bound));
    }
}
