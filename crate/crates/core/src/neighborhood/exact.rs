//! Rules that turn a finite search into an exact negative answer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::group::{GroupElement, GroupSpec};
use crate::sequence::{Generator, RatioCertificate, SequenceSpec};

use super::levels::{LevelProblem, Order};
use super::verdict::{Certificate, Factor, Provenance, Rule, Verdict, Witness};
use super::search::assign_levels;

/// How far the exclusion-index scans go before giving up.
const SCAN_LIMIT: u64 = 100_000;

/// Terms at `index` or later cannot occur in any decomposition.
#[derive(Debug, Clone)]
pub(crate) struct Exclusion {
    pub index: u64,
    pub rule: Rule,
    pub detail: String,
}

/// Largest norm any single pick of each level can have, summed over levels.
fn reach(problem: &LevelProblem) -> Option<BigInt> {
    let mut total = BigInt::zero();
    for level in &problem.levels {
        let mut best = BigInt::zero();
        for src in &level.sources {
            let conj = src.conjugator.as_ref().map(|g| g.norm() * 2).unwrap_or_default();
            best = best.max(src.seq.norm_sup()? + conj);
        }
        total += best;
    }
    Some(total)
}

/// Exact when the element is longer than the sum of the level bounds.
pub(crate) fn norm_exclusion(problem: &LevelProblem, x: &GroupElement) -> Option<Certificate> {
    let total = reach(problem)?;
    let n = x.norm();
    (n > total).then(|| {
        Certificate::new(
            Rule::NormBound,
            None,
            format!("norm {n} exceeds {total}, the most {} picks can reach", problem.levels.len()),
        )
    })
}

/// The least index past which no term can appear in a decomposition of `x`,
/// for an integer problem fed by one sequence.
pub(crate) fn index_exclusion(problem: &LevelProblem, x: &GroupElement) -> Option<Exclusion> {
    if problem.order != Order::Commutative || problem.group != GroupSpec::Int {
        return None;
    }
    let seq = problem.uniform_sequence()?;
    let GroupElement::Int(x) = x else { return None };
    let t = problem.levels.len() as u64;
    let abs = x.abs();
    let geometric = geometric_exclusion(seq, t, &abs);
    let ratio = ratio_exclusion(seq, t, &abs);
    match (geometric, ratio) {
        (Some(a), Some(b)) => Some(if b.index < a.index { b } else { a }),
        (a, b) => a.or(b),
    }
}

/// Powers `b^(n+s)`: cancel opposite pairs and carry `b` equal terms to the
/// next index. The normal form uses at most `b−1` terms per index, so with
/// `r = ⌊(t−1)/(b−1)⌋` its magnitude is at least `b^(a+s−r−1)` where `a` is
/// its top index.
fn geometric_exclusion(seq: &SequenceSpec, t: u64, abs: &BigInt) -> Option<Exclusion> {
    let Generator::Geometric { base, start } = &seq.generator else {
        return None;
    };
    let b = base.to_u64()?;
    if b < 2 {
        return None;
    }
    let r = (t - 1) / (b - 1);
    let bound = abs * num_traits::pow::pow(base.clone(), usize::try_from(r + 1).ok()?);
    let mut power = num_traits::pow::pow(base.clone(), usize::try_from(*start).ok()?);
    for a in 0..SCAN_LIMIT {
        if power > bound {
            return Some(Exclusion {
                index: a,
                rule: Rule::GeometricCarry,
                detail: format!(
                    "carried normal forms need an index below {a}: {base}^({a}+{start}) exceeds |x|·{base}^{} = {bound}",
                    r + 1
                ),
            });
        }
        power *= base;
    }
    None
}

/// A ratio certificate for sums of `t` terms: the declared one when it is
/// strong enough, otherwise one read off the generator.
fn usable_ratio(seq: &SequenceSpec, t: u64) -> Option<RatioCertificate> {
    let need = BigRational::from_integer(BigInt::from(t - 1));
    if let Some(c) = &seq.certificates.ratio {
        if c.rho > need {
            return Some(c.clone());
        }
    }
    match &seq.generator {
        // (n+s+1)! ≥ t·(n+s)! once n+s+1 ≥ t.
        Generator::Factorial { start } => {
            let rho = t.max(2);
            RatioCertificate::integer(rho as i64, (rho - 1).saturating_sub(*start)).ok()
        }
        Generator::Geometric { base, .. } if BigRational::from_integer(base.clone()) > need => {
            RatioCertificate::new(BigRational::from_integer(base.clone()), 0).ok()
        }
        _ => None,
    }
}

/// With `u_{n+1} ≥ ρ·u_n > 0` from the onset and `ρ > t−1`, a nonzero sum of at
/// most `t` signed terms whose top index is `a` has magnitude at least
/// `u_a·(1 − (t−1)/ρ)`, provided every earlier term is at most `u_a/ρ`.
fn ratio_exclusion(seq: &SequenceSpec, t: u64, abs: &BigInt) -> Option<Exclusion> {
    let cert = usable_ratio(seq, t)?;
    let (p, q) = (cert.rho.numer().clone(), cert.rho.denom().clone());
    let slack = &p - &q * BigInt::from(t - 1);
    let int = |n: u64| match seq.eval(n) {
        GroupElement::Int(v) => Some(v),
        _ => None,
    };
    let mut early_max = BigInt::zero();
    for n in 0..=cert.onset {
        early_max = early_max.max(int(n)?.abs());
    }
    let mut prev = int(cert.onset)?;
    if !prev.is_positive() {
        return None;
    }
    for a in cert.onset + 1..cert.onset + 1 + SCAN_LIMIT {
        let u = int(a)?;
        // Check the certificate on the range the argument uses.
        if &u * &q < &p * &prev {
            return None;
        }
        if &u * &slack > abs * &p && &u * &q >= &p * &early_max {
            return Some(Exclusion {
                index: a,
                rule: Rule::RatioBound,
                detail: format!(
                    "ratio {} from index {}: any sum of {t} terms reaching index {a} has magnitude above |x| = {abs}",
                    cert.rho, cert.onset
                ),
            });
        }
        prev = u;
    }
    None
}

/// Basis vectors: a vector is a sum of picks iff its unit parts can be
/// matched to distinct levels that admit their coordinates.
pub(crate) fn basis_assignment(problem: &LevelProblem, x: &GroupElement) -> Option<Verdict> {
    if problem.group != GroupSpec::IntVec || problem.order != Order::Commutative {
        return None;
    }
    let seq = problem.uniform_sequence()?;
    if seq.generator != Generator::BasisVectors {
        return None;
    }
    let GroupElement::Vector(v) = x else { return None };
    let mut units: Vec<(u64, i8)> = Vec::new();
    for (i, c) in v.iter() {
        let count = c.abs().to_usize()?;
        if units.len() + count > problem.levels.len() {
            return Some(Verdict::NotIn(Certificate::new(
                Rule::NormBound,
                None,
                format!("ℓ¹ norm {} exceeds {} picks", v.l1_norm(), problem.levels.len()),
            )));
        }
        let sign = if c.is_positive() { 1 } else { -1 };
        units.extend(std::iter::repeat_n((i, sign), count));
    }
    let masks: Vec<u64> = units
        .iter()
        .map(|&(i, _)| {
            problem.levels.iter().enumerate().fold(0u64, |m, (l, level)| {
                // e_i is the term at index i−1.
                if level.sources.iter().any(|s| s.start < i) {
                    m | (1 << l)
                } else {
                    m
                }
            })
        })
        .collect();
    Some(match assign_levels(&masks, problem.levels.len()) {
        Some(levels) => {
            let mut factors: Vec<Factor> = units
                .iter()
                .zip(levels)
                .map(|(&(i, sign), level)| Factor {
                    value: GroupElement::vector([(i, BigInt::from(sign))]),
                    level: Some(level),
                    source: problem.levels[level].sources[0].provenance(i - 1, sign),
                })
                .collect();
            factors.sort_by_key(|f| f.level);
            Verdict::In(Witness { factors })
        }
        None => Verdict::NotIn(Certificate::new(
            Rule::BasisAssignment,
            None,
            "the coordinates cannot be drawn from distinct levels whose tails reach them",
        )),
    })
}

/// `2^n` divides every coordinate.
pub(crate) fn dyadic(x: &GroupElement, n: u64) -> Verdict {
    let GroupElement::Vector(v) = x else {
        unreachable!("checked against the carrier")
    };
    let modulus = BigInt::one() << n;
    for (i, c) in v.iter() {
        if !(c % &modulus).is_zero() {
            return Verdict::NotIn(Certificate::new(
                Rule::Divisibility,
                None,
                format!("coordinate {i} is {c}, not divisible by {modulus}"),
            ));
        }
    }
    Verdict::In(Witness {
        factors: v
            .iter()
            .map(|(i, c)| Factor {
                value: GroupElement::vector([(i, c.clone())]),
                level: None,
                source: Provenance::Basis {
                    coordinate: i,
                    coefficient: c.clone(),
                },
            })
            .collect(),
    })
}

/// `‖x‖₁ ≤ k+1`, witnessed by unit vectors.
pub(crate) fn basis_ball(x: &GroupElement, k: u64) -> Verdict {
    let GroupElement::Vector(v) = x else {
        unreachable!("checked against the carrier")
    };
    let norm = v.l1_norm();
    if norm > BigInt::from(k) + 1 {
        return Verdict::NotIn(Certificate::new(
            Rule::L1Ball,
            None,
            format!("ℓ¹ norm {norm} exceeds {}", k + 1),
        ));
    }
    let mut factors = Vec::new();
    for (i, c) in v.iter() {
        let sign = BigInt::from(if c.is_positive() { 1 } else { -1 });
        for _ in 0..c.abs().to_u64().unwrap_or(0) {
            factors.push(Factor {
                value: GroupElement::vector([(i, sign.clone())]),
                level: Some(factors.len()),
                source: Provenance::Basis {
                    coordinate: i,
                    coefficient: sign.clone(),
                },
            });
        }
    }
    Verdict::In(Witness { factors })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::neighborhood::levels::lower;
    use crate::neighborhood::{Config, NeighborhoodExpr};

    fn problem(seq: SequenceSpec, k: u64, m: u64) -> LevelProblem {
        let expr = NeighborhoodExpr::sum_repeat(Arc::new(seq), k, m);
        lower(&expr, &Config::default()).unwrap().unwrap()
    }

    #[test]
    fn geometric_bound_for_eleven() {
        let p = problem(SequenceSpec::geometric("geo2", 2, 0).unwrap(), 1, 0);
        let seq = p.uniform_sequence().unwrap();
        assert_eq!(geometric_exclusion(seq, 2, &BigInt::from(11)).unwrap().index, 6);
        // The ratio rule is sharper here: 2^5·(2−1) > 11·2.
        let ex = index_exclusion(&p, &GroupElement::int(11)).unwrap();
        assert_eq!((ex.index, ex.rule), (5, Rule::RatioBound));
    }

    #[test]
    fn factorial_ratio_is_derived() {
        let seq = SequenceSpec::factorial("fact", 1).unwrap();
        let c = usable_ratio(&seq, 4).unwrap();
        assert_eq!(c.rho, BigRational::from_integer(4.into()));
        // (n+2)! / (n+1)! = n+2 ≥ 4 from n = 2.
        assert_eq!(c.onset, 2);
        assert!(ratio_exclusion(&seq, 4, &BigInt::from(1000)).is_some());
    }

    #[test]
    fn ratio_rule_needs_slack() {
        // ρ = 2 with t = 3 terms is not enough for powers of 2.
        let seq = SequenceSpec::geometric("geo2", 2, 0).unwrap();
        assert!(usable_ratio(&seq, 3).is_none());
        assert!(usable_ratio(&seq, 2).is_some());
    }

    #[test]
    fn dyadic_and_ball() {
        let x = GroupElement::vector([(1, 4), (3, -8)]);
        assert!(dyadic(&x, 2).is_in());
        assert!(dyadic(&x, 3).is_exact_not_in());
        let y = GroupElement::vector([(1, 1), (2, -1)]);
        assert!(basis_ball(&y, 1).is_in());
        assert!(basis_ball(&y, 0).is_exact_not_in());
    }
}
