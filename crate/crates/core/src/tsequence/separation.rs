use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::json;
use crate::neighborhood::{member, Config, NeighborhoodExpr, Verdict};
use crate::scheme::{IndexScheme, SchemeFamily};
use crate::sequence::{verify_certificates, Generator, RatioCertificate, SequenceSpec};

/// How far the closed-form start index is scanned for.
const START_SCAN: u64 = 100_000;

/// Magnitude bound covering every prefix depth up to the certified one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub rho: BigRational,
    /// First index of the scheme.
    pub start: u64,
    /// Every nonzero signed sum of at most `depth+1` terms from indices
    /// `≥ start` is at least this large in absolute value.
    pub lower_bound: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub depth: u64,
    pub verdict: Verdict,
}

/// An index scheme whose prefix sums avoid a given integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub target: GroupElement,
    pub scheme: IndexScheme,
    pub certified_depth: u64,
    pub trace: Vec<TraceEntry>,
    /// Present when `ρ > depth + 1`.
    pub closed_form: Option<ClosedForm>,
}

impl WitnessReport {
    pub fn to_json(&self) -> Value {
        json::obj([
            ("target", self.target.to_json()),
            ("scheme", self.scheme.to_json()),
            ("certifiedDepth", Value::from(self.certified_depth)),
            (
                "trace",
                Value::Array(
                    self.trace
                        .iter()
                        .map(|t| json::obj([("depth", Value::from(t.depth)), ("verdict", t.verdict.to_json())]))
                        .collect(),
                ),
            ),
            (
                "closedFormGuarantee",
                match &self.closed_form {
                    Some(c) => json::obj([
                        ("rho", json::rational_json(&c.rho)),
                        ("start", Value::from(c.start)),
                        ("lowerBound", json::rational_json(&c.lower_bound)),
                    ]),
                    None => Value::Null,
                },
            ),
        ])
    }
}

fn int_term(seq: &SequenceSpec, n: u64) -> BigInt {
    match seq.eval(n) {
        GroupElement::Int(v) => v,
        _ => unreachable!("integer carrier checked"),
    }
}

/// The declared ratio certificate, re-checked on a probe window.
fn checked_ratio(seq: &SequenceSpec) -> Result<RatioCertificate> {
    let cert = seq
        .certificates
        .ratio
        .clone()
        .ok_or_else(|| Error::NoCertificate(format!("`{}` declares no ratio certificate", seq.id)))?;
    let report = verify_certificates(seq, cert.onset + 32);
    if let Some(outcome) = report.ratio {
        if !outcome.holds() {
            return Err(Error::NoCertificate(format!(
                "ratio certificate of `{}` fails: {}",
                seq.id,
                outcome.to_json()
            )));
        }
    }
    Ok(cert)
}

/// Builds a scheme `j` with `x ∉ A_{j_0} + ⋯ + A_{j_n}` for every `n ≤ depth`.
///
/// When `ρ > depth` the scheme starts at the least `j_0 ≥ onset` with
/// `u_{j_0}·(ρ − depth)/ρ > |x|` and continues by one; any nonzero sum of at
/// most `depth+1` terms from those tails is then larger than `|x|`. Otherwise
/// `j_0` is the least start for which every prefix depth is excluded exactly.
/// Each depth is re-checked through [`member`] and recorded in the trace.
pub fn separation_witness(
    x: &GroupElement,
    seq: &Arc<SequenceSpec>,
    depth: u64,
    cfg: &Config,
) -> Result<WitnessReport> {
    if seq.group != GroupSpec::Int {
        return Err(Error::KindMismatch(format!(
            "separation witnesses need an integer sequence, `{}` lives in {}",
            seq.id, seq.group
        )));
    }
    seq.group.check(x)?;
    if x.is_identity() {
        return Err(Error::IdentityTarget);
    }
    let cert = checked_ratio(seq)?;
    let GroupElement::Int(xv) = x else { unreachable!() };
    let abs = xv.abs();
    let (p, q) = (cert.rho.numer().clone(), cert.rho.denom().clone());
    let n_big = BigInt::from(depth);
    let cfg = Config { strict: false, ..cfg.clone() };

    let (start, closed_form) = if p > &q * &n_big {
        let slack = &p - &q * &n_big;
        let start = (cert.onset..cert.onset + START_SCAN)
            .find(|&a| {
                let u = int_term(seq, a);
                u.is_positive() && &u * &slack > &abs * &p
            })
            .ok_or_else(|| Error::WitnessNotFound(format!("no start index within {START_SCAN} terms")))?;
        let closed = (p > &q * (&n_big + 1)).then(|| {
            let u = BigRational::from_integer(int_term(seq, start));
            let lower_bound = &u - &u * BigRational::from_integer(n_big.clone()) / &cert.rho;
            ClosedForm {
                rho: cert.rho.clone(),
                start,
                lower_bound,
            }
        });
        (start, closed)
    } else {
        let start = (0..=cfg.index_cap)
            .find_map(|j0| match trace_for(x, seq, j0, depth, &cfg) {
                Ok(trace) if trace.iter().all(|t| t.verdict.is_exact_not_in()) => Some(Ok(j0)),
                Ok(_) => None,
                Err(e @ Error::BudgetExceeded(_)) => Some(Err(e)),
                Err(_) => None,
            })
            .transpose()?
            .ok_or_else(|| {
                Error::WitnessNotFound(format!(
                    "no start index up to {} excludes {x} exactly at every depth ≤ {depth}",
                    cfg.index_cap
                ))
            })?;
        (start, None)
    };
    let trace = trace_for(x, seq, start, depth, &cfg)?;
    if let Some(bad) = trace.iter().find(|t| t.verdict.is_in()) {
        return Err(Error::WitnessNotFound(format!(
            "{x} decomposes at depth {} despite the start index {start}",
            bad.depth
        )));
    }
    Ok(WitnessReport {
        target: x.clone(),
        scheme: consecutive(start, depth),
        certified_depth: depth,
        trace,
        closed_form,
    })
}

/// `(j0, j0+1, …, j0+depth)`, then continuing by one.
fn consecutive(j0: u64, depth: u64) -> IndexScheme {
    IndexScheme::from_prefix((j0..=j0 + depth).collect()).expect("strictly increasing")
}

fn trace_for(x: &GroupElement, seq: &Arc<SequenceSpec>, j0: u64, depth: u64, cfg: &Config) -> Result<Vec<TraceEntry>> {
    let schemes = SchemeFamily::uniform(consecutive(j0, depth));
    (0..=depth)
        .map(|n| {
            let expr = NeighborhoodExpr::sum_prefix(vec![seq.clone()], schemes.clone(), n);
            Ok(TraceEntry {
                depth: n,
                verdict: member(x, &expr, cfg)?,
            })
        })
        .collect()
}

/// Sampled sufficient check that an integer sequence separates points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TSequenceCheck {
    /// Every sampled `x` has a witness with a closed-form guarantee at `depth`.
    CertifiedSeparated { depth: u64, samples: Vec<(BigInt, u64)> },
    Unknown { reason: String },
}

impl TSequenceCheck {
    pub fn to_json(&self) -> Value {
        match self {
            TSequenceCheck::CertifiedSeparated { depth, samples } => json::obj([
                ("status", Value::from("certifiedSeparated")),
                ("depth", Value::from(*depth)),
                (
                    "samples",
                    Value::Array(
                        samples
                            .iter()
                            .map(|(x, j0)| json::obj([("x", json::bigint_json(x)), ("start", Value::from(*j0))]))
                            .collect(),
                    ),
                ),
            ]),
            TSequenceCheck::Unknown { reason } => json::obj([
                ("status", Value::from("unknown")),
                ("reason", Value::from(reason.clone())),
            ]),
        }
    }
}

/// Runs [`separation_witness`] at depth `⌊ρ⌋ − 2` for every `0 < |x| ≤ bound`.
pub fn check_tsequence_certificate(seq: &Arc<SequenceSpec>, bound: u64, cfg: &Config) -> TSequenceCheck {
    let unknown = |reason: String| TSequenceCheck::Unknown { reason };
    if seq.group != GroupSpec::Int {
        return unknown(format!("`{}` is not an integer sequence", seq.id));
    }
    if let Generator::Table(values) = &seq.generator {
        return unknown(format!(
            "`{}` is the identity from index {} on; such a trivial sequence converges in the discrete topology, so separation is automatic",
            seq.id,
            values.len()
        ));
    }
    let cert = match checked_ratio(seq) {
        Ok(c) => c,
        Err(e) => return unknown(e.to_string()),
    };
    let floor = cert.rho.numer().div_floor(cert.rho.denom());
    let depth = floor.to_i64().unwrap_or(i64::MAX) - 2;
    if depth < 1 {
        return unknown(format!("depth budget ⌊ρ⌋ − 2 = {depth} is insufficient"));
    }
    let depth = depth as u64;
    let mut samples = Vec::new();
    for m in 1..=bound as i64 {
        for x in [m, -m] {
            match separation_witness(&GroupElement::int(x), seq, depth, cfg) {
                Ok(WitnessReport {
                    closed_form: Some(_),
                    scheme,
                    ..
                }) => samples.push((BigInt::from(x), scheme.value(0))),
                Ok(_) => return unknown(format!("no closed-form guarantee for x = {x}")),
                Err(e) => return unknown(format!("x = {x}: {e}")),
            }
        }
    }
    TSequenceCheck::CertifiedSeparated { depth, samples }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ten() -> Arc<SequenceSpec> {
        Arc::new(SequenceSpec::geometric("geo10", 10, 0).unwrap().with_ratio(10, 0).unwrap())
    }

    #[test]
    fn five_against_powers_of_ten() {
        let r = separation_witness(&GroupElement::int(5), &ten(), 3, &Config::default()).unwrap();
        assert_eq!(r.scheme.prefix(), &[1, 2, 3, 4]);
        let c = r.closed_form.unwrap();
        assert_eq!(c.lower_bound, BigRational::from_integer(7.into()));
        assert!(r.trace.iter().all(|t| !t.verdict.is_in()));
    }

    #[test]
    fn one_at_depth_one() {
        let r = separation_witness(&GroupElement::int(1), &ten(), 1, &Config::default()).unwrap();
        assert_eq!(r.scheme.value(0), 1);
        assert_eq!(r.closed_form.unwrap().lower_bound, BigRational::from_integer(9.into()));
    }

    #[test]
    fn identity_and_missing_certificate() {
        assert!(matches!(
            separation_witness(&GroupElement::int(0), &ten(), 3, &Config::default()),
            Err(Error::IdentityTarget)
        ));
        let plain = Arc::new(SequenceSpec::geometric("geo10", 10, 0).unwrap());
        assert!(matches!(
            separation_witness(&GroupElement::int(5), &plain, 3, &Config::default()),
            Err(Error::NoCertificate(_))
        ));
    }

    #[test]
    fn small_ratio_falls_back_to_exact_search() {
        let two = Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap().with_ratio(2, 0).unwrap());
        let r = separation_witness(&GroupElement::int(3), &two, 2, &Config::default()).unwrap();
        assert!(r.closed_form.is_none());
        assert!(r.trace.iter().all(|t| t.verdict.is_exact_not_in()));
    }

    #[test]
    fn certificate_check_outcomes() {
        let cfg = Config::default();
        assert!(matches!(
            check_tsequence_certificate(&ten(), 20, &cfg),
            TSequenceCheck::CertifiedSeparated { depth: 8, .. }
        ));
        let two = Arc::new(SequenceSpec::geometric("geo2", 2, 0).unwrap().with_ratio(2, 0).unwrap());
        assert!(matches!(check_tsequence_certificate(&two, 10, &cfg), TSequenceCheck::Unknown { .. }));
        let table = Arc::new(SequenceSpec::int_table("t", &[1, 2, 3]));
        match check_tsequence_certificate(&table, 10, &cfg) {
            TSequenceCheck::Unknown { reason } => assert!(reason.contains("discrete")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
