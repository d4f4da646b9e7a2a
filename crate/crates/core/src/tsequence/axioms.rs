//! Finite-stage checks that SP products form a neighborhood base.
//!
//! Each axiom is checked on enumerated truncations. Elements of a derived set
//! come with their decomposition; the check rebuilds the decomposition that
//! places the element in the parent set (relabelling levels, conjugating
//! factors) and then validates it directly: factors recombine to the element,
//! levels are distinct and within depth, and every term index clears the
//! parent scheme. A decomposition that fails validation is retried through the
//! membership search before being reported.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::json;
use crate::neighborhood::admissible::Target;
use crate::neighborhood::{enumerate_with_witnesses, member, Config, Factor, NeighborhoodExpr, Provenance, Witness};
use crate::scheme::{IndexScheme, SchemeFamily};
use crate::sequence::SequenceSpec;

/// How many positions of a derived scheme are checked for monotonicity.
const MONOTONE_PROBE: u64 = 256;

/// Extra inputs for [`check_base_axiom_inclusions`].
#[derive(Debug, Clone, Default)]
pub struct AxiomOptions {
    /// Translators and conjugators; by default every element of the depth-one
    /// truncation.
    pub pool: Option<Vec<GroupElement>>,
    /// How many pool elements serve as conjugators for axiom (e).
    pub conjugator_samples: Option<usize>,
    /// Second scheme for axiom (f); by default `(3, 4, 6, 8, …)`.
    pub other: Option<SchemeFamily>,
    /// Conjugators included in the truncations, beyond those with explicit
    /// scheme entries.
    pub conjugators: Vec<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomOutcome {
    pub axiom: char,
    pub passed: bool,
    /// Elements or element pairs covered by the check.
    pub checked: u64,
    pub counterexample: Option<Value>,
    pub note: String,
}

impl AxiomOutcome {
    pub fn to_json(&self) -> Value {
        json::obj([
            ("axiom", Value::from(self.axiom.to_string())),
            ("passed", Value::from(self.passed)),
            ("checked", Value::from(self.checked)),
            ("counterexample", self.counterexample.clone().unwrap_or(Value::Null)),
            ("note", Value::from(self.note.clone())),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
    /// The derived schemes, by name.
    pub derived: Vec<(String, SchemeFamily)>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("allPassed", Value::from(self.all_passed())),
            ("axioms", Value::Array(self.outcomes.iter().map(|o| o.to_json()).collect())),
            (
                "derivedSchemes",
                Value::Object(self.derived.iter().map(|(k, s)| (k.clone(), s.to_json())).collect()),
            ),
        ])
    }
}

fn relabel(w: &Witness, map: impl Fn(usize) -> usize) -> Vec<Factor> {
    w.factors
        .iter()
        .map(|f| Factor {
            level: f.level.map(&map),
            ..f.clone()
        })
        .collect()
}

fn monotone(s: &SchemeFamily) -> bool {
    s.schemes().all(|x| x.is_strictly_increasing_upto(MONOTONE_PROBE))
}

struct Check {
    axiom: char,
    checked: u64,
    counterexample: Option<Value>,
    note: String,
}

impl Check {
    fn new(axiom: char, note: impl Into<String>) -> Self {
        Check {
            axiom,
            checked: 0,
            counterexample: None,
            note: note.into(),
        }
    }

    fn fail(&mut self, payload: Value) {
        if self.counterexample.is_none() {
            self.counterexample = Some(payload);
        }
    }

    fn done(self) -> AxiomOutcome {
        AxiomOutcome {
            axiom: self.axiom,
            passed: self.counterexample.is_none(),
            checked: self.checked,
            counterexample: self.counterexample,
            note: self.note,
        }
    }
}

/// Verifies axioms (a)–(f) for the SP set of `schemes` at `depth`, with every
/// tail truncated `tail_depth` past its start.
///
/// (a) the identity is in the set; (b) the set is closed under inversion;
/// (c) products of two elements of the `j₁(r) = j(2r+1)` set lie in the set;
/// (d) `x·(j₂ set) ⊆ set` with `j₂(n) = j(k+1+n)` for pool elements `x`;
/// (e) `h⁻¹·(j₃ set)·h ⊆ set` with `j₃(r,i,g) = j(r,i,g·h)` for sampled `h`;
/// (f) the `j₆ = max(j₄, j₅)` set lies in both parent sets.
pub fn check_base_axiom_inclusions(
    family: &[Arc<SequenceSpec>],
    schemes: &SchemeFamily,
    depth: u64,
    tail_depth: u64,
    options: &AxiomOptions,
    cfg: &Config,
) -> Result<AxiomReport> {
    let probe = NeighborhoodExpr::sp_product(family.to_vec(), schemes.clone(), 0, vec![]);
    let group = probe.group()?;
    let mut conjugators: Vec<GroupElement> = schemes.conjugator_keys().into_iter().collect();
    for g in &options.conjugators {
        group.check(g)?;
        if !conjugators.contains(g) {
            conjugators.push(g.clone());
        }
    }
    let truncation = |s: &SchemeFamily, d: u64, conj: &[GroupElement]| {
        enumerate_with_witnesses(
            &NeighborhoodExpr::sp_product(family.to_vec(), s.clone(), d, conj.to_vec()),
            tail_depth,
            cfg,
        )
    };
    let target_at = |d: u64| Target {
        group: &group,
        family,
        schemes,
        depth: d,
    };
    // Validates a rebuilt decomposition, falling back to the search.
    let confirm = |t: &Target, w: &Witness, x: &GroupElement, conj: &[GroupElement]| -> Result<Option<String>> {
        let Some(why) = t.reject(w, x) else { return Ok(None) };
        let fallback = member(x, &t.expr(conj), &Config { strict: false, ..cfg.clone() })?;
        Ok((!fallback.is_in()).then_some(why))
    };
    let payload = |x: &GroupElement, why: String| json::obj([("element", x.to_json()), ("reason", Value::from(why))]);

    let base = truncation(schemes, depth, &conjugators)?;
    let target = target_at(depth);
    let mut outcomes = Vec::new();
    let mut derived = Vec::new();

    // (a)
    let mut a = Check::new('a', "the empty product is the identity");
    a.checked = 1;
    let e = group.identity();
    match base.get(&e) {
        Some(w) if target.reject(w, &e).is_none() => {}
        _ => a.fail(payload(&e, "identity missing from the truncation".into())),
    }
    outcomes.push(a.done());

    // (b)
    let mut b = Check::new('b', "reversing a decomposition and inverting each factor");
    for (x, w) in &base {
        b.checked += 1;
        let inv = x.inverse();
        let factors = w
            .factors
            .iter()
            .rev()
            .map(|f| Factor {
                value: f.value.inverse(),
                level: f.level,
                source: match &f.source {
                    Provenance::Term {
                        sequence,
                        index,
                        exponent,
                        conjugator,
                    } => Provenance::Term {
                        sequence: sequence.clone(),
                        index: *index,
                        exponent: -exponent,
                        conjugator: conjugator.clone(),
                    },
                    other => other.clone(),
                },
            })
            .collect();
        if !base.contains_key(&inv) {
            b.fail(payload(&inv, "inverse missing from the truncation".into()));
        } else if let Some(why) = confirm(&target, &Witness { factors }, &inv, &conjugators)? {
            b.fail(payload(&inv, why));
        }
    }
    outcomes.push(b.done());

    // (c)
    let j1 = schemes.odd_positions();
    derived.push(("j1".to_string(), j1.clone()));
    let mut c = Check::new(
        'c',
        "left factors move to level 2r+1 and right factors to level 2r; a product is placed iff both parts are",
    );
    let t1 = truncation(&j1, depth, &conjugators)?;
    let double = target_at(2 * depth + 1);
    if !monotone(&j1) {
        c.fail(Value::from("j1 is not strictly increasing"));
    }
    // Each part of the rebuilt decomposition is validated on its own; the
    // concatenation recombines to the product by the group law, so this covers
    // every pair. A sample of full products is validated end to end.
    let mut odd_ok = BTreeMap::new();
    let mut even_ok = BTreeMap::new();
    for (x, w) in &t1 {
        let odd = Witness {
            factors: relabel(w, |r| 2 * r + 1),
        };
        let even = Witness {
            factors: relabel(w, |r| 2 * r),
        };
        odd_ok.insert(x.clone(), confirm(&double, &odd, x, &conjugators)?);
        even_ok.insert(x.clone(), confirm(&double, &even, x, &conjugators)?);
    }
    for (x, why) in odd_ok.iter().chain(even_ok.iter()) {
        if let Some(why) = why {
            c.fail(payload(x, why.clone()));
        }
    }
    c.checked = (t1.len() as u64).pow(2);
    for (i, (x, wx)) in t1.iter().enumerate().step_by(t1.len().div_ceil(40).max(1)) {
        for (y, wy) in t1.iter().skip(i).step_by(t1.len().div_ceil(40).max(1)) {
            let z = x.mul(y);
            let mut factors = relabel(wx, |r| 2 * r + 1);
            factors.extend(relabel(wy, |r| 2 * r));
            if let Some(why) = confirm(&double, &Witness { factors }, &z, &conjugators)? {
                c.fail(payload(&z, why));
            }
        }
    }
    outcomes.push(c.done());

    // Pool for (d) and (e).
    let pool: Vec<(GroupElement, Witness)> = match &options.pool {
        Some(p) => {
            let mut out = Vec::new();
            for x in p {
                group.check(x)?;
                match member(x, &target.expr(&conjugators), &Config { strict: false, ..cfg.clone() })? {
                    crate::neighborhood::Verdict::In(w) => out.push((x.clone(), w)),
                    _ => {
                        return Err(Error::InvalidInput(format!(
                            "pool element {x} is not in the neighborhood"
                        )))
                    }
                }
            }
            out
        }
        None => truncation(schemes, depth.min(1), &conjugators)?.into_iter().collect(),
    };

    // (d)
    let mut d = Check::new('d', "k is the highest level of x; the j2 factors move to level k+1+n");
    let mut by_k: BTreeMap<usize, BTreeMap<GroupElement, Witness>> = BTreeMap::new();
    for (x, wx) in &pool {
        let k = wx.factors.iter().filter_map(|f| f.level).max().unwrap_or(0);
        if !by_k.contains_key(&k) {
            let j2 = schemes.shift(k as u64);
            if !monotone(&j2) {
                d.fail(Value::from(format!("j2 for k = {k} is not strictly increasing")));
            }
            derived.push((format!("j2[k={k}]"), j2.clone()));
            by_k.insert(k, truncation(&j2, depth, &conjugators)?);
        }
        let t2 = &by_k[&k];
        let placed = target_at(k as u64 + 1 + depth);
        if let Some(why) = confirm(&placed, wx, x, &conjugators)? {
            d.fail(payload(x, why));
        }
        for (y, wy) in t2 {
            d.checked += 1;
            let shifted = Witness {
                factors: relabel(wy, |q| k + 1 + q),
            };
            if let Some(why) = confirm(&placed, &shifted, y, &conjugators)? {
                d.fail(payload(&x.mul(y), why));
            }
        }
    }
    outcomes.push(d.done());

    // (e)
    let mut ec = Check::new('e', "conjugating each factor by h moves the conjugator g to g·h");
    let samples = options.conjugator_samples.unwrap_or(8).max(1);
    let step = pool.len().div_ceil(samples).max(1);
    for (h, _) in pool.iter().step_by(step) {
        let j3 = schemes.reconjugate(&group, h)?;
        if !monotone(&j3) {
            ec.fail(Value::from(format!("j3 for h = {h} is not strictly increasing")));
        }
        derived.push((format!("j3[h={h}]"), j3.clone()));
        let conj3: Vec<GroupElement> = conjugators.iter().map(|g| g.mul(&h.inverse())).collect();
        let target_conj: Vec<GroupElement> = conj3.iter().chain(std::iter::once(&e)).map(|g| g.mul(h)).collect();
        for (y, wy) in truncation(&j3, depth, &conj3)? {
            ec.checked += 1;
            let z = y.conjugated_by(h);
            let w = Witness {
                factors: wy.factors.iter().map(|f| f.conjugated(h)).collect(),
            };
            if let Some(why) = confirm(&target, &w, &z, &target_conj)? {
                ec.fail(payload(&z, why));
            }
        }
    }
    outcomes.push(ec.done());

    // (f)
    let j5 = options
        .other
        .clone()
        .unwrap_or_else(|| SchemeFamily::uniform(IndexScheme::new(vec![3], 2, 2).expect("valid scheme")));
    let j6 = schemes.max(&j5);
    derived.push(("j5".to_string(), j5.clone()));
    derived.push(("j6".to_string(), j6.clone()));
    let mut f = Check::new('f', "the j6 decompositions are checked against j4 and j5 unchanged");
    if !monotone(&j6) {
        f.fail(Value::from("j6 is not strictly increasing"));
    }
    let other = Target {
        group: &group,
        family,
        schemes: &j5,
        depth,
    };
    for (x, w) in truncation(&j6, depth, &conjugators)? {
        f.checked += 1;
        for t in [&target, &other] {
            if let Some(why) = confirm(t, &w, &x, &conjugators)? {
                f.fail(payload(&x, why));
            }
        }
    }
    outcomes.push(f.done());

    Ok(AxiomReport { outcomes, derived })
}
