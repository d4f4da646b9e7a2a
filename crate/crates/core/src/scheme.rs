//! Strictly increasing index functions in finite form, and families of them
//! keyed by sequence and conjugator.
//!
//! An [`IndexScheme`] is a finite prefix followed by an affine tail
//! `j_n = a·n + b`. The class is closed under every transform used to derive
//! new neighborhoods from old ones: taking odd positions, shifting, re-keying
//! conjugators, and pointwise max/min.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::json;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexScheme {
    prefix: Vec<u64>,
    a: u64,
    b: i64,
}

impl IndexScheme {
    /// `j_n = prefix[n]` for `n < prefix.len()`, else `a·n + b`.
    pub fn new(prefix: Vec<u64>, a: u64, b: i64) -> Result<Self> {
        let s = IndexScheme { prefix, a, b };
        s.validate()?;
        Ok(s)
    }

    /// `j_n = a·n + b`.
    pub fn affine(a: u64, b: i64) -> Result<Self> {
        Self::new(Vec::new(), a, b)
    }

    /// `j_n = n + start`.
    pub fn from_start(start: u64) -> Self {
        Self::affine(1, start as i64).expect("unit-step schemes are increasing")
    }

    /// The given prefix, continued in steps of one.
    pub fn from_prefix(prefix: Vec<u64>) -> Result<Self> {
        let b = match prefix.last() {
            Some(&last) => last as i64 + 1 - prefix.len() as i64,
            None => 0,
        };
        Self::new(prefix, 1, b)
    }

    fn validate(&self) -> Result<()> {
        if self.a == 0 {
            return Err(Error::InvalidScheme("tail slope must be at least 1".into()));
        }
        if self.prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScheme(format!(
                "prefix {:?} is not strictly increasing",
                self.prefix
            )));
        }
        let len = self.prefix.len() as i128;
        let first_tail = self.a as i128 * len + self.b as i128;
        if first_tail < 0 {
            return Err(Error::InvalidScheme(format!(
                "tail value {first_tail} at position {len} is negative"
            )));
        }
        if let Some(&last) = self.prefix.last() {
            if first_tail <= last as i128 {
                return Err(Error::InvalidScheme(format!(
                    "tail value {first_tail} at position {len} does not exceed prefix end {last}"
                )));
            }
        }
        Ok(())
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// `(a, b)` of the affine tail.
    pub fn tail(&self) -> (u64, i64) {
        (self.a, self.b)
    }

    pub fn value(&self, n: u64) -> u64 {
        match usize::try_from(n).ok().and_then(|i| self.prefix.get(i)) {
            Some(&v) => v,
            None => {
                let v = self.a as i128 * n as i128 + self.b as i128;
                u64::try_from(v).expect("scheme values are nonnegative")
            }
        }
    }

    pub fn values(&self, len: u64) -> Vec<u64> {
        (0..len).map(|n| self.value(n)).collect()
    }

    /// Checks `j_n < j_{n+1}` for `n < len`; by construction this always holds.
    pub fn is_strictly_increasing_upto(&self, len: u64) -> bool {
        (0..len).all(|n| self.value(n) < self.value(n + 1))
    }

    /// `r ↦ j(2r+1)`.
    pub fn odd_positions(&self) -> IndexScheme {
        let new_len = self.prefix.len() / 2;
        let prefix = (0..new_len as u64).map(|r| self.value(2 * r + 1)).collect();
        IndexScheme {
            prefix,
            a: 2 * self.a,
            b: self.a as i64 + self.b,
        }
    }

    /// `n ↦ j(k+1+n)`.
    pub fn shift(&self, k: u64) -> IndexScheme {
        let skip = usize::try_from(k + 1).unwrap_or(usize::MAX);
        let prefix = self.prefix.iter().skip(skip).copied().collect();
        IndexScheme {
            prefix,
            a: self.a,
            b: self.b + self.a as i64 * (k as i64 + 1),
        }
    }

    /// Splits `l` into `(l′, l″)` with `l(2k) = 2l′(k)+1` and `l(2k+1) = 2l″(k)`,
    /// or `None` when the parities do not have that form.
    pub fn parity_split(&self) -> Option<(IndexScheme, IndexScheme)> {
        let odd_b = self.b.rem_euclid(2) == 1;
        if self.a % 2 == 0 || !odd_b {
            return None;
        }
        for (n, &v) in self.prefix.iter().enumerate() {
            if (v % 2 == 1) != (n % 2 == 0) {
                return None;
            }
        }
        let even = self.prefix.iter().step_by(2).map(|v| (v - 1) / 2).collect();
        let odd = self.prefix.iter().skip(1).step_by(2).map(|v| v / 2).collect();
        let a = self.a as i64;
        Some((
            IndexScheme { prefix: even, a: self.a, b: (self.b - 1) / 2 },
            IndexScheme { prefix: odd, a: self.a, b: (a + self.b) / 2 },
        ))
    }

    /// Pointwise maximum.
    pub fn max(&self, other: &IndexScheme) -> IndexScheme {
        self.combine(other, true)
    }

    /// Pointwise minimum.
    pub fn min(&self, other: &IndexScheme) -> IndexScheme {
        self.combine(other, false)
    }

    fn combine(&self, other: &IndexScheme, take_max: bool) -> IndexScheme {
        let pick = |x: u64, y: u64| if take_max { x.max(y) } else { x.min(y) };
        // Past both prefixes each side is affine; find where one tail wins for good.
        let (x, y) = ((self.a as i128, self.b as i128), (other.a as i128, other.b as i128));
        let winner_is_self = if take_max { x >= y } else { x <= y };
        let (w, l) = if winner_is_self { (x, y) } else { (y, x) };
        let mut start = self.prefix.len().max(other.prefix.len()) as i128;
        if w.0 != l.0 {
            // w.0·n + w.1 vs l.0·n + l.1, slopes differ: winner holds from the crossing on.
            let num = if take_max { l.1 - w.1 } else { w.1 - l.1 };
            let den = (w.0 - l.0).abs();
            let cross = num.div_euclid(den) + i128::from(num.rem_euclid(den) != 0);
            start = start.max(cross);
        }
        let start = start as u64;
        let prefix = (0..start).map(|n| pick(self.value(n), other.value(n))).collect();
        let (a, b) = (w.0 as u64, w.1 as i64);
        IndexScheme { prefix, a, b }
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("prefix", Value::Array(self.prefix.iter().map(|&v| Value::from(v)).collect())),
            (
                "tail",
                json::obj([("a", Value::from(self.a)), ("b", Value::from(self.b))]),
            ),
        ])
    }

    /// `{"prefix": [...], "tail": {"a": .., "b": ..}}`; a missing tail
    /// continues the prefix in unit steps, and a bare array is a prefix.
    pub fn from_json(v: &Value, location: &str) -> Result<Self> {
        let (prefix_v, tail) = match v {
            Value::Array(_) => (Some(v), None),
            _ => (json::opt_field(v, "prefix"), json::opt_field(v, "tail")),
        };
        let mut prefix = Vec::new();
        if let Some(p) = prefix_v {
            let ploc = json::at(location, "prefix");
            for (i, x) in json::as_array(p, &ploc)?.iter().enumerate() {
                prefix.push(json::as_u64(x, &json::at_index(&ploc, i))?);
            }
        }
        let scheme = match tail {
            Some(t) => {
                let tloc = json::at(location, "tail");
                let a = json::as_u64(json::field(t, "a", &tloc)?, &json::at(&tloc, "a"))?;
                let b = json::as_i64(json::field(t, "b", &tloc)?, &json::at(&tloc, "b"))?;
                IndexScheme::new(prefix, a, b)
            }
            None => IndexScheme::from_prefix(prefix),
        };
        scheme.map_err(|e| Error::parse(location, e.to_string()))
    }
}

impl Default for IndexScheme {
    fn default() -> Self {
        IndexScheme::from_start(0)
    }
}

impl fmt::Display for IndexScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for v in &self.prefix {
            write!(f, "{v}, ")?;
        }
        write!(f, "then {}n{:+})", self.a, self.b)
    }
}

/// Index schemes keyed by sequence id and conjugator. Lookups fall back from
/// `(sequence, conjugator)` to conjugator, to sequence, to the default.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemeFamily {
    pub default: IndexScheme,
    pub per_sequence: BTreeMap<String, IndexScheme>,
    pub per_conjugator: BTreeMap<GroupElement, IndexScheme>,
    pub per_pair: BTreeMap<(String, GroupElement), IndexScheme>,
}

impl SchemeFamily {
    pub fn uniform(default: IndexScheme) -> Self {
        SchemeFamily {
            default,
            ..Default::default()
        }
    }

    pub fn with_sequence(mut self, id: impl Into<String>, scheme: IndexScheme) -> Self {
        self.per_sequence.insert(id.into(), scheme);
        self
    }

    pub fn with_conjugator(mut self, g: GroupElement, scheme: IndexScheme) -> Self {
        self.per_conjugator.insert(g, scheme);
        self
    }

    pub fn with_pair(mut self, id: impl Into<String>, g: GroupElement, scheme: IndexScheme) -> Self {
        self.per_pair.insert((id.into(), g), scheme);
        self
    }

    /// The scheme governing sequence `seq` conjugated by `g`.
    pub fn lookup(&self, seq: &str, g: &GroupElement) -> &IndexScheme {
        self.lookup_opt(Some(seq), Some(g))
    }

    /// `None` stands for a sequence or conjugator with no explicit entry.
    fn lookup_opt(&self, seq: Option<&str>, g: Option<&GroupElement>) -> &IndexScheme {
        if let (Some(s), Some(g)) = (seq, g) {
            if let Some(x) = self.per_pair.get(&(s.to_string(), g.clone())) {
                return x;
            }
        }
        if let Some(x) = g.and_then(|g| self.per_conjugator.get(g)) {
            return x;
        }
        if let Some(x) = seq.and_then(|s| self.per_sequence.get(s)) {
            return x;
        }
        &self.default
    }

    /// `j(k, seq, g)`.
    pub fn value(&self, k: u64, seq: &str, g: &GroupElement) -> u64 {
        self.lookup(seq, g).value(k)
    }

    /// Every conjugator with an explicit entry.
    pub fn conjugator_keys(&self) -> BTreeSet<GroupElement> {
        self.per_conjugator
            .keys()
            .cloned()
            .chain(self.per_pair.keys().map(|(_, g)| g.clone()))
            .collect()
    }

    fn sequence_keys(&self) -> BTreeSet<String> {
        self.per_sequence
            .keys()
            .cloned()
            .chain(self.per_pair.keys().map(|(s, _)| s.clone()))
            .collect()
    }

    fn map_schemes(&self, f: impl Fn(&IndexScheme) -> IndexScheme) -> SchemeFamily {
        SchemeFamily {
            default: f(&self.default),
            per_sequence: self.per_sequence.iter().map(|(k, s)| (k.clone(), f(s))).collect(),
            per_conjugator: self.per_conjugator.iter().map(|(k, s)| (k.clone(), f(s))).collect(),
            per_pair: self.per_pair.iter().map(|(k, s)| (k.clone(), f(s))).collect(),
        }
    }

    /// Every stored scheme, default first.
    pub fn schemes(&self) -> impl Iterator<Item = &IndexScheme> {
        std::iter::once(&self.default)
            .chain(self.per_sequence.values())
            .chain(self.per_conjugator.values())
            .chain(self.per_pair.values())
    }

    /// `j₁(r, i, g) = j(2r+1, i, g)`.
    pub fn odd_positions(&self) -> SchemeFamily {
        self.map_schemes(IndexScheme::odd_positions)
    }

    /// `j₂(n, i, g) = j(k+1+n, i, g)`.
    pub fn shift(&self, k: u64) -> SchemeFamily {
        self.map_schemes(|s| s.shift(k))
    }

    /// `j₃(r, i, g) = j(r, i, g·h)`: the entry stored at conjugator `c` moves
    /// to `c·h⁻¹`.
    pub fn reconjugate(&self, group: &GroupSpec, h: &GroupElement) -> Result<SchemeFamily> {
        let h_inv = group.invert(h)?;
        let rekey = |c: &GroupElement| group.op(c, &h_inv);
        let mut out = SchemeFamily {
            default: self.default.clone(),
            per_sequence: self.per_sequence.clone(),
            ..Default::default()
        };
        for (c, s) in &self.per_conjugator {
            out.per_conjugator.insert(rekey(c)?, s.clone());
        }
        for ((id, c), s) in &self.per_pair {
            out.per_pair.insert((id.clone(), rekey(c)?), s.clone());
        }
        Ok(out)
    }

    /// Pointwise maximum `j₆ = max(j₄, j₅)`, exact on every `(k, i, g)`.
    pub fn max(&self, other: &SchemeFamily) -> SchemeFamily {
        let seqs: BTreeSet<String> = self.sequence_keys().union(&other.sequence_keys()).cloned().collect();
        let conjs: BTreeSet<GroupElement> =
            self.conjugator_keys().union(&other.conjugator_keys()).cloned().collect();
        let both = |s: Option<&str>, g: Option<&GroupElement>| {
            self.lookup_opt(s, g).max(other.lookup_opt(s, g))
        };
        let mut out = SchemeFamily::uniform(both(None, None));
        for s in &seqs {
            out.per_sequence.insert(s.clone(), both(Some(s), None));
        }
        for g in &conjs {
            out.per_conjugator.insert(g.clone(), both(None, Some(g)));
            for s in &seqs {
                out.per_pair.insert((s.clone(), g.clone()), both(Some(s), Some(g)));
            }
        }
        out
    }

    /// `m(k, i) = min_g j(k, i, g)`, the collapse used on abelian carriers.
    /// Any conjugator without an entry reaches the sequence-level scheme.
    pub fn min_over_conjugators(&self, seq: &str) -> IndexScheme {
        let mut m = self.lookup_opt(Some(seq), None).clone();
        for g in self.conjugator_keys() {
            m = m.min(self.lookup_opt(Some(seq), Some(&g)));
        }
        m
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("default", self.default.to_json()),
            (
                "perSequence",
                Value::Object(
                    self.per_sequence
                        .iter()
                        .map(|(k, s)| (k.clone(), s.to_json()))
                        .collect(),
                ),
            ),
            (
                "perConjugator",
                Value::Array(
                    self.per_conjugator
                        .iter()
                        .map(|(g, s)| Value::Array(vec![g.to_json(), s.to_json()]))
                        .collect(),
                ),
            ),
            (
                "perPair",
                Value::Array(
                    self.per_pair
                        .iter()
                        .map(|((id, g), s)| Value::Array(vec![Value::from(id.clone()), g.to_json(), s.to_json()]))
                        .collect(),
                ),
            ),
        ])
    }

    /// Accepts a full family object or a single scheme used as the default.
    pub fn from_json(v: &Value, group: &GroupSpec, location: &str) -> Result<Self> {
        let Some(default_v) = json::opt_field(v, "default") else {
            return Ok(SchemeFamily::uniform(IndexScheme::from_json(v, location)?));
        };
        let mut out = SchemeFamily::uniform(IndexScheme::from_json(default_v, &json::at(location, "default"))?);
        if let Some(m) = json::opt_field(v, "perSequence") {
            let mloc = json::at(location, "perSequence");
            for (id, s) in json::as_object(m, &mloc)? {
                out.per_sequence
                    .insert(id.clone(), IndexScheme::from_json(s, &json::at(&mloc, id))?);
            }
        }
        if let Some(m) = json::opt_field(v, "perConjugator") {
            let mloc = json::at(location, "perConjugator");
            for (i, entry) in json::as_array(m, &mloc)?.iter().enumerate() {
                let eloc = json::at_index(&mloc, i);
                let items = json::as_array(entry, &eloc)?;
                if items.len() != 2 {
                    return Err(Error::parse(eloc, "expected [conjugator, scheme]"));
                }
                let g = GroupElement::from_json(group, &items[0], &eloc)?;
                out.per_conjugator.insert(g, IndexScheme::from_json(&items[1], &eloc)?);
            }
        }
        if let Some(m) = json::opt_field(v, "perPair") {
            let mloc = json::at(location, "perPair");
            for (i, entry) in json::as_array(m, &mloc)?.iter().enumerate() {
                let eloc = json::at_index(&mloc, i);
                let items = json::as_array(entry, &eloc)?;
                if items.len() != 3 {
                    return Err(Error::parse(eloc, "expected [sequenceId, conjugator, scheme]"));
                }
                let id = json::as_str(&items[0], &eloc)?.to_string();
                let g = GroupElement::from_json(group, &items[1], &eloc)?;
                out.per_pair.insert((id, g), IndexScheme::from_json(&items[2], &eloc)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_scheme() -> impl Strategy<Value = IndexScheme> {
        (proptest::collection::vec(1u64..5, 0..6), 0u64..4, 1u64..4, 0i64..4).prop_map(
            |(gaps, start, a, extra)| {
                let mut prefix = Vec::new();
                let mut cur = start;
                for g in gaps {
                    prefix.push(cur);
                    cur += g;
                }
                // Choose b so the tail starts strictly above the prefix.
                let len = prefix.len() as i64;
                let floor = prefix.last().map_or(0, |&l| l as i64 + 1);
                let b = floor - a as i64 * len + extra;
                IndexScheme::new(prefix, a, b).unwrap()
            },
        )
    }

    #[test]
    fn rejects_non_increasing() {
        assert!(IndexScheme::new(vec![0, 2, 2], 1, 5).is_err());
        assert!(IndexScheme::new(vec![0, 5], 1, 3).is_err());
        assert!(IndexScheme::new(vec![], 0, 1).is_err());
        assert!(IndexScheme::new(vec![], 1, -1).is_err());
    }

    #[test]
    fn from_prefix_continues() {
        let s = IndexScheme::from_prefix(vec![1, 2, 3, 4]).unwrap();
        assert_eq!(s.values(7), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn transforms_by_hand() {
        let j = IndexScheme::new(vec![0, 3, 4], 2, 1).unwrap(); // 0,3,4,7,9,11,...
        assert_eq!(j.odd_positions().values(4), vec![3, 7, 11, 15]);
        assert_eq!(j.shift(1).values(4), vec![4, 7, 9, 11]);
        let other = IndexScheme::from_start(2); // 2,3,4,5,...
        assert_eq!(j.max(&other).values(6), vec![2, 3, 4, 7, 9, 11]);
        assert_eq!(j.min(&other).values(6), vec![0, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn family_lookup_precedence() {
        let g = GroupElement::word(&[(1, 1)]);
        let fam = SchemeFamily::uniform(IndexScheme::from_start(0))
            .with_sequence("u", IndexScheme::from_start(1))
            .with_conjugator(g.clone(), IndexScheme::from_start(2))
            .with_pair("u", g.clone(), IndexScheme::from_start(3));
        let e = GroupElement::word(&[]);
        assert_eq!(fam.value(0, "v", &e), 0);
        assert_eq!(fam.value(0, "u", &e), 1);
        assert_eq!(fam.value(0, "v", &g), 2);
        assert_eq!(fam.value(0, "u", &g), 3);
        assert_eq!(fam.min_over_conjugators("u").value(0), 1);
        assert_eq!(fam.min_over_conjugators("v").value(0), 0);
    }

    #[test]
    fn reconjugation_rekeys() {
        let f = GroupSpec::free(None);
        let g = GroupElement::word(&[(1, 1)]);
        let h = GroupElement::word(&[(2, 1)]);
        let fam = SchemeFamily::uniform(IndexScheme::from_start(0))
            .with_conjugator(g.clone(), IndexScheme::from_start(5));
        let j3 = fam.reconjugate(&f, &h).unwrap();
        // j3(r, i, g h^-1) = j(r, i, g)
        let key = f.op(&g, &f.invert(&h).unwrap()).unwrap();
        assert_eq!(j3.value(0, "u", &key), 5);
        assert_eq!(j3.value(0, "u", &g), 0);
    }

    #[test]
    fn family_json_round_trip() {
        let g = GroupElement::int(3);
        let fam = SchemeFamily::uniform(IndexScheme::from_start(1))
            .with_sequence("u", IndexScheme::new(vec![0, 4], 3, 1).unwrap())
            .with_conjugator(g.clone(), IndexScheme::from_start(2))
            .with_pair("u", g, IndexScheme::from_start(7));
        let back = SchemeFamily::from_json(&fam.to_json(), &GroupSpec::Int, "s").unwrap();
        assert_eq!(back, fam);
    }

    #[test]
    fn parity_split_by_hand() {
        let l = IndexScheme::new(vec![1, 4, 5], 1, 3).unwrap(); // 1,4,5,6,7,8,...
        let (even, odd) = l.parity_split().unwrap();
        assert_eq!(even.values(4), vec![0, 2, 3, 4]);
        assert_eq!(odd.values(4), vec![2, 3, 4, 5]);
        assert!(IndexScheme::from_start(0).parity_split().is_none());
        assert!(IndexScheme::affine(2, 1).unwrap().parity_split().is_none());
    }

    proptest! {
        #[test]
        fn transforms_stay_increasing(j in arb_scheme(), other in arb_scheme(), k in 0u64..6) {
            for derived in [j.odd_positions(), j.shift(k), j.max(&other), j.min(&other)] {
                derived.validate().unwrap();
                prop_assert!(derived.is_strictly_increasing_upto(40));
            }
        }

        #[test]
        fn transforms_agree_pointwise(j in arb_scheme(), other in arb_scheme(), k in 0u64..6) {
            for n in 0..30u64 {
                prop_assert_eq!(j.odd_positions().value(n), j.value(2 * n + 1));
                prop_assert_eq!(j.shift(k).value(n), j.value(k + 1 + n));
                prop_assert_eq!(j.max(&other).value(n), j.value(n).max(other.value(n)));
                prop_assert_eq!(j.min(&other).value(n), j.value(n).min(other.value(n)));
            }
        }

        #[test]
        fn parity_split_recombines(j in arb_scheme()) {
            if let Some((even, odd)) = j.parity_split() {
                even.validate().unwrap();
                odd.validate().unwrap();
                for k in 0..30u64 {
                    prop_assert_eq!(j.value(2 * k), 2 * even.value(k) + 1);
                    prop_assert_eq!(j.value(2 * k + 1), 2 * odd.value(k));
                }
            } else {
                let fits = (0..40u64).all(|n| j.value(n) % 2 == (1 - n % 2));
                prop_assert!(!fits);
            }
        }

        #[test]
        fn family_max_is_pointwise(
            a in arb_scheme(), b in arb_scheme(), c in arb_scheme(), d in arb_scheme(),
        ) {
            let g = GroupElement::int(1);
            let h = GroupElement::int(2);
            let f1 = SchemeFamily::uniform(a).with_sequence("u", b);
            let f2 = SchemeFamily::uniform(c).with_conjugator(g.clone(), d);
            let m = f1.max(&f2);
            for id in ["u", "v"] {
                for x in [&g, &h] {
                    for n in 0..20u64 {
                        prop_assert_eq!(m.value(n, id, x), f1.value(n, id, x).max(f2.value(n, id, x)));
                    }
                }
            }
        }
    }
}
