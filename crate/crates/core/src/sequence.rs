//! Finitely described sequences `n ↦ u_n` in the carrier groups, their
//! certificates, and the sequence-building constructions: star
//! normalization, interleaving, pair interleaving and conjugation.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{FreeWord, GroupElement, GroupSpec, IntVector};
use crate::json;

/// Growth certificate `u_{n+1} ≥ ρ·u_n > 0` for every `n ≥ onset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCertificate {
    pub rho: BigRational,
    pub onset: u64,
}

impl RatioCertificate {
    pub fn new(rho: BigRational, onset: u64) -> Result<Self> {
        if rho <= BigRational::one() {
            return Err(Error::InvalidInput(format!("ratio {rho} must exceed 1")));
        }
        Ok(RatioCertificate { rho, onset })
    }

    pub fn integer(rho: i64, onset: u64) -> Result<Self> {
        Self::new(BigRational::from_integer(rho.into()), onset)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Certificates {
    pub one_to_one: bool,
    pub identity_free: bool,
    pub ratio: Option<RatioCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// `u_n = base^(n + start)`.
    Geometric { base: BigInt, start: u64 },
    /// `u_n = (n + start)!`.
    Factorial { start: u64 },
    /// `u_n = e_{n+1}` in the integer vectors, or the letter `x_{n+1}`.
    BasisVectors,
    /// Finite table, then the identity forever.
    Table(Vec<GroupElement>),
    /// `d_{kq+i} = parts[i]_k`.
    Interleave(Vec<Arc<SequenceSpec>>),
    /// `d_{2n} = (e, v_n)`, `d_{2n+1} = (u_n, e)`.
    PairInterleave {
        left: Arc<SequenceSpec>,
        right: Arc<SequenceSpec>,
    },
    /// `g⁻¹·u_n·g`.
    Conjugate {
        by: GroupElement,
        inner: Arc<SequenceSpec>,
    },
    /// An integer sequence placed on one coordinate: `u_n·e_coordinate`.
    Embed {
        inner: Arc<SequenceSpec>,
        coordinate: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    pub id: String,
    pub group: GroupSpec,
    pub generator: Generator,
    pub certificates: Certificates,
}

impl SequenceSpec {
    /// Validates that the generator produces values in `group`.
    pub fn new(id: impl Into<String>, group: GroupSpec, generator: Generator) -> Result<Self> {
        let id = id.into();
        let mismatch = |why: String| Err(Error::KindMismatch(format!("sequence `{id}`: {why}")));
        match &generator {
            Generator::Geometric { base, .. } => {
                if group != GroupSpec::Int {
                    return mismatch(format!("geometric sequences live in Z, not {group}"));
                }
                if *base < BigInt::from(2) {
                    return Err(Error::InvalidInput(format!(
                        "sequence `{id}`: geometric base must be at least 2"
                    )));
                }
            }
            Generator::Factorial { .. } => {
                if group != GroupSpec::Int {
                    return mismatch(format!("factorial sequences live in Z, not {group}"));
                }
            }
            Generator::BasisVectors => match group {
                GroupSpec::IntVec | GroupSpec::Free { alphabet: None } => {}
                _ => return mismatch(format!("basis sequence needs Z^N_0 or a countable free group, not {group}")),
            },
            Generator::Table(values) => {
                for v in values {
                    if !group.contains(v) {
                        return mismatch(format!("table value {v} is not in {group}"));
                    }
                }
            }
            Generator::Interleave(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "sequence `{id}`: interleave needs at least one part"
                    )));
                }
                for p in parts {
                    if p.group != group {
                        return mismatch(format!("part `{}` lives in {}, not {group}", p.id, p.group));
                    }
                }
            }
            Generator::PairInterleave { left, right } => {
                let expected = GroupSpec::product(left.group.clone(), right.group.clone())?;
                if expected != group {
                    return mismatch(format!("pair interleave lives in {expected}, not {group}"));
                }
            }
            Generator::Conjugate { by, inner } => {
                if inner.group != group || !group.contains(by) {
                    return mismatch(format!("conjugator {by} and inner `{}` must live in {group}", inner.id));
                }
            }
            Generator::Embed { inner, coordinate } => {
                if inner.group != GroupSpec::Int || group != GroupSpec::IntVec {
                    return mismatch("embedding places an integer sequence into Z^N_0".to_string());
                }
                if *coordinate == 0 {
                    return Err(Error::InvalidInput(format!(
                        "sequence `{id}`: coordinates start at 1"
                    )));
                }
            }
        }
        Ok(SequenceSpec {
            id,
            group,
            generator,
            certificates: Certificates::default(),
        })
    }

    pub fn geometric(id: impl Into<String>, base: i64, start: u64) -> Result<Self> {
        Self::new(
            id,
            GroupSpec::Int,
            Generator::Geometric {
                base: base.into(),
                start,
            },
        )
    }

    pub fn factorial(id: impl Into<String>, start: u64) -> Result<Self> {
        Self::new(id, GroupSpec::Int, Generator::Factorial { start })
    }

    pub fn basis_vectors(id: impl Into<String>) -> Self {
        Self::new(id, GroupSpec::IntVec, Generator::BasisVectors).expect("basis vectors live in Z^N_0")
    }

    pub fn free_letters(id: impl Into<String>) -> Self {
        Self::new(id, GroupSpec::free(None), Generator::BasisVectors).expect("letters live in F")
    }

    pub fn table(id: impl Into<String>, group: GroupSpec, values: Vec<GroupElement>) -> Result<Self> {
        Self::new(id, group, Generator::Table(values))
    }

    pub fn int_table(id: impl Into<String>, values: &[i64]) -> Self {
        let values = values.iter().map(|&v| GroupElement::int(v)).collect();
        Self::table(id, GroupSpec::Int, values).expect("integers live in Z")
    }

    /// Attaches certificates. A ratio certificate is only meaningful on
    /// integer sequences.
    pub fn with_certificates(mut self, certificates: Certificates) -> Result<Self> {
        if certificates.ratio.is_some() && self.group != GroupSpec::Int {
            return Err(Error::KindMismatch(format!(
                "sequence `{}`: ratio certificates need an integer sequence",
                self.id
            )));
        }
        self.certificates = certificates;
        Ok(self)
    }

    pub fn with_ratio(mut self, rho: i64, onset: u64) -> Result<Self> {
        let mut c = self.certificates.clone();
        c.ratio = Some(RatioCertificate::integer(rho, onset)?);
        self = self.with_certificates(c)?;
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        self.group.is_abelian()
    }

    /// The term `u_n`.
    pub fn eval(&self, n: u64) -> GroupElement {
        match &self.generator {
            Generator::Geometric { base, start } => {
                GroupElement::Int(num_traits::pow::pow(base.clone(), exponent(n + start)))
            }
            Generator::Factorial { start } => GroupElement::Int(factorial(n + start)),
            Generator::BasisVectors => match self.group {
                GroupSpec::IntVec => GroupElement::Vector(IntVector::basis(n + 1)),
                _ => GroupElement::Word(FreeWord::letter(n + 1)),
            },
            Generator::Table(values) => match usize::try_from(n).ok().and_then(|i| values.get(i)) {
                Some(v) => v.clone(),
                None => self.group.identity(),
            },
            Generator::Interleave(parts) => {
                let q = parts.len() as u64;
                parts[(n % q) as usize].eval(n / q)
            }
            Generator::PairInterleave { left, right } => {
                if n % 2 == 0 {
                    GroupElement::pair(left.group.identity(), right.eval(n / 2))
                } else {
                    GroupElement::pair(left.eval(n / 2), right.group.identity())
                }
            }
            Generator::Conjugate { by, inner } => inner.eval(n).conjugated_by(by),
            Generator::Embed { inner, coordinate } => match inner.eval(n) {
                GroupElement::Int(c) => GroupElement::Vector(IntVector::from_pairs([(*coordinate, c)])),
                _ => unreachable!("embedded sequences are integer valued"),
            },
        }
    }

    pub fn prefix(&self, len: u64) -> Vec<GroupElement> {
        (0..len).map(|n| self.eval(n)).collect()
    }

    /// `sup_n norm(u_n)` when it is known to be finite.
    pub fn norm_sup(&self) -> Option<BigInt> {
        match &self.generator {
            Generator::Geometric { .. } | Generator::Factorial { .. } => None,
            Generator::BasisVectors => Some(BigInt::one()),
            Generator::Table(values) => Some(values.iter().map(|v| v.norm()).max().unwrap_or_default()),
            Generator::Interleave(parts) => {
                let mut best = BigInt::zero();
                for p in parts {
                    best = best.max(p.norm_sup()?);
                }
                Some(best)
            }
            Generator::PairInterleave { left, right } => Some(left.norm_sup()?.max(right.norm_sup()?)),
            Generator::Conjugate { by, inner } => Some(inner.norm_sup()? + by.norm() * 2),
            Generator::Embed { inner, .. } => inner.norm_sup(),
        }
    }

    pub fn to_json(&self) -> Value {
        let generator = match &self.generator {
            Generator::Geometric { base, start } => json::obj([
                ("kind", Value::from("geometric")),
                ("base", json::bigint_json(base)),
                ("start", Value::from(*start)),
            ]),
            Generator::Factorial { start } => json::obj([
                ("kind", Value::from("factorial")),
                ("start", Value::from(*start)),
            ]),
            Generator::BasisVectors => json::obj([("kind", Value::from("basisVectors"))]),
            Generator::Table(values) => json::obj([
                ("kind", Value::from("table")),
                ("values", Value::Array(values.iter().map(|v| v.to_json()).collect())),
            ]),
            Generator::Interleave(parts) => json::obj([
                ("kind", Value::from("interleave")),
                ("parts", Value::Array(parts.iter().map(|p| p.to_json()).collect())),
            ]),
            Generator::PairInterleave { left, right } => json::obj([
                ("kind", Value::from("pairInterleave")),
                ("left", left.to_json()),
                ("right", right.to_json()),
            ]),
            Generator::Conjugate { by, inner } => json::obj([
                ("kind", Value::from("conjugate")),
                ("by", by.to_json()),
                ("inner", inner.to_json()),
            ]),
            Generator::Embed { inner, coordinate } => json::obj([
                ("kind", Value::from("embed")),
                ("inner", inner.to_json()),
                ("coordinate", Value::from(*coordinate)),
            ]),
        };
        let c = &self.certificates;
        let ratio = match &c.ratio {
            Some(r) => json::obj([
                ("rho", json::rational_json(&r.rho)),
                ("onset", Value::from(r.onset)),
            ]),
            None => Value::Null,
        };
        json::obj([
            ("id", Value::from(self.id.clone())),
            ("group", self.group.to_json()),
            ("generator", generator),
            (
                "certificates",
                json::obj([
                    ("oneToOne", Value::from(c.one_to_one)),
                    ("identityFree", Value::from(c.identity_free)),
                    ("ratio", ratio),
                ]),
            ),
        ])
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)
    }
}

fn exponent(n: u64) -> usize {
    usize::try_from(n).expect("exponent fits in memory")
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Named sequences, in insertion order. Entries may refer to earlier ones.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, Arc<SequenceSpec>>,
    order: Vec<String>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, seq: SequenceSpec) -> Result<Arc<SequenceSpec>> {
        if self.entries.contains_key(&seq.id) {
            return Err(Error::InvalidInput(format!("duplicate sequence id `{}`", seq.id)));
        }
        let seq = Arc::new(seq);
        self.order.push(seq.id.clone());
        self.entries.insert(seq.id.clone(), seq.clone());
        Ok(seq)
    }

    pub fn get(&self, id: &str) -> Result<Arc<SequenceSpec>> {
        self.entries
            .get(id)
            .cloned()
            .ok_or_else(|| Error::UnresolvedSequenceId(id.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<SequenceSpec>> {
        self.order.iter().map(|id| &self.entries[id])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Accepts a bare array of entries or `{"sequences": [...]}`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let (items, base) = match v {
            Value::Array(items) => (items, "catalog".to_string()),
            _ => (
                json::as_array(json::field(v, "sequences", "catalog")?, "catalog.sequences")?,
                "catalog.sequences".to_string(),
            ),
        };
        let mut catalog = Catalog::new();
        for (k, item) in items.iter().enumerate() {
            let seq = catalog.decode_sequence(item, &json::at_index(&base, k))?;
            catalog.insert(seq)?;
        }
        Ok(catalog)
    }

    pub fn to_json(&self) -> Value {
        json::obj([(
            "sequences",
            Value::Array(self.iter().map(|s| s.to_json()).collect()),
        )])
    }

    /// A sequence reference: either an id already in the catalog or an
    /// inline sequence object.
    pub fn resolve(&self, v: &Value, location: &str) -> Result<Arc<SequenceSpec>> {
        match v {
            Value::String(id) => self.get(id),
            _ => Ok(Arc::new(self.decode_sequence(v, location)?)),
        }
    }

    pub fn decode_sequence(&self, v: &Value, location: &str) -> Result<SequenceSpec> {
        json::as_object(v, location)?;
        let id = json::as_str(json::field(v, "id", location)?, &json::at(location, "id"))?.to_string();
        let declared = match json::opt_field(v, "group") {
            Some(g) => Some(GroupSpec::from_json(g, &json::at(location, "group"))?),
            None => None,
        };
        let gloc = json::at(location, "generator");
        let g = json::field(v, "generator", location)?;
        let kind = json::as_str(json::field(g, "kind", &gloc)?, &json::at(&gloc, "kind"))?;
        let start = || -> Result<u64> {
            match json::opt_field(g, "start") {
                Some(s) => json::as_u64(s, &json::at(&gloc, "start")),
                None => Ok(0),
            }
        };
        let (group, generator) = match kind {
            "geometric" => {
                let base = json::as_bigint(json::field(g, "base", &gloc)?, &json::at(&gloc, "base"))?;
                (GroupSpec::Int, Generator::Geometric { base, start: start()? })
            }
            "factorial" => (GroupSpec::Int, Generator::Factorial { start: start()? }),
            "basisVectors" => (declared.clone().unwrap_or(GroupSpec::IntVec), Generator::BasisVectors),
            "table" => {
                let group = declared
                    .clone()
                    .ok_or_else(|| Error::parse(json::at(location, "group"), "table sequences need a group"))?;
                let vloc = json::at(&gloc, "values");
                let values = json::as_array(json::field(g, "values", &gloc)?, &vloc)?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| GroupElement::from_json(&group, x, &json::at_index(&vloc, i)))
                    .collect::<Result<Vec<_>>>()?;
                (group, Generator::Table(values))
            }
            "interleave" => {
                let ploc = json::at(&gloc, "parts");
                let parts = json::as_array(json::field(g, "parts", &gloc)?, &ploc)?
                    .iter()
                    .enumerate()
                    .map(|(i, p)| self.resolve(p, &json::at_index(&ploc, i)))
                    .collect::<Result<Vec<_>>>()?;
                let group = parts
                    .first()
                    .map(|p| p.group.clone())
                    .ok_or_else(|| Error::parse(ploc, "interleave needs at least one part"))?;
                (group, Generator::Interleave(parts))
            }
            "pairInterleave" => {
                let left = self.resolve(json::field(g, "left", &gloc)?, &json::at(&gloc, "left"))?;
                let right = self.resolve(json::field(g, "right", &gloc)?, &json::at(&gloc, "right"))?;
                let group = GroupSpec::product(left.group.clone(), right.group.clone())?;
                (group, Generator::PairInterleave { left, right })
            }
            "conjugate" => {
                let inner = self.resolve(json::field(g, "inner", &gloc)?, &json::at(&gloc, "inner"))?;
                let by = GroupElement::from_json(&inner.group, json::field(g, "by", &gloc)?, &json::at(&gloc, "by"))?;
                (inner.group.clone(), Generator::Conjugate { by, inner })
            }
            "embed" => {
                let inner = self.resolve(json::field(g, "inner", &gloc)?, &json::at(&gloc, "inner"))?;
                let coordinate =
                    json::as_u64(json::field(g, "coordinate", &gloc)?, &json::at(&gloc, "coordinate"))?;
                (GroupSpec::IntVec, Generator::Embed { inner, coordinate })
            }
            other => return Err(Error::parse(json::at(&gloc, "kind"), format!("unknown generator `{other}`"))),
        };
        if let Some(d) = &declared {
            if *d != group {
                return Err(Error::parse(
                    json::at(location, "group"),
                    format!("declared group {d} does not match generator group {group}"),
                ));
            }
        }
        let seq = SequenceSpec::new(id, group, generator)?;
        let certificates = match json::opt_field(v, "certificates") {
            Some(c) => decode_certificates(c, &json::at(location, "certificates"))?,
            None => Certificates::default(),
        };
        seq.with_certificates(certificates)
    }
}

fn decode_certificates(v: &Value, location: &str) -> Result<Certificates> {
    let flag = |name: &str| -> Result<bool> {
        match json::opt_field(v, name) {
            Some(b) => json::as_bool(b, &json::at(location, name)),
            None => Ok(false),
        }
    };
    let ratio = match json::opt_field(v, "ratio") {
        Some(r) => {
            let rloc = json::at(location, "ratio");
            let rho = json::as_rational(json::field(r, "rho", &rloc)?, &json::at(&rloc, "rho"))?;
            let onset = match json::opt_field(r, "onset") {
                Some(o) => json::as_u64(o, &json::at(&rloc, "onset"))?,
                None => 0,
            };
            Some(RatioCertificate::new(rho, onset).map_err(|e| Error::parse(rloc, e.to_string()))?)
        }
        None => None,
    };
    Ok(Certificates {
        one_to_one: flag("oneToOne")?,
        identity_free: flag("identityFree")?,
        ratio,
    })
}

/// Outcome of checking one certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Verified,
    FailedAt(u64),
    StructurallyProven,
}

impl CheckOutcome {
    pub fn holds(self) -> bool {
        !matches!(self, CheckOutcome::FailedAt(_))
    }

    pub fn to_json(self) -> Value {
        match self {
            CheckOutcome::Verified => json::obj([("status", Value::from("verified"))]),
            CheckOutcome::StructurallyProven => json::obj([("status", Value::from("structurallyProven"))]),
            CheckOutcome::FailedAt(n) => json::obj([
                ("status", Value::from("failedAt")),
                ("index", Value::from(n)),
            ]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub one_to_one: CheckOutcome,
    pub identity_free: CheckOutcome,
    /// Present when the sequence declares a ratio certificate.
    pub ratio: Option<CheckOutcome>,
}

impl CertificateReport {
    /// Whether every declared certificate holds.
    pub fn declared_hold(&self, c: &Certificates) -> bool {
        (!c.one_to_one || self.one_to_one.holds())
            && (!c.identity_free || self.identity_free.holds())
            && self.ratio.is_none_or(|r| r.holds())
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("oneToOne", self.one_to_one.to_json()),
            ("identityFree", self.identity_free.to_json()),
            ("ratio", self.ratio.map(|r| r.to_json()).unwrap_or(Value::Null)),
        ])
    }
}

/// Checks injectivity and identity-freeness on the first `probe_depth` terms,
/// and the declared ratio certificate on `onset ≤ n < probe_depth`. Catalog
/// generators report properties that hold by construction as structural.
pub fn verify_certificates(seq: &SequenceSpec, probe_depth: u64) -> CertificateReport {
    let ratio = seq
        .certificates
        .ratio
        .as_ref()
        .map(|r| structural_ratio(seq, r).unwrap_or_else(|| probe_ratio(seq, r, probe_depth)));
    CertificateReport {
        one_to_one: structural_one_to_one(seq).unwrap_or_else(|| probe_one_to_one(seq, probe_depth)),
        identity_free: structural_identity_free(seq).unwrap_or_else(|| probe_identity_free(seq, probe_depth)),
        ratio,
    }
}

fn structural_one_to_one(seq: &SequenceSpec) -> Option<CheckOutcome> {
    match &seq.generator {
        Generator::Geometric { .. } | Generator::BasisVectors => Some(CheckOutcome::StructurallyProven),
        Generator::Factorial { start } if *start >= 1 => Some(CheckOutcome::StructurallyProven),
        // Conjugation is a bijection of the carrier.
        Generator::Conjugate { inner, .. } => structural_one_to_one(inner),
        _ => None,
    }
}

fn structural_identity_free(seq: &SequenceSpec) -> Option<CheckOutcome> {
    match &seq.generator {
        Generator::Geometric { .. } | Generator::Factorial { .. } | Generator::BasisVectors => {
            Some(CheckOutcome::StructurallyProven)
        }
        Generator::Conjugate { inner, .. } | Generator::Embed { inner, .. } => structural_identity_free(inner),
        _ => None,
    }
}

fn structural_ratio(seq: &SequenceSpec, r: &RatioCertificate) -> Option<CheckOutcome> {
    match &seq.generator {
        Generator::Geometric { base, .. } if r.rho <= BigRational::from_integer(base.clone()) => {
            Some(CheckOutcome::StructurallyProven)
        }
        _ => None,
    }
}

fn probe_one_to_one(seq: &SequenceSpec, probe_depth: u64) -> CheckOutcome {
    let mut seen = HashSet::new();
    for n in 0..probe_depth {
        if !seen.insert(seq.eval(n)) {
            return CheckOutcome::FailedAt(n);
        }
    }
    CheckOutcome::Verified
}

fn probe_identity_free(seq: &SequenceSpec, probe_depth: u64) -> CheckOutcome {
    match (0..probe_depth).find(|&n| seq.eval(n).is_identity()) {
        Some(n) => CheckOutcome::FailedAt(n),
        None => CheckOutcome::Verified,
    }
}

fn probe_ratio(seq: &SequenceSpec, r: &RatioCertificate, probe_depth: u64) -> CheckOutcome {
    let int = |n: u64| match seq.eval(n) {
        GroupElement::Int(v) => v,
        _ => unreachable!("ratio certificates are only attached to integer sequences"),
    };
    let (p, q) = (r.rho.numer(), r.rho.denom());
    for n in r.onset..probe_depth {
        let (a, b) = (int(n), int(n + 1));
        if !a.is_positive() || &b * q < p * &a {
            return CheckOutcome::FailedAt(n);
        }
    }
    CheckOutcome::Verified
}

/// Output of star normalization: a one-to-one, identity-free table together
/// with the original index of each surviving term.
#[derive(Debug, Clone)]
pub struct StarNormalized {
    pub sequence: SequenceSpec,
    pub index_map: Vec<u64>,
}

/// Scans the first `probe_depth` terms, dropping identity terms and every
/// repeat of an already retained value.
pub fn star_normalize(seq: &SequenceSpec, probe_depth: u64) -> Result<StarNormalized> {
    if probe_depth == 0 {
        return Err(Error::InvalidInput("probe depth must be at least 1".into()));
    }
    let mut seen = HashSet::new();
    let mut values = Vec::new();
    let mut index_map = Vec::new();
    for n in 0..probe_depth {
        let u = seq.eval(n);
        if u.is_identity() || !seen.insert(u.clone()) {
            continue;
        }
        values.push(u);
        index_map.push(n);
    }
    if values.is_empty() {
        return Err(Error::TrivialSequence(seq.id.clone()));
    }
    let sequence = SequenceSpec::table(format!("{}*", seq.id), seq.group.clone(), values)?
        .with_certificates(Certificates {
            one_to_one: true,
            identity_free: true,
            ratio: None,
        })?;
    Ok(StarNormalized { sequence, index_map })
}

/// `d_{kq+i} = seqs[i]_k`. A single input is returned unchanged.
pub fn interleave_finite(seqs: &[Arc<SequenceSpec>]) -> Result<SequenceSpec> {
    let first = seqs
        .first()
        .ok_or_else(|| Error::InvalidInput("interleaving needs at least one sequence".into()))?;
    if seqs.len() == 1 {
        return Ok((**first).clone());
    }
    let ids: Vec<&str> = seqs.iter().map(|s| s.id.as_str()).collect();
    let id = format!("interleave({})", ids.join(","));
    let identity_free = seqs
        .iter()
        .all(|s| structural_identity_free(s).is_some() || s.certificates.identity_free);
    SequenceSpec::new(id, first.group.clone(), Generator::Interleave(seqs.to_vec()))?.with_certificates(
        Certificates {
            one_to_one: false,
            identity_free,
            ratio: None,
        },
    )
}

/// `d_{2n} = (e_G, v_n)` and `d_{2n+1} = (u_n, e_H)`.
pub fn pair_interleave(u: Arc<SequenceSpec>, v: Arc<SequenceSpec>) -> Result<SequenceSpec> {
    let id = format!("pair({},{})", u.id, v.id);
    let group = GroupSpec::product(u.group.clone(), v.group.clone())?;
    SequenceSpec::new(id, group, Generator::PairInterleave { left: u, right: v })
}

/// `n ↦ g⁻¹·u_n·g`; on abelian carriers the input is returned unchanged.
pub fn conjugate_sequence(g: &GroupElement, seq: Arc<SequenceSpec>) -> Result<SequenceSpec> {
    seq.group.check(g)?;
    if seq.is_abelian() || g.is_identity() {
        return Ok((*seq).clone());
    }
    let id = format!("conj[{g}]({})", seq.id);
    let certificates = Certificates {
        one_to_one: seq.certificates.one_to_one,
        identity_free: seq.certificates.identity_free,
        ratio: None,
    };
    SequenceSpec::new(
        id,
        seq.group.clone(),
        Generator::Conjugate {
            by: g.clone(),
            inner: seq,
        },
    )?
    .with_certificates(certificates)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(seq: &SequenceSpec, len: u64) -> Vec<i64> {
        seq.prefix(len)
            .into_iter()
            .map(|v| match v {
                GroupElement::Int(n) => i64::try_from(n).unwrap(),
                _ => panic!("not an integer"),
            })
            .collect()
    }

    #[test]
    fn catalog_generators() {
        assert_eq!(SequenceSpec::geometric("g", 2, 0).unwrap().eval(4), GroupElement::int(16));
        assert_eq!(SequenceSpec::factorial("f", 1).unwrap().eval(2), GroupElement::int(6));
        assert_eq!(SequenceSpec::basis_vectors("e").eval(0), GroupElement::vector([(1, 1)]));
        assert_eq!(SequenceSpec::free_letters("x").eval(2), GroupElement::word(&[(3, 1)]));
        let t = SequenceSpec::int_table("t", &[4, 5]);
        assert_eq!(ints(&t, 4), vec![4, 5, 0, 0]);
    }

    #[test]
    fn star_normalize_drops_identities_and_repeats() {
        let s = SequenceSpec::int_table("s", &[0, 5, 5, 7, 0, 9]);
        let out = star_normalize(&s, 6).unwrap();
        assert_eq!(ints(&out.sequence, 3), vec![5, 7, 9]);
        assert_eq!(out.index_map, vec![1, 3, 5]);

        let s = SequenceSpec::int_table("s", &[1, 2, 3, 4]);
        let out = star_normalize(&s, 4).unwrap();
        assert_eq!(ints(&out.sequence, 4), vec![1, 2, 3, 4]);
        assert_eq!(out.index_map, vec![0, 1, 2, 3]);

        let s = SequenceSpec::int_table("s", &[0, 0, 0]);
        assert_eq!(star_normalize(&s, 3).unwrap_err().code(), "TrivialSequence");
    }

    #[test]
    fn interleave_examples() {
        let a = Arc::new(SequenceSpec::geometric("a", 2, 0).unwrap());
        let b = Arc::new(SequenceSpec::geometric("b", 3, 0).unwrap());
        let d = interleave_finite(&[a.clone(), b]).unwrap();
        assert_eq!(ints(&d, 8), vec![1, 1, 2, 3, 4, 9, 8, 27]);

        let same = interleave_finite(&[a.clone()]).unwrap();
        assert_eq!(ints(&same, 10), ints(&a, 10));

        let t = |id: &str, v: i64| Arc::new(SequenceSpec::int_table(id, &[v]));
        let d = interleave_finite(&[t("a", 7), t("b", 8), t("c", 9)]).unwrap();
        assert_eq!(ints(&d, 3), vec![7, 8, 9]);
    }

    #[test]
    fn interleave_rejects_mixed_groups() {
        let a = Arc::new(SequenceSpec::geometric("a", 2, 0).unwrap());
        let e = Arc::new(SequenceSpec::basis_vectors("e"));
        assert_eq!(interleave_finite(&[a, e]).unwrap_err().code(), "KindMismatch");
    }

    #[test]
    fn pair_interleave_formula() {
        let u = Arc::new(SequenceSpec::geometric("u", 2, 0).unwrap());
        let v = Arc::new(SequenceSpec::factorial("v", 1).unwrap());
        let d = pair_interleave(u, v).unwrap();
        assert_eq!(d.eval(0), GroupElement::pair(GroupElement::int(0), GroupElement::int(1)));
        assert_eq!(d.eval(1), GroupElement::pair(GroupElement::int(1), GroupElement::int(0)));
        assert_eq!(d.eval(2), GroupElement::pair(GroupElement::int(0), GroupElement::int(2)));
    }

    #[test]
    fn conjugation() {
        let x = Arc::new(SequenceSpec::free_letters("x"));
        let g = GroupElement::word(&[(1, 1)]);
        let c = Arc::new(conjugate_sequence(&g, x.clone()).unwrap());
        assert_eq!(c.eval(1), GroupElement::word(&[(1, -1), (2, 1), (1, 1)]));
        let back = conjugate_sequence(&g.inverse(), c).unwrap();
        for n in 0..6 {
            assert_eq!(back.eval(n), x.eval(n));
        }

        let a = Arc::new(SequenceSpec::geometric("a", 2, 0).unwrap());
        let same = conjugate_sequence(&GroupElement::int(5), a.clone()).unwrap();
        assert_eq!(same, *a);
    }

    #[test]
    fn certificate_checks() {
        let g = SequenceSpec::geometric("g", 2, 0).unwrap().with_ratio(2, 0).unwrap();
        assert_eq!(verify_certificates(&g, 10).ratio, Some(CheckOutcome::StructurallyProven));

        let t = SequenceSpec::int_table("t", &[1, 1, 2]);
        assert_eq!(verify_certificates(&t, 3).one_to_one, CheckOutcome::FailedAt(1));

        let f = SequenceSpec::factorial("f", 1).unwrap().with_ratio(3, 2).unwrap();
        assert_eq!(verify_certificates(&f, 20).ratio, Some(CheckOutcome::Verified));
        let f = SequenceSpec::factorial("f", 1).unwrap().with_ratio(3, 0).unwrap();
        assert_eq!(verify_certificates(&f, 20).ratio, Some(CheckOutcome::FailedAt(0)));

        let f0 = SequenceSpec::factorial("f0", 0).unwrap();
        assert_eq!(verify_certificates(&f0, 5).one_to_one, CheckOutcome::FailedAt(1));
    }

    #[test]
    fn ratio_needs_integer_sequence() {
        let e = SequenceSpec::basis_vectors("e");
        assert!(e.with_ratio(2, 0).is_err());
    }

    #[test]
    fn catalog_round_trip() {
        let text = r#"{"sequences": [
            {"id": "geo2", "generator": {"kind": "geometric", "base": "2"},
             "certificates": {"oneToOne": true, "identityFree": true, "ratio": {"rho": "2", "onset": 0}}},
            {"id": "fact", "generator": {"kind": "factorial", "start": 1}},
            {"id": "both", "generator": {"kind": "interleave", "parts": ["geo2", "fact"]}},
            {"id": "pair", "generator": {"kind": "pairInterleave", "left": "geo2", "right": "fact"}},
            {"id": "tab", "group": {"kind": "intVecGroup"},
             "generator": {"kind": "table", "values": [[[2, "3"]]]}}
        ]}"#;
        let catalog = Catalog::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(catalog.len(), 5);
        assert_eq!(catalog.get("both").unwrap().eval(3), GroupElement::int(2));
        let again = Catalog::from_json(&catalog.to_json()).unwrap();
        for (a, b) in catalog.iter().zip(again.iter()) {
            assert_eq!(a, b);
        }
        assert_eq!(catalog.get("nope").unwrap_err().code(), "UnresolvedSequenceId");
    }
}
