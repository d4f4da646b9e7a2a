use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::json;
use crate::neighborhood::{enumerate_truncation, Config, NeighborhoodExpr};
use crate::scheme::SchemeFamily;
use crate::sequence::{star_normalize, verify_certificates, Generator, SequenceSpec};

/// A point of the fan: the apex, or the `index`-th point of one spine.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FanPoint {
    Apex,
    Node { sequence: String, index: u64 },
}

impl FanPoint {
    pub fn node(sequence: impl Into<String>, index: u64) -> Self {
        FanPoint::Node {
            sequence: sequence.into(),
            index,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            FanPoint::Apex => Value::from("apex"),
            FanPoint::Node { sequence, index } => json::obj([
                ("sequence", Value::from(sequence.clone())),
                ("index", Value::from(*index)),
            ]),
        }
    }

    pub fn from_json(v: &Value, location: &str) -> Result<Self> {
        if v.as_str() == Some("apex") {
            return Ok(FanPoint::Apex);
        }
        let sequence = json::as_str(json::field(v, "sequence", location)?, &json::at(location, "sequence"))?;
        let index = json::as_u64(json::field(v, "index", location)?, &json::at(location, "index"))?;
        Ok(FanPoint::node(sequence, index))
    }
}

impl fmt::Display for FanPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanPoint::Apex => write!(f, "apex"),
            FanPoint::Node { sequence, index } => write!(f, "{sequence}[{index}]"),
        }
    }
}

/// `W(β)`: the apex together with every spine cut at `β(u)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FanNeighborhood {
    pub default: u64,
    pub overrides: BTreeMap<String, u64>,
}

impl FanNeighborhood {
    pub fn uniform(default: u64) -> Self {
        FanNeighborhood {
            default,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with(mut self, sequence: impl Into<String>, cut: u64) -> Self {
        self.overrides.insert(sequence.into(), cut);
        self
    }

    pub fn beta(&self, sequence: &str) -> u64 {
        self.overrides.get(sequence).copied().unwrap_or(self.default)
    }

    /// Pointwise maximum of the cuts.
    pub fn max(&self, other: &FanNeighborhood) -> FanNeighborhood {
        let ids: BTreeSet<&String> = self.overrides.keys().chain(other.overrides.keys()).collect();
        FanNeighborhood {
            default: self.default.max(other.default),
            overrides: ids
                .into_iter()
                .map(|id| (id.clone(), self.beta(id).max(other.beta(id))))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let overrides = self
            .overrides
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(*v)))
            .collect::<serde_json::Map<_, _>>();
        json::obj([
            ("default", Value::from(self.default)),
            ("overrides", Value::Object(overrides)),
        ])
    }

    pub fn from_json(v: &Value, location: &str) -> Result<Self> {
        let default = match json::opt_field(v, "default") {
            Some(d) => json::as_u64(d, &json::at(location, "default"))?,
            None => 0,
        };
        let mut out = FanNeighborhood::uniform(default);
        if let Some(o) = json::opt_field(v, "overrides") {
            let here = json::at(location, "overrides");
            for (k, cut) in json::as_object(o, &here)? {
                out.overrides.insert(k.clone(), json::as_u64(cut, &json::at(&here, k))?);
            }
        }
        Ok(out)
    }
}

/// The spines of a fan. Every member is one-to-one and identity-free.
#[derive(Debug, Clone, Default)]
pub struct FanFamily {
    members: BTreeMap<String, Arc<SequenceSpec>>,
    /// For normalized members, the original index of each surviving term.
    index_maps: BTreeMap<String, Vec<u64>>,
}

impl FanFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `seq` as a spine, returning the id it is registered under.
    ///
    /// Sequences whose injectivity or identity-freeness fails on the first
    /// `probe_depth` terms are star-normalized first and registered as `id*`.
    pub fn register(&mut self, seq: Arc<SequenceSpec>, probe_depth: u64) -> Result<String> {
        if let Some(first) = self.members.values().next() {
            if first.group != seq.group {
                return Err(Error::KindMismatch(format!(
                    "fan spines must share a carrier: {} and {}",
                    first.group, seq.group
                )));
            }
        }
        let report = verify_certificates(&seq, probe_depth);
        let (id, seq) = if report.one_to_one.holds() && report.identity_free.holds() {
            (seq.id.clone(), seq)
        } else {
            let normal = star_normalize(&seq, probe_depth)?;
            let id = normal.sequence.id.clone();
            self.index_maps.insert(id.clone(), normal.index_map);
            (id, Arc::new(normal.sequence))
        };
        self.members.insert(id.clone(), seq);
        Ok(id)
    }

    pub fn get(&self, id: &str) -> Result<&Arc<SequenceSpec>> {
        self.members
            .get(id)
            .ok_or_else(|| Error::UnknownSequenceId(id.to_string()))
    }

    pub fn members(&self) -> impl Iterator<Item = &Arc<SequenceSpec>> {
        self.members.values()
    }

    pub fn index_map(&self, id: &str) -> Option<&[u64]> {
        self.index_maps.get(id).map(Vec::as_slice)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `p`: nodes go to their sequence term, the apex to the identity.
    pub fn project(&self, p: &FanPoint) -> Result<GroupElement> {
        match p {
            FanPoint::Apex => {
                let first = self
                    .members
                    .values()
                    .next()
                    .ok_or_else(|| Error::InvalidInput("fan family is empty".into()))?;
                Ok(first.group.identity())
            }
            FanPoint::Node { sequence, index } => Ok(self.get(sequence)?.eval(*index)),
        }
    }

    pub fn to_json(&self) -> Value {
        let members = self
            .members
            .keys()
            .map(|id| {
                json::obj([
                    ("id", Value::from(id.clone())),
                    (
                        "indexMap",
                        self.index_maps
                            .get(id)
                            .map(|m| Value::from(m.clone()))
                            .unwrap_or(Value::Null),
                    ),
                ])
            })
            .collect();
        Value::Array(members)
    }
}

pub fn fan_member(p: &FanPoint, w: &FanNeighborhood, family: &FanFamily) -> Result<bool> {
    match p {
        FanPoint::Apex => Ok(true),
        FanPoint::Node { sequence, index } => {
            family.get(sequence)?;
            Ok(*index >= w.beta(sequence))
        }
    }
}

/// Points of `W(β)` whose index is below `limit`. Finite spines stop at their
/// last term.
pub fn fan_points(family: &FanFamily, w: &FanNeighborhood, limit: u64) -> BTreeSet<FanPoint> {
    let mut out = BTreeSet::from([FanPoint::Apex]);
    for (id, seq) in &family.members {
        let end = match &seq.generator {
            Generator::Table(values) => limit.min(values.len() as u64),
            _ => limit,
        };
        out.extend((w.beta(id)..end).map(|n| FanPoint::node(id.clone(), n)));
    }
    out
}

#[derive(Debug, Clone)]
pub struct FanProjectionReport {
    pub beta: FanNeighborhood,
    pub checked: u64,
    /// Probed points of `W(β)` whose image misses the level-0 set.
    pub escaping: Vec<(FanPoint, GroupElement)>,
}

impl FanProjectionReport {
    pub fn passed(&self) -> bool {
        self.escaping.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let escaping = self
            .escaping
            .iter()
            .map(|(p, x)| json::obj([("point", p.to_json()), ("image", x.to_json())]))
            .collect();
        json::obj([
            ("beta", self.beta.to_json()),
            ("checked", Value::from(self.checked)),
            ("escaping", Value::Array(escaping)),
            ("passed", Value::from(self.passed())),
        ])
    }
}

/// `β(u) = j(0, u, e)`: the cut that the level-0 scheme imposes on each spine.
pub fn beta_from_schemes(family: &FanFamily, schemes: &SchemeFamily) -> FanNeighborhood {
    let mut beta = FanNeighborhood::uniform(schemes.default.value(0));
    for seq in family.members() {
        let e = seq.group.identity();
        beta.overrides.insert(seq.id.clone(), schemes.value(0, &seq.id, &e));
    }
    beta
}

/// Checks that the projection sends the first `tail_depth + 1` points of each
/// spine of `W(β)` into the level-0 SP set of `schemes`.
///
/// `β` defaults to [`beta_from_schemes`]; a supplied `β` is probed as given.
pub fn fan_projection_check(
    family: &FanFamily,
    schemes: &SchemeFamily,
    tail_depth: u64,
    beta: Option<&FanNeighborhood>,
    cfg: &Config,
) -> Result<FanProjectionReport> {
    let seqs: Vec<Arc<SequenceSpec>> = family.members().cloned().collect();
    if seqs.is_empty() {
        return Err(Error::InvalidInput("fan family is empty".into()));
    }
    let built = beta_from_schemes(family, schemes);
    let beta = beta.cloned().unwrap_or_else(|| built.clone());
    let group = &seqs[0].group;
    let e = group.identity();
    // Deep enough that every probed node lies inside the enumerated window.
    let reach = seqs
        .iter()
        .map(|s| beta.beta(&s.id).saturating_sub(built.beta(&s.id)))
        .max()
        .unwrap_or(0);
    let conjugators: Vec<GroupElement> = schemes
        .conjugator_keys()
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    let level0 = NeighborhoodExpr::sp_product(seqs.clone(), schemes.clone(), 0, conjugators);
    let set = enumerate_truncation(&level0, tail_depth.saturating_add(reach), cfg)?;

    let mut checked = 1;
    let mut escaping = Vec::new();
    if !set.contains(&e) {
        escaping.push((FanPoint::Apex, e));
    }
    for s in &seqs {
        let from = beta.beta(&s.id);
        for n in from..=from.saturating_add(tail_depth) {
            checked += 1;
            let image = s.eval(n);
            if !set.contains(&image) {
                escaping.push((FanPoint::node(s.id.clone(), n), image));
            }
        }
    }
    Ok(FanProjectionReport {
        beta,
        checked,
        escaping,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::IndexScheme;

    fn basis_fan() -> FanFamily {
        let mut fam = FanFamily::new();
        fam.register(Arc::new(SequenceSpec::basis_vectors("e")), 64).unwrap();
        fam
    }

    #[test]
    fn membership_cuts_spines() {
        let fam = basis_fan();
        let w = FanNeighborhood::uniform(0).with("e", 3);
        assert!(fan_member(&FanPoint::Apex, &w, &fam).unwrap());
        assert!(fan_member(&FanPoint::node("e", 5), &w, &fam).unwrap());
        assert!(!fan_member(&FanPoint::node("e", 2), &w, &fam).unwrap());
        assert!(matches!(
            fan_member(&FanPoint::node("zz", 2), &w, &fam),
            Err(Error::UnknownSequenceId(_))
        ));
    }

    #[test]
    fn repeating_tables_are_normalized() {
        let mut fam = FanFamily::new();
        let t = Arc::new(SequenceSpec::int_table("t", &[0, 3, 3, 5]));
        let id = fam.register(t, 4).unwrap();
        assert_eq!(id, "t*");
        assert_eq!(fam.index_map("t*").unwrap(), &[1, 3]);
    }

    #[test]
    fn projection_lands_in_level_zero() {
        let fam = basis_fan();
        let schemes = SchemeFamily::uniform(IndexScheme::from_start(0));
        let report = fan_projection_check(&fam, &schemes, 4, None, &Config::default()).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 6);

        let later = FanNeighborhood::uniform(7);
        let report = fan_projection_check(&fam, &schemes, 4, Some(&later), &Config::default()).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn corrupted_cut_escapes() {
        let fam = basis_fan();
        let schemes = SchemeFamily::uniform(IndexScheme::from_start(3));
        let bad = FanNeighborhood::uniform(0);
        let report = fan_projection_check(&fam, &schemes, 4, Some(&bad), &Config::default()).unwrap();
        let names: Vec<_> = report.escaping.iter().map(|(p, _)| p.clone()).collect();
        assert_eq!(names, (0..3).map(|n| FanPoint::node("e", n)).collect::<Vec<_>>());
    }

    #[test]
    fn max_cut_is_the_intersection() {
        let fam = basis_fan();
        let w1 = FanNeighborhood::uniform(2).with("e", 5);
        let w2 = FanNeighborhood::uniform(4).with("f", 1);
        let both = w1.max(&w2);
        let a = fan_points(&fam, &w1, 30);
        let b = fan_points(&fam, &w2, 30);
        let meet: BTreeSet<_> = a.intersection(&b).cloned().collect();
        assert_eq!(meet, fan_points(&fam, &both, 30));
    }
}
