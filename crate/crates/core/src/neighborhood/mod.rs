//! Neighborhood-base sets as symbolic expressions, with a three-valued
//! membership engine and a truncating enumerator that doubles as a
//! brute-force oracle.

pub(crate) mod admissible;
mod config;
mod cover;
mod enumerate;
mod exact;
pub(crate) mod levels;
mod member;
pub(crate) mod search;
mod verdict;

use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::json;
use crate::scheme::SchemeFamily;
use crate::sequence::{Catalog, SequenceSpec};

pub use config::Config;
pub use cover::cover_by_translates;
pub use enumerate::{enumerate_hemicompact, enumerate_truncation, enumerate_with_witnesses};
pub use member::{hemicompact_member, member, sp_member};
pub use verdict::{Certificate, Factor, Provenance, Rule, SearchBound, Side, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeighborhoodExpr {
    /// `A_m = {e} ∪ {u_n^{±1} : n ≥ m}`.
    Tail { seq: Arc<SequenceSpec>, m: u64 },
    /// `A(k, m) = A_m + ⋯ + A_m` with `k+1` summands.
    SumRepeat {
        seq: Arc<SequenceSpec>,
        k: u64,
        m: u64,
    },
    /// `A_0(m) + ⋯ + A_N(m)` with `A_k(m) = ⋃_i A^i_{m(k,i)}`. On abelian
    /// carriers `m(k,i)` is the minimum of the family over conjugators.
    SumPrefix {
        family: Vec<Arc<SequenceSpec>>,
        schemes: SchemeFamily,
        depth: u64,
    },
    /// `⋃_g g⁻¹·inner·g` over the identity and the listed conjugators.
    ConjClosure {
        inner: Box<NeighborhoodExpr>,
        conjugators: Vec<GroupElement>,
    },
    /// Products `A_{σ(0)}(j)⋯A_{σ(n)}(j)` for `n ≤ depth` and permutations
    /// `σ`, with `A_k(j) = ⋃_i ⋃_g g⁻¹·A^i_{j(k,i,g)}·g` over the identity
    /// and the listed conjugators.
    SpProduct {
        family: Vec<Arc<SequenceSpec>>,
        schemes: SchemeFamily,
        depth: u64,
        conjugators: Vec<GroupElement>,
    },
    /// `left × right` in a product group.
    ProductBox {
        left: Box<NeighborhoodExpr>,
        right: Box<NeighborhoodExpr>,
    },
    /// `U_n`: integer vectors with every coordinate divisible by `2^n`.
    DyadicSubgroup { n: u64 },
    /// Integer vectors with `‖v‖₁ ≤ k+1`.
    BasisBall { k: u64 },
}

impl NeighborhoodExpr {
    pub fn tail(seq: Arc<SequenceSpec>, m: u64) -> Self {
        NeighborhoodExpr::Tail { seq, m }
    }

    pub fn sum_repeat(seq: Arc<SequenceSpec>, k: u64, m: u64) -> Self {
        NeighborhoodExpr::SumRepeat { seq, k, m }
    }

    pub fn sum_prefix(family: Vec<Arc<SequenceSpec>>, schemes: SchemeFamily, depth: u64) -> Self {
        NeighborhoodExpr::SumPrefix {
            family,
            schemes,
            depth,
        }
    }

    pub fn sp_product(
        family: Vec<Arc<SequenceSpec>>,
        schemes: SchemeFamily,
        depth: u64,
        conjugators: Vec<GroupElement>,
    ) -> Self {
        NeighborhoodExpr::SpProduct {
            family,
            schemes,
            depth,
            conjugators,
        }
    }

    /// The carrier the expression lives in.
    pub fn group(&self) -> Result<GroupSpec> {
        match self {
            NeighborhoodExpr::Tail { seq, .. } | NeighborhoodExpr::SumRepeat { seq, .. } => Ok(seq.group.clone()),
            NeighborhoodExpr::SumPrefix { family, .. } | NeighborhoodExpr::SpProduct { family, .. } => {
                levels::family_group(family)
            }
            NeighborhoodExpr::ConjClosure { inner, .. } => inner.group(),
            NeighborhoodExpr::ProductBox { left, right } => GroupSpec::product(left.group()?, right.group()?),
            NeighborhoodExpr::DyadicSubgroup { .. } | NeighborhoodExpr::BasisBall { .. } => Ok(GroupSpec::IntVec),
        }
    }

    pub fn to_json(&self) -> Value {
        let family_json = |family: &[Arc<SequenceSpec>]| {
            Value::Array(family.iter().map(|s| Value::from(s.id.clone())).collect())
        };
        let elems = |gs: &[GroupElement]| Value::Array(gs.iter().map(|g| g.to_json()).collect());
        match self {
            NeighborhoodExpr::Tail { seq, m } => json::obj([
                ("node", Value::from("tail")),
                ("seq", Value::from(seq.id.clone())),
                ("m", Value::from(*m)),
            ]),
            NeighborhoodExpr::SumRepeat { seq, k, m } => json::obj([
                ("node", Value::from("sumRepeat")),
                ("seq", Value::from(seq.id.clone())),
                ("k", Value::from(*k)),
                ("m", Value::from(*m)),
            ]),
            NeighborhoodExpr::SumPrefix {
                family,
                schemes,
                depth,
            } => json::obj([
                ("node", Value::from("sumPrefix")),
                ("family", family_json(family)),
                ("schemes", schemes.to_json()),
                ("depth", Value::from(*depth)),
            ]),
            NeighborhoodExpr::ConjClosure { inner, conjugators } => json::obj([
                ("node", Value::from("conjClosure")),
                ("inner", inner.to_json()),
                ("conjugators", elems(conjugators)),
            ]),
            NeighborhoodExpr::SpProduct {
                family,
                schemes,
                depth,
                conjugators,
            } => json::obj([
                ("node", Value::from("spProduct")),
                ("family", family_json(family)),
                ("schemes", schemes.to_json()),
                ("depth", Value::from(*depth)),
                ("conjugators", elems(conjugators)),
            ]),
            NeighborhoodExpr::ProductBox { left, right } => json::obj([
                ("node", Value::from("productBox")),
                ("left", left.to_json()),
                ("right", right.to_json()),
            ]),
            NeighborhoodExpr::DyadicSubgroup { n } => {
                json::obj([("node", Value::from("dyadicSubgroup")), ("n", Value::from(*n))])
            }
            NeighborhoodExpr::BasisBall { k } => {
                json::obj([("node", Value::from("basisBall")), ("k", Value::from(*k))])
            }
        }
    }

    /// Decodes the JSON AST, resolving sequence references against `catalog`.
    pub fn from_json(v: &Value, catalog: &Catalog, location: &str) -> Result<Self> {
        let node = json::as_str(json::field(v, "node", location)?, &json::at(location, "node"))?;
        let num = |name: &str| -> Result<u64> {
            json::as_u64(json::field(v, name, location)?, &json::at(location, name))
        };
        let num_or = |name: &str, default: u64| -> Result<u64> {
            match json::opt_field(v, name) {
                Some(x) => json::as_u64(x, &json::at(location, name)),
                None => Ok(default),
            }
        };
        let seq = || catalog.resolve(json::field(v, "seq", location)?, &json::at(location, "seq"));
        let family = || -> Result<Vec<Arc<SequenceSpec>>> {
            match json::opt_field(v, "family") {
                Some(f) => {
                    let floc = json::at(location, "family");
                    json::as_array(f, &floc)?
                        .iter()
                        .enumerate()
                        .map(|(i, s)| catalog.resolve(s, &json::at_index(&floc, i)))
                        .collect()
                }
                None => Ok(vec![seq()?]),
            }
        };
        let schemes = |group: &GroupSpec| -> Result<SchemeFamily> {
            let sv = json::opt_field(v, "schemes").or_else(|| json::opt_field(v, "scheme"));
            match sv {
                Some(s) => SchemeFamily::from_json(s, group, &json::at(location, "schemes")),
                None => Ok(SchemeFamily::default()),
            }
        };
        let conjugators = |group: &GroupSpec| -> Result<Vec<GroupElement>> {
            match json::opt_field(v, "conjugators") {
                Some(c) => {
                    let cloc = json::at(location, "conjugators");
                    json::as_array(c, &cloc)?
                        .iter()
                        .enumerate()
                        .map(|(i, g)| GroupElement::from_json(group, g, &json::at_index(&cloc, i)))
                        .collect()
                }
                None => Ok(Vec::new()),
            }
        };
        let expr = match node {
            "tail" => NeighborhoodExpr::Tail { seq: seq()?, m: num_or("m", 0)? },
            "sumRepeat" => NeighborhoodExpr::SumRepeat {
                seq: seq()?,
                k: num("k")?,
                m: num_or("m", 0)?,
            },
            "sumPrefix" => {
                let family = family()?;
                let group = levels::family_group(&family)?;
                NeighborhoodExpr::SumPrefix {
                    schemes: schemes(&group)?,
                    family,
                    depth: num("depth")?,
                }
            }
            "conjClosure" => {
                let inner = NeighborhoodExpr::from_json(
                    json::field(v, "inner", location)?,
                    catalog,
                    &json::at(location, "inner"),
                )?;
                let group = inner.group()?;
                NeighborhoodExpr::ConjClosure {
                    conjugators: conjugators(&group)?,
                    inner: Box::new(inner),
                }
            }
            "spProduct" => {
                let family = family()?;
                let group = levels::family_group(&family)?;
                NeighborhoodExpr::SpProduct {
                    schemes: schemes(&group)?,
                    conjugators: conjugators(&group)?,
                    family,
                    depth: num("depth")?,
                }
            }
            "productBox" => NeighborhoodExpr::ProductBox {
                left: Box::new(NeighborhoodExpr::from_json(
                    json::field(v, "left", location)?,
                    catalog,
                    &json::at(location, "left"),
                )?),
                right: Box::new(NeighborhoodExpr::from_json(
                    json::field(v, "right", location)?,
                    catalog,
                    &json::at(location, "right"),
                )?),
            },
            "dyadicSubgroup" => NeighborhoodExpr::DyadicSubgroup { n: num("n")? },
            "basisBall" => NeighborhoodExpr::BasisBall { k: num("k")? },
            other => {
                return Err(Error::parse(
                    json::at(location, "node"),
                    format!("unknown neighborhood node `{other}`"),
                ))
            }
        };
        expr.group().map_err(|e| Error::parse(location, e.to_string()))?;
        Ok(expr)
    }
}

impl fmt::Display for NeighborhoodExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids = |family: &[Arc<SequenceSpec>]| family.iter().map(|s| s.id.as_str()).collect::<Vec<_>>().join(", ");
        match self {
            NeighborhoodExpr::Tail { seq, m } => write!(f, "A_{m}[{seq}]"),
            NeighborhoodExpr::SumRepeat { seq, k, m } => write!(f, "A({k},{m})[{seq}]"),
            NeighborhoodExpr::SumPrefix { family, depth, .. } => write!(f, "sum_{{k<={depth}}} A_k[{}]", ids(family)),
            NeighborhoodExpr::ConjClosure { inner, conjugators } => {
                write!(f, "conj[{} conjugators]({inner})", conjugators.len())
            }
            NeighborhoodExpr::SpProduct { family, depth, .. } => write!(f, "SP_{{n<={depth}}}[{}]", ids(family)),
            NeighborhoodExpr::ProductBox { left, right } => write!(f, "{left} x {right}"),
            NeighborhoodExpr::DyadicSubgroup { n } => write!(f, "U_{n}"),
            NeighborhoodExpr::BasisBall { k } => write!(f, "ball({k})"),
        }
    }
}
