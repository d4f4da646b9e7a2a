use std::fmt;

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::Result;
use crate::group::{GroupElement, GroupSpec};
use crate::json;

/// Where one factor of a decomposition came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// `(g⁻¹·u_index·g)^exponent` for a sequence term.
    Term {
        sequence: String,
        index: u64,
        exponent: i8,
        conjugator: Option<GroupElement>,
    },
    /// `coefficient·e_coordinate`, used by the closed-form subgroup and ball tests.
    Basis { coordinate: u64, coefficient: BigInt },
    /// A factor of one side of a product box, placed in that coordinate.
    Side { side: Side, inner: Box<Provenance> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Provenance {
    fn to_json(&self) -> Value {
        match self {
            Provenance::Term {
                sequence,
                index,
                exponent,
                conjugator,
            } => json::obj([
                ("sequence", Value::from(sequence.clone())),
                ("index", Value::from(*index)),
                ("exponent", Value::from(*exponent)),
                (
                    "conjugator",
                    conjugator.as_ref().map(|g| g.to_json()).unwrap_or(Value::Null),
                ),
            ]),
            Provenance::Basis {
                coordinate,
                coefficient,
            } => json::obj([
                ("coordinate", Value::from(*coordinate)),
                ("coefficient", json::bigint_json(coefficient)),
            ]),
            Provenance::Side { side, inner } => json::obj([
                (
                    "side",
                    Value::from(match side {
                        Side::Left => "left",
                        Side::Right => "right",
                    }),
                ),
                ("inner", inner.to_json()),
            ]),
        }
    }
}

/// One factor of a decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub value: GroupElement,
    /// The neighborhood level the factor was drawn from, when levels apply.
    pub level: Option<usize>,
    pub source: Provenance,
}

impl Factor {
    /// `g⁻¹·f·g`, recording the composed conjugator.
    pub(crate) fn conjugated(&self, g: &GroupElement) -> Factor {
        let source = match &self.source {
            Provenance::Term {
                sequence,
                index,
                exponent,
                conjugator,
            } => Provenance::Term {
                sequence: sequence.clone(),
                index: *index,
                exponent: *exponent,
                conjugator: Some(match conjugator {
                    Some(c) => c.mul(g),
                    None => g.clone(),
                }),
            },
            other => other.clone(),
        };
        Factor {
            value: self.value.conjugated_by(g),
            level: self.level,
            source,
        }
    }

    fn to_json(&self) -> Value {
        json::obj([
            ("value", self.value.to_json()),
            ("level", self.level.map(Value::from).unwrap_or(Value::Null)),
            ("source", self.source.to_json()),
        ])
    }
}

/// An explicit decomposition `x = f_0·f_1·…·f_n`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub factors: Vec<Factor>,
}

impl Witness {
    pub fn empty() -> Self {
        Witness::default()
    }

    /// Recombines the factors through the group law.
    pub fn recombine(&self, group: &GroupSpec) -> Result<GroupElement> {
        group.product_of(self.factors.iter().map(|f| &f.value))
    }

    pub fn verifies(&self, group: &GroupSpec, x: &GroupElement) -> bool {
        self.recombine(group).is_ok_and(|y| &y == x)
    }

    /// The `n` of a product `a_0·…·a_n`; an empty product counts as `n = 0`.
    pub fn shape_n(&self) -> usize {
        self.factors.len().saturating_sub(1)
    }

    /// The levels of the factors, in product order.
    pub fn sigma(&self) -> Vec<usize> {
        self.factors.iter().filter_map(|f| f.level).collect()
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("n", Value::from(self.shape_n())),
            ("sigma", Value::Array(self.sigma().into_iter().map(Value::from).collect())),
            ("factors", Value::Array(self.factors.iter().map(|f| f.to_json()).collect())),
        ])
    }
}

/// Why a negative answer is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// The element is longer than any admissible product can be.
    NormBound,
    /// Growth certificate: terms past an index cannot contribute, and the
    /// search below it was exhaustive.
    RatioBound,
    /// Powers of a fixed base: carrying and cancelling reduce any
    /// decomposition to one below an index, and the search below it was
    /// exhaustive.
    GeometricCarry,
    /// Basis vectors: the coordinates of the element cannot be assigned to
    /// distinct levels.
    BasisAssignment,
    /// Some coefficient is not divisible by the subgroup modulus.
    Divisibility,
    /// ℓ¹ norm exceeds the ball radius.
    L1Ball,
    /// A coordinate of a product box is excluded.
    Component,
    /// Every listed conjugate is excluded.
    AllConjugates,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::NormBound => "normBound",
            Rule::RatioBound => "ratioBound",
            Rule::GeometricCarry => "geometricCarry",
            Rule::BasisAssignment => "basisAssignment",
            Rule::Divisibility => "divisibility",
            Rule::L1Ball => "l1Ball",
            Rule::Component => "component",
            Rule::AllConjugates => "allConjugates",
        }
    }
}

/// The bound argument behind an exact negative answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rule: Rule,
    /// Terms at this index or beyond were excluded by the rule.
    pub exclusion_index: Option<u64>,
    pub detail: String,
}

impl Certificate {
    pub fn new(rule: Rule, exclusion_index: Option<u64>, detail: impl Into<String>) -> Self {
        Certificate {
            rule,
            exclusion_index,
            detail: detail.into(),
        }
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("rule", Value::from(self.rule.name())),
            (
                "exclusionIndex",
                self.exclusion_index.map(Value::from).unwrap_or(Value::Null),
            ),
            ("detail", Value::from(self.detail.clone())),
        ])
    }
}

/// How far an inconclusive search went.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBound {
    /// Largest sequence index tried.
    pub max_index: u64,
    /// Search nodes visited.
    pub nodes: u64,
    pub note: String,
}

impl SearchBound {
    pub fn to_json(&self) -> Value {
        json::obj([
            ("maxIndex", Value::from(self.max_index)),
            ("nodes", Value::from(self.nodes)),
            ("note", Value::from(self.note.clone())),
        ])
    }
}

/// Three-valued membership answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    In(Witness),
    NotIn(Certificate),
    NotInWithinBound(SearchBound),
}

impl Verdict {
    pub fn is_in(&self) -> bool {
        matches!(self, Verdict::In(_))
    }

    pub fn is_exact_not_in(&self) -> bool {
        matches!(self, Verdict::NotIn(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::In(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::In(_) => "in",
            Verdict::NotIn(_) => "notIn",
            Verdict::NotInWithinBound(_) => "notInWithinBound",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::In(w) => json::obj([("verdict", Value::from("in")), ("witness", w.to_json())]),
            Verdict::NotIn(c) => json::obj([
                ("verdict", Value::from("notIn")),
                ("certificate", c.to_json()),
            ]),
            Verdict::NotInWithinBound(b) => json::obj([
                ("verdict", Value::from("notInWithinBound")),
                ("bound", b.to_json()),
            ]),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::In(w) => {
                if w.factors.is_empty() {
                    return write!(f, "in (empty product)");
                }
                let parts: Vec<String> = w.factors.iter().map(|x| x.value.to_string()).collect();
                write!(f, "in ({})", parts.join(" · "))
            }
            Verdict::NotIn(c) => write!(f, "not in [{}: {}]", c.rule.name(), c.detail),
            Verdict::NotInWithinBound(b) => {
                write!(f, "not found with indices up to {} ({} nodes)", b.max_index, b.nodes)
            }
        }
    }
}
