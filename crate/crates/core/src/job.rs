//! Job files: one command with its inputs, budgets and a strict flag.
//!
//! Sequence references resolve against a catalog while parsing, so a parsed
//! [`JobSpec`] is ready to run. Running a job calls exactly one engine
//! operation and wraps its result in a report.

use std::sync::Arc;

use serde_json::Value;

use crate::cases::{self, SeparationConfig};
use crate::constructions::{self, FanFamily, FanNeighborhood, FanPoint};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::json;
use crate::neighborhood::levels::family_group;
use crate::neighborhood::{self, Config, NeighborhoodExpr};
use crate::scheme::{IndexScheme, SchemeFamily};
use crate::sequence::{self, Catalog, SequenceSpec};
use crate::tsequence::{self, AxiomOptions};

pub const COMMANDS: [&str; 13] = [
    "member",
    "sp-member",
    "witness",
    "certify",
    "axioms",
    "interleave",
    "quotient",
    "fan-check",
    "product-split",
    "cover",
    "exa1",
    "ex11",
    "fragment",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    pub node_cap: u64,
    pub index_cap: u64,
    pub tail_depth: u64,
    pub element_cap: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        let cfg = Config::default();
        Budgets {
            node_cap: cfg.node_cap,
            index_cap: cfg.index_cap,
            tail_depth: 6,
            element_cap: cfg.element_cap,
        }
    }
}

impl Budgets {
    fn from_json(v: Option<&Value>) -> Result<Self> {
        let mut b = Budgets::default();
        let Some(v) = v else {
            return Ok(b);
        };
        json::as_object(v, "budgets")?;
        let positive = |name: &str| -> Result<Option<u64>> {
            match json::opt_field(v, name) {
                None => Ok(None),
                Some(x) => {
                    let loc = json::at("budgets", name);
                    let n = json::as_u64(x, &loc)?;
                    if n == 0 {
                        return Err(Error::parse(loc, "budgets must be positive"));
                    }
                    Ok(Some(n))
                }
            }
        };
        if let Some(n) = positive("nodeCap")? {
            b.node_cap = n;
        }
        if let Some(n) = positive("indexCap")? {
            b.index_cap = n;
        }
        if let Some(n) = positive("tailDepth")? {
            b.tail_depth = n;
        }
        if let Some(n) = positive("elementCap")? {
            b.element_cap = usize::try_from(n).unwrap_or(usize::MAX);
        }
        Ok(b)
    }

    pub fn to_json(&self) -> Value {
        json::obj([
            ("nodeCap", Value::from(self.node_cap)),
            ("indexCap", Value::from(self.index_cap)),
            ("tailDepth", Value::from(self.tail_depth)),
            ("elementCap", Value::from(self.element_cap)),
        ])
    }
}

/// Points for the first construction step: `2ⁿ·e_i` for each `n`.
#[derive(Debug, Clone)]
pub struct TailPointsInput {
    pub ns: Vec<u64>,
    pub scheme: IndexScheme,
    pub probe_count: u64,
}

#[derive(Debug, Clone)]
pub enum Command {
    Member {
        x: GroupElement,
        expr: NeighborhoodExpr,
    },
    SpMember {
        x: GroupElement,
        expr: NeighborhoodExpr,
    },
    Witness {
        x: GroupElement,
        sequence: Arc<SequenceSpec>,
        depth: u64,
    },
    Certify {
        sequence: Arc<SequenceSpec>,
        bound: u64,
    },
    Axioms {
        family: Vec<Arc<SequenceSpec>>,
        schemes: SchemeFamily,
        depth: u64,
        options: AxiomOptions,
    },
    Interleave {
        parts: Vec<Arc<SequenceSpec>>,
        /// Pair interleaving of exactly two parts instead of round-robin.
        pair: bool,
        terms: u64,
    },
    Quotient {
        target: Arc<SequenceSpec>,
        words: Vec<GroupElement>,
    },
    FanCheck {
        family: Vec<Arc<SequenceSpec>>,
        probe_depth: u64,
        schemes: SchemeFamily,
        beta: Option<FanNeighborhood>,
        points: Vec<FanPoint>,
    },
    ProductSplit {
        left: Arc<SequenceSpec>,
        right: Arc<SequenceSpec>,
        schemes: SchemeFamily,
        depth: u64,
    },
    Cover {
        sequence: Arc<SequenceSpec>,
        n: u64,
        points: Vec<GroupElement>,
        max_translates: usize,
    },
    Exa1 {
        k: u64,
        support_bound: u64,
        tail_points: Option<TailPointsInput>,
    },
    Ex11 {
        q: usize,
        sequences: Vec<Arc<SequenceSpec>>,
        probe: u64,
    },
    Fragment {
        family: Vec<Arc<SequenceSpec>>,
        n: u64,
        x: GroupElement,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Member { .. } => "member",
            Command::SpMember { .. } => "sp-member",
            Command::Witness { .. } => "witness",
            Command::Certify { .. } => "certify",
            Command::Axioms { .. } => "axioms",
            Command::Interleave { .. } => "interleave",
            Command::Quotient { .. } => "quotient",
            Command::FanCheck { .. } => "fan-check",
            Command::ProductSplit { .. } => "product-split",
            Command::Cover { .. } => "cover",
            Command::Exa1 { .. } => "exa1",
            Command::Ex11 { .. } => "ex11",
            Command::Fragment { .. } => "fragment",
        }
    }

    /// What the command establishes, in one line.
    pub fn anchor(&self) -> &'static str {
        match self {
            Command::Member { .. } => "membership in a set built from signed sums of sequence tails",
            Command::SpMember { .. } => "membership in a scheme-indexed product of conjugated sequence tails",
            Command::Witness { .. } => "a scheme whose prefix sums all avoid a given nonzero integer",
            Command::Certify { .. } => "a growth-ratio certificate forcing prefix sums to separate points",
            Command::Axioms { .. } => "neighborhood-base inclusions for scheme-indexed products",
            Command::Interleave { .. } => "merging finitely many sequences into one by interleaving",
            Command::Quotient { .. } => "the homomorphism sending free generators to sequence terms",
            Command::FanCheck { .. } => "fan neighborhoods cut by the level-zero scheme project into level zero",
            Command::ProductSplit { .. } => "splitting a scheme on a product into schemes on the factors",
            Command::Cover { .. } => "covering a finite set by finitely many translates of a sum set",
            Command::Exa1 { .. } => "dyadic subgroups of integer vectors against sums of basis tails",
            Command::Ex11 { .. } => "interleavings of sequences on disjoint coordinate blocks",
            Command::Fragment { .. } => "products of unions of the first sequence tails",
        }
    }
}

#[derive(Debug, Clone)]
pub struct JobSpec {
    pub command: Command,
    pub budgets: Budgets,
    pub strict: bool,
}

impl JobSpec {
    /// Parses a job file, resolving sequence references against `catalog`.
    pub fn parse(text: &str, catalog: &Catalog) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| {
            Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        Self::from_json(&v, catalog)
    }

    pub fn from_json(v: &Value, catalog: &Catalog) -> Result<Self> {
        json::as_object(v, "job")?;
        let name = json::as_str(json::field(v, "command", "")?, "command")?;
        if !COMMANDS.contains(&name) {
            return Err(Error::UnknownCommand(name.to_string()));
        }
        let budgets = Budgets::from_json(json::opt_field(v, "budgets"))?;
        let strict = match json::opt_field(v, "strict") {
            Some(s) => json::as_bool(s, "strict")?,
            None => false,
        };
        let empty = Value::Object(Default::default());
        let inputs = json::opt_field(v, "inputs").unwrap_or(&empty);
        json::as_object(inputs, "inputs")?;
        let command = Inputs { v: inputs, catalog }.command(name)?;
        Ok(JobSpec {
            command,
            budgets,
            strict,
        })
    }

    pub fn config(&self) -> Config {
        Config {
            node_cap: self.budgets.node_cap,
            index_cap: self.budgets.index_cap,
            element_cap: self.budgets.element_cap,
            strict: self.strict,
            ..Config::default()
        }
    }
}

/// Typed access to the `inputs` object.
struct Inputs<'a> {
    v: &'a Value,
    catalog: &'a Catalog,
}

const LOC: &str = "inputs";

impl Inputs<'_> {
    fn loc(name: &str) -> String {
        json::at(LOC, name)
    }

    fn get(&self, name: &str) -> Result<&Value> {
        json::field(self.v, name, LOC)
    }

    fn u64(&self, name: &str) -> Result<u64> {
        json::as_u64(self.get(name)?, &Self::loc(name))
    }

    fn u64_or(&self, name: &str, default: u64) -> Result<u64> {
        match json::opt_field(self.v, name) {
            Some(x) => json::as_u64(x, &Self::loc(name)),
            None => Ok(default),
        }
    }

    fn sequence(&self, name: &str) -> Result<Arc<SequenceSpec>> {
        self.catalog.resolve(self.get(name)?, &Self::loc(name))
    }

    fn sequences(&self, name: &str) -> Result<Vec<Arc<SequenceSpec>>> {
        let loc = Self::loc(name);
        json::as_array(self.get(name)?, &loc)?
            .iter()
            .enumerate()
            .map(|(i, s)| self.catalog.resolve(s, &json::at_index(&loc, i)))
            .collect()
    }

    fn element(&self, name: &str, group: &GroupSpec) -> Result<GroupElement> {
        GroupElement::from_json(group, self.get(name)?, &Self::loc(name))
    }

    fn elements(&self, name: &str, group: &GroupSpec) -> Result<Vec<GroupElement>> {
        let loc = Self::loc(name);
        json::as_array(self.get(name)?, &loc)?
            .iter()
            .enumerate()
            .map(|(i, x)| GroupElement::from_json(group, x, &json::at_index(&loc, i)))
            .collect()
    }

    fn expr(&self) -> Result<NeighborhoodExpr> {
        NeighborhoodExpr::from_json(self.get("expr")?, self.catalog, &Self::loc("expr"))
    }

    fn schemes(&self, group: &GroupSpec) -> Result<SchemeFamily> {
        match json::opt_field(self.v, "schemes") {
            Some(s) => SchemeFamily::from_json(s, group, &Self::loc("schemes")),
            None => Ok(SchemeFamily::default()),
        }
    }

    fn command(&self, name: &str) -> Result<Command> {
        Ok(match name {
            "member" | "sp-member" => {
                let expr = self.expr()?;
                let x = self.element("x", &expr.group()?)?;
                if name == "member" {
                    Command::Member { x, expr }
                } else {
                    Command::SpMember { x, expr }
                }
            }
            "witness" => {
                let sequence = self.sequence("sequence")?;
                Command::Witness {
                    x: self.element("x", &sequence.group)?,
                    depth: self.u64("depth")?,
                    sequence,
                }
            }
            "certify" => Command::Certify {
                sequence: self.sequence("sequence")?,
                bound: self.u64_or("bound", 100)?,
            },
            "axioms" => {
                let family = self.sequences("family")?;
                let group = family_group(&family)?;
                let mut options = AxiomOptions::default();
                if json::opt_field(self.v, "pool").is_some() {
                    options.pool = Some(self.elements("pool", &group)?);
                }
                if json::opt_field(self.v, "conjugators").is_some() {
                    options.conjugators = self.elements("conjugators", &group)?;
                }
                if let Some(s) = json::opt_field(self.v, "conjugatorSamples") {
                    let n = json::as_u64(s, &Self::loc("conjugatorSamples"))?;
                    options.conjugator_samples = Some(usize::try_from(n).unwrap_or(usize::MAX));
                }
                if let Some(o) = json::opt_field(self.v, "other") {
                    options.other = Some(SchemeFamily::from_json(o, &group, &Self::loc("other"))?);
                }
                Command::Axioms {
                    schemes: self.schemes(&group)?,
                    depth: self.u64("depth")?,
                    family,
                    options,
                }
            }
            "interleave" => {
                let pair = json::opt_field(self.v, "left").is_some();
                let parts = if pair {
                    vec![self.sequence("left")?, self.sequence("right")?]
                } else {
                    self.sequences("sequences")?
                };
                Command::Interleave {
                    parts,
                    pair,
                    terms: self.u64_or("terms", 16)?,
                }
            }
            "quotient" => {
                let target = self.sequence("target")?;
                let default = if target.is_abelian() { "vectors" } else { "free" };
                let domain = match json::opt_field(self.v, "domain") {
                    Some(d) => json::as_str(d, &Self::loc("domain"))?,
                    None => default,
                };
                let group = match domain {
                    "free" => GroupSpec::free(None),
                    "vectors" => GroupSpec::IntVec,
                    other => {
                        return Err(Error::parse(
                            Self::loc("domain"),
                            format!("`{other}` is neither `free` nor `vectors`"),
                        ))
                    }
                };
                Command::Quotient {
                    words: self.elements("words", &group)?,
                    target,
                }
            }
            "fan-check" => {
                let family = self.sequences("family")?;
                let group = family_group(&family)?;
                let beta = match json::opt_field(self.v, "beta") {
                    Some(b) => Some(FanNeighborhood::from_json(b, &Self::loc("beta"))?),
                    None => None,
                };
                let points = match json::opt_field(self.v, "points") {
                    Some(p) => {
                        let loc = Self::loc("points");
                        json::as_array(p, &loc)?
                            .iter()
                            .enumerate()
                            .map(|(i, x)| FanPoint::from_json(x, &json::at_index(&loc, i)))
                            .collect::<Result<Vec<_>>>()?
                    }
                    None => Vec::new(),
                };
                Command::FanCheck {
                    probe_depth: self.u64_or("probeDepth", 64)?,
                    schemes: self.schemes(&group)?,
                    family,
                    beta,
                    points,
                }
            }
            "product-split" => {
                let left = self.sequence("left")?;
                let right = self.sequence("right")?;
                let group = GroupSpec::product(left.group.clone(), right.group.clone())?;
                Command::ProductSplit {
                    schemes: self.schemes(&group)?,
                    depth: self.u64("depth")?,
                    left,
                    right,
                }
            }
            "cover" => {
                let sequence = self.sequence("sequence")?;
                Command::Cover {
                    points: self.elements("points", &sequence.group)?,
                    n: self.u64("n")?,
                    max_translates: usize::try_from(self.u64_or("maxTranslates", 1)?).unwrap_or(usize::MAX),
                    sequence,
                }
            }
            "exa1" => {
                let tail_points = match json::opt_field(self.v, "tailPoints") {
                    None => None,
                    Some(t) => {
                        let loc = Self::loc("tailPoints");
                        let ns = match json::opt_field(t, "n") {
                            Some(ns) => {
                                let nloc = json::at(&loc, "n");
                                json::as_array(ns, &nloc)?
                                    .iter()
                                    .enumerate()
                                    .map(|(i, n)| json::as_u64(n, &json::at_index(&nloc, i)))
                                    .collect::<Result<Vec<_>>>()?
                            }
                            None => vec![0, 1, 2],
                        };
                        let scheme = match json::opt_field(t, "scheme") {
                            Some(s) => IndexScheme::from_json(s, &json::at(&loc, "scheme"))?,
                            None => IndexScheme::from_start(0),
                        };
                        let probe_count = match json::opt_field(t, "probeCount") {
                            Some(p) => json::as_u64(p, &json::at(&loc, "probeCount"))?,
                            None => 3,
                        };
                        Some(TailPointsInput {
                            ns,
                            scheme,
                            probe_count,
                        })
                    }
                };
                Command::Exa1 {
                    k: self.u64("k")?,
                    support_bound: self.u64_or("supportBound", 4)?,
                    tail_points,
                }
            }
            "ex11" => Command::Ex11 {
                q: usize::try_from(self.u64("q")?).unwrap_or(usize::MAX),
                sequences: self.sequences("sequences")?,
                probe: self.u64_or("probe", 32)?,
            },
            "fragment" => {
                let family = self.sequences("family")?;
                let group = family_group(&family)?;
                Command::Fragment {
                    x: self.element("x", &group)?,
                    n: self.u64("n")?,
                    family,
                }
            }
            other => return Err(Error::UnknownCommand(other.to_string())),
        })
    }
}

/// A finished job: the JSON report and a short human-readable summary.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub text: String,
}

/// Runs the job. Engine errors propagate; a negative or inconclusive answer is
/// a normal report.
pub fn run(job: &JobSpec) -> Result<Report> {
    let cfg = job.config();
    let tail = job.budgets.tail_depth;
    let (result, summary) = match &job.command {
        Command::Member { x, expr } => {
            let v = neighborhood::member(x, expr, &cfg)?;
            (v.to_json(), format!("{x} in {expr}: {v}"))
        }
        Command::SpMember { x, expr } => {
            let v = neighborhood::sp_member(x, expr, &cfg)?;
            (v.to_json(), format!("{x} in {expr}: {v}"))
        }
        Command::Witness { x, sequence, depth } => {
            let r = tsequence::separation_witness(x, sequence, *depth, &cfg)?;
            let line = format!(
                "{x} avoided through depth {} by scheme starting at {}",
                r.certified_depth,
                r.scheme.value(0)
            );
            (r.to_json(), line)
        }
        Command::Certify { sequence, bound } => {
            let r = tsequence::check_tsequence_certificate(sequence, *bound, &cfg);
            let line = match &r {
                tsequence::TSequenceCheck::CertifiedSeparated { depth, samples } => {
                    format!("`{}` separates {} samples at depth {depth}", sequence.id, samples.len())
                }
                tsequence::TSequenceCheck::Unknown { reason } => format!("`{}` unknown: {reason}", sequence.id),
            };
            (r.to_json(), line)
        }
        Command::Axioms {
            family,
            schemes,
            depth,
            options,
        } => {
            let r = tsequence::check_base_axiom_inclusions(family, schemes, *depth, tail, options, &cfg)?;
            let marks: Vec<String> = r
                .outcomes
                .iter()
                .map(|o| format!("({}) {}", o.axiom, if o.passed { "pass" } else { "FAIL" }))
                .collect();
            (r.to_json(), marks.join(", "))
        }
        Command::Interleave { parts, pair, terms } => {
            let d = if *pair {
                sequence::pair_interleave(parts[0].clone(), parts[1].clone())?
            } else {
                sequence::interleave_finite(parts)?
            };
            let values: Vec<Value> = d.prefix(*terms).iter().map(GroupElement::to_json).collect();
            let line = format!("`{}`, first {terms} terms", d.id);
            (json::obj([("sequence", d.to_json()), ("terms", Value::Array(values))]), line)
        }
        Command::Quotient { target, words } => {
            let images = words
                .iter()
                .map(|w| constructions::quotient_apply(w, target))
                .collect::<Result<Vec<_>>>()?;
            let rows: Vec<Value> = words
                .iter()
                .zip(&images)
                .map(|(w, x)| json::obj([("word", w.to_json()), ("image", x.to_json())]))
                .collect();
            let line = words
                .iter()
                .zip(&images)
                .map(|(w, x)| format!("{w} -> {x}"))
                .collect::<Vec<_>>()
                .join("; ");
            (Value::Array(rows), line)
        }
        Command::FanCheck {
            family,
            probe_depth,
            schemes,
            beta,
            points,
        } => {
            let mut fan = FanFamily::new();
            for s in family {
                fan.register(s.clone(), *probe_depth)?;
            }
            let r = constructions::fan_projection_check(&fan, schemes, tail, beta.as_ref(), &cfg)?;
            let w = beta.clone().unwrap_or_else(|| r.beta.clone());
            let memberships = points
                .iter()
                .map(|p| {
                    Ok(json::obj([
                        ("point", p.to_json()),
                        ("member", Value::from(constructions::fan_member(p, &w, &fan)?)),
                    ]))
                })
                .collect::<Result<Vec<_>>>()?;
            let line = format!("{} points probed, {} escaping", r.checked, r.escaping.len());
            let out = json::obj([
                ("family", fan.to_json()),
                ("projection", r.to_json()),
                ("memberships", Value::Array(memberships)),
            ]);
            (out, line)
        }
        Command::ProductSplit {
            left,
            right,
            schemes,
            depth,
        } => {
            let r = constructions::product_scheme_split(left, right, schemes, *depth, tail, &cfg)?;
            let line = format!("{} products checked, passed: {}", r.checked, r.passed());
            (r.to_json(), line)
        }
        Command::Cover {
            sequence,
            n,
            points,
            max_translates,
        } => {
            let r = neighborhood::cover_by_translates(points, sequence, *n, *max_translates, &cfg)?;
            let line = match &r {
                Some(t) => format!("covered by {} translates", t.len()),
                None => format!("no cover with at most {max_translates} translates"),
            };
            let out = json::obj([(
                "translates",
                r.map(|t| Value::Array(t.iter().map(GroupElement::to_json).collect()))
                    .unwrap_or(Value::Null),
            )]);
            (out, line)
        }
        Command::Exa1 {
            k,
            support_bound,
            tail_points,
        } => {
            let sep = cases::diagonal_separation(
                SeparationConfig {
                    k: *k,
                    support_bound: *support_bound,
                    tail_depth: tail,
                },
                &cfg,
            )?;
            let mut passed = sep.passed();
            let mut steps = Vec::new();
            if let Some(t) = tail_points {
                for &n in &t.ns {
                    let r = cases::diagonal_tail_points(n, &t.scheme, t.probe_count, &cfg)?;
                    passed &= r.passed();
                    steps.push(r.to_json());
                }
            }
            let line = format!("{} pairs, passed: {passed}", sep.pairs);
            let out = json::obj([
                ("separation", sep.to_json()),
                ("tailPoints", Value::Array(steps)),
                ("passed", Value::from(passed)),
            ]);
            (out, line)
        }
        Command::Ex11 { q, sequences, probe } => {
            let r = cases::direct_sum_blocks(*q, sequences, *probe)?;
            let line = format!("`{}` passed: {}", r.interleaved, r.passed());
            (r.to_json(), line)
        }
        Command::Fragment { family, n, x } => {
            let v = constructions::hemicompact_fragment(family, *n, x, &cfg)?;
            (v.to_json(), format!("{x} in fragment {n}: {v}"))
        }
    };
    let json = json::obj([
        ("command", Value::from(job.command.name())),
        ("anchor", Value::from(job.command.anchor())),
        ("budgets", job.budgets.to_json()),
        ("strict", Value::from(job.strict)),
        ("result", result),
    ]);
    let text = format!(
        "{}: {}\n  {}\n",
        job.command.name(),
        job.command.anchor(),
        summary
    );
    Ok(Report { json, text })
}

/// `{"error": {"code", "message"}}`.
pub fn error_json(e: &Error) -> Value {
    json::obj([(
        "error",
        json::obj([
            ("code", Value::from(e.code())),
            ("message", Value::from(e.to_string())),
        ]),
    )])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Catalog {
        let mut c = Catalog::new();
        c.insert(SequenceSpec::geometric("geo2", 2, 0).unwrap()).unwrap();
        c
    }

    #[test]
    fn eleven_is_rejected() {
        let text = r#"{"command":"member","inputs":{"x":"11",
            "expr":{"node":"sumRepeat","seq":"geo2","k":1}}}"#;
        let job = JobSpec::parse(text, &catalog()).unwrap();
        assert_eq!(job.budgets.node_cap, 1_000_000);
        assert_eq!(job.budgets.tail_depth, 6);
        let r = run(&job).unwrap();
        assert_eq!(r.json["result"]["verdict"], "notIn");
    }

    #[test]
    fn parse_errors() {
        let c = catalog();
        assert!(matches!(
            JobSpec::parse(r#"{"command":"frobnicate"}"#, &c),
            Err(Error::UnknownCommand(_))
        ));
        assert!(matches!(
            JobSpec::parse(r#"{"command":"certify","inputs":{"sequence":"nope"}}"#, &c),
            Err(Error::UnresolvedSequenceId(_))
        ));
        let Err(Error::Parse { location, .. }) = JobSpec::parse("{\n  \"command\": ", &c) else {
            panic!("expected a parse error");
        };
        assert!(location.starts_with("line 2"));
        let Err(Error::Parse { location, .. }) =
            JobSpec::parse(r#"{"command":"certify","inputs":{"sequence":"geo2"},"budgets":{"nodeCap":0}}"#, &c)
        else {
            panic!("expected a parse error");
        };
        assert_eq!(location, "budgets.nodeCap");
    }

    #[test]
    fn identity_witness_is_an_error() {
        let text = r#"{"command":"witness","inputs":{"x":"0","sequence":"geo2","depth":1}}"#;
        let job = JobSpec::parse(text, &catalog()).unwrap();
        let e = run(&job).unwrap_err();
        assert_eq!(error_json(&e)["error"]["code"], "IdentityTarget");
    }
}
