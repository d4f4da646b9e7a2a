//! Concrete carrier groups: the integers, finitely supported integer vectors,
//! free groups on countably many letters, and binary products of these.
//!
//! Values are immutable and every operation is a pure function. Two
//! canonical forms are maintained at all times: an [`IntVector`] never
//! stores a zero coefficient, and a [`FreeWord`] is always freely reduced.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::json;

/// Which carrier a value lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// The additive integers.
    Int,
    /// The direct sum of countably many copies of the integers, indexed from 1.
    IntVec,
    /// The free group on letters `x1, x2, ...`, optionally on a finite alphabet.
    Free { alphabet: Option<u64> },
    /// A direct product `G × H`.
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

const MAX_PRODUCT_DEPTH: usize = 2;

impl GroupSpec {
    pub fn free(alphabet: Option<u64>) -> Self {
        GroupSpec::Free { alphabet }
    }

    pub fn product(left: GroupSpec, right: GroupSpec) -> Result<Self> {
        let spec = GroupSpec::Product(Box::new(left), Box::new(right));
        if spec.depth() > MAX_PRODUCT_DEPTH {
            return Err(Error::KindMismatch(format!(
                "product nesting depth {} exceeds {MAX_PRODUCT_DEPTH}",
                spec.depth()
            )));
        }
        Ok(spec)
    }

    fn depth(&self) -> usize {
        match self {
            GroupSpec::Product(l, r) => 1 + l.depth().max(r.depth()),
            _ => 0,
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            GroupSpec::Int | GroupSpec::IntVec => true,
            GroupSpec::Free { alphabet } => matches!(alphabet, Some(0) | Some(1)),
            GroupSpec::Product(l, r) => l.is_abelian() && r.is_abelian(),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupSpec::Int => GroupElement::Int(BigInt::zero()),
            GroupSpec::IntVec => GroupElement::Vector(IntVector::zero()),
            GroupSpec::Free { .. } => GroupElement::Word(FreeWord::identity()),
            GroupSpec::Product(l, r) => {
                GroupElement::Pair(Box::new(l.identity()), Box::new(r.identity()))
            }
        }
    }

    pub fn contains(&self, element: &GroupElement) -> bool {
        match (self, element) {
            (GroupSpec::Int, GroupElement::Int(_)) => true,
            (GroupSpec::IntVec, GroupElement::Vector(_)) => true,
            (GroupSpec::Free { alphabet }, GroupElement::Word(w)) => match alphabet {
                Some(size) => w.letters().iter().all(|l| l.index <= *size),
                None => true,
            },
            (GroupSpec::Product(l, r), GroupElement::Pair(a, b)) => l.contains(a) && r.contains(b),
            _ => false,
        }
    }

    pub fn check(&self, element: &GroupElement) -> Result<()> {
        if self.contains(element) {
            Ok(())
        } else {
            Err(Error::KindMismatch(format!(
                "{element} is not an element of {self}"
            )))
        }
    }

    /// The group law `a·b`.
    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.mul(b))
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        Ok(a.inverse())
    }

    /// `g⁻¹·x·g`.
    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(x)?;
        Ok(g.inverse().mul(x).mul(g))
    }

    /// `a^k` for any integer `k`, by repeated squaring.
    pub fn pow(&self, a: &GroupElement, k: &BigInt) -> Result<GroupElement> {
        self.check(a)?;
        Ok(a.pow(k))
    }

    /// Product of a list of elements, left to right.
    pub fn product_of<'a, I>(&self, items: I) -> Result<GroupElement>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let mut acc = self.identity();
        for x in items {
            self.check(x)?;
            acc = acc.mul(x);
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupSpec::Int => json::obj([("kind", Value::from("intGroup"))]),
            GroupSpec::IntVec => json::obj([("kind", Value::from("intVecGroup"))]),
            GroupSpec::Free { alphabet } => json::obj([
                ("kind", Value::from("freeGroup")),
                (
                    "alphabetSize",
                    alphabet.map(Value::from).unwrap_or(Value::Null),
                ),
            ]),
            GroupSpec::Product(l, r) => json::obj([
                ("kind", Value::from("productGroup")),
                ("left", l.to_json()),
                ("right", r.to_json()),
            ]),
        }
    }

    pub fn from_json(v: &Value, location: &str) -> Result<Self> {
        // Short string forms are accepted for convenience.
        if let Some(s) = v.as_str() {
            return match s {
                "int" | "intGroup" => Ok(GroupSpec::Int),
                "intvec" | "intVecGroup" => Ok(GroupSpec::IntVec),
                "free" | "freeGroup" => Ok(GroupSpec::free(None)),
                other => Err(Error::parse(location, format!("unknown group `{other}`"))),
            };
        }
        let kind = json::as_str(json::field(v, "kind", location)?, &json::at(location, "kind"))?;
        match kind {
            "intGroup" => Ok(GroupSpec::Int),
            "intVecGroup" => Ok(GroupSpec::IntVec),
            "freeGroup" => {
                let alphabet = match json::opt_field(v, "alphabetSize") {
                    Some(a) => Some(json::as_u64(a, &json::at(location, "alphabetSize"))?),
                    None => None,
                };
                Ok(GroupSpec::free(alphabet))
            }
            "productGroup" => {
                let l = GroupSpec::from_json(json::field(v, "left", location)?, &json::at(location, "left"))?;
                let r = GroupSpec::from_json(json::field(v, "right", location)?, &json::at(location, "right"))?;
                GroupSpec::product(l, r).map_err(|e| Error::parse(location, e.to_string()))
            }
            other => Err(Error::parse(
                json::at(location, "kind"),
                format!("unknown group kind `{other}`"),
            )),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Int => write!(f, "Z"),
            GroupSpec::IntVec => write!(f, "Z^N_0"),
            GroupSpec::Free { alphabet: None } => write!(f, "F"),
            GroupSpec::Free { alphabet: Some(n) } => write!(f, "F{n}"),
            GroupSpec::Product(l, r) => write!(f, "({l} x {r})"),
        }
    }
}

/// A letter `x_index^exponent` with exponent ±1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: u64,
    pub exponent: i8,
}

impl Letter {
    pub fn new(index: u64, exponent: i8) -> Self {
        assert!(index >= 1, "letter indices start at 1");
        assert!(exponent == 1 || exponent == -1, "letter exponents are ±1");
        Letter { index, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            exponent: -self.exponent,
        }
    }
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<Letter>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(index: u64) -> Self {
        FreeWord(vec![Letter::new(index, 1)])
    }

    /// Builds a word from arbitrary letters, reducing as it goes.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        FreeWord(out)
    }

    /// Shorthand: `[(1, 1), (2, -1)]` is `x1 x2⁻¹`.
    pub fn from_pairs(pairs: &[(u64, i8)]) -> Self {
        Self::from_letters(pairs.iter().map(|&(i, e)| Letter::new(i, e)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.0.clone();
        out.reserve(other.0.len());
        for &l in &other.0 {
            push_reduced(&mut out, l);
        }
        FreeWord(out)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last().is_some_and(|&top| top == l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

/// Number of letters in the reduced word.
pub fn reduced_length(w: &FreeWord) -> usize {
    w.len()
}

/// A finitely supported integer vector with canonical (zero-free) support.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(BTreeMap<u64, BigInt>);

impl IntVector {
    pub fn zero() -> Self {
        IntVector(BTreeMap::new())
    }

    /// The basis vector `e_i`, `i ≥ 1`.
    pub fn basis(i: u64) -> Self {
        Self::from_pairs([(i, BigInt::one())])
    }

    /// Accumulates coefficients, dropping anything that sums to zero.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigInt>,
    {
        let mut m: BTreeMap<u64, BigInt> = BTreeMap::new();
        for (i, c) in pairs {
            assert!(i >= 1, "vector indices start at 1");
            *m.entry(i).or_default() += c.into();
        }
        m.retain(|_, c| !c.is_zero());
        IntVector(m)
    }

    pub fn get(&self, i: u64) -> BigInt {
        self.0.get(&i).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.keys().copied()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.0.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.0.values().map(|c| c.abs()).sum()
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        let mut m = self.0.clone();
        for (i, c) in &other.0 {
            let slot = m.entry(*i).or_default();
            *slot += c;
            if slot.is_zero() {
                m.remove(i);
            }
        }
        IntVector(m)
    }

    pub fn neg(&self) -> IntVector {
        IntVector(self.0.iter().map(|(&i, c)| (i, -c)).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        if k.is_zero() {
            return IntVector::zero();
        }
        IntVector(self.0.iter().map(|(&i, c)| (i, c * k)).collect())
    }
}

/// A value in one of the carrier groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Int(BigInt),
    Vector(IntVector),
    Word(FreeWord),
    Pair(Box<GroupElement>, Box<GroupElement>),
}

impl GroupElement {
    pub fn int(n: impl Into<BigInt>) -> Self {
        GroupElement::Int(n.into())
    }

    pub fn word(pairs: &[(u64, i8)]) -> Self {
        GroupElement::Word(FreeWord::from_pairs(pairs))
    }

    pub fn vector<C: Into<BigInt>>(pairs: impl IntoIterator<Item = (u64, C)>) -> Self {
        GroupElement::Vector(IntVector::from_pairs(pairs))
    }

    pub fn pair(left: GroupElement, right: GroupElement) -> Self {
        GroupElement::Pair(Box::new(left), Box::new(right))
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Int(n) => n.is_zero(),
            GroupElement::Vector(v) => v.is_zero(),
            GroupElement::Word(w) => w.is_empty(),
            GroupElement::Pair(a, b) => a.is_identity() && b.is_identity(),
        }
    }

    /// The group law on values already known to share a carrier.
    ///
    /// Panics on mismatched shapes; public entry points validate through
    /// [`GroupSpec::op`] first.
    pub(crate) fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Int(a), GroupElement::Int(b)) => GroupElement::Int(a + b),
            (GroupElement::Vector(a), GroupElement::Vector(b)) => GroupElement::Vector(a.add(b)),
            (GroupElement::Word(a), GroupElement::Word(b)) => GroupElement::Word(a.mul(b)),
            (GroupElement::Pair(a1, b1), GroupElement::Pair(a2, b2)) => {
                GroupElement::Pair(Box::new(a1.mul(a2)), Box::new(b1.mul(b2)))
            }
            (a, b) => panic!("mismatched carriers in group law: {a} · {b}"),
        }
    }

    pub(crate) fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Int(a) => GroupElement::Int(-a),
            GroupElement::Vector(v) => GroupElement::Vector(v.neg()),
            GroupElement::Word(w) => GroupElement::Word(w.inverse()),
            GroupElement::Pair(a, b) => GroupElement::Pair(Box::new(a.inverse()), Box::new(b.inverse())),
        }
    }

    /// `self^exponent` with exponent ±1.
    pub(crate) fn signed(&self, exponent: i8) -> GroupElement {
        if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        }
    }

    /// `g⁻¹·self·g`.
    pub(crate) fn conjugated_by(&self, g: &GroupElement) -> GroupElement {
        g.inverse().mul(self).mul(g)
    }

    pub(crate) fn pow(&self, k: &BigInt) -> GroupElement {
        match self {
            GroupElement::Int(a) => GroupElement::Int(a * k),
            GroupElement::Vector(v) => GroupElement::Vector(v.scale(k)),
            _ => {
                let base = if k.is_negative() { self.inverse() } else { self.clone() };
                let mut e = k.abs();
                let mut acc = identity_like(self);
                let mut sq = base;
                let two = BigInt::from(2);
                while !e.is_zero() {
                    if (&e % &two).is_one() {
                        acc = acc.mul(&sq);
                    }
                    sq = sq.mul(&sq);
                    e /= &two;
                }
                acc
            }
        }
    }

    /// A length function satisfying the triangle inequality and `|x⁻¹| = |x|`:
    /// absolute value, ℓ¹ norm, reduced length, and the sum of these on pairs.
    pub fn norm(&self) -> BigInt {
        match self {
            GroupElement::Int(a) => a.abs(),
            GroupElement::Vector(v) => v.l1_norm(),
            GroupElement::Word(w) => BigInt::from(w.len()),
            GroupElement::Pair(a, b) => a.norm() + b.norm(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            GroupElement::Int(n) => json::bigint_json(n),
            GroupElement::Vector(v) => Value::Array(
                v.iter()
                    .map(|(i, c)| Value::Array(vec![Value::from(i), json::bigint_json(c)]))
                    .collect(),
            ),
            GroupElement::Word(w) => Value::Array(
                w.letters()
                    .iter()
                    .map(|l| Value::Array(vec![Value::from(l.index), Value::from(l.exponent)]))
                    .collect(),
            ),
            GroupElement::Pair(a, b) => Value::Array(vec![a.to_json(), b.to_json()]),
        }
    }

    /// Decodes a value of the given carrier. Vector entries may arrive in any
    /// order and words need not be reduced; both are canonicalized. Zero
    /// coefficients and repeated vector indices are rejected.
    pub fn from_json(spec: &GroupSpec, v: &Value, location: &str) -> Result<Self> {
        let out = match spec {
            GroupSpec::Int => GroupElement::Int(json::as_bigint(v, location)?),
            GroupSpec::IntVec => {
                let mut m: BTreeMap<u64, BigInt> = BTreeMap::new();
                for (k, entry) in json::as_array(v, location)?.iter().enumerate() {
                    let loc = json::at_index(location, k);
                    let pair = json::as_array(entry, &loc)?;
                    if pair.len() != 2 {
                        return Err(Error::parse(loc, "expected [index, coeff]"));
                    }
                    let i = json::as_u64(&pair[0], &loc)?;
                    if i == 0 {
                        return Err(Error::parse(loc, "vector indices start at 1"));
                    }
                    let c = json::as_bigint(&pair[1], &loc)?;
                    if c.is_zero() {
                        return Err(Error::parse(loc, "zero coefficient in canonical vector"));
                    }
                    if m.insert(i, c).is_some() {
                        return Err(Error::parse(loc, format!("index {i} repeated")));
                    }
                }
                GroupElement::Vector(IntVector(m))
            }
            GroupSpec::Free { .. } => {
                let mut letters = Vec::new();
                for (k, entry) in json::as_array(v, location)?.iter().enumerate() {
                    let loc = json::at_index(location, k);
                    let pair = json::as_array(entry, &loc)?;
                    if pair.len() != 2 {
                        return Err(Error::parse(loc, "expected [index, exponent]"));
                    }
                    let i = json::as_u64(&pair[0], &loc)?;
                    let e = json::as_i64(&pair[1], &loc)?;
                    if i == 0 {
                        return Err(Error::parse(loc, "letter indices start at 1"));
                    }
                    if e != 1 && e != -1 {
                        return Err(Error::parse(loc, "letter exponents are ±1"));
                    }
                    letters.push(Letter::new(i, e as i8));
                }
                GroupElement::Word(FreeWord::from_letters(letters))
            }
            GroupSpec::Product(l, r) => {
                let items = json::as_array(v, location)?;
                if items.len() != 2 {
                    return Err(Error::parse(location, "expected a two-element pair"));
                }
                GroupElement::pair(
                    GroupElement::from_json(l, &items[0], &json::at_index(location, 0))?,
                    GroupElement::from_json(r, &items[1], &json::at_index(location, 1))?,
                )
            }
        };
        if !spec.contains(&out) {
            return Err(Error::parse(location, format!("{out} is not an element of {spec}")));
        }
        Ok(out)
    }
}

fn identity_like(x: &GroupElement) -> GroupElement {
    match x {
        GroupElement::Int(_) => GroupElement::Int(BigInt::zero()),
        GroupElement::Vector(_) => GroupElement::Vector(IntVector::zero()),
        GroupElement::Word(_) => GroupElement::Word(FreeWord::identity()),
        GroupElement::Pair(a, b) => GroupElement::pair(identity_like(a), identity_like(b)),
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Int(n) => write!(f, "{n}"),
            GroupElement::Vector(v) => {
                if v.is_zero() {
                    return write!(f, "0");
                }
                for (k, (i, c)) in v.iter().enumerate() {
                    let sep = if k == 0 { "" } else { " " };
                    let sign = if c.is_negative() { "-" } else if k == 0 { "" } else { "+" };
                    let mag = c.abs();
                    if mag.is_one() {
                        write!(f, "{sep}{sign}e{i}")?;
                    } else {
                        write!(f, "{sep}{sign}{mag}e{i}")?;
                    }
                }
                Ok(())
            }
            GroupElement::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                for (k, l) in w.letters().iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    if l.exponent < 0 {
                        write!(f, "x{}^-1", l.index)?;
                    } else {
                        write!(f, "x{}", l.index)?;
                    }
                }
                Ok(())
            }
            GroupElement::Pair(a, b) => write!(f, "({a}, {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_addition() {
        let g = GroupSpec::Int;
        assert_eq!(g.op(&GroupElement::int(3), &GroupElement::int(5)).unwrap(), GroupElement::int(8));
        assert_eq!(g.invert(&GroupElement::int(7)).unwrap(), GroupElement::int(-7));
    }

    #[test]
    fn free_cancellation() {
        let f = GroupSpec::free(None);
        let a = GroupElement::word(&[(1, 1)]);
        let b = GroupElement::word(&[(1, -1), (2, 1)]);
        assert_eq!(f.op(&a, &b).unwrap(), GroupElement::word(&[(2, 1)]));
    }

    #[test]
    fn free_inverse_reverses_and_flips() {
        let f = GroupSpec::free(None);
        let w = GroupElement::word(&[(1, 1), (2, -1)]);
        assert_eq!(f.invert(&w).unwrap(), GroupElement::word(&[(2, 1), (1, -1)]));
    }

    #[test]
    fn vector_sum_drops_zeros() {
        let g = GroupSpec::IntVec;
        let a = GroupElement::vector([(1, 2)]);
        let b = GroupElement::vector([(1, -2), (3, 1)]);
        let s = g.op(&a, &b).unwrap();
        assert_eq!(s, GroupElement::vector([(3, 1)]));
        match s {
            GroupElement::Vector(v) => assert_eq!(v.support().collect::<Vec<_>>(), vec![3]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn pair_inverse() {
        let g = GroupSpec::product(GroupSpec::Int, GroupSpec::free(None)).unwrap();
        let p = GroupElement::pair(GroupElement::int(3), GroupElement::word(&[(1, 1)]));
        assert_eq!(
            g.invert(&p).unwrap(),
            GroupElement::pair(GroupElement::int(-3), GroupElement::word(&[(1, -1)]))
        );
    }

    #[test]
    fn reduced_lengths() {
        assert_eq!(reduced_length(&FreeWord::identity()), 0);
        assert_eq!(reduced_length(&FreeWord::from_pairs(&[(1, 1), (2, -1), (1, 1)])), 3);
        let a = FreeWord::from_pairs(&[(1, 1), (2, 1)]);
        let b = FreeWord::from_pairs(&[(2, -1), (1, 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab, FreeWord::from_pairs(&[(1, 1), (1, 1)]));
        assert_eq!(reduced_length(&ab), 2);
    }

    #[test]
    fn kind_mismatch() {
        let g = GroupSpec::Int;
        let err = g.op(&GroupElement::int(1), &GroupElement::word(&[(1, 1)])).unwrap_err();
        assert_eq!(err.code(), "KindMismatch");
        let bounded = GroupSpec::free(Some(2));
        assert!(bounded.check(&GroupElement::word(&[(3, 1)])).is_err());
    }

    #[test]
    fn product_depth_is_bounded() {
        let gh = GroupSpec::product(GroupSpec::Int, GroupSpec::Int).unwrap();
        let ghk = GroupSpec::product(gh.clone(), GroupSpec::Int).unwrap();
        assert!(GroupSpec::product(ghk, gh).is_err());
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = GroupSpec::free(None);
        let w = GroupElement::word(&[(1, 1), (2, 1)]);
        let cube = f.product_of([&w, &w, &w]).unwrap();
        assert_eq!(f.pow(&w, &BigInt::from(3)).unwrap(), cube);
        assert_eq!(f.pow(&w, &BigInt::from(-3)).unwrap(), cube.inverse());
        assert!(f.pow(&w, &BigInt::zero()).unwrap().is_identity());
    }

    #[test]
    fn json_shapes() {
        let g = GroupSpec::product(GroupSpec::IntVec, GroupSpec::free(None)).unwrap();
        let x = GroupElement::pair(
            GroupElement::vector([(3, -1), (1, 2)]),
            GroupElement::word(&[(2, 1), (1, -1)]),
        );
        let text = serde_json::to_string(&x.to_json()).unwrap();
        assert_eq!(text, r#"[[[1,"2"],[3,"-1"]],[[2,1],[1,-1]]]"#);
        let back = GroupElement::from_json(&g, &serde_json::from_str(&text).unwrap(), "x").unwrap();
        assert_eq!(back, x);
        let bad: Value = serde_json::from_str(r#"[[1,"0"]]"#).unwrap();
        assert!(GroupElement::from_json(&GroupSpec::IntVec, &bad, "x").is_err());
    }

    #[test]
    fn spec_json_round_trip() {
        let g = GroupSpec::product(GroupSpec::Int, GroupSpec::free(Some(3))).unwrap();
        assert_eq!(GroupSpec::from_json(&g.to_json(), "g").unwrap(), g);
    }
}
