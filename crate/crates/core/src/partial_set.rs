//! Partial sets over a finite sample space: the algebra D(S) of disjoint
//! pairs (A, B), the value set T, and partial probability measures.

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, Rational};

/// A disjoint pair (positive, negative) of subsets of S, as bitmasks over
/// element indices. The space size is carried by the surrounding field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialSet {
    pub pos: u32,
    pub neg: u32,
}

impl PartialSet {
    pub fn new(pos: u32, neg: u32) -> PartialSet {
        assert_eq!(pos & neg, 0, "positive and negative parts must be disjoint");
        PartialSet { pos, neg }
    }

    /// (A,B) ⊓ (C,D) = (A∩C, B∪D)
    pub fn meet(self, other: PartialSet) -> PartialSet {
        PartialSet { pos: self.pos & other.pos, neg: self.neg | other.neg }
    }

    /// (A,B) ⊔ (C,D) = (A∪C, B∩D)
    pub fn join(self, other: PartialSet) -> PartialSet {
        PartialSet { pos: self.pos | other.pos, neg: self.neg & other.neg }
    }

    /// −(A,B) = (B,A)
    pub fn neg(self) -> PartialSet {
        PartialSet { pos: self.neg, neg: self.pos }
    }

    /// (A,B) ⊑ (C,D) iff A ⊆ C and D ⊆ B
    pub fn leq(self, other: PartialSet) -> bool {
        self.pos & other.pos == self.pos && other.neg & self.neg == other.neg
    }

    /// Bottom (∅, S) for a space of `n` elements.
    pub fn zero(n: u32) -> PartialSet {
        PartialSet { pos: 0, neg: full_mask(n) }
    }

    /// Top (S, ∅).
    pub fn one(n: u32) -> PartialSet {
        PartialSet { pos: full_mask(n), neg: 0 }
    }

    /// The neither element (∅, ∅).
    pub fn neither() -> PartialSet {
        PartialSet { pos: 0, neg: 0 }
    }

    /// True when positive and negative parts partition S ("Boolean" member).
    pub fn is_total(self, n: u32) -> bool {
        self.pos | self.neg == full_mask(n)
    }
}

pub fn full_mask(n: u32) -> u32 {
    assert!(n <= 31);
    (1u32 << n) - 1
}

/// JSON shape {"pos":["a"],"neg":["b"]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialSetSpec {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartialSetParseError {
    #[error("unknown sample element {0:?}")]
    UnknownElement(String),
    #[error("element {0:?} listed as both positive and negative")]
    Overlap(String),
}

pub fn partial_set_from_spec(
    space: &[String],
    spec: &PartialSetSpec,
) -> Result<PartialSet, PartialSetParseError> {
    let lookup = |name: &String| {
        space
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| PartialSetParseError::UnknownElement(name.clone()))
    };
    let mut pos = 0u32;
    for name in &spec.pos {
        pos |= 1 << lookup(name)?;
    }
    let mut neg = 0u32;
    for name in &spec.neg {
        let bit = 1u32 << lookup(name)?;
        if pos & bit != 0 {
            return Err(PartialSetParseError::Overlap(name.clone()));
        }
        neg |= bit;
    }
    Ok(PartialSet { pos, neg })
}

pub fn partial_set_to_spec(space: &[String], ps: PartialSet) -> PartialSetSpec {
    let names = |mask: u32| {
        space
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.clone())
            .collect()
    };
    PartialSetSpec { pos: names(ps.pos), neg: names(ps.neg) }
}

/// A point of T = {(x,y) ∈ [0,1]²: x+y ≤ 1}, or an intermediate Q² value
/// on its way to one; membership is certified separately via `in_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TValue {
    pub first: Rational,
    pub second: Rational,
}

impl TValue {
    pub fn new(first: Rational, second: Rational) -> TValue {
        TValue { first, second }
    }

    pub fn zero_t() -> TValue {
        TValue::new(Rational::zero(), Rational::one())
    }

    pub fn one_t() -> TValue {
        TValue::new(Rational::one(), Rational::zero())
    }

    pub fn neither_t() -> TValue {
        TValue::new(Rational::zero(), Rational::zero())
    }

    /// σ(x,y) = (y,x)
    pub fn sigma(&self) -> TValue {
        TValue::new(self.second.clone(), self.first.clone())
    }

    /// (x,y) ≼ (w,z) iff x ≤ w and z ≤ y
    pub fn preceq(&self, other: &TValue) -> bool {
        self.first <= other.first && other.second <= self.second
    }

    pub fn in_t(&self) -> bool {
        !self.first.is_negative()
            && !self.second.is_negative()
            && &self.first + &self.second <= Rational::one()
    }

    pub fn add(&self, other: &TValue) -> TValue {
        TValue::new(&self.first + &other.first, &self.second + &other.second)
    }

    pub fn sub(&self, other: &TValue) -> TValue {
        TValue::new(&self.first - &other.first, &self.second - &other.second)
    }

    pub fn scale(&self, k: &Rational) -> TValue {
        TValue::new(&self.first * k, &self.second * k)
    }
}

/// Renders "(x, y)" with each component as an exact rational.
pub fn format_tvalue(t: &TValue) -> String {
    format!("({}, {})", format_rational(&t.first), format_rational(&t.second))
}

/// A subalgebra of D(S): member list verified closed under ⊓, ⊔, −
/// and containing 0, 1 and the neither element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialField {
    pub space: Vec<String>,
    pub members: Vec<PartialSet>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("space of {0} elements exceeds the enumeration cap of {1}")]
    CapExceeded(usize, usize),
    #[error("member list is not closed under the operations")]
    NotClosed,
    #[error("member list is missing a constant")]
    MissingConstant,
    #[error("duplicate member")]
    Duplicate,
}

impl PartialField {
    pub fn n(&self) -> u32 {
        self.space.len() as u32
    }

    pub fn index_of(&self, ps: PartialSet) -> Option<usize> {
        self.members.iter().position(|&m| m == ps)
    }

    pub fn verify(&self) -> Result<(), FieldError> {
        let n = self.n();
        for w in 0..self.members.len() {
            for v in 0..w {
                if self.members[v] == self.members[w] {
                    return Err(FieldError::Duplicate);
                }
            }
        }
        for c in [PartialSet::zero(n), PartialSet::one(n), PartialSet::neither()] {
            if self.index_of(c).is_none() {
                return Err(FieldError::MissingConstant);
            }
        }
        for &a in &self.members {
            if self.index_of(a.neg()).is_none() {
                return Err(FieldError::NotClosed);
            }
            for &b in &self.members {
                if self.index_of(a.meet(b)).is_none() || self.index_of(a.join(b)).is_none() {
                    return Err(FieldError::NotClosed);
                }
            }
        }
        Ok(())
    }
}

pub const DEFAULT_ENUM_CAP: usize = 6;

/// All 3^|S| partial sets, in negative-major positive-minor ternary order:
/// each element contributes a trit (0 = negative, 1 = neither, 2 = positive)
/// with the first space element most significant.
pub fn enumerate_ds(space: &[String], cap: usize) -> Result<PartialField, FieldError> {
    let k = space.len();
    if k > cap || k > 31 {
        return Err(FieldError::CapExceeded(k, cap.min(31)));
    }
    let total = 3usize.pow(k as u32);
    let mut members = Vec::with_capacity(total);
    for code in 0..total {
        let mut rest = code;
        let mut pos = 0u32;
        let mut neg = 0u32;
        // peel trits least-significant-first; the last space element is least
        // significant, so index from the right
        for i in (0..k).rev() {
            match rest % 3 {
                0 => neg |= 1 << i,
                2 => pos |= 1 << i,
                _ => {}
            }
            rest /= 3;
        }
        members.push(PartialSet { pos, neg });
    }
    let field = PartialField { space: space.to_vec(), members };
    debug_assert!(field.verify().is_ok());
    Ok(field)
}

/// A total mapping field member -> TValue, indexed parallel to the member
/// list of its field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMeasure {
    pub values: Vec<TValue>,
}

impl PartialMeasure {
    pub fn get(&self, field: &PartialField, ps: PartialSet) -> Option<&TValue> {
        field.index_of(ps).map(|i| &self.values[i])
    }
}

/// Witness for a failed measure certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureDefect {
    /// value outside T at member index
    OutsideT(usize),
    /// μ(∅,S) != (0,1) or μ(S,∅) != (1,0)
    Bounds,
    /// additivity μ(a)+μ(b) = μ(a⊔b)+μ(a⊓b) fails at the member pair
    Additivity(usize, usize),
    /// μ(−a) != σ(μ(a)) at member index
    Negation(usize),
    /// (0,0) ⋠ μ(A,∅) at member index
    Positivity(usize),
}

/// The four measure axioms plus T-membership, checked exhaustively.
///
/// Axiom 2 is checked in the valuation form μ(a)+μ(b) = μ(a⊔b)+μ(a⊓b),
/// componentwise over Q². (Restated with the meet term moved across the
/// equality; associated measures of classical spaces satisfy exactly this,
/// by inclusion-exclusion on each component.)
pub fn is_partial_measure(field: &PartialField, mu: &PartialMeasure) -> Result<(), MeasureDefect> {
    assert_eq!(mu.values.len(), field.members.len(), "measure must be total");
    let n = field.n();
    if let Some(i) = mu.values.iter().position(|t| !t.in_t()) {
        return Err(MeasureDefect::OutsideT(i));
    }
    let at = |ps: PartialSet| &mu.values[field.index_of(ps).expect("field is closed")];
    if *at(PartialSet::zero(n)) != TValue::zero_t() || *at(PartialSet::one(n)) != TValue::one_t() {
        return Err(MeasureDefect::Bounds);
    }
    for (i, &a) in field.members.iter().enumerate() {
        for (j, &b) in field.members.iter().enumerate() {
            let lhs = mu.values[i].add(&mu.values[j]);
            let rhs = at(a.join(b)).add(at(a.meet(b)));
            if lhs != rhs {
                return Err(MeasureDefect::Additivity(i, j));
            }
        }
    }
    for (i, &a) in field.members.iter().enumerate() {
        if *at(a.neg()) != mu.values[i].sigma() {
            return Err(MeasureDefect::Negation(i));
        }
    }
    for (i, &a) in field.members.iter().enumerate() {
        if a.neg == 0 && !TValue::neither_t().preceq(&mu.values[i]) {
            return Err(MeasureDefect::Positivity(i));
        }
    }
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightsError {
    #[error("weight for element {0:?} is negative")]
    Negative(String),
    #[error("weights sum to {0}, expected 1")]
    BadSum(String),
    #[error("{0} weights given for a space of {1} elements")]
    WrongArity(usize, usize),
}

/// Classical probability weights on S, summing to 1.
pub fn check_weights(space: &[String], weights: &[Rational]) -> Result<(), WeightsError> {
    if weights.len() != space.len() {
        return Err(WeightsError::WrongArity(weights.len(), space.len()));
    }
    for (name, w) in space.iter().zip(weights) {
        if w.is_negative() {
            return Err(WeightsError::Negative(name.clone()));
        }
    }
    let sum: Rational = weights.iter().sum();
    if !sum.is_one() {
        return Err(WeightsError::BadSum(format_rational(&sum)));
    }
    Ok(())
}

pub fn subset_mass(weights: &[Rational], mask: u32) -> Rational {
    weights
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, w)| w.clone())
        .sum()
}

/// The associated partial space: μ(A,B) = (p(A), p(B)) on all of D(S).
pub fn associated_partial_space(
    space: &[String],
    weights: &[Rational],
) -> Result<(PartialField, PartialMeasure), WeightsError> {
    check_weights(space, weights)?;
    let field = enumerate_ds(space, space.len().max(DEFAULT_ENUM_CAP))
        .expect("cap is at least the space size");
    let values = field
        .members
        .iter()
        .map(|ps| TValue::new(subset_mass(weights, ps.pos), subset_mass(weights, ps.neg)))
        .collect();
    let mu = PartialMeasure { values };
    debug_assert!(is_partial_measure(&field, &mu).is_ok());
    Ok((field, mu))
}

/// Least subfield of D(S) containing the generators and the constants,
/// with a minimal-depth witness term per member (BFS over ⊓, ⊔, −;
/// ties broken by printed term). Var(i) in a witness means generator i.
pub fn generated_subfield(
    bits: u32,
    generators: &[PartialSet],
) -> (Vec<PartialSet>, std::collections::BTreeMap<PartialSet, crate::formula::Formula>) {
    use crate::formula::Formula;
    use std::collections::BTreeMap;
    let mut witness: BTreeMap<PartialSet, Formula> = BTreeMap::new();
    witness.insert(PartialSet::zero(bits), Formula::Const0);
    witness.insert(PartialSet::one(bits), Formula::Const1);
    witness.insert(PartialSet::neither(), Formula::ConstN);
    for (i, &g) in generators.iter().enumerate() {
        witness.entry(g).or_insert(Formula::Var(i));
    }
    loop {
        let frontier: Vec<(PartialSet, Formula)> =
            witness.iter().map(|(&e, t)| (e, t.clone())).collect();
        let mut best: BTreeMap<PartialSet, Formula> = BTreeMap::new();
        let offer = |e: PartialSet, t: Formula, best: &mut BTreeMap<PartialSet, Formula>| {
            match best.get(&e) {
                None => {
                    best.insert(e, t);
                }
                Some(old) => {
                    if (t.depth(), t.to_string()) < (old.depth(), old.to_string()) {
                        best.insert(e, t);
                    }
                }
            }
        };
        for (x, tx) in &frontier {
            if !witness.contains_key(&x.neg()) {
                offer(x.neg(), Formula::not(tx.clone()), &mut best);
            }
            for (y, ty) in &frontier {
                if !witness.contains_key(&x.meet(*y)) {
                    offer(x.meet(*y), Formula::and(tx.clone(), ty.clone()), &mut best);
                }
                if !witness.contains_key(&x.join(*y)) {
                    offer(x.join(*y), Formula::or(tx.clone(), ty.clone()), &mut best);
                }
            }
        }
        if best.is_empty() {
            break;
        }
        witness.extend(best);
    }
    let carrier: Vec<PartialSet> = witness.keys().copied().collect();
    (carrier, witness)
}
