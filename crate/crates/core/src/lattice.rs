//! Finite bounded lattices given by explicit operation tables, classical
//! valuations, relativization and conditional valuations.
//!
//! Lattices are validated exhaustively at construction; the order x <= y is
//! derived as x /\ y = x, and distributivity is checked once and cached.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, is_unit_interval, parse_rational, Rational};

/// Raw lattice description as found in JSON input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub elements: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("element list is empty")]
    Empty,
    #[error("degenerate one-element lattice (0 = 1)")]
    Degenerate,
    #[error("{table} table is not total and square")]
    BadTable { table: &'static str },
    #[error("{table} table entry out of range at ({x}, {y})")]
    OutOfRange { table: &'static str, x: usize, y: usize },
    #[error("bound index out of range")]
    BadBounds,
    #[error("idempotence fails for {op} at {x}")]
    Idempotence { op: &'static str, x: usize },
    #[error("commutativity fails for {op} at ({x}, {y})")]
    Commutativity { op: &'static str, x: usize, y: usize },
    #[error("associativity fails for {op} at ({x}, {y}, {z})")]
    Associativity { op: &'static str, x: usize, y: usize, z: usize },
    #[error("absorption fails at ({x}, {y})")]
    Absorption { x: usize, y: usize },
    #[error("bottom is not a join identity at {x}")]
    BottomIdentity { x: usize },
    #[error("top is not a meet identity at {x}")]
    TopIdentity { x: usize },
}

/// A certified finite bounded lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    pub elements: Vec<String>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
    pub distributive: bool,
}

impl FiniteLattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x][y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x][y]
    }

    /// Derived order: x <= y iff x /\ y = x.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    /// The unique complement of `x`, if any. Complements are unique in a
    /// distributive lattice; the first match in index order is returned.
    pub fn complement(&self, x: usize) -> Option<usize> {
        (0..self.len())
            .find(|&c| self.join(x, c) == self.top && self.meet(x, c) == self.bottom)
    }

    /// Distributive, bounded and every element complemented.
    pub fn is_boolean(&self) -> bool {
        self.distributive && (0..self.len()).all(|x| self.complement(x).is_some())
    }

    pub fn element_index(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// The powerset lattice 2^k with elements named by bitmask subsets
    /// ("{}", "{0}", "{0,1}", ...), atom i = singleton {i}.
    pub fn powerset(k: u32) -> FiniteLattice {
        let size = 1usize << k;
        let name = |m: usize| {
            let bits: Vec<String> = (0..k).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
            format!("{{{}}}", bits.join(","))
        };
        let elements: Vec<String> = (0..size).map(name).collect();
        let meet = (0..size).map(|x| (0..size).map(|y| x & y).collect()).collect();
        let join = (0..size).map(|x| (0..size).map(|y| x | y).collect()).collect();
        FiniteLattice {
            elements,
            meet,
            join,
            bottom: 0,
            top: size - 1,
            distributive: true,
        }
    }

    /// The two-element chain 0 < 1.
    pub fn chain2() -> FiniteLattice {
        FiniteLattice::powerset(1)
    }

    pub fn to_spec(&self) -> LatticeSpec {
        LatticeSpec {
            elements: self.elements.clone(),
            meet: self.meet.clone(),
            join: self.join.clone(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    /// Builds a certified lattice directly from tables known to be lawful.
    /// Used internally for derived algebras; still re-validates.
    pub(crate) fn from_tables(
        elements: Vec<String>,
        meet: Vec<Vec<usize>>,
        join: Vec<Vec<usize>>,
        bottom: usize,
        top: usize,
    ) -> FiniteLattice {
        validate_lattice(&LatticeSpec { elements, meet, join, bottom, top })
            .expect("internally constructed lattice must be lawful")
    }
}

/// Checks every lattice law exhaustively and computes the distributive flag.
pub fn validate_lattice(spec: &LatticeSpec) -> Result<FiniteLattice, LatticeError> {
    let n = spec.elements.len();
    if n == 0 {
        return Err(LatticeError::Empty);
    }
    if n == 1 {
        return Err(LatticeError::Degenerate);
    }
    for (table, name) in [(&spec.meet, "meet"), (&spec.join, "join")] {
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(LatticeError::BadTable { table: name });
        }
        for x in 0..n {
            for y in 0..n {
                if table[x][y] >= n {
                    return Err(LatticeError::OutOfRange { table: name, x, y });
                }
            }
        }
    }
    if spec.bottom >= n || spec.top >= n {
        return Err(LatticeError::BadBounds);
    }
    let m = |x: usize, y: usize| spec.meet[x][y];
    let j = |x: usize, y: usize| spec.join[x][y];
    for (op, f) in [("meet", &m as &dyn Fn(usize, usize) -> usize), ("join", &j)] {
        for x in 0..n {
            if f(x, x) != x {
                return Err(LatticeError::Idempotence { op, x });
            }
            for y in 0..n {
                if f(x, y) != f(y, x) {
                    return Err(LatticeError::Commutativity { op, x, y });
                }
                for z in 0..n {
                    if f(f(x, y), z) != f(x, f(y, z)) {
                        return Err(LatticeError::Associativity { op, x, y, z });
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if m(x, j(x, y)) != x || j(x, m(x, y)) != x {
                return Err(LatticeError::Absorption { x, y });
            }
        }
    }
    for x in 0..n {
        if j(spec.bottom, x) != x {
            return Err(LatticeError::BottomIdentity { x });
        }
        if m(spec.top, x) != x {
            return Err(LatticeError::TopIdentity { x });
        }
    }
    let mut distributive = true;
    'outer: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if m(x, j(y, z)) != j(m(x, y), m(x, z))
                    || j(x, m(y, z)) != m(j(x, y), j(x, z))
                {
                    distributive = false;
                    break 'outer;
                }
            }
        }
    }
    Ok(FiniteLattice {
        elements: spec.elements.clone(),
        meet: spec.meet.clone(),
        join: spec.join.clone(),
        bottom: spec.bottom,
        top: spec.top,
        distributive,
    })
}

/// A total assignment of rationals to lattice elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    pub values: Vec<Rational>,
}

impl Valuation {
    pub fn get(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn to_json(&self, lattice: &FiniteLattice) -> serde_json::Value {
        let map: BTreeMap<String, String> = lattice
            .elements
            .iter()
            .zip(&self.values)
            .map(|(e, v)| (e.clone(), format_rational(v)))
            .collect();
        serde_json::json!({ "values": map })
    }

    pub fn from_json(
        lattice: &FiniteLattice,
        value: &serde_json::Value,
    ) -> Result<Valuation, String> {
        let map = value
            .get("values")
            .and_then(|v| v.as_object())
            .ok_or("valuation JSON must have a \"values\" object")?;
        let mut values = vec![Rational::zero(); lattice.len()];
        let mut seen = vec![false; lattice.len()];
        for (name, lit) in map {
            let idx = lattice
                .element_index(name)
                .ok_or_else(|| format!("unknown element {name:?}"))?;
            let text = lit.as_str().ok_or("valuation entries must be strings")?;
            values[idx] = parse_rational(text).map_err(|e| e.to_string())?;
            seen[idx] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(format!(
                "valuation missing element {:?}",
                lattice.elements[missing]
            ));
        }
        Ok(Valuation { values })
    }
}

/// Witness for a failed valuation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationDefect {
    /// v(x \/ y) != v(x) + v(y) - v(x /\ y)
    ModularPair { x: usize, y: usize },
    BottomNotZero,
    TopNotOne,
}

/// Eq (*) over all pairs plus v(0)=0 and v(1)=1. Range is reported
/// separately by `values_in_unit_interval`, since the stated axioms alone
/// do not bound v.
pub fn is_valuation(lattice: &FiniteLattice, v: &Valuation) -> Result<(), ValuationDefect> {
    if !v.values[lattice.bottom].is_zero() {
        return Err(ValuationDefect::BottomNotZero);
    }
    if !v.values[lattice.top].is_one() {
        return Err(ValuationDefect::TopNotOne);
    }
    let n = lattice.len();
    for x in 0..n {
        for y in 0..n {
            let lhs = &v.values[lattice.join(x, y)];
            let rhs = &v.values[x] + &v.values[y] - &v.values[lattice.meet(x, y)];
            if *lhs != rhs {
                return Err(ValuationDefect::ModularPair { x, y });
            }
        }
    }
    Ok(())
}

pub fn values_in_unit_interval(v: &Valuation) -> bool {
    v.values.iter().all(is_unit_interval)
}

pub fn is_isotone_valuation(lattice: &FiniteLattice, v: &Valuation) -> bool {
    let n = lattice.len();
    (0..n).all(|x| (0..n).all(|y| !lattice.leq(x, y) || v.values[x] <= v.values[y]))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BooleanCheckError {
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("element {0} has no complement")]
    NotComplemented(usize),
}

/// The two characterizations of a Boolean valuation: Eq (*) with bounds,
/// and additivity on disjoint pairs with v(1)=1. Both booleans are
/// returned so callers can assert their equivalence.
pub fn check_boolean_valuation_additivity(
    lattice: &FiniteLattice,
    v: &Valuation,
) -> Result<(bool, bool), BooleanCheckError> {
    if !lattice.distributive {
        return Err(BooleanCheckError::NotDistributive);
    }
    if let Some(x) = (0..lattice.len()).find(|&x| lattice.complement(x).is_none()) {
        return Err(BooleanCheckError::NotComplemented(x));
    }
    let valuation_side = is_valuation(lattice, v).is_ok();
    let mut additive = v.values[lattice.top].is_one();
    'outer: for x in 0..lattice.len() {
        for y in 0..lattice.len() {
            if lattice.meet(x, y) == lattice.bottom {
                let lhs = &v.values[lattice.join(x, y)];
                let rhs = &v.values[x] + &v.values[y];
                if *lhs != rhs {
                    additive = false;
                    break 'outer;
                }
            }
        }
    }
    Ok((valuation_side, additive))
}

/// A structure-preserving map between certified lattices.
#[derive(Debug, Clone)]
pub struct LatticeMorphism {
    pub source: FiniteLattice,
    pub target: FiniteLattice,
    pub map: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("map is not total on the source")]
    NotTotal,
    #[error("map does not preserve {op} at ({x}, {y})")]
    NotPreserving { op: &'static str, x: usize, y: usize },
    #[error("map does not preserve {0}")]
    NotPreservingBound(&'static str),
    #[error("map is not bijective")]
    NotBijective,
}

impl LatticeMorphism {
    pub fn new(
        source: FiniteLattice,
        target: FiniteLattice,
        map: Vec<usize>,
    ) -> Result<LatticeMorphism, MorphismError> {
        if map.len() != source.len() || map.iter().any(|&t| t >= target.len()) {
            return Err(MorphismError::NotTotal);
        }
        for x in 0..source.len() {
            for y in 0..source.len() {
                if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                    return Err(MorphismError::NotPreserving { op: "meet", x, y });
                }
                if map[source.join(x, y)] != target.join(map[x], map[y]) {
                    return Err(MorphismError::NotPreserving { op: "join", x, y });
                }
            }
        }
        if map[source.bottom] != target.bottom {
            return Err(MorphismError::NotPreservingBound("bottom"));
        }
        if map[source.top] != target.top {
            return Err(MorphismError::NotPreservingBound("top"));
        }
        Ok(LatticeMorphism { source, target, map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = vec![false; self.target.len()];
        for &t in &self.map {
            if seen[t] {
                return false;
            }
            seen[t] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &t in &self.map {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn inverse_map(&self) -> Option<Vec<usize>> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.target.len()];
        for (s, &t) in self.map.iter().enumerate() {
            inv[t] = s;
        }
        Some(inv)
    }
}

/// v composed with a morphism is again a certified valuation on the source.
pub fn pullback_valuation(phi: &LatticeMorphism, v: &Valuation) -> Valuation {
    let values = phi.map.iter().map(|&t| v.values[t].clone()).collect();
    let pulled = Valuation { values };
    debug_assert!(is_valuation(&phi.source, &pulled).is_ok());
    pulled
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InducedError {
    #[error("morphism is not bijective")]
    NotBijective,
}

/// The valuation v o phi^{-1} carried along an isomorphism.
pub fn induced_valuation(
    phi: &LatticeMorphism,
    v: &Valuation,
) -> Result<Valuation, InducedError> {
    let inv = phi.inverse_map().ok_or(InducedError::NotBijective)?;
    let values = inv.iter().map(|&s| v.values[s].clone()).collect();
    Ok(Valuation { values })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelativizeError {
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("v(a) = 0, cannot relativize")]
    ZeroMass,
}

/// The interval lattice [0, a] together with the epimorphism f_a(x) = a /\ x.
/// Requires distributivity (f_a is a morphism only then).
pub fn relativize(
    lattice: &FiniteLattice,
    a: usize,
) -> Result<(FiniteLattice, LatticeMorphism), RelativizeError> {
    if !lattice.distributive {
        return Err(RelativizeError::NotDistributive);
    }
    let carrier: Vec<usize> = (0..lattice.len()).filter(|&x| lattice.leq(x, a)).collect();
    let pos: Vec<Option<usize>> = {
        let mut pos = vec![None; lattice.len()];
        for (i, &x) in carrier.iter().enumerate() {
            pos[x] = Some(i);
        }
        pos
    };
    let elements: Vec<String> = carrier.iter().map(|&x| lattice.elements[x].clone()).collect();
    let meet = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos[lattice.meet(x, y)].unwrap()).collect())
        .collect();
    let join = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos[lattice.join(x, y)].unwrap()).collect())
        .collect();
    let bottom = pos[lattice.bottom].unwrap();
    let top = pos[a].unwrap();
    let interval = FiniteLattice::from_tables(elements, meet, join, bottom, top);
    let map: Vec<usize> = (0..lattice.len())
        .map(|x| pos[lattice.meet(a, x)].unwrap())
        .collect();
    let phi = LatticeMorphism::new(lattice.clone(), interval.clone(), map)
        .expect("relativization is a morphism on distributive lattices");
    debug_assert!(phi.is_surjective());
    Ok((interval, phi))
}

/// v_a(x) = v(x) / v(a) on the interval [0, a].
pub fn relativized_valuation(
    lattice: &FiniteLattice,
    v: &Valuation,
    a: usize,
) -> Result<(FiniteLattice, LatticeMorphism, Valuation), RelativizeError> {
    if v.values[a].is_zero() {
        return Err(RelativizeError::ZeroMass);
    }
    let (interval, phi) = relativize(lattice, a)?;
    let scale = &v.values[a];
    let values: Vec<Rational> = (0..lattice.len())
        .filter(|&x| lattice.leq(x, a))
        .map(|x| &v.values[x] / scale)
        .collect();
    let va = Valuation { values };
    debug_assert!(is_valuation(&interval, &va).is_ok());
    Ok((interval, phi, va))
}

/// v(x | a) = v(x /\ a) / v(a), computed as v_a o f_a and cross-checked
/// against the closed form.
pub fn conditional_valuation(
    lattice: &FiniteLattice,
    v: &Valuation,
    a: usize,
) -> Result<Valuation, RelativizeError> {
    let (_, phi, va) = relativized_valuation(lattice, v, a)?;
    let composed = pullback_valuation(&phi, &va);
    for x in 0..lattice.len() {
        let closed = &v.values[lattice.meet(x, a)] / &v.values[a];
        assert_eq!(composed.values[x], closed, "conditional valuation routes disagree");
    }
    Ok(composed)
}
