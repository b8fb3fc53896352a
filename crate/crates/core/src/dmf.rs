//! Finite DMF-algebras: distributive bounded lattices with a De Morgan
//! negation whose fixed point n is normal. Includes the pair construction
//! π(L), the embedding into π(∇), generated subalgebras with witness terms,
//! prime ideals/filters, separation pairs and the epimorphisms onto K.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;
use crate::lattice::{validate_lattice, FiniteLattice, LatticeError, LatticeSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DmfAlgebra {
    pub lattice: FiniteLattice,
    pub neg: Vec<usize>,
    pub n: usize,
}

/// JSON schema: the lattice fields plus "neg" and "fix".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DmfSpec {
    #[serde(flatten)]
    pub lattice: LatticeSpec,
    pub neg: Vec<usize>,
    pub fix: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DmfError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("negation table is not total")]
    BadNegTable,
    #[error("double negation fails at {0}")]
    DoubleNegation(usize),
    #[error("De Morgan law fails at ({0}, {1})")]
    DeMorgan(usize, usize),
    #[error("normality fails at ({0}, {1})")]
    Normality(usize, usize),
    #[error("n is not a negation fixed point")]
    FixedPoint,
    #[error("negation does not swap the bounds")]
    BoundSwap,
    #[error("negation fixed point is not unique: {0} also satisfies ¬x=x")]
    FixedPointNotUnique(usize),
}

impl DmfAlgebra {
    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.lattice.meet(x, y)
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.lattice.join(x, y)
    }

    pub fn not(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.lattice.leq(x, y)
    }

    pub fn bottom(&self) -> usize {
        self.lattice.bottom
    }

    pub fn top(&self) -> usize {
        self.lattice.top
    }

    /// The Kleene algebra K = {0, n, 1}.
    pub fn kleene() -> DmfAlgebra {
        let spec = LatticeSpec {
            elements: vec!["0".into(), "n".into(), "1".into()],
            meet: vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            join: vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
            bottom: 0,
            top: 2,
        };
        validate_dmf(&spec, &[2, 1, 0], 1).expect("K is a DMF-algebra")
    }

    /// Evaluates a witness term: Var(i) = assignment[i], connectives are the
    /// algebra operations.
    pub fn eval_term(&self, term: &Formula, assignment: &[usize]) -> usize {
        match term {
            Formula::Var(i) => assignment[*i],
            Formula::Const0 => self.bottom(),
            Formula::Const1 => self.top(),
            Formula::ConstN => self.n,
            Formula::Not(f) => self.not(self.eval_term(f, assignment)),
            Formula::And(f, g) => {
                self.meet(self.eval_term(f, assignment), self.eval_term(g, assignment))
            }
            Formula::Or(f, g) => {
                self.join(self.eval_term(f, assignment), self.eval_term(g, assignment))
            }
        }
    }

    pub fn to_spec(&self) -> DmfSpec {
        DmfSpec { lattice: self.lattice.to_spec(), neg: self.neg.clone(), fix: self.n }
    }
}

/// Checks every DMF axiom exhaustively; on success the fixed point is
/// verified unique.
pub fn validate_dmf(spec: &LatticeSpec, neg: &[usize], n: usize) -> Result<DmfAlgebra, DmfError> {
    let lattice = validate_lattice(spec)?;
    if !lattice.distributive {
        return Err(DmfError::NotDistributive);
    }
    let size = lattice.len();
    if neg.len() != size || neg.iter().any(|&x| x >= size) || n >= size {
        return Err(DmfError::BadNegTable);
    }
    for x in 0..size {
        if neg[neg[x]] != x {
            return Err(DmfError::DoubleNegation(x));
        }
        for y in 0..size {
            if neg[lattice.meet(x, y)] != lattice.join(neg[x], neg[y]) {
                return Err(DmfError::DeMorgan(x, y));
            }
        }
    }
    for x in 0..size {
        for y in 0..size {
            let lo = lattice.meet(x, neg[x]);
            let hi = lattice.join(y, neg[y]);
            if lattice.meet(lo, hi) != lo {
                return Err(DmfError::Normality(x, y));
            }
        }
    }
    if neg[n] != n {
        return Err(DmfError::FixedPoint);
    }
    if neg[lattice.bottom] != lattice.top {
        return Err(DmfError::BoundSwap);
    }
    if let Some(other) = (0..size).find(|&x| x != n && neg[x] == x) {
        return Err(DmfError::FixedPointNotUnique(other));
    }
    Ok(DmfAlgebra { lattice, neg: neg.to_vec(), n })
}

/// ∇ = [n, 1]; computed as {x: n ≤ x} and cross-checked against {x∨¬x}.
pub fn nabla(a: &DmfAlgebra) -> Vec<usize> {
    let by_interval: Vec<usize> = (0..a.len()).filter(|&x| a.leq(a.n, x)).collect();
    let mut by_form: Vec<usize> = (0..a.len()).map(|x| a.join(x, a.not(x))).collect();
    by_form.sort_unstable();
    by_form.dedup();
    assert_eq!(by_interval, by_form, "the two characterizations of ∇ must agree");
    by_interval
}

/// Δ = [0, n] = {x∧¬x}.
pub fn delta(a: &DmfAlgebra) -> Vec<usize> {
    let by_interval: Vec<usize> = (0..a.len()).filter(|&x| a.leq(x, a.n)).collect();
    let mut by_form: Vec<usize> = (0..a.len()).map(|x| a.meet(x, a.not(x))).collect();
    by_form.sort_unstable();
    by_form.dedup();
    assert_eq!(by_interval, by_form);
    by_interval
}

/// K = {x: x ∨ ¬x = 1}; on these, ¬ is Boolean complement.
pub fn boolean_elements(a: &DmfAlgebra) -> Vec<usize> {
    let k: Vec<usize> = (0..a.len()).filter(|&x| a.join(x, a.not(x)) == a.top()).collect();
    for &x in &k {
        assert_eq!(a.meet(x, a.not(x)), a.bottom(), "¬ must complement Boolean elements");
    }
    k
}

/// A structure-preserving map between DMF-algebras (owns both).
#[derive(Debug, Clone)]
pub struct DmfMorphism {
    pub source: DmfAlgebra,
    pub target: DmfAlgebra,
    pub map: Vec<usize>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DmfMorphismError {
    #[error("map is not total on the source")]
    NotTotal,
    #[error("map does not preserve {op} at {x}")]
    NotPreserving { op: &'static str, x: usize },
}

impl DmfMorphism {
    pub fn new(
        source: DmfAlgebra,
        target: DmfAlgebra,
        map: Vec<usize>,
    ) -> Result<DmfMorphism, DmfMorphismError> {
        if map.len() != source.len() || map.iter().any(|&t| t >= target.len()) {
            return Err(DmfMorphismError::NotTotal);
        }
        for x in 0..source.len() {
            if map[source.not(x)] != target.not(map[x]) {
                return Err(DmfMorphismError::NotPreserving { op: "negation", x });
            }
            for y in 0..source.len() {
                if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                    return Err(DmfMorphismError::NotPreserving { op: "meet", x });
                }
                if map[source.join(x, y)] != target.join(map[x], map[y]) {
                    return Err(DmfMorphismError::NotPreserving { op: "join", x });
                }
            }
        }
        for (s, t, name) in [
            (source.bottom(), target.bottom(), "bottom"),
            (source.top(), target.top(), "top"),
            (source.n, target.n, "n"),
        ] {
            if map[s] != t {
                return Err(DmfMorphismError::NotPreserving { op: name, x: s });
            }
        }
        Ok(DmfMorphism { source, target, map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.map.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &t in &self.map {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// π(L): pairs (a,b) with a∧b=0, in lexicographic (a,b) order, with
/// (x,y)∧(z,w)=(x∧z, y∨w), ¬(x,y)=(y,x), 0=(0,1), 1=(1,0), n=(0,0).
#[derive(Debug, Clone)]
pub struct PiAlgebra {
    pub algebra: DmfAlgebra,
    pub pairs: Vec<(usize, usize)>,
    base: FiniteLattice,
}

impl PiAlgebra {
    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.pairs.iter().position(|&p| p == pair)
    }

    pub fn base(&self) -> &FiniteLattice {
        &self.base
    }
}

pub fn pi_construction(l: &FiniteLattice) -> PiAlgebra {
    assert!(l.distributive, "π is defined on distributive lattices");
    let mut pairs = Vec::new();
    for a in 0..l.len() {
        for b in 0..l.len() {
            if l.meet(a, b) == l.bottom {
                pairs.push((a, b));
            }
        }
    }
    let idx: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let size = pairs.len();
    let mut meet = vec![vec![0; size]; size];
    let mut join = vec![vec![0; size]; size];
    let mut neg = vec![0; size];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        neg[i] = idx[&(y, x)];
        for (j, &(z, w)) in pairs.iter().enumerate() {
            meet[i][j] = idx[&(l.meet(x, z), l.join(y, w))];
            join[i][j] = idx[&(l.join(x, z), l.meet(y, w))];
        }
    }
    let elements = pairs
        .iter()
        .map(|&(a, b)| format!("({},{})", l.elements[a], l.elements[b]))
        .collect();
    let spec = LatticeSpec {
        elements,
        meet,
        join,
        bottom: idx[&(l.bottom, l.top)],
        top: idx[&(l.top, l.bottom)],
    };
    let n = idx[&(l.bottom, l.bottom)];
    let algebra = validate_dmf(&spec, &neg, n).expect("π(L) is a DMF-algebra");
    PiAlgebra { algebra, pairs, base: l.clone() }
}

/// ∇ as a bounded lattice in its own right (bottom n, top 1), with the
/// inclusion positions back into A.
pub fn nabla_lattice(a: &DmfAlgebra) -> (FiniteLattice, Vec<usize>) {
    let carrier = nabla(a);
    let pos: BTreeMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let elements = carrier.iter().map(|&x| a.lattice.elements[x].clone()).collect();
    let meet = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos[&a.meet(x, y)]).collect())
        .collect();
    let join = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos[&a.join(x, y)]).collect())
        .collect();
    let spec = LatticeSpec { elements, meet, join, bottom: pos[&a.n], top: pos[&a.top()] };
    (validate_lattice(&spec).expect("∇ is a bounded sublattice"), carrier)
}

/// The embedding φ(x) = (x∨n, ¬x∨n) of A into π(∇_A), returned with the
/// constructed target.
pub fn embed_into_pi_nabla(a: &DmfAlgebra) -> (PiAlgebra, DmfMorphism) {
    let (nab, carrier) = nabla_lattice(a);
    let pos: BTreeMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let pi = pi_construction(&nab);
    let map: Vec<usize> = (0..a.len())
        .map(|x| {
            let p = pos[&a.join(x, a.n)];
            let q = pos[&a.join(a.not(x), a.n)];
            pi.index_of((p, q)).expect("positive and negative parts meet at n = π bottom pair")
        })
        .collect();
    let phi = DmfMorphism::new(a.clone(), pi.algebra.clone(), map)
        .expect("φ preserves all operations");
    assert!(phi.is_injective(), "φ is a monomorphism");
    (pi, phi)
}

/// Least subalgebra containing the generators and the constants, with a
/// minimal-depth witness term per element (ties broken by printed term).
pub fn generated_subalgebra(
    a: &DmfAlgebra,
    generators: &[usize],
) -> (Vec<usize>, BTreeMap<usize, Formula>) {
    let mut witness: BTreeMap<usize, Formula> = BTreeMap::new();
    let claim = |elem: usize, term: Formula, witness: &mut BTreeMap<usize, Formula>| {
        match witness.get(&elem) {
            None => {
                witness.insert(elem, term);
                true
            }
            Some(old) => {
                // same BFS layer: keep the lexicographically least print
                if term.depth() == old.depth() && term.to_string() < old.to_string() {
                    witness.insert(elem, term);
                }
                false
            }
        }
    };
    claim(a.bottom(), Formula::Const0, &mut witness);
    claim(a.top(), Formula::Const1, &mut witness);
    claim(a.n, Formula::ConstN, &mut witness);
    for (i, &g) in generators.iter().enumerate() {
        claim(g, Formula::Var(i), &mut witness);
    }
    loop {
        let frontier: Vec<(usize, Formula)> =
            witness.iter().map(|(&e, t)| (e, t.clone())).collect();
        let mut grew = false;
        let mut layer: Vec<(usize, Formula)> = Vec::new();
        for (x, tx) in &frontier {
            layer.push((a.not(*x), Formula::not(tx.clone())));
            for (y, ty) in &frontier {
                layer.push((a.meet(*x, *y), Formula::and(tx.clone(), ty.clone())));
                layer.push((a.join(*x, *y), Formula::or(tx.clone(), ty.clone())));
            }
        }
        // resolve the whole layer before inserting so that tie-breaks do not
        // depend on generation order
        let mut best: BTreeMap<usize, Formula> = BTreeMap::new();
        for (e, t) in layer {
            if witness.contains_key(&e) {
                continue;
            }
            match best.get(&e) {
                None => {
                    best.insert(e, t);
                }
                Some(old) => {
                    let better = (t.depth(), t.to_string()) < (old.depth(), old.to_string());
                    if better {
                        best.insert(e, t);
                    }
                }
            }
        }
        for (e, t) in best {
            witness.insert(e, t);
            grew = true;
        }
        if !grew {
            break;
        }
    }
    let carrier: Vec<usize> = witness.keys().copied().collect();
    (carrier, witness)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealKind {
    Ideal,
    Filter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealOrFilter {
    pub carrier: Vec<usize>,
    pub kind: IdealKind,
    pub prime: bool,
    /// whether the negation fixed point lies outside the carrier
    pub avoids_n: bool,
}

pub const PRIME_IDEAL_CAP: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("algebra of {0} elements exceeds the prime-ideal cap of {1}")]
    CapExceeded(usize, usize),
}

fn is_ideal(a: &DmfAlgebra, mask: u32) -> bool {
    let has = |x: usize| mask >> x & 1 == 1;
    if !has(a.bottom()) {
        return false;
    }
    for x in 0..a.len() {
        if !has(x) {
            continue;
        }
        for y in 0..a.len() {
            if a.leq(y, x) && !has(y) {
                return false;
            }
            if has(y) && !has(a.join(x, y)) {
                return false;
            }
        }
    }
    true
}

fn is_prime_ideal(a: &DmfAlgebra, mask: u32) -> bool {
    let has = |x: usize| mask >> x & 1 == 1;
    if !is_ideal(a, mask) || has(a.top()) {
        return false;
    }
    for x in 0..a.len() {
        for y in 0..a.len() {
            if has(a.meet(x, y)) && !has(x) && !has(y) {
                return false;
            }
        }
    }
    true
}

/// All proper prime ideals, by exhaustive subset enumeration.
pub fn enumerate_prime_ideals(a: &DmfAlgebra) -> Result<Vec<IdealOrFilter>, IdealError> {
    if a.len() > PRIME_IDEAL_CAP {
        return Err(IdealError::CapExceeded(a.len(), PRIME_IDEAL_CAP));
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << a.len() {
        if is_prime_ideal(a, mask) {
            let carrier: Vec<usize> = (0..a.len()).filter(|&x| mask >> x & 1 == 1).collect();
            let avoids_n = mask >> a.n & 1 == 0;
            // n ∉ I iff I ∩ ¬I = ∅
            let neg_mask = carrier.iter().fold(0u32, |m, &x| m | 1 << a.not(x));
            assert_eq!(avoids_n, mask & neg_mask == 0);
            out.push(IdealOrFilter { carrier, kind: IdealKind::Ideal, prime: true, avoids_n });
        }
    }
    Ok(out)
}

fn is_prime_filter(a: &DmfAlgebra, carrier: &[usize]) -> bool {
    let mask = carrier.iter().fold(0u32, |m, &x| m | 1 << x);
    let has = |x: usize| mask >> x & 1 == 1;
    if !has(a.top()) || has(a.bottom()) {
        return false;
    }
    for x in 0..a.len() {
        for y in 0..a.len() {
            if has(x) && a.leq(x, y) && !has(y) {
                return false;
            }
            if has(x) && has(y) && !has(a.meet(x, y)) {
                return false;
            }
            if has(a.join(x, y)) && !has(x) && !has(y) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeparationError {
    #[error("{0} ≤ {1}: nothing to separate")]
    Comparable(usize, usize),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("no separating pair found")]
    NotFound,
}

/// A prime ideal G and prime filter H with H = ¬G, G∩H = ∅, and either
/// (a∉G and b∈G) or (a∈H and b∉H). Lexicographically least valid G.
pub fn separation_pair(
    a: &DmfAlgebra,
    x: usize,
    y: usize,
) -> Result<(Vec<usize>, Vec<usize>), SeparationError> {
    if a.leq(x, y) {
        return Err(SeparationError::Comparable(x, y));
    }
    for ideal in enumerate_prime_ideals(a)? {
        let g = ideal.carrier;
        let mut h: Vec<usize> = g.iter().map(|&e| a.not(e)).collect();
        h.sort_unstable();
        if g.iter().any(|e| h.contains(e)) {
            continue;
        }
        if !is_prime_filter(a, &h) {
            continue;
        }
        let in_g = |e: usize| g.contains(&e);
        let in_h = |e: usize| h.contains(&e);
        if (!in_g(x) && in_g(y)) || (in_h(x) && !in_h(y)) {
            return Ok((g, h));
        }
    }
    Err(SeparationError::NotFound)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PhiIError {
    #[error("n belongs to the ideal")]
    ContainsN,
    #[error("carrier is not a proper prime ideal")]
    NotPrime,
}

/// The epimorphism φ_I: A → K sending I to 0, ¬I to 1 and the rest to n.
pub fn phi_i(a: &DmfAlgebra, ideal: &[usize]) -> Result<DmfMorphism, PhiIError> {
    let mask = ideal.iter().fold(0u32, |m, &x| m | 1 << x);
    if mask >> a.n & 1 == 1 {
        return Err(PhiIError::ContainsN);
    }
    if !is_prime_ideal(a, mask) {
        return Err(PhiIError::NotPrime);
    }
    let k = DmfAlgebra::kleene();
    let map: Vec<usize> = (0..a.len())
        .map(|e| {
            if mask >> e & 1 == 1 {
                0
            } else if mask >> a.not(e) & 1 == 1 {
                2
            } else {
                1
            }
        })
        .collect();
    let phi = DmfMorphism::new(a.clone(), k, map).map_err(|_| PhiIError::NotPrime)?;
    assert!(phi.is_surjective(), "φ_I is onto K");
    Ok(phi)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IntervalError {
    #[error("¬a ≰ a: element is not in ∇")]
    NotInNabla,
}

/// The DMF-algebra on [¬a, a] with 0=¬a, 1=a, unchanged n, together with
/// the epimorphism f(x) = (x∨¬a)∧a.
pub fn interval_dmf(
    alg: &DmfAlgebra,
    a: usize,
) -> Result<(DmfAlgebra, DmfMorphism), IntervalError> {
    let na = alg.not(a);
    if !alg.leq(na, a) {
        return Err(IntervalError::NotInNabla);
    }
    let carrier: Vec<usize> =
        (0..alg.len()).filter(|&x| alg.leq(na, x) && alg.leq(x, a)).collect();
    let pos: BTreeMap<usize, usize> = carrier.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let elements = carrier.iter().map(|&x| alg.lattice.elements[x].clone()).collect();
    let meet = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos[&alg.meet(x, y)]).collect())
        .collect();
    let join = carrier
        .iter()
        .map(|&x| carrier.iter().map(|&y| pos[&alg.join(x, y)]).collect())
        .collect();
    let neg: Vec<usize> = carrier.iter().map(|&x| pos[&alg.not(x)]).collect();
    let spec = LatticeSpec { elements, meet, join, bottom: pos[&na], top: pos[&a] };
    let interval = validate_dmf(&spec, &neg, pos[&alg.n]).expect("[¬a,a] is a DMF-algebra");
    let map: Vec<usize> = (0..alg.len())
        .map(|x| {
            let image = alg.meet(alg.join(x, na), a);
            // modularity: the two bracketings agree
            assert_eq!(image, alg.join(alg.meet(x, a), na));
            pos[&image]
        })
        .collect();
    let f = DmfMorphism::new(alg.clone(), interval.clone(), map)
        .expect("relativization onto [¬a,a] is a morphism");
    assert!(f.is_surjective());
    Ok((interval, f))
}

/// Exhaustive backtracking search for a DMF isomorphism.
pub fn find_dmf_isomorphism(a: &DmfAlgebra, b: &DmfAlgebra) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    fn extend(a: &DmfAlgebra, b: &DmfAlgebra, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, x: usize) -> bool {
        if x == a.len() {
            let full: Vec<usize> = map.iter().map(|m| m.unwrap()).collect();
            return DmfMorphism::new(a.clone(), b.clone(), full).is_ok();
        }
        for t in 0..b.len() {
            if used[t] {
                continue;
            }
            map[x] = Some(t);
            used[t] = true;
            // prune: placed operations must already agree, and images of
            // unplaced elements must still be available
            let consistent = (0..=x).all(|y| {
                let my = map[y].unwrap();
                let pairs_ok = |s_op: usize, t_op: usize| match map[s_op] {
                    Some(v) => v == t_op,
                    None => !used[t_op],
                };
                pairs_ok(a.meet(x, y), b.meet(t, my))
                    && pairs_ok(a.join(x, y), b.join(t, my))
                    && pairs_ok(a.not(x), b.not(t))
            });
            if consistent && extend(a, b, map, used, x + 1) {
                return true;
            }
            map[x] = None;
            used[t] = false;
        }
        false
    }
    let mut map = vec![None; a.len()];
    let mut used = vec![false; b.len()];
    if extend(a, b, &mut map, &mut used, 0) {
        Some(map.into_iter().map(|m| m.unwrap()).collect())
    } else {
        None
    }
}

/// The full algebra D(S) as a DmfAlgebra over the canonical enumeration,
/// with element names "(pos,neg)" in set notation.
pub fn ds_algebra(field: &crate::partial_set::PartialField) -> DmfAlgebra {
    let n = field.n();
    let idx: BTreeMap<crate::partial_set::PartialSet, usize> =
        field.members.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let set_name = |mask: u32| {
        let names: Vec<&str> = field
            .space
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e.as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    };
    let elements = field
        .members
        .iter()
        .map(|m| format!("({},{})", set_name(m.pos), set_name(m.neg)))
        .collect();
    let meet = field
        .members
        .iter()
        .map(|&x| field.members.iter().map(|&y| idx[&x.meet(y)]).collect())
        .collect();
    let join = field
        .members
        .iter()
        .map(|&x| field.members.iter().map(|&y| idx[&x.join(y)]).collect())
        .collect();
    let neg: Vec<usize> = field.members.iter().map(|&x| idx[&x.neg()]).collect();
    let spec = LatticeSpec {
        elements,
        meet,
        join,
        bottom: idx[&crate::partial_set::PartialSet::zero(n)],
        top: idx[&crate::partial_set::PartialSet::one(n)],
    };
    validate_dmf(&spec, &neg, idx[&crate::partial_set::PartialSet::neither()])
        .expect("D(S) is a DMF-algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partial_set::enumerate_ds;

    fn ds2() -> DmfAlgebra {
        let space: Vec<String> = vec!["a".into(), "b".into()];
        ds_algebra(&enumerate_ds(&space, 6).unwrap())
    }

    #[test]
    fn kleene_certifies() {
        let k = DmfAlgebra::kleene();
        assert_eq!(k.len(), 3);
        assert_eq!(k.not(0), 2);
        assert_eq!(k.not(k.n), k.n);
    }

    #[test]
    fn ds_two_points_certifies() {
        let a = ds2();
        assert_eq!(a.len(), 9);
        assert_eq!(nabla(&a).len(), 4);
        assert_eq!(delta(&a).len(), 4);
        assert_eq!(boolean_elements(&a).len(), 4);
    }

    #[test]
    fn two_fixed_points_violate_normality() {
        // 2x2 square with ¬ fixing both incomparable middles: a=¬a, b=¬b
        let l = FiniteLattice::powerset(2).to_spec();
        let err = validate_dmf(&l, &[3, 1, 2, 0], 1).unwrap_err();
        assert!(matches!(err, DmfError::Normality(..) | DmfError::FixedPointNotUnique(_)));
        // and indeed normality itself fails: a∧¬a = a ≰ b∨¬b = b
        let lq = validate_lattice(&l).unwrap();
        assert!(!lq.leq(lq.meet(1, 1), lq.join(2, 2)));
    }

    #[test]
    fn kleene_nabla_delta_booleans() {
        let k = DmfAlgebra::kleene();
        assert_eq!(nabla(&k), vec![1, 2]);
        assert_eq!(delta(&k), vec![0, 1]);
        assert_eq!(boolean_elements(&k), vec![0, 2]);
    }

    #[test]
    fn pi_of_chain_is_kleene() {
        let pi = pi_construction(&FiniteLattice::chain2());
        assert_eq!(pi.algebra.len(), 3);
        assert!(find_dmf_isomorphism(&pi.algebra, &DmfAlgebra::kleene()).is_some());
    }

    #[test]
    fn pi_of_square_is_ds_one_two() {
        let pi = pi_construction(&FiniteLattice::powerset(2));
        assert_eq!(pi.algebra.len(), 9);
        assert!(find_dmf_isomorphism(&pi.algebra, &ds2()).is_some());
        assert_eq!(pi_construction(&FiniteLattice::powerset(3)).algebra.len(), 27);
    }

    #[test]
    fn embedding_into_pi_nabla() {
        let k = DmfAlgebra::kleene();
        let (pi, phi) = embed_into_pi_nabla(&k);
        assert!(phi.is_injective());
        assert_eq!(phi.apply(k.n), pi.algebra.n);
        assert_eq!(phi.apply(0), pi.algebra.bottom());
        assert_eq!(phi.apply(2), pi.algebra.top());

        let a = ds2();
        let (_, phi) = embed_into_pi_nabla(&a);
        assert!(phi.is_injective());
    }

    #[test]
    fn generated_subalgebra_cases() {
        let a = ds2();
        let (constants, _) = generated_subalgebra(&a, &[]);
        assert_eq!(constants.len(), 3);

        // the generator ({a},{b}) reaches all nine elements
        let field = enumerate_ds(&["a".to_string(), "b".to_string()], 6).unwrap();
        let g = field.index_of(crate::partial_set::PartialSet::new(1, 2)).unwrap();
        let (all, witness) = generated_subalgebra(&a, &[g]);
        assert_eq!(all.len(), 9);
        for (&e, term) in &witness {
            assert_eq!(a.eval_term(term, &[g]), e);
        }

        let k = DmfAlgebra::kleene();
        let (from_n, _) = generated_subalgebra(&k, &[k.n]);
        assert_eq!(from_n.len(), 3);
    }

    #[test]
    fn kleene_prime_ideals() {
        let k = DmfAlgebra::kleene();
        let ideals = enumerate_prime_ideals(&k).unwrap();
        let carriers: Vec<Vec<usize>> = ideals.iter().map(|i| i.carrier.clone()).collect();
        assert_eq!(carriers, vec![vec![0], vec![0, 1]]);
        assert!(ideals[0].avoids_n);
        assert!(!ideals[1].avoids_n);
    }

    #[test]
    fn separation_examples() {
        let k = DmfAlgebra::kleene();
        // a=n, b=0
        assert_eq!(separation_pair(&k, 1, 0).unwrap(), (vec![0], vec![2]));
        // a=1, b=n
        assert_eq!(separation_pair(&k, 2, 1).unwrap(), (vec![0], vec![2]));
        assert_eq!(separation_pair(&k, 0, 1), Err(SeparationError::Comparable(0, 1)));

        let a = ds2();
        for x in 0..a.len() {
            for y in 0..a.len() {
                if a.leq(x, y) {
                    continue;
                }
                let (g, h) = separation_pair(&a, x, y).unwrap();
                assert!((!g.contains(&x) && g.contains(&y)) || (h.contains(&x) && !h.contains(&y)));
                assert!(g.iter().all(|e| !h.contains(e)));
            }
        }
    }

    #[test]
    fn phi_i_cases() {
        let k = DmfAlgebra::kleene();
        let phi = phi_i(&k, &[0]).unwrap();
        assert_eq!(phi.map, vec![0, 1, 2]);
        assert!(matches!(phi_i(&k, &[0, 1]), Err(PhiIError::ContainsN)));

        let a = ds2();
        for ideal in enumerate_prime_ideals(&a).unwrap() {
            if ideal.avoids_n {
                let phi = phi_i(&a, &ideal.carrier).unwrap();
                assert!(phi.is_surjective());
            }
        }
    }

    #[test]
    fn interval_algebra_cases() {
        let a = ds2();
        let (full, f) = interval_dmf(&a, a.top()).unwrap();
        assert_eq!(full.len(), a.len());
        assert!((0..a.len()).all(|x| full.lattice.elements[f.apply(x)] == a.lattice.elements[x]));

        // h = ({a},∅): bit a=1
        let field = enumerate_ds(&["a".to_string(), "b".to_string()], 6).unwrap();
        let h = field.index_of(crate::partial_set::PartialSet::new(1, 0)).unwrap();
        let (interval, f) = interval_dmf(&a, h).unwrap();
        assert_eq!(interval.len(), 3); // D({a}) embedded
        let x = field.index_of(crate::partial_set::PartialSet::new(2, 0)).unwrap();
        assert_eq!(f.apply(x), interval.n);

        // elements outside ∇ are rejected
        let bottom = a.bottom();
        assert!(matches!(interval_dmf(&a, bottom), Err(IntervalError::NotInNabla)));
    }

    #[test]
    fn fixed_point_unique_everywhere() {
        for alg in [DmfAlgebra::kleene(), ds2()] {
            let fixed: Vec<usize> = (0..alg.len()).filter(|&x| alg.not(x) == x).collect();
            assert_eq!(fixed, vec![alg.n]);
        }
    }
}
