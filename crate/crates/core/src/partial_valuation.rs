//! Partial valuations on DMF-algebras: certification against the axioms,
//! the structural theorems (pullback, induced valuation, ∇-extraction,
//! decomposition, classical recovery), isotonicity, and the conditional
//! machinery (relativization, weak Bayes, bias identity).

use std::collections::BTreeMap;

use num::{One, Zero};
use thiserror::Error;

use crate::dmf::{
    boolean_elements, embed_into_pi_nabla, interval_dmf, nabla_lattice, DmfAlgebra,
    DmfMorphism, PiAlgebra,
};
use crate::lattice::{is_valuation, Valuation};
use crate::partial_set::{subset_mass, PartialField, PartialMeasure, PartialSet, TValue};
use crate::rational::{format_rational, parse_rational, Rational};

/// A total mapping element -> TValue, indexed parallel to the algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialValuation {
    pub values: Vec<TValue>,
}

impl PartialValuation {
    pub fn get(&self, x: usize) -> &TValue {
        &self.values[x]
    }

    pub fn to_json(&self, a: &DmfAlgebra) -> serde_json::Value {
        let map: BTreeMap<String, Vec<String>> = a
            .lattice
            .elements
            .iter()
            .zip(&self.values)
            .map(|(e, t)| {
                (e.clone(), vec![format_rational(&t.first), format_rational(&t.second)])
            })
            .collect();
        serde_json::json!({ "values": map })
    }

    pub fn from_json(a: &DmfAlgebra, value: &serde_json::Value) -> Result<PartialValuation, String> {
        let map = value
            .get("values")
            .and_then(|v| v.as_object())
            .ok_or("partial valuation JSON must have a \"values\" object")?;
        let mut values = vec![TValue::neither_t(); a.len()];
        let mut seen = vec![false; a.len()];
        for (name, pair) in map {
            let idx = a
                .lattice
                .element_index(name)
                .ok_or_else(|| format!("unknown element {name:?}"))?;
            let arr = pair.as_array().filter(|v| v.len() == 2).ok_or("entries must be pairs")?;
            let comp = |i: usize| -> Result<Rational, String> {
                let text = arr[i].as_str().ok_or("pair components must be strings")?;
                parse_rational(text).map_err(|e| e.to_string())
            };
            values[idx] = TValue::new(comp(0)?, comp(1)?);
            seen[idx] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(format!("missing element {:?}", a.lattice.elements[missing]));
        }
        Ok(PartialValuation { values })
    }
}

/// Witness for a failed certification, mirroring the measure defects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuationDefect {
    OutsideT(usize),
    /// v̄(0) != (0,1)
    Bottom,
    /// v̄(a)+v̄(b) != v̄(a∨b)+v̄(a∧b) at the pair
    Additivity(usize, usize),
    /// v̄(¬a) != σ(v̄(a))
    Negation(usize),
    /// n ≤ a but (0,0) ⋠ v̄(a)
    Positivity(usize),
}

/// The four axioms plus T-membership of every value.
pub fn is_partial_valuation(a: &DmfAlgebra, v: &PartialValuation) -> Result<(), ValuationDefect> {
    assert_eq!(v.values.len(), a.len(), "valuation must be total");
    if let Some(i) = v.values.iter().position(|t| !t.in_t()) {
        return Err(ValuationDefect::OutsideT(i));
    }
    if *v.get(a.bottom()) != TValue::zero_t() {
        return Err(ValuationDefect::Bottom);
    }
    for x in 0..a.len() {
        for y in 0..a.len() {
            let lhs = v.values[x].add(&v.values[y]);
            let rhs = v.values[a.join(x, y)].add(&v.values[a.meet(x, y)]);
            if lhs != rhs {
                return Err(ValuationDefect::Additivity(x, y));
            }
        }
    }
    for x in 0..a.len() {
        if v.values[a.not(x)] != v.values[x].sigma() {
            return Err(ValuationDefect::Negation(x));
        }
    }
    for x in 0..a.len() {
        if a.leq(a.n, x) && !TValue::neither_t().preceq(&v.values[x]) {
            return Err(ValuationDefect::Positivity(x));
        }
    }
    Ok(())
}

/// A certified measure on a full D(S) field, viewed as a partial valuation
/// on the corresponding algebra (same member order).
pub fn measure_as_valuation(mu: &PartialMeasure) -> PartialValuation {
    PartialValuation { values: mu.values.clone() }
}

/// The five structural consequences of the axioms, asserted per element.
/// Returns the property names in order, all of which passed.
pub fn structural_properties(a: &DmfAlgebra, v: &PartialValuation) -> Vec<&'static str> {
    assert!(is_partial_valuation(a, v).is_ok());
    assert_eq!(*v.get(a.top()), TValue::one_t());
    assert_eq!(*v.get(a.n), TValue::neither_t());
    for x in 0..a.len() {
        if a.leq(x, a.n) {
            assert!(v.values[x].preceq(&TValue::neither_t()));
        }
        let split = v.values[a.meet(x, a.n)].add(&v.values[a.join(x, a.n)]);
        assert_eq!(v.values[x], split);
        let pos = v.values[a.join(x, a.n)].first.clone();
        let neg = v.values[a.join(a.not(x), a.n)].first.clone();
        assert_eq!(v.values[x], TValue::new(pos, neg));
    }
    vec![
        "top is (1,0)",
        "n is (0,0)",
        "below n lies below (0,0)",
        "splits across n",
        "recovered from positive parts",
    ]
}

/// v̄ ∘ φ is again a partial valuation on the source (re-certified).
pub fn pullback_partial_valuation(phi: &DmfMorphism, v: &PartialValuation) -> PartialValuation {
    let values = phi.map.iter().map(|&t| v.values[t].clone()).collect();
    let pulled = PartialValuation { values };
    debug_assert!(is_partial_valuation(&phi.source, &pulled).is_ok());
    pulled
}

/// v̄_v(x,y) = (v(x), v(y)) on π(L), for a classical valuation v on L.
pub fn induced_partial_valuation(pi: &PiAlgebra, v: &Valuation) -> PartialValuation {
    debug_assert!(is_valuation(pi.base(), v).is_ok());
    let values = pi
        .pairs
        .iter()
        .map(|&(x, y)| TValue::new(v.values[x].clone(), v.values[y].clone()))
        .collect();
    let induced = PartialValuation { values };
    debug_assert!(is_partial_valuation(&pi.algebra, &induced).is_ok());
    induced
}

/// v(x) = v̄(x)₀ restricted to ∇, a classical valuation on the bounded
/// lattice (∇, n, 1).
pub fn extract_nabla_valuation(a: &DmfAlgebra, v: &PartialValuation) -> (crate::lattice::FiniteLattice, Valuation) {
    let (lat, carrier) = nabla_lattice(a);
    let values = carrier.iter().map(|&x| v.values[x].first.clone()).collect();
    let extracted = Valuation { values };
    debug_assert!(is_valuation(&lat, &extracted).is_ok());
    (lat, extracted)
}

/// v̄ = v̄_v ∘ φ through π(∇): returns the embedding and the induced
/// valuation, asserting the identity at every element.
pub fn decompose(a: &DmfAlgebra, v: &PartialValuation) -> (PiAlgebra, DmfMorphism, PartialValuation) {
    let (pi, phi) = embed_into_pi_nabla(a);
    let (_, nabla_v) = extract_nabla_valuation(a, v);
    let induced = induced_partial_valuation(&pi, &nabla_v);
    for x in 0..a.len() {
        assert_eq!(v.values[x], induced.values[phi.apply(x)], "decomposition identity");
    }
    (pi, phi, induced)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecoverError {
    #[error("valuation is not on a full D(S) field")]
    NotFullField,
}

/// For v̄ on the full D(S): the classical weights p with p(X)=v̄(X,∅)₀,
/// asserting v̄(A,B)=(p(A),p(B)) everywhere.
pub fn recover_classical(
    field: &PartialField,
    v: &PartialValuation,
) -> Result<Vec<Rational>, RecoverError> {
    let n = field.n();
    if field.members.len() != 3usize.pow(n) || v.values.len() != field.members.len() {
        return Err(RecoverError::NotFullField);
    }
    let at = |ps: PartialSet| &v.values[field.index_of(ps).unwrap()];
    let weights: Vec<Rational> = (0..n)
        .map(|i| at(PartialSet::new(1 << i, 0)).first.clone())
        .collect();
    for (i, &ps) in field.members.iter().enumerate() {
        let expect = TValue::new(subset_mass(&weights, ps.pos), subset_mass(&weights, ps.neg));
        assert_eq!(v.values[i], expect, "recovered weights must reproduce v̄");
    }
    Ok(weights)
}

/// Isotone: x ≤ y implies v̄(x) ≼ v̄(y). Returns the first witness pair on
/// failure.
pub fn is_isotone(a: &DmfAlgebra, v: &PartialValuation) -> Result<(), (usize, usize)> {
    for x in 0..a.len() {
        for y in 0..a.len() {
            if a.leq(x, y) && !v.values[x].preceq(&v.values[y]) {
                return Err((x, y));
            }
        }
    }
    Ok(())
}

/// Degree of indetermination u(a) = 1 − (v̄(a)₀ + v̄(a)₁).
pub fn indetermination(v: &PartialValuation, a: usize) -> Rational {
    Rational::one() - (&v.values[a].first + &v.values[a].second)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BiasError {
    #[error("positive component is zero")]
    ZeroPositive,
}

/// Bias θ(a) = v̄(a)₁ / v̄(a)₀.
pub fn bias(v: &PartialValuation, a: usize) -> Result<Rational, BiasError> {
    if v.values[a].first.is_zero() {
        return Err(BiasError::ZeroPositive);
    }
    Ok(&v.values[a].second / &v.values[a].first)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConditionError {
    #[error("condition is not in ∇ (¬h ≰ h)")]
    NotInNabla,
    #[error("base valuation is not isotone (witness {0} ≤ {1})")]
    NotIsotone(usize, usize),
    #[error("v̄(h)₀ = 0")]
    ZeroPositive,
    #[error("v̄(e)₁ = 0 (negative component required)")]
    ZeroNegative,
}

/// Everything needed to condition on h: the interval algebra [¬h,h], its
/// epimorphism f, and the scaled valuation v̄_h on the interval.
#[derive(Debug, Clone)]
pub struct ConditionContext {
    pub h: usize,
    pub interval: DmfAlgebra,
    pub onto_interval: DmfMorphism,
    pub scaled: PartialValuation,
}

/// v̄_h(x) = v̄(x) · 1/v̄(h)₀ on the interval [¬h, h].
pub fn relativized_partial_valuation(
    a: &DmfAlgebra,
    v: &PartialValuation,
    h: usize,
) -> Result<ConditionContext, ConditionError> {
    if !a.leq(a.not(h), h) {
        return Err(ConditionError::NotInNabla);
    }
    if let Err((x, y)) = is_isotone(a, v) {
        return Err(ConditionError::NotIsotone(x, y));
    }
    if v.values[h].first.is_zero() {
        return Err(ConditionError::ZeroPositive);
    }
    let (interval, f) = interval_dmf(a, h).expect("h ∈ ∇ checked above");
    let scale = Rational::one() / &v.values[h].first;
    let carrier: Vec<usize> =
        (0..a.len()).filter(|&x| a.leq(a.not(h), x) && a.leq(x, h)).collect();
    let values: Vec<TValue> = carrier.iter().map(|&x| v.values[x].scale(&scale)).collect();
    let scaled = PartialValuation { values };
    assert!(
        is_partial_valuation(&interval, &scaled).is_ok(),
        "scaled valuation stays in T and satisfies the axioms"
    );
    Ok(ConditionContext { h, interval, onto_interval: f, scaled })
}

/// v̄(x|h) = v̄_h(f(x)) for every x, as a total map on A.
pub fn conditional_partial_valuation(
    a: &DmfAlgebra,
    v: &PartialValuation,
    h: usize,
) -> Result<PartialValuation, ConditionError> {
    let ctx = relativized_partial_valuation(a, v, h)?;
    let cond = pullback_partial_valuation(
        &ctx.onto_interval,
        &PartialValuation { values: ctx.scaled.values.clone() },
    );
    debug_assert!(is_partial_valuation(a, &cond).is_ok());
    Ok(cond)
}

/// Both sides of weak Bayes: v̄(h|e) = v̄(e|h) · v̄(h)₀/v̄(e)₀. Equality is
/// asserted; both sides are returned for reporting.
pub fn weak_bayes(
    a: &DmfAlgebra,
    v: &PartialValuation,
    h: usize,
    e: usize,
) -> Result<(TValue, TValue), ConditionError> {
    let given_e = conditional_partial_valuation(a, v, e)?;
    let given_h = conditional_partial_valuation(a, v, h)?;
    let lhs = given_e.values[h].clone();
    let ratio = &v.values[h].first / &v.values[e].first;
    let rhs = given_h.values[e].scale(&ratio);
    assert_eq!(lhs, rhs, "weak Bayes identity");
    Ok((lhs, rhs))
}

/// Both sides of v̄(h|e⁺) = v̄(h|∇e)·(1+θ(e)) − v̄(h|e⁻)·θ(e), with
/// e⁺ = e∨n, e⁻ = ¬e∨n, ∇e = e∨¬e computed structurally.
pub fn posneg_conditional_identity(
    a: &DmfAlgebra,
    v: &PartialValuation,
    h: usize,
    e: usize,
) -> Result<(TValue, TValue), ConditionError> {
    if v.values[e].first.is_zero() {
        return Err(ConditionError::ZeroPositive);
    }
    if v.values[e].second.is_zero() {
        return Err(ConditionError::ZeroNegative);
    }
    let e_pos = a.join(e, a.n);
    let e_neg = a.join(a.not(e), a.n);
    let nabla_e = a.join(e, a.not(e));
    // the positive part keeps the positive mass
    assert_eq!(v.values[e_pos].first, v.values[e].first);
    let theta = bias(v, e).expect("nonzero positive component checked above");
    let lhs = conditional_partial_valuation(a, v, e_pos)?.values[h].clone();
    let given_nabla = conditional_partial_valuation(a, v, nabla_e)?.values[h].clone();
    let given_neg = conditional_partial_valuation(a, v, e_neg)?.values[h].clone();
    let one_plus = Rational::one() + &theta;
    let rhs = given_nabla.scale(&one_plus).sub(&given_neg.scale(&theta));
    assert_eq!(lhs, rhs, "positive/negative conditional identity");
    Ok((lhs, rhs))
}

/// The values of boolean elements under any certified v̄ are linearly
/// ≼-ordered; more generally equal indetermination forces comparability.
pub fn check_linearity_properties(a: &DmfAlgebra, v: &PartialValuation) {
    for &x in &boolean_elements(a) {
        assert!(indetermination(v, x).is_zero());
    }
    for x in 0..a.len() {
        for y in 0..a.len() {
            if indetermination(v, x) == indetermination(v, y) {
                assert!(v.values[x].preceq(&v.values[y]) || v.values[y].preceq(&v.values[x]));
            }
        }
    }
}

/// ∇ as a Boolean check helper: every certified valuation must be isotone
/// when ∇_A is a Boolean algebra.
pub fn nabla_is_boolean(a: &DmfAlgebra) -> bool {
    let (lat, _) = nabla_lattice(a);
    lat.is_boolean()
}

pub use crate::dmf::nabla as nabla_of;
