//! Probability functions on sentences, grounded in world-weight
//! distributions: classical π with conditionalization, partial π over
//! Kleene logic, and finite-corpus axiom audits.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};
use thiserror::Error;

use crate::formula::{Formula, LogicKind};
use crate::logic::{
    consequence, enumerate_classical_worlds, enumerate_kleene_worlds, meaning_classical,
    meaning_kleene, world_to_string, ClassicalError,
};
use crate::partial_set::{subset_mass, TValue};
use crate::rational::{format_rational, parse_rational, Rational};

/// A probability distribution on the worlds of 2ⁿ or Kⁿ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldWeights {
    pub arity: usize,
    pub kind: LogicKind,
    /// indexed by the canonical world enumeration
    pub weights: Vec<Rational>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightsJsonError {
    #[error("weights JSON must be an object with \"n\", \"logic\" and \"weights\"")]
    BadShape,
    #[error("unknown logic kind {0:?}")]
    BadKind(String),
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("bad rational literal: {0}")]
    BadRational(String),
    #[error("weight for world {0:?} is negative")]
    Negative(String),
    #[error("weights sum to {0}, expected 1")]
    BadSum(String),
}

impl WorldWeights {
    pub fn world_count(&self) -> usize {
        match self.kind {
            LogicKind::Kleene => 3usize.pow(self.arity as u32),
            LogicKind::Classical => 1usize << self.arity,
        }
    }

    pub fn world_names(&self) -> Vec<String> {
        let worlds = match self.kind {
            LogicKind::Kleene => enumerate_kleene_worlds(self.arity),
            LogicKind::Classical => enumerate_classical_worlds(self.arity),
        };
        worlds.iter().map(|w| world_to_string(w)).collect()
    }

    /// Schema: {"n":2,"logic":"kleene","weights":{"0n":"1/4",...}};
    /// missing worlds weigh 0.
    pub fn from_json(value: &serde_json::Value) -> Result<WorldWeights, WeightsJsonError> {
        let obj = value.as_object().ok_or(WeightsJsonError::BadShape)?;
        let arity = obj
            .get("n")
            .and_then(|v| v.as_u64())
            .ok_or(WeightsJsonError::BadShape)? as usize;
        let kind = match obj.get("logic").and_then(|v| v.as_str()) {
            Some("kleene") => LogicKind::Kleene,
            Some("classical") => LogicKind::Classical,
            Some(other) => return Err(WeightsJsonError::BadKind(other.to_string())),
            None => return Err(WeightsJsonError::BadShape),
        };
        let entries = obj
            .get("weights")
            .and_then(|v| v.as_object())
            .ok_or(WeightsJsonError::BadShape)?;
        let mut out = WorldWeights { arity, kind, weights: Vec::new() };
        let names = out.world_names();
        let index: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        out.weights = vec![Rational::zero(); names.len()];
        for (world, lit) in entries {
            let &i = index
                .get(world.as_str())
                .ok_or_else(|| WeightsJsonError::UnknownWorld(world.clone()))?;
            let text = lit.as_str().ok_or_else(|| WeightsJsonError::BadRational(world.clone()))?;
            let w = parse_rational(text).map_err(|e| WeightsJsonError::BadRational(e.to_string()))?;
            if w.is_negative() {
                return Err(WeightsJsonError::Negative(world.clone()));
            }
            out.weights[i] = w;
        }
        let total: Rational = out.weights.iter().sum();
        if !total.is_one() {
            return Err(WeightsJsonError::BadSum(format_rational(&total)));
        }
        Ok(out)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProbError {
    #[error("expected a {0} weight distribution")]
    KindMismatch(&'static str),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error("conditioning formula has probability zero")]
    ZeroCondition,
}

/// π(α) = total weight of the classical meaning of α.
pub fn classical_pi(w: &WorldWeights, f: &Formula) -> Result<Rational, ProbError> {
    if w.kind != LogicKind::Classical {
        return Err(ProbError::KindMismatch("classical"));
    }
    let mask = meaning_classical(f, w.arity)?;
    Ok(subset_mass(&w.weights, mask))
}

/// π(α|δ) = π(α∧δ) / π(δ).
pub fn conditional_pi(w: &WorldWeights, f: &Formula, delta: &Formula) -> Result<Rational, ProbError> {
    let below = classical_pi(w, delta)?;
    if below.is_zero() {
        return Err(ProbError::ZeroCondition);
    }
    let above = classical_pi(w, &Formula::and(f.clone(), delta.clone()))?;
    Ok(above / below)
}

/// π(α) = (weight of positive models, weight of negative models).
pub fn partial_pi(w: &WorldWeights, f: &Formula) -> Result<TValue, ProbError> {
    if w.kind != LogicKind::Kleene {
        return Err(ProbError::KindMismatch("kleene"));
    }
    let m = meaning_kleene(f, w.arity);
    Ok(TValue::new(subset_mass(&w.weights, m.pos), subset_mass(&w.weights, m.neg)))
}

/// All formulas of depth ≤ `depth` over `arity` variables, one minimal
/// representative per meaning (exhausting ASTs literally is astronomically
/// large; distinct meanings are what the axiom checks can see).
pub fn formula_corpus(arity: usize, depth: usize, kind: LogicKind) -> Vec<Formula> {
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    enum Key {
        Kleene(crate::partial_set::PartialSet),
        Classical(u32),
    }
    let key = |f: &Formula| match kind {
        LogicKind::Kleene => Key::Kleene(meaning_kleene(f, arity)),
        LogicKind::Classical => Key::Classical(meaning_classical(f, arity).unwrap()),
    };
    let mut seen: BTreeMap<Key, Formula> = BTreeMap::new();
    let mut atoms = vec![Formula::Const0, Formula::Const1];
    if kind == LogicKind::Kleene {
        atoms.push(Formula::ConstN);
    }
    atoms.extend((0..arity).map(Formula::Var));
    for a in atoms {
        seen.entry(key(&a)).or_insert(a);
    }
    for _ in 0..depth {
        let frontier: Vec<Formula> = seen.values().cloned().collect();
        let mut layer: BTreeMap<Key, Formula> = BTreeMap::new();
        let offer = |f: Formula, layer: &mut BTreeMap<Key, Formula>| {
            let k = key(&f);
            if seen.contains_key(&k) {
                return;
            }
            match layer.get(&k) {
                None => {
                    layer.insert(k, f);
                }
                Some(old) => {
                    if (f.depth(), f.to_string()) < (old.depth(), old.to_string()) {
                        layer.insert(k, f);
                    }
                }
            }
        };
        for f in &frontier {
            offer(Formula::not(f.clone()), &mut layer);
            for g in &frontier {
                offer(Formula::and(f.clone(), g.clone()), &mut layer);
                offer(Formula::or(f.clone(), g.clone()), &mut layer);
            }
        }
        if layer.is_empty() {
            break;
        }
        seen.extend(layer);
    }
    let mut out: Vec<Formula> = seen.into_values().collect();
    out.sort_by_key(|f| (f.depth(), f.to_string()));
    out
}

/// Why an audited probability function failed, with the offending formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomDefect {
    pub axiom: &'static str,
    pub witnesses: Vec<Formula>,
}

impl std::fmt::Display for AxiomDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: ", self.axiom)?;
        for (i, w) in self.witnesses.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

fn defect(axiom: &'static str, ws: &[&Formula]) -> AxiomDefect {
    AxiomDefect { axiom, witnesses: ws.iter().map(|f| (*f).clone()).collect() }
}

/// Relative-probability axioms plus the derived conditional properties,
/// over a finite corpus. `pi` is the function under audit.
pub fn check_relative_probability_axioms(
    pi: &dyn Fn(&Formula) -> Rational,
    delta: &Formula,
    arity: usize,
    corpus: &[Formula],
) -> Result<(), AxiomDefect> {
    let entails = |f: &Formula, g: &Formula| {
        consequence(std::slice::from_ref(f), g, arity, LogicKind::Classical).unwrap()
    };
    if entails(delta, &Formula::Const0) {
        return Err(defect("delta is inconsistent", &[delta]));
    }
    for a in corpus {
        if entails(delta, a) && !pi(a).is_one() {
            return Err(defect("delta-entailed formula below 1", &[a]));
        }
        // π_δ(¬α) = 1 − π_δ(α)
        if pi(&Formula::not(a.clone())) != Rational::one() - pi(a) {
            return Err(defect("negation complement", &[a]));
        }
        for b in corpus {
            let disj = Formula::or(a.clone(), b.clone());
            let conj = Formula::and(a.clone(), b.clone());
            // additivity on δ-disjoint pairs
            if entails(delta, &Formula::not(conj.clone())) && pi(&disj) != pi(a) + pi(b) {
                return Err(defect("additivity on disjoint pair", &[a, b]));
            }
            // inclusion-exclusion
            if pi(&disj) + pi(&conj) != pi(a) + pi(b) {
                return Err(defect("inclusion-exclusion", &[a, b]));
            }
            // entailment under δ is monotone
            if entails(&Formula::and(a.clone(), delta.clone()), b) && pi(a) > pi(b) {
                return Err(defect("monotone under delta", &[a, b]));
            }
        }
    }
    Ok(())
}

/// Partial-probability axioms plus the derived properties, over a
/// finite corpus.
pub fn check_partial_probability_axioms(
    pi: &dyn Fn(&Formula) -> TValue,
    arity: usize,
    corpus: &[Formula],
) -> Result<(), AxiomDefect> {
    let entails = |f: &Formula, g: &Formula| {
        consequence(std::slice::from_ref(f), g, arity, LogicKind::Kleene).unwrap()
    };
    for a in corpus {
        if entails(&Formula::Const1, a) && pi(a) != TValue::one_t() {
            return Err(defect("validity yields (1,0)", &[a]));
        }
        if pi(&Formula::not(a.clone())) != pi(a).sigma() {
            return Err(defect("negation is sigma", &[a]));
        }
        if entails(&Formula::ConstN, a) && !TValue::neither_t().preceq(&pi(a)) {
            return Err(defect("n-entailed formula below (0,0)", &[a]));
        }
        if entails(a, &Formula::Const0) && pi(a) != TValue::zero_t() {
            return Err(defect("inconsistent formula above (0,1)", &[a]));
        }
        // π(α) = π(α∨n) + π(α∧n)
        let split = pi(&Formula::or(a.clone(), Formula::ConstN))
            .add(&pi(&Formula::and(a.clone(), Formula::ConstN)));
        if pi(a) != split {
            return Err(defect("splits across n", &[a]));
        }
        for b in corpus {
            let disj = Formula::or(a.clone(), b.clone());
            let conj = Formula::and(a.clone(), b.clone());
            if pi(&disj).add(&pi(&conj)) != pi(a).add(&pi(b)) {
                return Err(defect("additivity", &[a, b]));
            }
        }
    }
    Ok(())
}

/// α ⊨ β implies π(α) ≼ π(β), over all corpus pairs.
pub fn is_isotone_pi(
    pi: &dyn Fn(&Formula) -> TValue,
    arity: usize,
    corpus: &[Formula],
) -> Result<(), AxiomDefect> {
    for a in corpus {
        for b in corpus {
            let holds =
                consequence(std::slice::from_ref(a), b, arity, LogicKind::Kleene).unwrap();
            if holds && !pi(a).preceq(&pi(b)) {
                return Err(defect("isotone", &[a, b]));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::partial_set::{associated_partial_space, PartialSet};
    use crate::rational::rat;

    fn kf(text: &str, arity: usize) -> Formula {
        parse(text, arity, LogicKind::Kleene).unwrap()
    }

    fn uniform(arity: usize, kind: LogicKind) -> WorldWeights {
        let mut w = WorldWeights { arity, kind, weights: Vec::new() };
        let count = w.world_count();
        w.weights = vec![rat(1, count as i64); count];
        w
    }

    /// The running example: worlds of K¹ weighted 1/2, 1/4, 1/4.
    fn k1_weights() -> WorldWeights {
        WorldWeights {
            arity: 1,
            kind: LogicKind::Kleene,
            weights: vec![rat(1, 2), rat(1, 4), rat(1, 4)],
        }
    }

    #[test]
    fn classical_pi_cases() {
        let w = uniform(1, LogicKind::Classical);
        assert_eq!(classical_pi(&w, &kf("p0", 1)).unwrap(), rat(1, 2));
        assert_eq!(classical_pi(&w, &kf("p0 | ~p0", 1)).unwrap(), rat(1, 1));
        assert_eq!(classical_pi(&w, &kf("0", 1)).unwrap(), rat(0, 1));
        assert_eq!(
            classical_pi(&k1_weights(), &kf("p0", 1)),
            Err(ProbError::KindMismatch("classical"))
        );
    }

    #[test]
    fn conditional_pi_cases() {
        let w = uniform(2, LogicKind::Classical);
        let p0 = kf("p0", 2);
        let p1 = kf("p1", 2);
        assert_eq!(conditional_pi(&w, &p1, &p0).unwrap(), rat(1, 2));
        assert_eq!(conditional_pi(&w, &p0, &p0).unwrap(), rat(1, 1));
        assert_eq!(
            conditional_pi(&w, &p1, &Formula::Const1).unwrap(),
            classical_pi(&w, &p1).unwrap()
        );
        assert_eq!(
            conditional_pi(&w, &p1, &kf("0", 2)),
            Err(ProbError::ZeroCondition)
        );
    }

    #[test]
    fn partial_pi_examples() {
        let w = k1_weights();
        assert_eq!(partial_pi(&w, &kf("p0", 1)).unwrap(), TValue::new(rat(1, 4), rat(1, 2)));
        assert_eq!(
            partial_pi(&w, &kf("p0 | ~p0", 1)).unwrap(),
            TValue::new(rat(3, 4), rat(0, 1))
        );
        assert_eq!(partial_pi(&w, &kf("n", 1)).unwrap(), TValue::neither_t());
        // axiom 2 instance
        let lhs = partial_pi(&w, &kf("p0 | ~p0", 1))
            .unwrap()
            .add(&partial_pi(&w, &kf("p0 & ~p0", 1)).unwrap());
        let rhs = partial_pi(&w, &kf("p0", 1))
            .unwrap()
            .add(&partial_pi(&w, &kf("~p0", 1)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn corpus_grows_and_dedups() {
        let corpus = formula_corpus(1, 3, LogicKind::Kleene);
        assert!(corpus.len() > 5);
        for (i, f) in corpus.iter().enumerate() {
            for g in &corpus[i + 1..] {
                assert_ne!(meaning_kleene(f, 1), meaning_kleene(g, 1));
            }
        }
    }

    #[test]
    fn relative_axioms_pass_and_fail() {
        let w = uniform(2, LogicKind::Classical);
        let delta = kf("p0", 2);
        let corpus = formula_corpus(2, 2, LogicKind::Classical);
        let pi = |f: &Formula| conditional_pi(&w, f, &delta).unwrap();
        assert!(check_relative_probability_axioms(&pi, &delta, 2, &corpus).is_ok());

        // δ = 1 reduces to the plain axioms
        let plain = |f: &Formula| classical_pi(&w, f).unwrap();
        assert!(
            check_relative_probability_axioms(&plain, &Formula::Const1, 2, &corpus).is_ok()
        );

        let broken = |f: &Formula| {
            if *f == kf("~p1", 2) {
                rat(1, 3)
            } else {
                conditional_pi(&w, f, &delta).unwrap()
            }
        };
        let err = check_relative_probability_axioms(&broken, &delta, 2, &corpus).unwrap_err();
        assert!(!err.witnesses.is_empty());
    }

    #[test]
    fn partial_axioms_pass_and_fail() {
        let w = k1_weights();
        let corpus = formula_corpus(1, 3, LogicKind::Kleene);
        let pi = |f: &Formula| partial_pi(&w, f).unwrap();
        assert!(check_partial_probability_axioms(&pi, 1, &corpus).is_ok());
        assert!(is_isotone_pi(&pi, 1, &corpus).is_ok());

        // the constant (1,0) function satisfies axiom 1 but not σ on ¬1
        let constant = |_: &Formula| TValue::one_t();
        let err = check_partial_probability_axioms(&constant, 1, &corpus).unwrap_err();
        assert_eq!(err.axiom, "negation is sigma");

        let skewed = |f: &Formula| {
            if *f == kf("p0", 1) {
                TValue::zero_t()
            } else {
                partial_pi(&w, f).unwrap()
            }
        };
        assert!(is_isotone_pi(&skewed, 1, &corpus).is_err());
    }

    #[test]
    fn partial_pi_matches_associated_measure() {
        // composition identity, exhaustive for n = 1
        let w = k1_weights();
        let names = w.world_names();
        let (field, mu) = associated_partial_space(&names, &w.weights).unwrap();
        for f in formula_corpus(1, 3, LogicKind::Kleene) {
            let m = meaning_kleene(&f, 1);
            assert_eq!(
                partial_pi(&w, &f).unwrap(),
                *mu.get(&field, PartialSet::new(m.pos, m.neg)).unwrap()
            );
        }
    }

    #[test]
    fn weights_json_round_trip_and_errors() {
        let json: serde_json::Value = serde_json::json!({
            "n": 1, "logic": "kleene",
            "weights": {"0": "1/2", "n": "1/4", "1": "1/4"}
        });
        assert_eq!(WorldWeights::from_json(&json).unwrap(), k1_weights());

        // missing worlds weigh zero
        let sparse = serde_json::json!({
            "n": 1, "logic": "classical", "weights": {"1": "1"}
        });
        let w = WorldWeights::from_json(&sparse).unwrap();
        assert_eq!(w.weights, vec![rat(0, 1), rat(1, 1)]);

        let bad_sum = serde_json::json!({
            "n": 1, "logic": "kleene", "weights": {"0": "1/2"}
        });
        assert_eq!(
            WorldWeights::from_json(&bad_sum),
            Err(WeightsJsonError::BadSum("1/2".into()))
        );
        let bad_world = serde_json::json!({
            "n": 1, "logic": "classical", "weights": {"n": "1"}
        });
        assert!(matches!(
            WorldWeights::from_json(&bad_world),
            Err(WeightsJsonError::UnknownWorld(_))
        ));
    }

    #[test]
    fn classical_theorem_properties() {
        let w = uniform(2, LogicKind::Classical);
        let corpus = formula_corpus(2, 2, LogicKind::Classical);
        for a in &corpus {
            assert_eq!(
                classical_pi(&w, &Formula::not(a.clone())).unwrap(),
                Rational::one() - classical_pi(&w, a).unwrap()
            );
            for b in &corpus {
                let entails =
                    consequence(std::slice::from_ref(a), b, 2, LogicKind::Classical).unwrap();
                if entails {
                    assert!(classical_pi(&w, a).unwrap() <= classical_pi(&w, b).unwrap());
                }
            }
        }
    }
}
