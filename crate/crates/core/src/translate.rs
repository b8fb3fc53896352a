//! The four translations between sentence probabilities and event-space
//! measures: classical in both directions, and partial (Kleene) in both
//! directions, with the mediating morphisms and exact equality reports.

use std::collections::BTreeMap;

use num::Zero;
use serde_json::json;
use thiserror::Error;

use crate::dmf::DmfAlgebra;
use crate::formula::{Formula, LogicKind};
use crate::lattice::{is_valuation, FiniteLattice, Valuation};
use crate::logic::{
    enumerate_classical_worlds, kleene_lindenbaum_algebra, meaning_classical, meaning_kleene,
    world_to_string, LindenbaumError,
};
use crate::partial_set::{
    generated_subfield, subset_mass, PartialField, PartialMeasure, PartialSet, TValue,
};
use crate::prob::{
    check_partial_probability_axioms, classical_pi, formula_corpus, is_isotone_pi, AxiomDefect,
    ProbError, WorldWeights,
};
use crate::rational::{format_rational, Rational};

/// Canonical defining formula of a classical event X ⊆ 2ⁿ: full DNF,
/// the disjunction over s ∈ X of the conjunction of literals fixing s.
/// Empty X gives 0; the empty conjunction (n = 0) gives 1.
pub fn dnf_formula(event: u32, arity: usize) -> Formula {
    let worlds = enumerate_classical_worlds(arity);
    let mut disjuncts: Vec<Formula> = Vec::new();
    for (w, world) in worlds.iter().enumerate() {
        if event >> w & 1 == 0 {
            continue;
        }
        let mut conj: Option<Formula> = None;
        for (i, &t) in world.iter().enumerate() {
            let lit = if t == crate::logic::TV_TRUE {
                Formula::Var(i)
            } else {
                Formula::not(Formula::Var(i))
            };
            conj = Some(match conj {
                None => lit,
                Some(c) => Formula::and(c, lit),
            });
        }
        disjuncts.push(conj.unwrap_or(Formula::Const1));
    }
    disjuncts
        .into_iter()
        .reduce(Formula::or)
        .unwrap_or(Formula::Const0)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TranslateError {
    #[error(transparent)]
    Prob(#[from] ProbError),
    #[error(transparent)]
    Lindenbaum(#[from] LindenbaumError),
    #[error("field of {0} members exceeds the generator-search cap of {1}")]
    CapExceeded(usize, usize),
    #[error("probability function is not isotone ({0})")]
    NotIsotone(AxiomDefect),
    #[error("probability function is not compatible with logical equivalence at {0}")]
    NotCompatible(String),
}

/// weights → event probability p on P(2ⁿ), with p(X) = π(DNF of X).
#[derive(Debug, Clone)]
pub struct ClassicalSpaceCertificate {
    pub arity: usize,
    /// p indexed by event bitmask over the 2ⁿ worlds
    pub event_probability: Vec<Rational>,
    /// (formula text, π(α), p(M(α))) — always equal, kept for reporting
    pub equalities: Vec<(String, Rational, Rational)>,
}

impl ClassicalSpaceCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "direction": "sentences-to-space",
            "logic": "classical",
            "n": self.arity,
            "events": self.event_probability.iter().enumerate().map(|(mask, p)| {
                json!({"event": mask, "p": format_rational(p)})
            }).collect::<Vec<_>>(),
            "equalities": self.equalities.iter().map(|(f, a, b)| {
                json!({"formula": f, "pi": format_rational(a), "p": format_rational(b)})
            }).collect::<Vec<_>>(),
            "pass": true,
        })
    }
}

/// Classical direction sentences → space: p(X) = π(canonical formula of X);
/// certifies p is a Boolean valuation and π(α) = p(M(α)) on the corpus.
pub fn classical_sentences_to_space(
    w: &WorldWeights,
) -> Result<ClassicalSpaceCertificate, TranslateError> {
    if w.kind != LogicKind::Classical {
        return Err(ProbError::KindMismatch("classical").into());
    }
    let worlds = w.world_count();
    let event_probability: Vec<Rational> = (0..1u32 << worlds)
        .map(|mask| classical_pi(w, &dnf_formula(mask, w.arity)).unwrap())
        .collect();
    let lattice = FiniteLattice::powerset(worlds as u32);
    let p = Valuation { values: event_probability.clone() };
    assert!(is_valuation(&lattice, &p).is_ok(), "p is a Boolean valuation");
    assert!(lattice.is_boolean());
    let corpus = formula_corpus(w.arity, 2, LogicKind::Classical);
    let equalities = corpus
        .iter()
        .map(|f| {
            let via_pi = classical_pi(w, f).unwrap();
            let via_p = event_probability[meaning_classical(f, w.arity).unwrap() as usize].clone();
            assert_eq!(via_pi, via_p, "π(α) = p(M(α))");
            (f.to_string(), via_pi, via_p)
        })
        .collect();
    Ok(ClassicalSpaceCertificate { arity: w.arity, event_probability, equalities })
}

/// space → sentences: η = χ∘θ∘ψ maps formula classes of L_k onto events of
/// the m-point sample space; each event carries a witness formula.
#[derive(Debug, Clone)]
pub struct ClassicalSentenceCertificate {
    pub sample_size: usize,
    /// k = min x with m ≤ 2^x
    pub k: usize,
    /// witness formula per event bitmask over the m sample points
    pub witnesses: Vec<Formula>,
    /// (event, p(event), π(witness)) — equal by construction
    pub equalities: Vec<(u32, Rational, Rational)>,
}

impl ClassicalSentenceCertificate {
    /// η(|α|): restrict the meaning of α over 2ᵏ to the first m worlds.
    pub fn eta(&self, f: &Formula) -> Result<u32, crate::logic::ClassicalError> {
        let full = meaning_classical(f, self.k)?;
        Ok(full & ((1u32 << self.sample_size) - 1))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "direction": "space-to-sentences",
            "logic": "classical",
            "m": self.sample_size,
            "k": self.k,
            "witnesses": self.witnesses.iter().enumerate().map(|(mask, f)| {
                json!({"event": mask, "formula": f.to_string()})
            }).collect::<Vec<_>>(),
            "equalities": self.equalities.iter().map(|(mask, p, pi)| {
                json!({"event": mask, "p": format_rational(p), "pi": format_rational(pi)})
            }).collect::<Vec<_>>(),
            "pass": true,
        })
    }
}

/// A generic m-point weighted sample space is spoken
/// about by the language L_k, k = min x with m ≤ 2^x.
pub fn classical_space_to_sentences(weights: &[Rational]) -> ClassicalSentenceCertificate {
    let m = weights.len();
    assert!(m >= 1, "sample space must be nonempty");
    let mut k = 0usize;
    while (1usize << k) < m {
        k += 1;
    }
    let w = WorldWeights {
        arity: k,
        kind: LogicKind::Classical,
        weights: {
            // pad the distribution with zero-weight worlds beyond m
            let mut padded = weights.to_vec();
            padded.resize(1 << k, Rational::zero());
            padded
        },
    };
    // θ: 2^{2^k} → 2^m by restriction is surjective since m ≤ 2^k
    let sample_mask = (1u32 << m) - 1;
    let mut witnesses = Vec::with_capacity(1 << m);
    let mut equalities = Vec::with_capacity(1 << m);
    for event in 0u32..1 << m {
        // the DNF over exactly the in-sample worlds of the event has
        // η-image the event itself
        let alpha = dnf_formula(event, k);
        let eta = meaning_classical(&alpha, k).unwrap() & sample_mask;
        assert_eq!(eta, event, "θ∘ψ is onto the sample events");
        let p = subset_mass(weights, event);
        let pi = classical_pi(&w, &alpha).unwrap();
        assert_eq!(p, pi, "p(X) = π(α) for the witness");
        witnesses.push(alpha);
        equalities.push((event, p, pi));
    }
    ClassicalSentenceCertificate { sample_size: m, k, witnesses, equalities }
}

/// An isotone partial probability function induces the measure
/// μ(X,Y) = π(witness of (X,Y)) on the Lindenbaum subalgebra of D(Kⁿ).
#[derive(Debug, Clone)]
pub struct PartialSpaceCertificate {
    pub arity: usize,
    pub members: Vec<PartialSet>,
    pub witnesses: BTreeMap<PartialSet, Formula>,
    pub measure: BTreeMap<PartialSet, TValue>,
    /// (formula text, π(α), μ(M(α)))
    pub equalities: Vec<(String, TValue, TValue)>,
}

impl PartialSpaceCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let names: Vec<String> = crate::logic::enumerate_kleene_worlds(self.arity)
            .iter()
            .map(|w| world_to_string(w))
            .collect();
        let fmt = |t: &TValue| crate::partial_set::format_tvalue(t);
        json!({
            "direction": "sentences-to-space",
            "logic": "partial",
            "n": self.arity,
            "members": self.members.iter().map(|ps| {
                let spec = crate::partial_set::partial_set_to_spec(&names, *ps);
                json!({
                    "pos": spec.pos, "neg": spec.neg,
                    "witness": self.witnesses[ps].to_string(),
                    "mu": fmt(&self.measure[ps]),
                })
            }).collect::<Vec<_>>(),
            "equalities": self.equalities.iter().map(|(f, a, b)| {
                json!({"formula": f, "pi": fmt(a), "mu": fmt(b)})
            }).collect::<Vec<_>>(),
            "pass": true,
        })
    }
}

/// Valuation axioms checked directly on a closed member list.
fn check_measure_on_members(
    bits: u32,
    members: &[PartialSet],
    mu: &BTreeMap<PartialSet, TValue>,
) {
    assert_eq!(mu[&PartialSet::zero(bits)], TValue::zero_t());
    assert_eq!(mu[&PartialSet::one(bits)], TValue::one_t());
    for &a in members {
        assert!(mu[&a].in_t());
        assert_eq!(mu[&a.neg()], mu[&a].sigma());
        if PartialSet::neither().leq(a) {
            assert!(TValue::neither_t().preceq(&mu[&a]));
        }
        for &b in members {
            assert_eq!(
                mu[&a].add(&mu[&b]),
                mu[&a.join(b)].add(&mu[&a.meet(b)]),
                "measure additivity"
            );
        }
    }
}

/// Partial direction sentences → space. Rejects non-isotone or ∼-incompatible π with a
/// witness rather than repairing it.
pub fn partial_sentences_to_space(
    pi: &dyn Fn(&Formula) -> TValue,
    arity: usize,
) -> Result<PartialSpaceCertificate, TranslateError> {
    let corpus = formula_corpus(arity, 3, LogicKind::Kleene);
    // compatibility with ∼: equivalent reshapings must agree
    for f in &corpus {
        let base = pi(f);
        for variant in [
            Formula::not(Formula::not(f.clone())),
            Formula::and(f.clone(), f.clone()),
            Formula::or(f.clone(), Formula::Const0),
        ] {
            if pi(&variant) != base {
                return Err(TranslateError::NotCompatible(variant.to_string()));
            }
        }
    }
    if let Err(defect) = is_isotone_pi(pi, arity, &corpus) {
        return Err(TranslateError::NotIsotone(defect));
    }
    let (members, witnesses) = kleene_lindenbaum_algebra(arity)?;
    let measure: BTreeMap<PartialSet, TValue> =
        witnesses.iter().map(|(&ps, f)| (ps, pi(f))).collect();
    let bits = 3u32.pow(arity as u32);
    check_measure_on_members(bits, &members, &measure);
    let equalities = corpus
        .iter()
        .map(|f| {
            let direct = pi(f);
            let via_mu = measure[&meaning_kleene(f, arity)].clone();
            assert_eq!(direct, via_mu, "π(α) = μ(M(α))");
            (f.to_string(), direct, via_mu)
        })
        .collect();
    Ok(PartialSpaceCertificate { arity, members, witnesses, measure, equalities })
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExtensionError {
    #[error("variable p{0} has no assigned generator")]
    Unassigned(usize),
}

/// The unique morphism extending a generator assignment: structural
/// evaluation of the formula in the algebra.
pub fn free_extension(
    a: &DmfAlgebra,
    assignment: &[usize],
    f: &Formula,
) -> Result<usize, ExtensionError> {
    if let Some(v) = f.max_var() {
        if v >= assignment.len() {
            return Err(ExtensionError::Unassigned(v));
        }
    }
    Ok(a.eval_term(f, assignment))
}

/// Same extension landing in a field of partial sets.
pub fn free_extension_ps(
    bits: u32,
    assignment: &[PartialSet],
    f: &Formula,
) -> Result<PartialSet, ExtensionError> {
    Ok(match f {
        Formula::Var(i) => *assignment.get(*i).ok_or(ExtensionError::Unassigned(*i))?,
        Formula::Const0 => PartialSet::zero(bits),
        Formula::Const1 => PartialSet::one(bits),
        Formula::ConstN => PartialSet::neither(),
        Formula::Not(g) => free_extension_ps(bits, assignment, g)?.neg(),
        Formula::And(g, h) => {
            free_extension_ps(bits, assignment, g)?.meet(free_extension_ps(bits, assignment, h)?)
        }
        Formula::Or(g, h) => {
            free_extension_ps(bits, assignment, g)?.join(free_extension_ps(bits, assignment, h)?)
        }
    })
}

pub const GENERATOR_SEARCH_CAP: usize = 27;

/// Smallest generating subset of the field, size-ascending, ties broken by
/// the lexicographically first combination in member order.
pub fn minimal_generating_set(
    field: &PartialField,
) -> Result<(usize, Vec<PartialSet>), TranslateError> {
    let total = field.members.len();
    if total > GENERATOR_SEARCH_CAP {
        return Err(TranslateError::CapExceeded(total, GENERATOR_SEARCH_CAP));
    }
    let bits = field.n();
    let mut target: Vec<PartialSet> = field.members.clone();
    target.sort_unstable();
    let generates = |gens: &[PartialSet]| {
        let (closure, _) = generated_subfield(bits, gens);
        closure == target
    };
    for size in 0..=total {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let gens: Vec<PartialSet> = combo.iter().map(|&i| field.members[i]).collect();
            if generates(&gens) {
                return Ok((size, gens));
            }
            // next combination of `size` indices out of `total`
            let mut i = size;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if combo[i] != i + total - size {
                    combo[i] += 1;
                    for j in i + 1..size {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    combo.clear();
                    break;
                }
            }
            if combo.is_empty() || size == 0 {
                break;
            }
        }
    }
    unreachable!("the full member list generates itself")
}

/// Partial direction space → sentences: j generators, η by free extension, and the
/// probability function π(α) = μ(η(|α|)).
#[derive(Debug, Clone)]
pub struct PartialSentenceCertificate {
    pub generator_count: usize,
    pub generators: Vec<PartialSet>,
    pub witnesses: BTreeMap<PartialSet, Formula>,
    /// (member, μ(member), π(witness))
    pub equalities: Vec<(PartialSet, TValue, TValue)>,
}

impl PartialSentenceCertificate {
    pub fn to_json(&self, field: &PartialField) -> serde_json::Value {
        let fmt = |t: &TValue| crate::partial_set::format_tvalue(t);
        json!({
            "direction": "space-to-sentences",
            "logic": "partial",
            "j": self.generator_count,
            "generators": self.generators.iter().map(|&g| {
                let spec = crate::partial_set::partial_set_to_spec(&field.space, g);
                json!({"pos": spec.pos, "neg": spec.neg})
            }).collect::<Vec<_>>(),
            "equalities": self.equalities.iter().map(|(ps, mu, pi)| {
                let spec = crate::partial_set::partial_set_to_spec(&field.space, *ps);
                json!({
                    "pos": spec.pos, "neg": spec.neg,
                    "witness": self.witnesses[ps].to_string(),
                    "mu": fmt(mu), "pi": fmt(pi),
                })
            }).collect::<Vec<_>>(),
            "pass": true,
        })
    }
}

/// Constructively: every certified measure on a finite
/// field of partial sets is the translation of a partial probability
/// function on L*_j.
pub fn partial_space_to_sentences(
    field: &PartialField,
    mu: &PartialMeasure,
) -> Result<PartialSentenceCertificate, TranslateError> {
    let (j, generators) = minimal_generating_set(field)?;
    let bits = field.n();
    let (closure, witnesses) = generated_subfield(bits, &generators);
    debug_assert_eq!(closure.len(), field.members.len());
    let pi = |f: &Formula| -> TValue {
        let image = free_extension_ps(bits, &generators, f).expect("variables within j");
        mu.get(field, image).expect("field is closed").clone()
    };
    let mut equalities = Vec::with_capacity(closure.len());
    for (&ps, alpha) in &witnesses {
        let mu_val = mu.get(field, ps).unwrap().clone();
        let pi_val = pi(alpha);
        assert_eq!(mu_val, pi_val, "μ(X,Y) = π(witness)");
        equalities.push((ps, mu_val, pi_val));
    }
    // π is a genuine partial probability function on L*_j
    if j <= 2 {
        let corpus = formula_corpus(j, 2, LogicKind::Kleene);
        check_partial_probability_axioms(&pi, j, &corpus)
            .expect("translated function satisfies the axioms");
    }
    Ok(PartialSentenceCertificate { generator_count: j, generators, witnesses, equalities })
}
