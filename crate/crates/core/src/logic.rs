//! Kleene and classical sentential semantics: worlds, truth-functional
//! evaluation, the meaning function into partial sets over Kⁿ (or plain
//! sets over 2ⁿ), logical consequence, and the Lindenbaum construction.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::formula::{Formula, LogicKind};
use crate::partial_set::{enumerate_ds, full_mask, PartialField, PartialSet};

/// Truth values 0 < n < 1, encoded 0, 1, 2 (matching K's element order).
pub type Truth = u8;

pub const TV_FALSE: Truth = 0;
pub const TV_N: Truth = 1;
pub const TV_TRUE: Truth = 2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WorldError {
    #[error("world has length {0}, expected {1}")]
    BadLength(usize, usize),
    #[error("invalid world character {0:?}")]
    BadChar(char),
    #[error("'n' world position is not allowed in classical mode")]
    NInClassical,
}

/// Parses a world string over {0,n,1} ('n' rejected classically).
pub fn parse_world(text: &str, arity: usize, kind: LogicKind) -> Result<Vec<Truth>, WorldError> {
    let mut out = Vec::with_capacity(text.len());
    for c in text.chars() {
        out.push(match c {
            '0' => TV_FALSE,
            '1' => TV_TRUE,
            'n' if kind == LogicKind::Kleene => TV_N,
            'n' => return Err(WorldError::NInClassical),
            other => return Err(WorldError::BadChar(other)),
        });
    }
    if out.len() != arity {
        return Err(WorldError::BadLength(out.len(), arity));
    }
    Ok(out)
}

pub fn world_to_string(world: &[Truth]) -> String {
    world
        .iter()
        .map(|&t| match t {
            TV_FALSE => '0',
            TV_N => 'n',
            _ => '1',
        })
        .collect()
}

/// All worlds of Kⁿ in ternary counting order, p₀ most significant,
/// digits ordered '0' < 'n' < '1'.
pub fn enumerate_kleene_worlds(arity: usize) -> Vec<Vec<Truth>> {
    let total = 3usize.pow(arity as u32);
    (0..total)
        .map(|code| {
            let mut rest = code;
            let mut w = vec![TV_FALSE; arity];
            for i in (0..arity).rev() {
                w[i] = (rest % 3) as Truth;
                rest /= 3;
            }
            w
        })
        .collect()
}

/// All worlds of 2ⁿ in binary counting order, p₀ most significant.
pub fn enumerate_classical_worlds(arity: usize) -> Vec<Vec<Truth>> {
    let total = 1usize << arity;
    (0..total)
        .map(|code| {
            (0..arity)
                .map(|i| {
                    if code >> (arity - 1 - i) & 1 == 1 {
                        TV_TRUE
                    } else {
                        TV_FALSE
                    }
                })
                .collect()
        })
        .collect()
}

/// V_s: structural evaluation in K (min, max, swap).
pub fn eval_kleene(f: &Formula, world: &[Truth]) -> Truth {
    match f {
        Formula::Var(i) => world[*i],
        Formula::Const0 => TV_FALSE,
        Formula::Const1 => TV_TRUE,
        Formula::ConstN => TV_N,
        Formula::Not(g) => 2 - eval_kleene(g, world),
        Formula::And(g, h) => eval_kleene(g, world).min(eval_kleene(h, world)),
        Formula::Or(g, h) => eval_kleene(g, world).max(eval_kleene(h, world)),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassicalError {
    #[error("constant 'n' is not part of the classical language")]
    ConstNPresent,
}

/// Bivalent evaluation; rejects ConstN.
pub fn eval_classical(f: &Formula, world: &[Truth]) -> Result<bool, ClassicalError> {
    if f.uses_n() {
        return Err(ClassicalError::ConstNPresent);
    }
    Ok(eval_kleene(f, world) == TV_TRUE)
}

/// The sample space whose points are the Kⁿ worlds, in canonical order.
pub fn kleene_world_field(arity: usize) -> PartialField {
    let names: Vec<String> =
        enumerate_kleene_worlds(arity).iter().map(|w| world_to_string(w)).collect();
    // name count is 3^arity, above the element cap for arity ≥ 2 is fine:
    // the cap guards the D(S) blow-up, not the space itself
    enumerate_ds_space(names)
}

fn enumerate_ds_space(names: Vec<String>) -> PartialField {
    // only the space matters for meanings; list the three constants plus
    // nothing else when D(S) itself is too large to enumerate
    match enumerate_ds(&names, crate::partial_set::DEFAULT_ENUM_CAP) {
        Ok(field) => field,
        Err(_) => PartialField {
            members: vec![
                PartialSet::zero(names.len() as u32),
                PartialSet::neither(),
                PartialSet::one(names.len() as u32),
            ],
            space: names,
        },
    }
}

/// Largest arity whose Kⁿ worlds fit the partial-set bitmask (3^4 > 31).
pub const MEANING_ARITY_CAP: usize = 3;

/// M(α) over D(Kⁿ), computed structurally from
/// g(p_i) = ({s: s_i=1}, {s: s_i=0}).
///
/// Panics above `MEANING_ARITY_CAP`; callers validate arity first.
pub fn meaning_kleene(f: &Formula, arity: usize) -> PartialSet {
    assert!(arity <= MEANING_ARITY_CAP, "arity {arity} exceeds the meaning cap");
    let worlds = enumerate_kleene_worlds(arity);
    let n = worlds.len() as u32;
    let var = |i: usize| {
        let mut pos = 0u32;
        let mut neg = 0u32;
        for (w, world) in worlds.iter().enumerate() {
            match world[i] {
                TV_TRUE => pos |= 1 << w,
                TV_FALSE => neg |= 1 << w,
                _ => {}
            }
        }
        PartialSet::new(pos, neg)
    };
    fn go(f: &Formula, var: &dyn Fn(usize) -> PartialSet, n: u32) -> PartialSet {
        match f {
            Formula::Var(i) => var(*i),
            Formula::Const0 => PartialSet::zero(n),
            Formula::Const1 => PartialSet::one(n),
            Formula::ConstN => PartialSet::neither(),
            Formula::Not(g) => go(g, var, n).neg(),
            Formula::And(g, h) => go(g, var, n).meet(go(h, var, n)),
            Formula::Or(g, h) => go(g, var, n).join(go(h, var, n)),
        }
    }
    let m = go(f, &var, n);
    // the displayed correspondence with V_s, both directions
    debug_assert!(worlds.iter().enumerate().all(|(w, world)| {
        let v = eval_kleene(f, world);
        (m.pos >> w & 1 == 1) == (v == TV_TRUE) && (m.neg >> w & 1 == 1) == (v == TV_FALSE)
    }));
    m
}

/// M(α) ⊆ 2ⁿ as a bitmask over the classical world enumeration.
pub fn meaning_classical(f: &Formula, arity: usize) -> Result<u32, ClassicalError> {
    if f.uses_n() {
        return Err(ClassicalError::ConstNPresent);
    }
    let mut mask = 0u32;
    for (w, world) in enumerate_classical_worlds(arity).iter().enumerate() {
        if eval_kleene(f, world) == TV_TRUE {
            mask |= 1 << w;
        }
    }
    Ok(mask)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConsequenceError {
    #[error(transparent)]
    Classical(#[from] ClassicalError),
}

/// Γ ⊨ α. Kleene: ⊓M(γ) ⊑ M(α) (empty Γ uses M(1)), cross-checked against
/// the pointwise V_s form. Classical: intersection of meanings ⊆ M(α).
pub fn consequence(
    premises: &[Formula],
    conclusion: &Formula,
    arity: usize,
    kind: LogicKind,
) -> Result<bool, ConsequenceError> {
    match kind {
        LogicKind::Kleene => {
            let worlds = 3u32.pow(arity as u32);
            let mut meet = PartialSet::one(worlds);
            for g in premises {
                meet = meet.meet(meaning_kleene(g, arity));
            }
            let semantic = meet.leq(meaning_kleene(conclusion, arity));
            let pointwise = enumerate_kleene_worlds(arity).iter().all(|world| {
                let premise_value = premises
                    .iter()
                    .map(|g| eval_kleene(g, world))
                    .min()
                    .unwrap_or(TV_TRUE);
                premise_value <= eval_kleene(conclusion, world)
            });
            assert_eq!(semantic, pointwise, "the two consequence definitions agree");
            Ok(semantic)
        }
        LogicKind::Classical => {
            let mut meet = full_mask(1 << arity as u32);
            for g in premises {
                meet &= meaning_classical(g, arity)?;
            }
            let target = meaning_classical(conclusion, arity)?;
            Ok(meet & target == meet)
        }
    }
}

/// α ∼ β iff M(α) = M(β).
pub fn equivalent(f: &Formula, g: &Formula, arity: usize, kind: LogicKind) -> Result<bool, ClassicalError> {
    match kind {
        LogicKind::Kleene => Ok(meaning_kleene(f, arity) == meaning_kleene(g, arity)),
        LogicKind::Classical => Ok(meaning_classical(f, arity)? == meaning_classical(g, arity)?),
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LindenbaumError {
    #[error("arity {0} exceeds the Lindenbaum cap of {1}")]
    CapExceeded(usize, usize),
}

pub const LINDENBAUM_ARITY_CAP: usize = 2;

/// The Kleene Lindenbaum algebra of arity n: the subalgebra of D(Kⁿ)
/// generated by the variable meanings, each element tagged with a
/// minimal witness formula (BFS, ties broken by printed formula).
pub fn kleene_lindenbaum_algebra(
    arity: usize,
) -> Result<(Vec<PartialSet>, BTreeMap<PartialSet, Formula>), LindenbaumError> {
    if arity > LINDENBAUM_ARITY_CAP {
        return Err(LindenbaumError::CapExceeded(arity, LINDENBAUM_ARITY_CAP));
    }
    let worlds = 3u32.pow(arity as u32);
    let generators: Vec<PartialSet> =
        (0..arity).map(|i| meaning_kleene(&Formula::Var(i), arity)).collect();
    Ok(crate::partial_set::generated_subfield(worlds, &generators))
}
