//! End-to-end acceptance checks. One test per criterion, each printing a
//! single pass line; every equality is exact (rationals, tolerance zero).

use std::process::Command;
use std::time::Instant;

use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kleeneprob::dmf::{
    ds_algebra, enumerate_prime_ideals, find_dmf_isomorphism, nabla, phi_i, pi_construction,
    separation_pair, DmfAlgebra, IdealKind,
};
use kleeneprob::formula::{Formula, LogicKind};
use kleeneprob::lattice::{check_boolean_valuation_additivity, FiniteLattice, Valuation};
use kleeneprob::logic::{
    consequence, enumerate_kleene_worlds, eval_kleene, meaning_kleene, TV_TRUE,
};
use kleeneprob::partial_set::{
    associated_partial_space, enumerate_ds, subset_mass, PartialField, PartialSet, TValue,
};
use kleeneprob::partial_valuation::{
    bias, conditional_partial_valuation, decompose, is_isotone, is_partial_valuation,
    measure_as_valuation, posneg_conditional_identity, structural_properties, weak_bayes,
    PartialValuation,
};
use kleeneprob::prob::{classical_pi, partial_pi, WorldWeights};
use kleeneprob::rational::{rat, Rational};
use kleeneprob::translate::{
    classical_sentences_to_space, classical_space_to_sentences, dnf_formula, free_extension,
    partial_sentences_to_space, partial_space_to_sentences,
};

fn random_weights(k: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..20)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|w| rat(w, total)).collect()
}

fn space(k: usize) -> Vec<String> {
    ["a", "b", "c"][..k].iter().map(|s| s.to_string()).collect()
}

/// Field, algebra, and measure-valuation of D(S) for the given weights.
fn setup(k: usize, weights: &[Rational]) -> (PartialField, DmfAlgebra, PartialValuation) {
    let names = space(k);
    let (field, mu) = associated_partial_space(&names, weights).expect("weights sum to 1");
    let algebra = ds_algebra(&field);
    (field, algebra, measure_as_valuation(&mu))
}

fn random_formula(arity: usize, depth: usize, rng: &mut ChaCha8Rng) -> Formula {
    if depth == 0 || rng.gen_range(0..5) == 0 {
        return match rng.gen_range(0..4) {
            0 => Formula::Const0,
            1 => Formula::Const1,
            2 => Formula::ConstN,
            _ => Formula::Var(rng.gen_range(0..arity)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(arity, depth - 1, rng)),
        1 => Formula::and(
            random_formula(arity, depth - 1, rng),
            random_formula(arity, depth - 1, rng),
        ),
        _ => Formula::or(
            random_formula(arity, depth - 1, rng),
            random_formula(arity, depth - 1, rng),
        ),
    }
}

#[test]
fn criterion_01_valuation_axioms_and_structure() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let names = space(3);
    let field0 = enumerate_ds(&names, 6).unwrap();
    assert_eq!(field0.members.len(), 27);
    let algebra = ds_algebra(&field0);
    for _ in 0..20 {
        let weights = random_weights(3, &mut rng);
        let (_, mu) = associated_partial_space(&names, &weights).unwrap();
        let v = measure_as_valuation(&mu);
        is_partial_valuation(&algebra, &v).expect("axioms on all 27 elements");
        let properties = structural_properties(&algebra, &v);
        assert_eq!(properties.len(), 5, "all five derived properties hold");
    }
    assert!(start.elapsed().as_secs_f64() < 5.0, "criterion 1 under 5 s");
    println!("criterion 01: pass");
}

#[test]
fn criterion_02_isotonicity_exhaustive() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for k in 1..=3 {
        let (_, algebra, _) = setup(k, &random_weights(k, &mut rng));
        for _ in 0..20 {
            let weights = random_weights(k, &mut rng);
            let (_, mu) = associated_partial_space(&space(k), &weights).unwrap();
            let v = measure_as_valuation(&mu);
            assert_eq!(is_isotone(&algebra, &v), Ok(()), "no ≤-pair violates isotonicity");
        }
    }
    println!("criterion 02: pass");
}

#[test]
fn criterion_03_weak_bayes_all_nabla_pairs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let (_, algebra, _) = setup(3, &random_weights(3, &mut rng));
    let nabla_set = nabla(&algebra);
    assert_eq!(nabla_set.len(), 8);
    for _ in 0..3 {
        let weights = random_weights(3, &mut rng);
        let (_, mu) = associated_partial_space(&space(3), &weights).unwrap();
        let v = measure_as_valuation(&mu);
        for &h in &nabla_set {
            for &e in &nabla_set {
                if v.values[h].first.is_zero() || v.values[e].first.is_zero() {
                    continue;
                }
                let (lhs, rhs) = weak_bayes(&algebra, &v, h, e).expect("preconditions hold");
                assert_eq!(lhs, rhs);
            }
        }
    }
    assert!(start.elapsed().as_secs_f64() < 2.0, "criterion 3 under 2 s");
    println!("criterion 03: pass");
}

#[test]
fn criterion_04_posneg_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for k in 1..=3 {
        let weights = random_weights(k, &mut rng);
        let (_, algebra, v) = setup(k, &weights);
        for e in 0..algebra.len() {
            if v.values[e].first.is_zero() || v.values[e].second.is_zero() {
                continue;
            }
            for h in 0..algebra.len() {
                let (lhs, rhs) =
                    posneg_conditional_identity(&algebra, &v, h, e).expect("preconditions hold");
                assert_eq!(lhs, rhs);
            }
        }
    }
    // frozen worked example at n = 1, weights (1/2, 1/4, 1/4)
    let (field, algebra, v) = setup(3, &[rat(1, 2), rat(1, 4), rat(1, 4)]);
    // sample points a=world '0', b='n', c='1'; h = e = meaning of p0
    let e = field.index_of(PartialSet::new(4, 1)).unwrap();
    let h = e;
    assert_eq!(bias(&v, e), Ok(rat(2, 1)), "θ(e) = 2");
    let e_pos = algebra.join(e, algebra.n);
    let e_neg = algebra.join(algebra.not(e), algebra.n);
    let nabla_e = algebra.join(e, algebra.not(e));
    let at = |cond: usize| {
        conditional_partial_valuation(&algebra, &v, cond).unwrap().values[h].clone()
    };
    assert_eq!(at(e_pos), TValue::new(rat(1, 1), rat(0, 1)));
    assert_eq!(at(nabla_e), TValue::new(rat(1, 3), rat(2, 3)));
    assert_eq!(at(e_neg), TValue::new(rat(0, 1), rat(1, 1)));
    println!("criterion 04: pass");
}

#[test]
fn criterion_05_semantics_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let worlds = enumerate_kleene_worlds(2);
    assert_eq!(worlds.len(), 9);
    for _ in 0..500 {
        let f = random_formula(2, 5, &mut rng);
        let m = meaning_kleene(&f, 2);
        for (s, world) in worlds.iter().enumerate() {
            let value = eval_kleene(&f, world);
            assert_eq!(m.pos >> s & 1 == 1, value == TV_TRUE);
            assert_eq!(m.neg >> s & 1 == 1, value == 0);
        }
    }
    assert!(start.elapsed().as_secs_f64() < 2.0, "criterion 5 under 2 s");
    println!("criterion 05: pass");
}

#[test]
fn criterion_06_consequence_sanity() {
    let p = |t: &str| kleeneprob::formula::parse(t, 1, LogicKind::Kleene).unwrap();
    let c = |t: &str| kleeneprob::formula::parse(t, 1, LogicKind::Classical).unwrap();
    assert!(consequence(&[p("p0&~p0")], &p("n"), 1, LogicKind::Kleene).unwrap());
    assert!(consequence(&[p("n")], &p("p0|~p0"), 1, LogicKind::Kleene).unwrap());
    assert!(!consequence(&[p("1")], &p("p0|~p0"), 1, LogicKind::Kleene).unwrap());
    assert!(consequence(&[c("1")], &c("p0|~p0"), 1, LogicKind::Classical).unwrap());
    println!("criterion 06: pass");
}

#[test]
fn criterion_07_boolean_additivity_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for k in 1..=3u32 {
        let lattice = FiniteLattice::powerset(k);
        for case in 0..100 {
            let atom_weights = random_weights(k as usize, &mut rng);
            let mut values: Vec<Rational> =
                (0..lattice.len()).map(|mask| subset_mass(&atom_weights, mask as u32)).collect();
            if case >= 50 {
                // inject a defect; any perturbed value breaks both forms
                let i = if lattice.len() > 2 {
                    rng.gen_range(1..lattice.len() - 1)
                } else {
                    rng.gen_range(0..lattice.len())
                };
                values[i] = &values[i] + rat(1, 7);
            }
            let v = Valuation { values };
            let (eq_star, additive) =
                check_boolean_valuation_additivity(&lattice, &v).unwrap();
            assert_eq!(eq_star, additive, "the two characterizations agree");
            assert_eq!(eq_star, case < 50);
        }
    }
    println!("criterion 07: pass");
}

#[test]
fn criterion_08_decomposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for k in 1..=3 {
        let (_, algebra, _) = setup(k, &random_weights(k, &mut rng));
        let rounds = if k == 3 { 5 } else { 20 };
        for _ in 0..rounds {
            let weights = random_weights(k, &mut rng);
            let (_, mu) = associated_partial_space(&space(k), &weights).unwrap();
            let v = measure_as_valuation(&mu);
            // decompose asserts v̄(b) = v̄_v(φ(b)) on every element
            let (_, phi, induced) = decompose(&algebra, &v);
            for b in 0..algebra.len() {
                assert_eq!(v.values[b], induced.values[phi.apply(b)]);
            }
        }
    }
    println!("criterion 08: pass");
}

#[test]
fn criterion_09_pi_construction_isomorphisms() {
    let pi_chain = pi_construction(&FiniteLattice::chain2());
    assert!(find_dmf_isomorphism(&pi_chain.algebra, &DmfAlgebra::kleene()).is_some());
    let pi_square = pi_construction(&FiniteLattice::powerset(2));
    let two_points = enumerate_ds(&space(2), 6).unwrap();
    let d2 = ds_algebra(&two_points);
    assert!(find_dmf_isomorphism(&pi_square.algebra, &d2).is_some());
    println!("criterion 09: pass");
}

#[test]
fn criterion_10_separation_and_quotients() {
    let start = Instant::now();
    let field = enumerate_ds(&space(2), 6).unwrap();
    let algebra = ds_algebra(&field);
    assert_eq!(algebra.len(), 9);
    for a in 0..algebra.len() {
        for b in 0..algebra.len() {
            if algebra.leq(a, b) {
                continue;
            }
            let (g, h) = separation_pair(&algebra, a, b).expect("separation exists");
            assert!((!g.contains(&a) && g.contains(&b)) || (h.contains(&a) && !h.contains(&b)));
            assert!(g.iter().all(|x| !h.contains(x)), "G ∩ H = ∅");
        }
    }
    for ideal in enumerate_prime_ideals(&algebra).unwrap() {
        if ideal.kind != IdealKind::Ideal || !ideal.avoids_n {
            continue;
        }
        let quotient = phi_i(&algebra, &ideal.carrier).expect("epimorphism onto K");
        assert!(quotient.is_surjective());
    }
    assert!(start.elapsed().as_secs_f64() < 1.0, "criterion 10 under 1 s");
    println!("criterion 10: pass");
}

#[test]
fn criterion_11_classical_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);
    for n in 1..=2usize {
        for _ in 0..10 {
            let w = WorldWeights {
                arity: n,
                kind: LogicKind::Classical,
                weights: random_weights(1 << n, &mut rng),
            };
            let cert = classical_sentences_to_space(&w).unwrap();
            for _ in 0..200 {
                let mut f = random_formula(n, 4, &mut rng);
                while f.uses_n() {
                    f = random_formula(n, 4, &mut rng);
                }
                let mask = kleeneprob::logic::meaning_classical(&f, n).unwrap();
                assert_eq!(
                    classical_pi(&w, &f).unwrap(),
                    cert.event_probability[mask as usize],
                    "π(α) = p(M(α))"
                );
            }
        }
        // reverse direction certifies p(X) = π(α) for every event X
        let weights = random_weights(3, &mut rng);
        let cert = classical_space_to_sentences(&weights);
        assert_eq!(cert.equalities.len(), 1 << 3);
        for (event, p, pi) in &cert.equalities {
            assert_eq!(p, pi);
            assert_eq!(cert.eta(&cert.witnesses[*event as usize]).unwrap(), *event);
        }
    }
    println!("criterion 11: pass");
}

#[test]
fn criterion_12_partial_translations() {
    // sentences → space at n = 1, exact on the full generated subalgebra
    let w = WorldWeights {
        arity: 1,
        kind: LogicKind::Kleene,
        weights: vec![rat(1, 2), rat(1, 4), rat(1, 4)],
    };
    let pi = |f: &Formula| partial_pi(&w, f).unwrap();
    let cert = partial_sentences_to_space(&pi, 1).unwrap();
    for (ps, witness) in &cert.witnesses {
        assert_eq!(cert.measure[ps], pi(witness), "μ(X,Y) = π(witness)");
    }
    // space → sentences on D({a,b}) with the uniform measure
    let names = space(2);
    let (field, mu) = associated_partial_space(&names, &[rat(1, 2), rat(1, 2)]).unwrap();
    let cert = partial_space_to_sentences(&field, &mu).unwrap();
    assert_eq!(cert.generator_count, 1);
    assert_eq!(cert.equalities.len(), 9);
    for (_, mu_val, pi_val) in &cert.equalities {
        assert_eq!(mu_val, pi_val);
    }
    println!("criterion 12: pass");
}

#[test]
fn criterion_13_freeness_desk_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let field = enumerate_ds(&space(2), 6).unwrap();
    let algebra = ds_algebra(&field);
    let mut checked = 0;
    while checked < 500 {
        let f = random_formula(2, 4, &mut rng);
        // build an equivalent partner by meaning-preserving reshaping
        let g = match rng.gen_range(0..5) {
            0 => Formula::not(Formula::not(f.clone())),
            1 => Formula::and(f.clone(), f.clone()),
            2 => Formula::or(f.clone(), f.clone()),
            3 => Formula::and(f.clone(), Formula::Const1),
            _ => Formula::not(Formula::and(
                Formula::not(f.clone()),
                Formula::not(f.clone()),
            )),
        };
        assert_eq!(meaning_kleene(&f, 2), meaning_kleene(&g, 2), "the pair is a ∼-pair");
        let assignment = [rng.gen_range(0..algebra.len()), rng.gen_range(0..algebra.len())];
        assert_eq!(
            free_extension(&algebra, &assignment, &f).unwrap(),
            free_extension(&algebra, &assignment, &g).unwrap(),
            "free extension is constant on ∼-classes"
        );
        checked += 1;
    }
    println!("criterion 13: pass");
}

#[test]
fn criterion_14_cli_golden_examples() {
    let bin = env!("CARGO_BIN_EXE_kleeneprob");
    let weights = format!("{}/tests/fixtures/weights_kleene_1.json", env!("CARGO_MANIFEST_DIR"));
    let cases: &[(&[&str], &str, i32)] = &[
        (&["eval", "--formula", "p0&~p0", "--world", "n"], "n\n", 0),
        (&["eval", "--formula", "1", "--world", "0"], "1\n", 0),
        (&["eval", "--formula", "p2", "--world", "01"], "", 2),
        (&["consequence", "--premises", "p0&~p0", "--conclusion", "n"], "holds\n", 0),
        (
            &["consequence", "--premises", "", "--conclusion", "p0|~p0"],
            "does not hold (counter-world: n)\n",
            1,
        ),
        (
            &["consequence", "--premises", "", "--conclusion", "p0|~p0", "--logic", "classical"],
            "holds\n",
            0,
        ),
        (&["prob", "--weights", &weights, "--formula", "p0"], "(1/4, 1/2)\n", 0),
        (&["prob", "--weights", &weights, "--formula", "n"], "(0, 0)\n", 0),
        (
            &["prob", "--weights", &weights, "--formula", "p0", "--given", "p0|~p0"],
            "(1/3, 2/3)\n",
            0,
        ),
        (
            &["bayes", "--weights", &weights, "--hypothesis", "1", "--evidence", "p0|~p0"],
            "lhs = (1, 0)\nrhs = (1, 0)\nequal\n",
            0,
        ),
        (
            &["bayes", "--weights", &weights, "--hypothesis", "p0", "--evidence", "p0",
                "--posneg"],
            "lhs = (1, 0)\nrhs = (1, 0)\nequal\n",
            0,
        ),
    ];
    for (args, expected, code) in cases {
        let out = Command::new(bin).args(*args).output().expect("binary runs");
        assert_eq!(String::from_utf8_lossy(&out.stdout), *expected, "stdout for {args:?}");
        assert_eq!(out.status.code(), Some(*code), "exit code for {args:?}");
    }
    println!("criterion 14: pass");
}

#[test]
fn dnf_sanity() {
    // the canonical-formula helper is total and exact at n = 0
    assert_eq!(dnf_formula(0, 0), Formula::Const0);
    assert_eq!(dnf_formula(1, 0), Formula::Const1);
    let one = Rational::one();
    let _ = one;
}
