//! Command-line front end: evaluation, consequence, probability,
//! conditioning, Bayes identities, translations, and axiom audits.
//!
//! Exit codes: 0 = success / property holds; 1 = property fails;
//! 2 = usage or parse error; 3 = precondition violation.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use kleeneprob::dmf::{ds_algebra, validate_dmf, DmfAlgebra, DmfError, DmfSpec};
use kleeneprob::formula::{parse, Formula, LogicKind};
use kleeneprob::lattice::{is_valuation, validate_lattice, LatticeError, LatticeSpec, Valuation};
use kleeneprob::logic::{
    consequence, enumerate_classical_worlds, enumerate_kleene_worlds, eval_classical, eval_kleene,
    meaning_kleene, parse_world, world_to_string, MEANING_ARITY_CAP,
};
use kleeneprob::partial_set::{
    associated_partial_space, format_tvalue, generated_subfield, is_partial_measure,
    partial_set_from_spec, subset_mass, PartialField, PartialMeasure, PartialSet, PartialSetSpec,
    TValue,
};
use kleeneprob::partial_valuation::{
    conditional_partial_valuation, measure_as_valuation, posneg_conditional_identity, weak_bayes,
    ConditionError, PartialValuation,
};
use kleeneprob::prob::{classical_pi, conditional_pi, partial_pi, ProbError, WorldWeights};
use kleeneprob::rational::{format_rational, parse_rational, Rational};
use kleeneprob::translate::{
    classical_sentences_to_space, classical_space_to_sentences, partial_sentences_to_space,
    partial_space_to_sentences, TranslateError,
};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(name = "kleeneprob", about = "Exact partial probability over Kleene logic")]
struct Cli {
    /// Emit a single machine-readable JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LogicArg {
    Kleene,
    Classical,
}

impl From<LogicArg> for LogicKind {
    fn from(l: LogicArg) -> LogicKind {
        match l {
            LogicArg::Kleene => LogicKind::Kleene,
            LogicArg::Classical => LogicKind::Classical,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    S2e,
    E2s,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lattice,
    Dmf,
    Valuation,
    Measure,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at a world (arity = world length)
    Eval {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        world: String,
        #[arg(long, value_enum, default_value = "kleene")]
        logic: LogicArg,
    },
    /// Decide Γ ⊨ α by meaning containment
    Consequence {
        /// Comma-separated premise formulas (may be empty)
        #[arg(long, default_value = "")]
        premises: String,
        #[arg(long)]
        conclusion: String,
        /// Arity override (default: highest variable index + 1)
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "kleene")]
        logic: LogicArg,
    },
    /// π(α), optionally conditioned on --given
    Prob {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        given: Option<String>,
    },
    /// Check the weak Bayes identity (or the e⁺/e⁻/∇e identity)
    Bayes {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        hypothesis: String,
        #[arg(long)]
        evidence: String,
        #[arg(long)]
        posneg: bool,
    },
    /// Translate between sentence probabilities and event-space measures
    Translate {
        #[arg(long, value_enum)]
        direction: Direction,
        #[arg(long, value_enum)]
        logic: LogicArg,
        #[arg(long)]
        input: PathBuf,
    },
    /// Run a certification suite over a structure file
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        input: PathBuf,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_USAGE, message: message.into() }
    }
    fn precondition(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_PRECONDITION, message: message.into() }
    }
    fn fail(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_FAIL, message: message.into() }
    }
}

/// Successful command output plus the exit code to report.
struct Output {
    text: String,
    json: serde_json::Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: serde_json::Value) -> Output {
        Output { text, json, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string(&out.json).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(err) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&json!({"error": err.message, "exit": err.code}))
                        .expect("serializable")
                );
            } else {
                eprintln!("error: {}", err.message);
            }
            ExitCode::from(err.code)
        }
    }
}

fn run(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Eval { formula, world, logic } => cmd_eval(formula, world, (*logic).into()),
        Command::Consequence { premises, conclusion, n, logic } => {
            cmd_consequence(premises, conclusion, *n, (*logic).into())
        }
        Command::Prob { weights, formula, given } => cmd_prob(weights, formula, given.as_deref()),
        Command::Bayes { weights, hypothesis, evidence, posneg } => {
            cmd_bayes(weights, hypothesis, evidence, *posneg)
        }
        Command::Translate { direction, logic, input } => {
            cmd_translate(*direction, (*logic).into(), input)
        }
        Command::Check { suite, input } => cmd_check(*suite, input),
    }
}

fn parse_formula(text: &str, arity: usize, kind: LogicKind) -> Result<Formula, CliError> {
    parse(text, arity, kind).map_err(|e| CliError::usage(format!("formula {text:?}: {e}")))
}

fn arity_cap(kind: LogicKind) -> usize {
    match kind {
        LogicKind::Kleene => MEANING_ARITY_CAP,
        LogicKind::Classical => 5,
    }
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn read_weights(path: &PathBuf) -> Result<WorldWeights, CliError> {
    let value = read_json(path)?;
    WorldWeights::from_json(&value).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn cmd_eval(formula: &str, world: &str, kind: LogicKind) -> Result<Output, CliError> {
    let arity = world.chars().count();
    if arity > arity_cap(kind) {
        return Err(CliError::usage(format!("world of length {arity} exceeds the arity cap")));
    }
    let f = parse_formula(formula, arity, kind)?;
    let w = parse_world(world, arity, kind).map_err(|e| CliError::usage(e.to_string()))?;
    let value = match kind {
        LogicKind::Kleene => ["0", "n", "1"][eval_kleene(&f, &w) as usize],
        LogicKind::Classical => {
            let b = eval_classical(&f, &w).map_err(|e| CliError::usage(e.to_string()))?;
            if b {
                "1"
            } else {
                "0"
            }
        }
    };
    Ok(Output::ok(
        value.to_string(),
        json!({"command": "eval", "formula": formula, "world": world, "value": value}),
    ))
}

fn split_premises(text: &str) -> Vec<&str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn cmd_consequence(
    premises: &str,
    conclusion: &str,
    n: Option<usize>,
    kind: LogicKind,
) -> Result<Output, CliError> {
    let texts = split_premises(premises);
    // infer arity before arity-checked parsing: a permissive first parse
    let probe = |t: &str| parse(t, usize::MAX, kind);
    let mut arity = 0usize;
    for t in texts.iter().chain(std::iter::once(&conclusion)) {
        let f = probe(t).map_err(|e| CliError::usage(format!("formula {t:?}: {e}")))?;
        if let Some(v) = f.max_var() {
            arity = arity.max(v + 1);
        }
    }
    let arity = n.unwrap_or(arity);
    if arity > arity_cap(kind) {
        return Err(CliError::usage(format!("arity {arity} exceeds the cap")));
    }
    let gamma: Vec<Formula> = texts
        .iter()
        .map(|t| parse_formula(t, arity, kind))
        .collect::<Result<_, _>>()?;
    let alpha = parse_formula(conclusion, arity, kind)?;
    let holds = consequence(&gamma, &alpha, arity, kind)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let counter = if holds { None } else { Some(counter_world(&gamma, &alpha, arity, kind)) };
    let text = match &counter {
        None => "holds".to_string(),
        Some(w) => format!("does not hold (counter-world: {w})"),
    };
    Ok(Output {
        text,
        json: json!({
            "command": "consequence",
            "premises": texts,
            "conclusion": conclusion,
            "n": arity,
            "holds": holds,
            "counter_world": counter,
        }),
        code: if holds { 0 } else { EXIT_FAIL },
    })
}

/// First world (canonical order) witnessing ⊓M(Γ) ⋢ M(α).
fn counter_world(gamma: &[Formula], alpha: &Formula, arity: usize, kind: LogicKind) -> String {
    match kind {
        LogicKind::Kleene => {
            for world in enumerate_kleene_worlds(arity) {
                let premise = gamma.iter().map(|g| eval_kleene(g, &world)).min().unwrap_or(2);
                if premise > eval_kleene(alpha, &world) {
                    return world_to_string(&world);
                }
            }
            unreachable!("called only when the consequence fails")
        }
        LogicKind::Classical => {
            for world in enumerate_classical_worlds(arity) {
                let premise = gamma
                    .iter()
                    .all(|g| eval_classical(g, &world).expect("parsed classically"));
                let target = eval_classical(alpha, &world).expect("parsed classically");
                if premise && !target {
                    return world_to_string(&world);
                }
            }
            unreachable!("called only when the consequence fails")
        }
    }
}

fn condition_message(e: &ConditionError) -> String {
    match e {
        ConditionError::NotInNabla => "precondition failed: condition is not in ∇".into(),
        ConditionError::NotIsotone(x, y) => {
            format!("precondition failed: valuation is not isotone (witness {x} ≤ {y})")
        }
        ConditionError::ZeroPositive => {
            "precondition failed: condition has zero positive component".into()
        }
        ConditionError::ZeroNegative => {
            "precondition failed: evidence has zero negative component".into()
        }
    }
}

/// The field, algebra, and measure-valuation of the subalgebra of D(Kⁿ)
/// generated by the given meanings, with exact masses from the weights.
fn conditioning_context(
    w: &WorldWeights,
    generators: &[PartialSet],
) -> (PartialField, DmfAlgebra, PartialValuation) {
    let bits = w.world_count() as u32;
    let (members, _) = generated_subfield(bits, generators);
    let field = PartialField { space: w.world_names(), members };
    let values: Vec<TValue> = field
        .members
        .iter()
        .map(|ps| TValue::new(subset_mass(&w.weights, ps.pos), subset_mass(&w.weights, ps.neg)))
        .collect();
    let algebra = ds_algebra(&field);
    let valuation = measure_as_valuation(&PartialMeasure { values });
    (field, algebra, valuation)
}

fn cmd_prob(weights: &PathBuf, formula: &str, given: Option<&str>) -> Result<Output, CliError> {
    let w = read_weights(weights)?;
    let f = parse_formula(formula, w.arity, w.kind)?;
    match w.kind {
        LogicKind::Classical => {
            let value = match given {
                None => classical_pi(&w, &f).map_err(prob_error)?,
                Some(g) => {
                    let delta = parse_formula(g, w.arity, w.kind)?;
                    conditional_pi(&w, &f, &delta).map_err(prob_error)?
                }
            };
            let text = format_rational(&value);
            Ok(Output::ok(
                text.clone(),
                json!({"command": "prob", "formula": formula, "given": given, "value": text}),
            ))
        }
        LogicKind::Kleene => {
            let value = match given {
                None => partial_pi(&w, &f).map_err(prob_error)?,
                Some(g) => {
                    let delta = parse_formula(g, w.arity, w.kind)?;
                    let mf = meaning_kleene(&f, w.arity);
                    let mg = meaning_kleene(&delta, w.arity);
                    let (field, algebra, v) = conditioning_context(&w, &[mf, mg]);
                    let h = field.index_of(mg).expect("generator is a member");
                    let cond = conditional_partial_valuation(&algebra, &v, h)
                        .map_err(|e| CliError::precondition(condition_message(&e)))?;
                    cond.values[field.index_of(mf).expect("generator is a member")].clone()
                }
            };
            let text = format_tvalue(&value);
            Ok(Output::ok(
                text.clone(),
                json!({"command": "prob", "formula": formula, "given": given, "value": text}),
            ))
        }
    }
}

fn prob_error(e: ProbError) -> CliError {
    match e {
        ProbError::ZeroCondition => CliError::precondition(format!("precondition failed: {e}")),
        other => CliError::usage(other.to_string()),
    }
}

fn cmd_bayes(
    weights: &PathBuf,
    hypothesis: &str,
    evidence: &str,
    posneg: bool,
) -> Result<Output, CliError> {
    let w = read_weights(weights)?;
    if w.kind != LogicKind::Kleene {
        return Err(CliError::usage("bayes requires a kleene weight distribution"));
    }
    let h_f = parse_formula(hypothesis, w.arity, w.kind)?;
    let e_f = parse_formula(evidence, w.arity, w.kind)?;
    let mh = meaning_kleene(&h_f, w.arity);
    let me = meaning_kleene(&e_f, w.arity);
    let (field, algebra, v) = conditioning_context(&w, &[mh, me]);
    let h = field.index_of(mh).expect("generator is a member");
    let e = field.index_of(me).expect("generator is a member");
    let (lhs, rhs) = if posneg {
        posneg_conditional_identity(&algebra, &v, h, e)
    } else {
        weak_bayes(&algebra, &v, h, e)
    }
    .map_err(|err| CliError::precondition(condition_message(&err)))?;
    let equal = lhs == rhs;
    let text = format!(
        "lhs = {}\nrhs = {}\n{}",
        format_tvalue(&lhs),
        format_tvalue(&rhs),
        if equal { "equal" } else { "NOT equal" }
    );
    Ok(Output {
        text,
        json: json!({
            "command": "bayes",
            "hypothesis": hypothesis,
            "evidence": evidence,
            "posneg": posneg,
            "lhs": format_tvalue(&lhs),
            "rhs": format_tvalue(&rhs),
            "equal": equal,
        }),
        code: if equal { 0 } else { EXIT_FAIL },
    })
}

fn translate_error(e: TranslateError) -> CliError {
    match e {
        TranslateError::NotIsotone(_) | TranslateError::NotCompatible(_) => {
            CliError::precondition(format!("precondition failed: {e}"))
        }
        other => CliError::usage(other.to_string()),
    }
}

fn cmd_translate(
    direction: Direction,
    kind: LogicKind,
    input: &PathBuf,
) -> Result<Output, CliError> {
    let value = read_json(input)?;
    let cert = match (kind, direction) {
        (LogicKind::Classical, Direction::S2e) => {
            let w = WorldWeights::from_json(&value)
                .map_err(|e| CliError::usage(format!("{}: {e}", input.display())))?;
            classical_sentences_to_space(&w).map_err(translate_error)?.to_json()
        }
        (LogicKind::Classical, Direction::E2s) => {
            let weights = rational_list(&value, "weights")?;
            classical_space_to_sentences(&weights).to_json()
        }
        (LogicKind::Kleene, Direction::S2e) => {
            let (pi, arity): (Box<dyn Fn(&Formula) -> TValue>, usize) =
                if value.get("table").is_some() {
                    let (table, arity) = probability_table(&value)?;
                    (
                        Box::new(move |f: &Formula| {
                            table
                                .get(&meaning_kleene(f, arity))
                                .cloned()
                                .unwrap_or_else(|| panic!("table lacks an entry equivalent to {f}"))
                        }),
                        arity,
                    )
                } else {
                    let w = WorldWeights::from_json(&value)
                        .map_err(|e| CliError::usage(format!("{}: {e}", input.display())))?;
                    if w.kind != LogicKind::Kleene {
                        return Err(CliError::usage("partial translation needs kleene weights"));
                    }
                    let arity = w.arity;
                    (Box::new(move |f: &Formula| partial_pi(&w, f).expect("kleene")), arity)
                };
            partial_sentences_to_space(&pi, arity).map_err(translate_error)?.to_json()
        }
        (LogicKind::Kleene, Direction::E2s) => {
            let (field, mu) = field_and_measure(&value)?;
            is_partial_measure(&field, &mu)
                .map_err(|d| CliError::fail(format!("measure axiom fails: {d:?}")))?;
            partial_space_to_sentences(&field, &mu).map_err(translate_error)?.to_json(&field)
        }
    };
    Ok(Output::ok(
        serde_json::to_string_pretty(&cert).expect("serializable"),
        cert,
    ))
}

fn rational_list(value: &serde_json::Value, key: &str) -> Result<Vec<Rational>, CliError> {
    value
        .get(key)
        .and_then(|v| v.as_array())
        .ok_or_else(|| CliError::usage(format!("expected an array field {key:?}")))?
        .iter()
        .map(|q| {
            q.as_str()
                .ok_or_else(|| CliError::usage("rationals must be strings"))
                .and_then(|s| parse_rational(s).map_err(|e| CliError::usage(e.to_string())))
        })
        .collect()
}

/// {"n": 1, "table": {"p0": ["1/4","1/2"], ...}} — a direct probability
/// assignment on formulas, used to audit candidate functions. Keys with
/// equal meaning must carry equal values; lookups go by meaning so the
/// audited function is total on equivalents of the listed formulas.
fn probability_table(
    value: &serde_json::Value,
) -> Result<(BTreeMap<PartialSet, TValue>, usize), CliError> {
    let arity = value
        .get("n")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| CliError::usage("table input needs an integer field \"n\""))?
        as usize;
    let raw = value
        .get("table")
        .and_then(|v| v.as_object())
        .ok_or_else(|| CliError::usage("expected an object field \"table\""))?;
    let mut table = BTreeMap::new();
    for (key, entry) in raw {
        let pair = entry
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| CliError::usage(format!("table entry {key:?} must be a pair")))?;
        let q = |i: usize| -> Result<Rational, CliError> {
            pair[i]
                .as_str()
                .ok_or_else(|| CliError::usage("rationals must be strings"))
                .and_then(|s| parse_rational(s).map_err(|e| CliError::usage(e.to_string())))
        };
        // canonicalize the key through the parser so lookups by printed
        // form succeed
        let f = parse(key, arity, LogicKind::Kleene)
            .map_err(|e| CliError::usage(format!("table key {key:?}: {e}")))?;
        let meaning = meaning_kleene(&f, arity);
        let tv = TValue::new(q(0)?, q(1)?);
        if let Some(previous) = table.get(&meaning) {
            if *previous != tv {
                return Err(CliError::precondition(format!(
                    "precondition failed: table is not compatible with equivalence at {key:?}"
                )));
            }
        }
        table.insert(meaning, tv);
    }
    Ok((table, arity))
}

/// {"space": ["a","b"], "members": [{"pos": [...], "neg": [...],
///  "mu": ["x","y"]}, ...]}
fn field_and_measure(
    value: &serde_json::Value,
) -> Result<(PartialField, PartialMeasure), CliError> {
    let space: Vec<String> = value
        .get("space")
        .and_then(|v| v.as_array())
        .ok_or_else(|| CliError::usage("expected an array field \"space\""))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(String::from)
                .ok_or_else(|| CliError::usage("space elements must be strings"))
        })
        .collect::<Result<_, _>>()?;
    let raw = value
        .get("members")
        .and_then(|v| v.as_array())
        .ok_or_else(|| CliError::usage("expected an array field \"members\""))?;
    let mut members = Vec::new();
    let mut values = Vec::new();
    for entry in raw {
        let names = |key: &str| -> Result<Vec<String>, CliError> {
            entry
                .get(key)
                .and_then(|v| v.as_array())
                .ok_or_else(|| CliError::usage(format!("member needs an array field {key:?}")))?
                .iter()
                .map(|s| {
                    s.as_str()
                        .map(String::from)
                        .ok_or_else(|| CliError::usage("element names must be strings"))
                })
                .collect()
        };
        let spec = PartialSetSpec { pos: names("pos")?, neg: names("neg")? };
        let ps = partial_set_from_spec(&space, &spec)
            .map_err(|e| CliError::usage(e.to_string()))?;
        let mu = entry
            .get("mu")
            .and_then(|v| v.as_array())
            .filter(|a| a.len() == 2)
            .ok_or_else(|| CliError::usage("member needs a pair field \"mu\""))?;
        let q = |i: usize| -> Result<Rational, CliError> {
            mu[i]
                .as_str()
                .ok_or_else(|| CliError::usage("rationals must be strings"))
                .and_then(|s| parse_rational(s).map_err(|e| CliError::usage(e.to_string())))
        };
        members.push(ps);
        values.push(TValue::new(q(0)?, q(1)?));
    }
    let field = PartialField { space, members };
    field.verify().map_err(|e| CliError::usage(e.to_string()))?;
    Ok((field, PartialMeasure { values }))
}

fn cmd_check(suite: Suite, input: &PathBuf) -> Result<Output, CliError> {
    let value = read_json(input)?;
    let mut rows: Vec<(String, bool, String)> = Vec::new();
    let run_lattice = matches!(suite, Suite::Lattice | Suite::All);
    let run_dmf = matches!(suite, Suite::Dmf | Suite::All);
    let run_valuation = matches!(suite, Suite::Valuation | Suite::All);
    let run_measure = matches!(suite, Suite::Measure | Suite::All);

    if run_lattice || run_dmf || run_valuation {
        let spec: LatticeSpec = serde_json::from_value(value.clone())
            .map_err(|e| CliError::usage(format!("lattice spec: {e}")))?;
        match validate_lattice(&spec) {
            Ok(lattice) => {
                if run_lattice {
                    for axiom in [
                        "commutativity",
                        "associativity",
                        "absorption",
                        "idempotence",
                        "bounds",
                    ] {
                        rows.push((format!("lattice/{axiom}"), true, String::new()));
                    }
                    rows.push((
                        "lattice/distributivity".into(),
                        lattice.distributive,
                        if lattice.distributive { String::new() } else { "not distributive".into() },
                    ));
                }
                if run_dmf {
                    check_dmf_suite(&value, &mut rows)?;
                }
                if run_valuation {
                    check_valuation_suite(&value, &lattice, &mut rows)?;
                }
            }
            Err(err) => {
                rows.push((format!("lattice/{}", lattice_axiom_name(&err)), false, err.to_string()));
            }
        }
    }
    if run_measure {
        check_measure_suite(&value, &mut rows)?;
    }
    if rows.is_empty() {
        return Err(CliError::usage("input supports none of the requested suites"));
    }
    let all_pass = rows.iter().all(|(_, ok, _)| *ok);
    let text = rows
        .iter()
        .map(|(axiom, ok, detail)| {
            if *ok {
                format!("{axiom}: pass")
            } else {
                format!("{axiom}: FAIL ({detail})")
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        text,
        json: json!({
            "command": "check",
            "results": rows.iter().map(|(axiom, ok, detail)| {
                json!({"axiom": axiom, "pass": ok, "detail": detail})
            }).collect::<Vec<_>>(),
            "pass": all_pass,
        }),
        code: if all_pass { 0 } else { EXIT_FAIL },
    })
}

fn lattice_axiom_name(err: &LatticeError) -> &'static str {
    match err {
        LatticeError::Commutativity { .. } => "commutativity",
        LatticeError::Associativity { .. } => "associativity",
        LatticeError::Absorption { .. } => "absorption",
        LatticeError::Idempotence { .. } => "idempotence",
        LatticeError::BottomIdentity { .. } | LatticeError::TopIdentity { .. } => "bounds",
        _ => "shape",
    }
}

fn dmf_axiom_name(err: &DmfError) -> &'static str {
    match err {
        DmfError::DoubleNegation { .. } => "double-negation",
        DmfError::DeMorgan { .. } => "de-morgan",
        DmfError::Normality { .. } => "normality",
        DmfError::FixedPoint { .. } | DmfError::FixedPointNotUnique { .. } => "fixed-point",
        DmfError::BoundSwap { .. } => "bound-swap",
        DmfError::NotDistributive => "distributivity",
        _ => "shape",
    }
}

fn check_dmf_suite(
    value: &serde_json::Value,
    rows: &mut Vec<(String, bool, String)>,
) -> Result<(), CliError> {
    let spec: DmfSpec = serde_json::from_value(value.clone())
        .map_err(|e| CliError::usage(format!("dmf spec: {e}")))?;
    match validate_dmf(&spec.lattice, &spec.neg, spec.fix) {
        Ok(_) => {
            for axiom in
                ["double-negation", "de-morgan", "normality", "fixed-point", "bound-swap"]
            {
                rows.push((format!("dmf/{axiom}"), true, String::new()));
            }
        }
        Err(err) => {
            rows.push((format!("dmf/{}", dmf_axiom_name(&err)), false, err.to_string()));
        }
    }
    Ok(())
}

fn check_valuation_suite(
    value: &serde_json::Value,
    lattice: &kleeneprob::lattice::FiniteLattice,
    rows: &mut Vec<(String, bool, String)>,
) -> Result<(), CliError> {
    let raw = value
        .get("values")
        .ok_or_else(|| CliError::usage("valuation suite needs a \"values\" field"))?;
    let v = Valuation::from_json(lattice, raw).map_err(CliError::usage)?;
    match is_valuation(lattice, &v) {
        Ok(()) => {
            rows.push(("valuation/bounds".into(), true, String::new()));
            rows.push(("valuation/additivity".into(), true, String::new()));
        }
        Err(defect) => rows.push(("valuation/additivity".into(), false, format!("{defect:?}"))),
    }
    Ok(())
}

fn check_measure_suite(
    value: &serde_json::Value,
    rows: &mut Vec<(String, bool, String)>,
) -> Result<(), CliError> {
    // either a weights file (audit the associated measure) or an explicit
    // field + measure file
    let (field, mu) = if value.get("weights").is_some() && value.get("members").is_none() {
        let w = WorldWeights::from_json(value)
            .map_err(|e| CliError::usage(format!("weights: {e}")))?;
        if w.kind != LogicKind::Kleene {
            return Err(CliError::usage("measure suite needs kleene weights"));
        }
        let names = w.world_names();
        associated_partial_space(&names, &w.weights)
            .map_err(|e| CliError::usage(e.to_string()))?
    } else {
        field_and_measure(value)?
    };
    match is_partial_measure(&field, &mu) {
        Ok(()) => {
            for axiom in ["in-T", "bounds", "additivity", "negation", "positivity"] {
                rows.push((format!("measure/{axiom}"), true, String::new()));
            }
        }
        Err(defect) => {
            rows.push((format!("measure/{}", measure_axiom_name(&defect)), false, format!("{defect:?}")));
        }
    }
    Ok(())
}

fn measure_axiom_name(defect: &kleeneprob::partial_set::MeasureDefect) -> &'static str {
    use kleeneprob::partial_set::MeasureDefect;
    match defect {
        MeasureDefect::OutsideT(_) => "in-T",
        MeasureDefect::Bounds => "bounds",
        MeasureDefect::Additivity(_, _) => "additivity",
        MeasureDefect::Negation(_) => "negation",
        MeasureDefect::Positivity(_) => "positivity",
    }
}
