//! Batch command front end: loads a system definition, dispatches one
//! subcommand, and prints either aligned human tables or line-delimited
//! JSON records (`--json`). Identical invocations print byte-identical
//! machine output; every numeric field carries the exact encoding next
//! to a 12-digit decimal.
//!
//! Exit codes: 0 when the command decided its question, 1 for
//! none-within-bounds, UNKNOWN, STUCK, or a failed check, 2 for
//! invalid input.
//!
//! The `<system>` argument is a config path, tried literally, then
//! with `.cfg` appended, then under `configs/`. Set notation is the
//! clopen module's `component:offset:words`; a bare component index is
//! accepted in place of the name. `ZERODIM_SEARCH_BUDGET` overrides
//! every enumeration budget.

use crate::algebra::RealAlgebraic;
use crate::clopen::ClopenSet;
use crate::compare::{compare, find_incomparable, Verdict};
use crate::config::{load_config, Bounds};
use crate::group::{
    check_pointed, check_total_order, indicator_membership, order_membership_check,
    sign_procedure, witness_nontotal, Decomposition, GroupElement, IndicatorMembership,
    SignOutcome,
};
use crate::hopf::{measure_obstruction, search_embedding, search_equivalence, HopfMap, MapMode};
use crate::systems::SystemSpace;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "zerodim", version, about = "Exact order computations on substitution subshifts")]
pub struct Cli {
    /// Line-delimited JSON records instead of human tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Embed,
    Equiv,
}

#[derive(Subcommand)]
enum Command {
    /// Exact word frequencies per component at one block length.
    Measures {
        system: String,
        #[arg(long, default_value_t = 1)]
        block_len: usize,
    },
    /// Compare two clopen sets against every ergodic measure.
    Compare {
        system: String,
        set_a: String,
        set_b: String,
    },
    /// First incomparable pair of window sets, if any.
    FindIncomparable {
        system: String,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Enumerate group elements hunting a NEITHER sign class.
    TotalOrder {
        system: String,
        #[arg(long)]
        coeff: Option<i64>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Stepwise sign decision for a sum of indicator classes.
    SignProcedure {
        system: String,
        #[arg(long, num_args = 1.., value_name = "SET")]
        pos: Vec<String>,
        #[arg(long, num_args = 0.., value_name = "SET")]
        neg: Vec<String>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Element with integrals of both strict signs, scaled from a set.
    WitnessNontotal {
        system: String,
        set_a: String,
    },
    /// Search for or verify a finite piecewise-shift map.
    Hopf {
        system: String,
        set_b: String,
        set_a: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        shift: Option<i64>,
        #[arg(long)]
        level: Option<usize>,
        /// Verify this piece instead of searching: `NOTATION=SHIFT`,
        /// repeatable.
        #[arg(long = "piece", value_name = "NOTATION=SHIFT")]
        pieces: Vec<String>,
    },
    /// Order relation vs indicator-class membership on one component.
    OrderMembership {
        system: String,
        set_a: String,
        set_b: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Run the invariant suites against a system.
    Selftest {
        system: String,
    },
}

struct Out {
    json: bool,
}

impl Out {
    fn record(&self, v: Value) {
        if self.json {
            emit(&v.to_string());
        }
    }

    fn human(&self, line: impl AsRef<str>) {
        if !self.json {
            emit(line.as_ref());
        }
    }
}

/// Writes one line to stdout. A closed pipe ends the run quietly
/// instead of panicking, so `zerodim ... | head` works.
fn emit(line: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{}", line).is_err() {
        std::process::exit(0);
    }
}

fn real_json(v: &RealAlgebraic) -> Value {
    json!({
        "decimal": v.to_decimal(12),
        "exact": serde_json::to_value(v.exact_repr()).expect("encodable"),
    })
}

fn reals_json(vs: &[RealAlgebraic]) -> Value {
    Value::Array(vs.iter().map(real_json).collect())
}

fn decimals(vs: &[RealAlgebraic]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_decimal(12)).collect();
    format!("({})", parts.join(", "))
}

fn signs_json(signs: &[i8]) -> Value {
    Value::Array(signs.iter().map(|&s| Value::from(s as i64)).collect())
}

fn element_json(g: &GroupElement) -> Value {
    let mut pieces = Vec::new();
    for (i, comp) in g.space().components().iter().enumerate() {
        let (offset, len, coeffs) = g.piece(i);
        if coeffs.is_empty() {
            continue;
        }
        pieces.push(json!({
            "component": comp.name(),
            "offset": offset,
            "len": len,
            "coeffs": coeffs,
        }));
    }
    json!({"pieces": pieces, "integrals": reals_json(g.integrals())})
}

fn membership_json(m: &IndicatorMembership) -> Value {
    match m {
        IndicatorMembership::Yes(c) => json!({"status": "YES", "witness": c.format()}),
        IndicatorMembership::No => json!({"status": "NO"}),
        IndicatorMembership::Unknown => json!({"status": "UNKNOWN"}),
    }
}

fn membership_human(m: &IndicatorMembership) -> String {
    match m {
        IndicatorMembership::Yes(c) => format!("YES, witness {}", c.format()),
        IndicatorMembership::No => "NO".to_string(),
        IndicatorMembership::Unknown => "UNKNOWN".to_string(),
    }
}

fn resolve_system(arg: &str) -> Result<PathBuf, String> {
    let tries = [
        PathBuf::from(arg),
        PathBuf::from(format!("{}.cfg", arg)),
        PathBuf::from(format!("configs/{}.cfg", arg)),
    ];
    for path in &tries {
        if path.is_file() {
            return Ok(path.clone());
        }
    }
    Err(format!(
        "no system definition for '{}' (tried {}, {}, {})",
        arg,
        tries[0].display(),
        tries[1].display(),
        tries[2].display()
    ))
}

fn load_space(arg: &str) -> Result<(Arc<SystemSpace>, Bounds), String> {
    let path = resolve_system(arg)?;
    let cfg = load_config(&path).map_err(|e| e.to_string())?;
    let space = cfg.build_space().map_err(|e| e.to_string())?;
    Ok((space, cfg.bounds))
}

/// Replaces a bare component index before the first `:` with the
/// declared name, so `0:0:ab` addresses the first component.
fn canonicalize_set_text(space: &Arc<SystemSpace>, raw: &str) -> String {
    let trimmed = raw.trim();
    let (neg, body) = match trimmed.strip_prefix('~') {
        Some(rest) => ("~", rest),
        None => ("", trimmed),
    };
    if body.trim() == "empty" {
        return trimmed.to_string();
    }
    let chunks: Vec<String> = body
        .split('+')
        .map(|chunk| {
            let c = chunk.trim();
            if let Some((head, rest)) = c.split_once(':') {
                let named = space.components().iter().any(|comp| comp.name() == head);
                if !named {
                    if let Ok(idx) = head.parse::<usize>() {
                        if idx < space.components().len() {
                            return format!("{}:{}", space.components()[idx].name(), rest);
                        }
                    }
                }
            }
            c.to_string()
        })
        .collect();
    format!("{}{}", neg, chunks.join(" + "))
}

fn parse_set(space: &Arc<SystemSpace>, raw: &str) -> Result<ClopenSet, String> {
    ClopenSet::parse(space, &canonicalize_set_text(space, raw)).map_err(|e| e.to_string())
}

fn effective_budget(flag: Option<usize>, bounds: &Bounds) -> usize {
    if let Ok(text) = std::env::var("ZERODIM_SEARCH_BUDGET") {
        if let Ok(v) = text.parse() {
            return v;
        }
    }
    flag.unwrap_or(bounds.budget)
}

fn verdict_json(cmd: &str, first: &str, second: &str, v: &Verdict) -> Value {
    json!({
        "cmd": cmd,
        "first": first,
        "second": second,
        "kind": v.kind.code(),
        "signs": signs_json(&v.signs),
        "witness_indices": v.witness_indices.map(|(i, j)| json!([i, j])),
        "left": reals_json(v.left.entries()),
        "right": reals_json(v.right.entries()),
        "difference": reals_json(v.difference.entries()),
    })
}

fn verdict_human(out: &Out, first: &str, second: &str, v: &Verdict) {
    out.human(format!("{} {} {}  [{}]", first, v.kind.symbol(), second, v.kind.code()));
    out.human(format!("  left       {}", decimals(v.left.entries())));
    out.human(format!("  right      {}", decimals(v.right.entries())));
    out.human(format!("  difference {}", decimals(v.difference.entries())));
    let signs: Vec<String> = v.signs.iter().map(|s| format!("{:+}", s)).collect();
    out.human(format!("  signs      ({})", signs.join(", ")));
    if let Some((i, j)) = v.witness_indices {
        out.human(format!("  clash at measures {} and {}", i, j));
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let out = Out { json: cli.json };
    match dispatch(cli.command, &out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            2
        }
    }
}

fn dispatch(command: Command, out: &Out) -> Result<i32, String> {
    match command {
        Command::Measures { system, block_len } => {
            let (space, _) = load_space(&system)?;
            for comp in space.components() {
                let freqs = comp.frequencies(block_len);
                for (word, value) in freqs.iter() {
                    out.record(json!({
                        "cmd": "measures",
                        "component": comp.name(),
                        "block_len": block_len,
                        "word": word,
                        "value": real_json(value),
                    }));
                    out.human(format!(
                        "{:<8} {:<10} {}  = {}",
                        comp.name(),
                        word,
                        value.to_decimal(12),
                        value
                    ));
                }
            }
            Ok(0)
        }
        Command::Compare { system, set_a, set_b } => {
            let (space, _) = load_space(&system)?;
            let a = parse_set(&space, &set_a)?;
            let b = parse_set(&space, &set_b)?;
            let v = compare(&a, &b).map_err(|e| e.to_string())?;
            out.record(verdict_json("compare", &a.format(), &b.format(), &v));
            verdict_human(out, &a.format(), &b.format(), &v);
            Ok(0)
        }
        Command::FindIncomparable { system, max_len } => {
            let (space, bounds) = load_space(&system)?;
            let max_len = max_len.unwrap_or(bounds.window);
            match find_incomparable(&space, max_len) {
                Some(w) => {
                    let mut record =
                        verdict_json("find-incomparable", &w.first.format(), &w.second.format(), &w.verdict);
                    record["found"] = Value::from(true);
                    record["max_len"] = Value::from(max_len);
                    out.record(record);
                    out.human("incomparable pair found:");
                    verdict_human(out, &w.first.format(), &w.second.format(), &w.verdict);
                    Ok(0)
                }
                None => {
                    out.record(json!({
                        "cmd": "find-incomparable",
                        "found": false,
                        "max_len": max_len,
                    }));
                    out.human(format!("none within bounds (max-len {})", max_len));
                    Ok(1)
                }
            }
        }
        Command::TotalOrder { system, coeff, max_len, budget } => {
            let (space, bounds) = load_space(&system)?;
            let coeff = coeff.unwrap_or(bounds.coeff);
            let max_len = max_len.unwrap_or(bounds.window);
            let budget = effective_budget(budget, &bounds);
            let report = check_total_order(&space, coeff, max_len, budget);
            out.record(json!({
                "cmd": "total-order",
                "coeff": coeff,
                "max_len": max_len,
                "enumerated": report.enumerated,
                "exhausted": report.exhausted,
                "witness": report.witness.as_ref().map(element_json),
            }));
            match report.witness {
                Some(g) => {
                    out.human(format!("enumerated {} elements", report.enumerated));
                    out.human(format!("NEITHER witness: {}", g));
                    Ok(0)
                }
                None => {
                    out.human(format!(
                        "enumerated {} elements ({})",
                        report.enumerated,
                        if report.exhausted { "exhausted" } else { "budget capped" }
                    ));
                    out.human("no NEITHER witness within bounds");
                    Ok(1)
                }
            }
        }
        Command::SignProcedure { system, pos, neg, level } => {
            let (space, bounds) = load_space(&system)?;
            let level = level.unwrap_or(bounds.window);
            let positives: Result<Vec<ClopenSet>, String> =
                pos.iter().map(|t| parse_set(&space, t)).collect();
            let negatives: Result<Vec<ClopenSet>, String> =
                neg.iter().map(|t| parse_set(&space, t)).collect();
            let d = Decomposition::new(&space, positives?, negatives?)
                .map_err(|e| e.to_string())?;
            let report = sign_procedure(&d, level);
            for step in &report.steps {
                out.record(json!({
                    "cmd": "sign-procedure",
                    "record": "step",
                    "step": step.step,
                    "prefix_len": step.prefix_len,
                    "witness": step.witness.format(),
                }));
                out.human(format!(
                    "step {}: prefix {} certified, witness {}",
                    step.step,
                    step.prefix_len,
                    step.witness.format()
                ));
            }
            let (label, code, reason) = match &report.outcome {
                SignOutcome::Positive => ("POSITIVE", 0, None),
                SignOutcome::Negative => ("NEGATIVE", 0, None),
                SignOutcome::Stuck { step, reason } => {
                    ("STUCK", 1, Some((*step, reason.clone())))
                }
            };
            out.record(json!({
                "cmd": "sign-procedure",
                "record": "outcome",
                "outcome": label,
                "level": level,
                "stuck_step": reason.as_ref().map(|(s, _)| *s),
                "reason": reason.as_ref().map(|(_, r)| r.clone()),
            }));
            match &reason {
                Some((step, text)) => {
                    out.human(format!("outcome STUCK at step {}: {}", step, text))
                }
                None => out.human(format!("outcome {}", label)),
            }
            Ok(code)
        }
        Command::WitnessNontotal { system, set_a } => {
            let (space, _) = load_space(&system)?;
            let a = parse_set(&space, &set_a)?;
            let g = witness_nontotal(&a).map_err(|e| e.to_string())?;
            out.record(json!({
                "cmd": "witness-nontotal",
                "set": a.format(),
                "element": element_json(&g),
                "sign": g.classify_sign().to_string(),
            }));
            out.human(format!("witness: {}", g));
            out.human(format!("sign class: {}", g.classify_sign()));
            Ok(0)
        }
        Command::Hopf { system, set_b, set_a, mode, shift, level, pieces } => {
            let (space, bounds) = load_space(&system)?;
            let b = parse_set(&space, &set_b)?;
            let a = parse_set(&space, &set_a)?;
            let mode = match mode {
                ModeArg::Embed => MapMode::Embedding,
                ModeArg::Equiv => MapMode::Equivalence,
            };
            if !pieces.is_empty() {
                let mut parsed = Vec::new();
                for piece_arg in &pieces {
                    let (notation, shift_text) = piece_arg
                        .rsplit_once('=')
                        .ok_or_else(|| format!("piece '{}' is not NOTATION=SHIFT", piece_arg))?;
                    let n: i64 = shift_text
                        .trim()
                        .parse()
                        .map_err(|_| format!("piece shift '{}' is not an integer", shift_text))?;
                    parsed.push((parse_set(&space, notation)?, n));
                }
                let map = HopfMap::new(b, a, parsed).map_err(|e| e.to_string())?;
                let report = map.verify(mode);
                out.record(json!({
                    "cmd": "hopf",
                    "mode": mode.to_string(),
                    "action": "verify",
                    "pieces": map.piece_notation().iter()
                        .map(|(s, n)| json!({"set": s, "shift": n}))
                        .collect::<Vec<_>>(),
                    "valid": report.valid,
                    "violation": report.violation.as_ref().map(|v| v.to_string()),
                }));
                match &report.violation {
                    None => out.human(format!("verify {}: valid", mode)),
                    Some(v) => out.human(format!("verify {}: invalid, {}", mode, v)),
                }
                Ok(if report.valid { 0 } else { 1 })
            } else {
                let shift = shift.unwrap_or(bounds.shift);
                let level = level.unwrap_or(bounds.window);
                let found = match mode {
                    MapMode::Embedding => search_embedding(&b, &a, shift, level),
                    MapMode::Equivalence => search_equivalence(&b, &a, shift, level),
                };
                match found {
                    Some(map) => {
                        let report = map.verify(mode);
                        out.record(json!({
                            "cmd": "hopf",
                            "mode": mode.to_string(),
                            "action": "search",
                            "found": true,
                            "shift": shift,
                            "level": level,
                            "pieces": map.piece_notation().iter()
                                .map(|(s, n)| json!({"set": s, "shift": n}))
                                .collect::<Vec<_>>(),
                            "valid": report.valid,
                        }));
                        out.human(format!(
                            "found {} with {} piece(s):",
                            mode,
                            map.pieces().len()
                        ));
                        for (notation, n) in map.piece_notation() {
                            out.human(format!("  {}  shift {}", notation, n));
                        }
                        out.human(format!(
                            "verify: {}",
                            if report.valid { "valid" } else { "INVALID" }
                        ));
                        Ok(if report.valid { 0 } else { 1 })
                    }
                    None => {
                        let obstruction = measure_obstruction(&b, &a, mode);
                        out.record(json!({
                            "cmd": "hopf",
                            "mode": mode.to_string(),
                            "action": "search",
                            "found": false,
                            "shift": shift,
                            "level": level,
                            "obstruction": obstruction,
                        }));
                        match obstruction {
                            Some(i) => out.human(format!(
                                "none: measure obstruction at entry {}",
                                i
                            )),
                            None => out.human(format!(
                                "none within bounds (shift {}, level {})",
                                shift, level
                            )),
                        }
                        Ok(1)
                    }
                }
            }
        }
        Command::OrderMembership { system, set_a, set_b, level } => {
            let (space, bounds) = load_space(&system)?;
            let a = parse_set(&space, &set_a)?;
            let b = parse_set(&space, &set_b)?;
            let level = level.unwrap_or(bounds.window);
            let report =
                order_membership_check(&a, &b, level).map_err(|e| e.to_string())?;
            out.record(json!({
                "cmd": "order-membership",
                "first": a.format(),
                "second": b.format(),
                "level": level,
                "kind": report.verdict.kind.code(),
                "forward": membership_json(&report.forward),
                "reverse": report.reverse.as_ref().map(membership_json),
            }));
            out.human(format!(
                "{} {} {}  [{}]",
                a.format(),
                report.verdict.kind.symbol(),
                b.format(),
                report.verdict.kind.code()
            ));
            out.human(format!(
                "difference in indicator classes: {}",
                membership_human(&report.forward)
            ));
            if let Some(rev) = &report.reverse {
                out.human(format!(
                    "reverse difference: {}",
                    membership_human(rev)
                ));
            }
            let unresolved = matches!(report.forward, IndicatorMembership::Unknown)
                || matches!(report.reverse, Some(IndicatorMembership::Unknown));
            Ok(if unresolved { 1 } else { 0 })
        }
        Command::Selftest { system } => {
            let (space, _) = load_space(&system)?;
            let suites = selftest(&space);
            let mut passed = 0;
            for (name, ok) in &suites {
                out.record(json!({
                    "cmd": "selftest",
                    "suite": name,
                    "pass": ok,
                }));
                out.human(format!("{} {}", if *ok { "PASS" } else { "FAIL" }, name));
                if *ok {
                    passed += 1;
                }
            }
            out.human(format!("selftest: {}/{} suites passed", passed, suites.len()));
            Ok(if passed == suites.len() { 0 } else { 1 })
        }
    }
}

/// The invariant suites behind `selftest`: exact identities that must
/// hold in any valid system.
fn selftest(space: &Arc<SystemSpace>) -> Vec<(&'static str, bool)> {
    let mut suites = Vec::new();

    let full = ClopenSet::full(space);
    let one = crate::algebra::RealAlgebraic::rational(num_rational::BigRational::from_integer(
        num_bigint::BigInt::from(1),
    ));
    let measures_normalized = full
        .measure_vector()
        .entries()
        .iter()
        .all(|e| e.cross_cmp(&one) == std::cmp::Ordering::Equal)
        && space.components().iter().all(|comp| {
            let freqs = comp.frequencies(1);
            let mut acc = RealAlgebraic::zero(&comp.context());
            for v in freqs.values() {
                acc = acc.add(v);
            }
            acc.sub_rational(&num_rational::BigRational::from_integer(
                num_bigint::BigInt::from(1),
            ))
            .sign()
                == 0
        });
    suites.push(("measures-normalized", measures_normalized));

    let letters: Vec<ClopenSet> = space
        .components()
        .iter()
        .flat_map(|comp| {
            comp.language(1)
                .iter()
                .map(|w| ClopenSet::cylinder(space, comp.name(), 0, w).expect("letter"))
                .collect::<Vec<_>>()
        })
        .collect();
    let boolean_laws = letters.iter().all(|a| {
        let c = a.complement();
        a.union(&c).unwrap().is_full()
            && a.intersect(&c).unwrap().is_empty()
            && letters.iter().all(|b| {
                a.union(b).unwrap().complement()
                    == c.intersect(&b.complement()).unwrap()
            })
    });
    suites.push(("boolean-laws", boolean_laws));

    let additive = letters.iter().all(|a| {
        letters.iter().all(|b| {
            let lhs: Vec<RealAlgebraic> = a
                .measure_vector()
                .entries()
                .iter()
                .zip(b.measure_vector().entries())
                .map(|(x, y)| x.add(y))
                .collect();
            let rhs: Vec<RealAlgebraic> = a
                .union(b)
                .unwrap()
                .measure_vector()
                .entries()
                .iter()
                .zip(a.intersect(b).unwrap().measure_vector().entries())
                .map(|(x, y)| x.add(y))
                .collect();
            lhs.iter().zip(&rhs).all(|(x, y)| x.sub(y).sign() == 0)
        })
    });
    suites.push(("measure-additivity", additive));

    let shift_invariant = letters.iter().all(|a| {
        let moved = a.shift_image(3).measure_vector();
        a.measure_vector()
            .entries()
            .iter()
            .zip(moved.entries())
            .all(|(x, y)| x.sub(y).sign() == 0)
    });
    suites.push(("measure-shift-invariance", shift_invariant));

    let antisymmetric = letters.iter().all(|a| {
        letters.iter().all(|b| {
            let fwd = compare(a, b).unwrap();
            let back = compare(b, a).unwrap();
            fwd.signs
                .iter()
                .zip(&back.signs)
                .all(|(x, y)| *x == -*y)
        })
    });
    suites.push(("verdict-antisymmetry", antisymmetric));

    suites.push(("cone-pointedness", check_pointed(space, 100).violations == 0));

    let roundtrip = letters.iter().all(|a| {
        ClopenSet::parse(space, &a.format()).map(|p| p == *a).unwrap_or(false)
    }) && space.components().iter().all(|comp| {
        comp.frequencies(2).values().all(|v| {
            let encoded = serde_json::to_string(&v.exact_repr()).expect("encodable");
            let repr = serde_json::from_str(&encoded).expect("well formed");
            RealAlgebraic::from_exact_repr(&repr)
                .map(|w| w.cross_cmp(v) == std::cmp::Ordering::Equal)
                .unwrap_or(false)
        })
    }) && {
        let g = GroupElement::order_unit(space);
        indicator_membership(&g, 1).witness().map(|c| c.is_full()).unwrap_or(false)
    };
    suites.push(("exact-encoding-roundtrip", roundtrip));

    suites
}
