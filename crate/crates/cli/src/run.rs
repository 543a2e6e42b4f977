use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use vasbound_core::analyses::{
    decide_bounded, decide_ca_bounded, decide_factor_universal, decide_factor_unbounded,
    downward_closure, parse_ca, recog_separability_oracle, separability_reduce, Boundedness,
    Separability, Separator, SeparatorVerdict,
};
use vasbound_core::automata::{nfa_to_dot, parse_nfa, print_nfa, FactorBound, Nfa};
use vasbound_core::klmst::{approximate, decompose};
use vasbound_core::nets::{
    enumerate_language, f_count, fixtures, oracle_factors, parse_net, show_word, FactorSearch,
    LabeledPetriNet, Word,
};
use vasbound_core::predicates::{lift_approximation, parse_predicate};
use vasbound_core::{Budgets, Error, Usage};

use crate::args::{Command, OracleCommand};

/// Failures, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input: exit code 1.
    Input(String),
    /// A budget ran out: exit code 2.
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

/// A finished report; `decided` selects exit code 0 or 2.
pub struct Report {
    pub body: Value,
    pub decided: bool,
}

type Outcome = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: Error) -> Failure {
    match Failure::from(e) {
        Failure::Input(m) => Failure::Input(format!("{}: {m}", path.display())),
        other => other,
    }
}

pub fn load_net(arg: &str) -> Result<LabeledPetriNet, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some((_, n)) = fixtures::all()
            .into_iter()
            .find(|(name, _)| name.eq_ignore_ascii_case(arg))
        {
            return Ok(n);
        }
    }
    parse_net(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_nfa(path: &Path) -> Result<Nfa, Failure> {
    parse_nfa(&read(path)?).map_err(|e| in_file(path, e))
}

fn usage_json(u: &Usage) -> Value {
    json!({
        "mgts_processed": u.mgts_processed,
        "refine_calls": u.refine_calls,
        "perfect_mgts": u.perfect_mgts,
    })
}

fn budgets_json(b: &Budgets) -> Value {
    json!({
        "max_token": b.max_token,
        "max_worklist": b.max_worklist,
        "max_basis": b.max_basis,
        "max_states": b.max_states,
        "max_km_nodes": b.max_km_nodes,
    })
}

fn decided(command: &str, verdict: &str, budgets: &Budgets, usage: &Usage, fields: Value) -> Report {
    report(command, verdict, budgets, usage, fields, true)
}

fn report(
    command: &str,
    verdict: &str,
    budgets: &Budgets,
    usage: &Usage,
    fields: Value,
    decided: bool,
) -> Report {
    let mut body = json!({
        "command": command,
        "verdict": verdict,
        "budgets": budgets_json(budgets),
        "budget_used": usage_json(usage),
        "artifacts": [],
    });
    if let (Value::Object(b), Value::Object(f)) = (&mut body, fields) {
        b.extend(f);
    }
    Report { body, decided }
}

fn bound_fields(b: FactorBound) -> (&'static str, Value) {
    match b {
        FactorBound::Unbounded => ("unbounded", json!({})),
        FactorBound::Bounded(x) => ("bounded", json!({ "bound": x })),
    }
}

fn words(w: &[Word]) -> Vec<String> {
    w.iter().map(|x| show_word(x)).collect()
}

/// Letters separated by whitespace if any, one per character otherwise.
fn letters(s: &str) -> Word {
    if s.contains(char::is_whitespace) {
        s.split_whitespace().map(String::from).collect()
    } else {
        vasbound_core::nets::word(s)
    }
}

fn artifacts(paths: &[PathBuf]) -> Value {
    json!({ "artifacts": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>() })
}

pub fn run(command: &Command, b: &Budgets) -> Outcome {
    match command {
        Command::Decompose { net, out } => {
            let n = load_net(net)?;
            let d = decompose(&n, b)?;
            let mut paths = Vec::new();
            if let Some(dir) = out {
                fs::create_dir_all(dir).map_err(|e| Failure::Input(e.to_string()))?;
                for (i, m) in d.mgts.iter().enumerate() {
                    let p = dir.join(format!("mgts{i}.txt"));
                    write(&p, &m.dump())?;
                    paths.push(p);
                }
            }
            let mut fields = artifacts(&paths);
            fields["mgts"] = json!(d.mgts.len());
            fields["components"] = json!(d.mgts.iter().map(|m| m.components.len()).collect::<Vec<_>>());
            Ok(decided("decompose", "decomposed", b, &d.usage, fields))
        }
        Command::Approx { net, out } => {
            let n = load_net(net)?;
            let a = approximate(&n, b)?;
            let mut paths = Vec::new();
            if let Some(dir) = out {
                fs::create_dir_all(dir).map_err(|e| Failure::Input(e.to_string()))?;
                let mut index = String::new();
                for (i, row) in a.rows.iter().enumerate() {
                    let mut names = Vec::new();
                    for (j, r) in row.iter().enumerate() {
                        let name = format!("row{i}_{j}.nfa");
                        let p = dir.join(&name);
                        write(&p, &print_nfa(r))?;
                        paths.push(p);
                        names.push(name);
                    }
                    index.push_str(&names.join(" "));
                    index.push('\n');
                }
                let p = dir.join("index.txt");
                write(&p, &index)?;
                paths.push(p);
            }
            let mut fields = artifacts(&paths);
            fields["rows"] = json!(a.rows.len());
            fields["width"] = json!(a.width);
            Ok(decided("approx", "approximated", b, &a.usage, fields))
        }
        Command::Bounded { net } => {
            let n = load_net(net)?;
            let o = decide_bounded(&n, b)?;
            Ok(match o.value {
                Boundedness::Bounded(e) => decided(
                    "bounded",
                    "bounded",
                    b,
                    &o.usage,
                    json!({ "witness": e.to_string() }),
                ),
                Boundedness::Unbounded => decided("bounded", "unbounded", b, &o.usage, json!({})),
            })
        }
        Command::Dclosure { net, out, dot } => {
            let n = load_net(net)?;
            let o = downward_closure(&n, b)?;
            let text = print_nfa(&o.value);
            let mut paths = Vec::new();
            if let Some(p) = out {
                write(p, &text)?;
                paths.push(p.clone());
            }
            if let Some(p) = dot {
                write(p, &nfa_to_dot(&o.value))?;
                paths.push(p.clone());
            }
            let mut fields = artifacts(&paths);
            fields["nfa"] = json!(text);
            fields["empty"] = json!(o.value.is_empty());
            Ok(decided("dclosure", "computed", b, &o.usage, fields))
        }
        Command::Predicate { name, net } => {
            let p = parse_predicate(name, |f| {
                let path = Path::new(f);
                parse_nfa(&fs::read_to_string(path).map_err(|e| {
                    Error::Precondition(format!("{f}: {e}"))
                })?)
            })?;
            let n = load_net(net)?;
            let a = approximate(&n, b)?;
            let holds = lift_approximation(&p, &a)?;
            Ok(decided(
                "predicate",
                if holds { "holds" } else { "fails" },
                b,
                &a.usage,
                json!({ "predicate": p.name(), "dimension": p.dimension() }),
            ))
        }
        Command::Factors { nfa, net } => {
            let k = load_nfa(nfa)?;
            let n = load_net(net)?;
            let o = decide_factor_unbounded(&n, &k, b)?;
            let (verdict, fields) = bound_fields(o.value);
            Ok(decided("factors", verdict, b, &o.usage, fields))
        }
        Command::Universal { nfa, net } => {
            let k = load_nfa(nfa)?;
            let n = load_net(net)?;
            let o = decide_factor_universal(&n, &k, b)?;
            let verdict = if o.value { "universal" } else { "not-universal" };
            Ok(decided("universal", verdict, b, &o.usage, json!({})))
        }
        Command::Counting { automaton, net } => {
            let dir = automaton.parent().map(Path::to_path_buf).unwrap_or_default();
            let a = parse_ca(&read(automaton)?, |f| {
                let path = dir.join(f);
                parse_nfa(&fs::read_to_string(&path).map_err(|e| {
                    Error::Precondition(format!("{}: {e}", path.display()))
                })?)
            })
            .map_err(|e| in_file(automaton, e))?;
            let n = load_net(net)?;
            let o = decide_ca_bounded(&n, &a, b)?;
            let (verdict, fields) = bound_fields(o.value);
            Ok(decided("counting", verdict, b, &o.usage, fields))
        }
        Command::Separable { net, other } => {
            let k = load_net(net)?;
            let l = load_net(other)?;
            let usage = Usage::default();
            let inst = match separability_reduce(&k, &l, b)? {
                Separability::NotBounded => {
                    return Ok(decided(
                        "separable",
                        "inseparable",
                        b,
                        &usage,
                        json!({ "reason": "the first language is not bounded" }),
                    ))
                }
                Separability::Instance(i) => i,
            };
            let expr = inst.expression.to_string();
            Ok(match recog_separability_oracle(&inst, b) {
                SeparatorVerdict::Separable(s) => {
                    let (kind, points) = match s {
                        Separator::Finite(p) => ("finite", p),
                        Separator::CoFinite(p) => ("cofinite", p),
                    };
                    decided(
                        "separable",
                        "separable",
                        b,
                        &usage,
                        json!({ "expression": expr, "separator": { "kind": kind, "points": points } }),
                    )
                }
                SeparatorVerdict::Inseparable(x) => decided(
                    "separable",
                    "inseparable",
                    b,
                    &usage,
                    json!({ "expression": expr, "common_point": x }),
                ),
                SeparatorVerdict::Unknown(reason) => report(
                    "separable",
                    "unknown",
                    b,
                    &usage,
                    json!({ "expression": expr, "reason": reason }),
                    false,
                ),
            })
        }
        Command::Oracle(o) => run_oracle(o, b),
    }
}

fn run_oracle(o: &OracleCommand, b: &Budgets) -> Outcome {
    let none = Usage::default();
    match o {
        OracleCommand::Enum { net, maxlen } => {
            let n = load_net(net)?;
            let e = enumerate_language(&n, *maxlen, b.max_token, b.max_states)?;
            Ok(decided(
                "oracle enum",
                "enumerated",
                b,
                &none,
                json!({ "words": words(&e.words), "truncated": e.truncated }),
            ))
        }
        OracleCommand::Factors { net, words: ws } => {
            let n = load_net(net)?;
            let tuple: Vec<Word> = ws.iter().map(|w| letters(w)).collect();
            Ok(match oracle_factors(&n, &tuple, b.max_token, b.max_states)? {
                FactorSearch::Witness(w) => decided(
                    "oracle factors",
                    "found",
                    b,
                    &none,
                    json!({ "witness": show_word(&w) }),
                ),
                FactorSearch::NotFound { truncated } => report(
                    "oracle factors",
                    if truncated { "unknown" } else { "not-found" },
                    b,
                    &none,
                    json!({ "truncated": truncated }),
                    !truncated,
                ),
            })
        }
        OracleCommand::Fcount { word, nfa } => {
            let k = load_nfa(nfa)?;
            let count = f_count(&letters(word), &k)?;
            Ok(decided("oracle fcount", "counted", b, &none, json!({ "count": count })))
        }
    }
}
