//! NFA text format and DOT export.
//!
//! ```text
//! states q0 q1
//! alphabet a b
//! edge q0 a q1
//! edge q1 - q0
//! initial q0
//! final q1
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::tokens;

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut names: Option<HashMap<String, usize>> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut edges = Vec::new();
    let mut initial = Vec::new();
    let mut finals = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some((&key, rest)) = toks.split_first() else {
            continue;
        };
        let lookup = |names: &Option<HashMap<String, usize>>, s: &str| -> Result<usize> {
            names
                .as_ref()
                .ok_or_else(|| err(line, "`states` must come first"))?
                .get(s)
                .copied()
                .ok_or_else(|| err(line, format!("undeclared state `{s}`")))
        };
        match key {
            "states" => {
                if names.is_some() {
                    return Err(err(line, "duplicate `states`"));
                }
                let mut m = HashMap::new();
                for (idx, s) in rest.iter().enumerate() {
                    if m.insert(s.to_string(), idx).is_some() {
                        return Err(err(line, format!("duplicate state `{s}`")));
                    }
                }
                names = Some(m);
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(err(line, "duplicate `alphabet`"));
                }
                if rest.contains(&"-") {
                    return Err(err(line, "`-` is reserved for ε"));
                }
                alphabet = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "edge" => {
                let [p, l, q] = rest else {
                    return Err(err(line, "expected `edge <state> <letter|-> <state>`"));
                };
                let p = lookup(&names, p)?;
                let q = lookup(&names, q)?;
                let label = if *l == "-" {
                    None
                } else {
                    let al = alphabet
                        .as_ref()
                        .ok_or_else(|| err(line, "`alphabet` must precede edges"))?;
                    if !al.iter().any(|a| a == l) {
                        return Err(err(line, format!("letter `{l}` not in alphabet")));
                    }
                    Some(l.to_string())
                };
                edges.push((p, label, q));
            }
            "initial" | "final" => {
                for s in rest {
                    let q = lookup(&names, s)?;
                    if key == "initial" {
                        initial.push(q);
                    } else {
                        finals.push(q);
                    }
                }
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let names = names.ok_or_else(|| err(0, "missing `states` declaration"))?;
    let mut a = Nfa::new(&alphabet.unwrap_or_default());
    for _ in 0..names.len() {
        a.add_state();
    }
    for (p, l, q) in edges {
        a.add_edge(p, l.as_deref(), q)?;
    }
    for q in initial {
        a.set_initial(q)?;
    }
    for q in finals {
        a.set_final(q)?;
    }
    Ok(a)
}

/// Canonical text; states are named `q0, q1, …`.
pub fn print_nfa(a: &Nfa) -> String {
    let mut out = String::from("states");
    for q in 0..a.state_count() {
        let _ = write!(out, " q{q}");
    }
    out.push_str("\nalphabet");
    for l in a.alphabet() {
        let _ = write!(out, " {l}");
    }
    out.push('\n');
    for (p, l, q) in a.edges() {
        let _ = writeln!(out, "edge q{p} {} q{q}", l.map_or("-", |s| s.as_str()));
    }
    out.push_str("initial");
    for q in a.initial_states() {
        let _ = write!(out, " q{q}");
    }
    out.push_str("\nfinal");
    for q in a.final_states() {
        let _ = write!(out, " q{q}");
    }
    out.push('\n');
    out
}

pub fn nfa_to_dot(a: &Nfa) -> String {
    let mut out = String::from("digraph nfa {\n  rankdir=LR;\n");
    for q in 0..a.state_count() {
        let shape = if a.final_states().contains(&q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(out, "  q{q} [shape={shape}];");
        if a.initial_states().contains(&q) {
            let _ = writeln!(out, "  start{q} [shape=point];\n  start{q} -> q{q};");
        }
    }
    for (p, l, q) in a.edges() {
        let _ = writeln!(out, "  q{p} -> q{q} [label=\"{}\"];", l.map_or("ε", |s| s.as_str()));
    }
    out.push_str("}\n");
    out
}
