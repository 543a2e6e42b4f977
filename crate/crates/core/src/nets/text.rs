//! Line-oriented net format.
//!
//! ```text
//! places p1 p2
//! trans t1 pre p1:1 post p2:2 label a
//! trans t2 post p1:1 label -
//! init p1:1
//! final p2:1
//! ```
//!
//! Omitted places count as zero, `label -` is the empty label, `#` starts a
//! comment. Anything else is rejected with the offending line number.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::nets::net::{LabeledPetriNet, Marking, PetriNet, Transition};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Splits a line into tokens, dropping `#` comments.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    let body = line.split('#').next().unwrap_or("");
    body.split_whitespace().collect()
}

fn parse_count(tok: &str, line: usize) -> Result<u64> {
    if tok.starts_with('-') {
        return Err(err(line, format!("negative count `{tok}`")));
    }
    tok.parse::<u64>()
        .map_err(|_| err(line, format!("invalid count `{tok}`")))
}

fn parse_assignment(places: &[String], tok: &str, line: usize, into: &mut [u64]) -> Result<()> {
    let (name, count) = tok
        .split_once(':')
        .ok_or_else(|| err(line, format!("expected place:count, got `{tok}`")))?;
    let idx = places
        .iter()
        .position(|p| p == name)
        .ok_or_else(|| err(line, format!("undeclared place `{name}`")))?;
    let count = parse_count(count, line)?;
    if into[idx] != 0 {
        return Err(err(line, format!("place `{name}` assigned twice")));
    }
    into[idx] = count;
    Ok(())
}

pub fn parse_net(text: &str) -> Result<LabeledPetriNet> {
    let mut places: Option<Vec<String>> = None;
    let mut transitions: Vec<Transition> = Vec::new();
    let mut labels = Vec::new();
    let mut init: Option<Vec<u64>> = None;
    let mut fin: Option<Vec<u64>> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some((&key, rest)) = toks.split_first() else {
            continue;
        };
        match key {
            "places" => {
                if places.is_some() {
                    return Err(err(line, "duplicate `places` declaration"));
                }
                let mut ps: Vec<String> = Vec::new();
                for p in rest {
                    if ps.iter().any(|q| q == p) {
                        return Err(err(line, format!("duplicate place `{p}`")));
                    }
                    if p.contains(':') {
                        return Err(err(line, format!("invalid place name `{p}`")));
                    }
                    ps.push(p.to_string());
                }
                places = Some(ps);
            }
            "trans" => {
                let ps = places
                    .as_ref()
                    .ok_or_else(|| err(line, "`trans` before `places`"))?;
                let (&name, mut rest) = rest
                    .split_first()
                    .ok_or_else(|| err(line, "missing transition name"))?;
                if transitions.iter().any(|t| t.name == name) {
                    return Err(err(line, format!("duplicate transition `{name}`")));
                }
                let mut pre = vec![0; ps.len()];
                let mut post = vec![0; ps.len()];
                let mut label: Option<Option<String>> = None;
                let (mut seen_pre, mut seen_post) = (false, false);
                while let Some((&kw, tail)) = rest.split_first() {
                    match kw {
                        "pre" | "post" => {
                            let seen = if kw == "pre" { &mut seen_pre } else { &mut seen_post };
                            if *seen {
                                return Err(err(line, format!("duplicate `{kw}`")));
                            }
                            *seen = true;
                            let n = tail.iter().take_while(|t| t.contains(':')).count();
                            let target = if kw == "pre" { &mut pre } else { &mut post };
                            for tok in &tail[..n] {
                                parse_assignment(ps, tok, line, target)?;
                            }
                            rest = &tail[n..];
                        }
                        "label" => {
                            if label.is_some() {
                                return Err(err(line, "duplicate `label`"));
                            }
                            let (&l, tail) = tail
                                .split_first()
                                .ok_or_else(|| err(line, "missing label"))?;
                            label = Some(if l == "-" { None } else { Some(l.to_string()) });
                            rest = tail;
                        }
                        other => return Err(err(line, format!("unknown key `{other}`"))),
                    }
                }
                let label = label.ok_or_else(|| err(line, format!("transition `{name}` has no label")))?;
                transitions.push(Transition {
                    name: name.to_string(),
                    pre,
                    post,
                });
                labels.push(label);
            }
            "init" | "final" => {
                let ps = places
                    .as_ref()
                    .ok_or_else(|| err(line, format!("`{key}` before `places`")))?;
                let slot = if key == "init" { &mut init } else { &mut fin };
                if slot.is_some() {
                    return Err(err(line, format!("duplicate `{key}`")));
                }
                let mut m = vec![0; ps.len()];
                for tok in rest {
                    parse_assignment(ps, tok, line, &mut m)?;
                }
                *slot = Some(m);
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }

    let places = places.ok_or_else(|| err(0, "missing `places` declaration"))?;
    let n = places.len();
    let net = PetriNet::new(places, transitions)?;
    LabeledPetriNet::new(
        net,
        labels,
        Marking(init.unwrap_or_else(|| vec![0; n])),
        Marking(fin.unwrap_or_else(|| vec![0; n])),
    )
}

fn write_assignments(out: &mut String, places: &[String], values: &[u64]) {
    for (p, &v) in places.iter().zip(values) {
        if v != 0 {
            let _ = write!(out, " {p}:{v}");
        }
    }
}

/// Canonical text form; `parse_net(&print_net(n)) == n`.
pub fn print_net(n: &LabeledPetriNet) -> String {
    let places = n.net.places();
    let mut out = String::new();
    out.push_str("places");
    for p in places {
        out.push(' ');
        out.push_str(p);
    }
    out.push('\n');
    for (t, label) in n.net.transitions().iter().zip(&n.labels) {
        let _ = write!(out, "trans {}", t.name);
        if t.pre.iter().any(|&v| v != 0) {
            out.push_str(" pre");
            write_assignments(&mut out, places, &t.pre);
        }
        if t.post.iter().any(|&v| v != 0) {
            out.push_str(" post");
            write_assignments(&mut out, places, &t.post);
        }
        let _ = writeln!(out, " label {}", label.as_deref().unwrap_or("-"));
    }
    out.push_str("init");
    write_assignments(&mut out, places, &n.initial.0);
    out.push('\n');
    out.push_str("final");
    write_assignments(&mut out, places, &n.final_marking.0);
    out.push('\n');
    out
}
