//! Predicates by name: `inf`, `notb`, `sup:a,b`, `nof:<nfa>`, `fu:<nfa>`,
//! `word:<w>`, `count:<nfa>,<nfa>,…`. NFA arguments are resolved by the caller.

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::nets::word;
use crate::predicates::{
    predicate_counting, predicate_fu, predicate_inf, predicate_nof, predicate_not_bounded,
    predicate_sup, predicate_word, Predicate,
};

fn arguments(arg: Option<&str>, name: &str) -> Result<Vec<String>> {
    let arg = arg.ok_or_else(|| Error::Precondition(format!("predicate `{name}` needs an argument")))?;
    let parts: Vec<String> = arg.split(',').map(|s| s.trim().to_string()).collect();
    if parts.iter().any(String::is_empty) {
        return Err(Error::Precondition(format!("empty argument in `{name}:{arg}`")));
    }
    Ok(parts)
}

/// Word arguments are split into letters by whitespace when they contain
/// any, character by character otherwise.
fn letters(w: &str) -> Vec<String> {
    if w.contains(char::is_whitespace) {
        w.split_whitespace().map(String::from).collect()
    } else {
        word(w)
    }
}

pub fn parse_predicate(text: &str, load_nfa: impl Fn(&str) -> Result<Nfa>) -> Result<Predicate> {
    let (name, arg) = match text.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (text, None),
    };
    let no_arg = |p: Predicate| match arg {
        Some(_) => Err(Error::Precondition(format!("predicate `{name}` takes no argument"))),
        None => Ok(p),
    };
    match name {
        "inf" => no_arg(predicate_inf()),
        "notb" => no_arg(predicate_not_bounded()),
        "sup" => Ok(predicate_sup(&arguments(arg, name)?)),
        "nof" => predicate_nof(load_nfa(arg.ok_or_else(|| {
            Error::Precondition("predicate `nof` needs an NFA".into())
        })?)?),
        "fu" => Ok(predicate_fu(load_nfa(arg.ok_or_else(|| {
            Error::Precondition("predicate `fu` needs an NFA".into())
        })?)?)),
        "word" => Ok(predicate_word(&letters(arg.unwrap_or("")))),
        "count" => {
            let tuple = arguments(arg, name)?
                .iter()
                .map(|f| load_nfa(f))
                .collect::<Result<Vec<_>>>()?;
            predicate_counting(tuple)
        }
        other => Err(Error::Precondition(format!("unknown predicate `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_files(_: &str) -> Result<Nfa> {
        Err(Error::Precondition("no files".into()))
    }

    #[test]
    fn names() {
        assert_eq!(parse_predicate("inf", no_files).unwrap().name(), "inf");
        assert_eq!(parse_predicate("sup:a,b", no_files).unwrap().dimension(), 2);
        assert_eq!(parse_predicate("word:ab", no_files).unwrap().name(), "word:ab");
        assert!(parse_predicate("inf:x", no_files).is_err());
        assert!(parse_predicate("bogus", no_files).is_err());
        assert!(parse_predicate("nof:k.nfa", no_files).is_err());
        let k = |_: &str| Nfa::from_words(&["a"], &[vec!["a".to_string()]]);
        assert_eq!(parse_predicate("count:x,y", k).unwrap().dimension(), 2);
    }
}
