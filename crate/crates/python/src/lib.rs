//! Python bindings: nets, automata, the decomposition and the decision
//! procedures, with budgets passed as keyword arguments.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use vasbound_core::analyses::{self, Boundedness};
use vasbound_core::automata::{self, FactorBound};
use vasbound_core::nets::{self, Word};
use vasbound_core::{klmst, predicates, Budgets, Error};

create_exception!(vasbound, BudgetExceeded, PyException);

fn py_err(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

trait IntoPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for vasbound_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(py_err)
    }
}

fn budgets(max_token: Option<u64>, max_worklist: Option<usize>, max_basis: Option<usize>) -> Budgets {
    let mut b = Budgets::default();
    if let Some(x) = max_token {
        b.max_token = x;
    }
    if let Some(x) = max_worklist {
        b.max_worklist = x;
    }
    if let Some(x) = max_basis {
        b.max_basis = x;
    }
    b
}

/// A labeled Petri net with initial and final markings.
#[pyclass(name = "Net", frozen, from_py_object)]
#[derive(Clone)]
struct PyNet(nets::LabeledPetriNet);

#[pymethods]
impl PyNet {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        nets::parse_net(text).py().map(PyNet)
    }

    /// One of `NET-A`, `NET-B`, `NET-C`, `NET-D`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        nets::fixtures::all()
            .into_iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(_, n)| PyNet(n))
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture `{name}`")))
    }

    fn text(&self) -> String {
        nets::print_net(&self.0)
    }

    fn alphabet(&self) -> Vec<String> {
        self.0.alphabet()
    }

    fn places(&self) -> Vec<String> {
        self.0.net.places().to_vec()
    }

    fn transitions(&self) -> Vec<String> {
        self.0.transition_names()
    }

    /// Words of the language up to `max_len`, shortest first.
    #[pyo3(signature = (max_len, max_token = 64, max_states = 1_000_000))]
    fn enumerate(&self, max_len: usize, max_token: u64, max_states: usize) -> PyResult<Vec<Word>> {
        Ok(nets::enumerate_language(&self.0, max_len, max_token, max_states).py()?.words)
    }

    fn __repr__(&self) -> String {
        format!(
            "Net(places={}, transitions={})",
            self.0.net.place_count(),
            self.0.net.transition_count()
        )
    }
}

/// A nondeterministic finite automaton with ε-edges.
#[pyclass(name = "Nfa", frozen, from_py_object)]
#[derive(Clone)]
struct PyNfa(automata::Nfa);

#[pymethods]
impl PyNfa {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        automata::parse_nfa(text).py().map(PyNfa)
    }

    /// The finite language of the given words.
    #[staticmethod]
    fn from_words(alphabet: Vec<String>, words: Vec<Word>) -> PyResult<Self> {
        automata::Nfa::from_words(&alphabet, &words).py().map(PyNfa)
    }

    fn alphabet(&self) -> Vec<String> {
        self.0.alphabet().to_vec()
    }

    fn accepts(&self, word: Word) -> bool {
        self.0.accepts(&word)
    }

    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    fn equivalent(&self, other: &PyNfa) -> PyResult<bool> {
        let (a, b) = automata::Nfa::align(&self.0, &other.0);
        automata::Nfa::equivalent(&a, &b).py()
    }

    /// Words up to `max_len`, shortest first.
    fn enumerate(&self, max_len: usize) -> Vec<Word> {
        self.0.enumerate(max_len)
    }

    fn text(&self) -> String {
        automata::print_nfa(&self.0)
    }

    fn dot(&self) -> String {
        automata::nfa_to_dot(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Nfa(states={}, alphabet={:?})", self.0.state_count(), self.0.alphabet())
    }
}

/// Perfect MGTS of the decomposition, as text dumps.
#[pyfunction]
#[pyo3(signature = (net, *, max_token = None, max_worklist = None, max_basis = None))]
fn decompose(
    net: &PyNet,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<Vec<String>> {
    let d = klmst::decompose(&net.0, &budgets(max_token, max_worklist, max_basis)).py()?;
    Ok(d.mgts.iter().map(klmst::Mgts::dump).collect())
}

/// Rows of the regular approximation over the net alphabet.
#[pyfunction]
#[pyo3(signature = (net, *, max_token = None, max_worklist = None, max_basis = None))]
fn approximate(
    net: &PyNet,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<Vec<Vec<PyNfa>>> {
    let a = klmst::approximate(&net.0, &budgets(max_token, max_worklist, max_basis)).py()?;
    Ok(a.rows
        .into_iter()
        .map(|row| row.into_iter().map(PyNfa).collect())
        .collect())
}

/// The union of the concatenated approximation rows.
#[pyfunction]
#[pyo3(signature = (net, *, max_token = None, max_worklist = None, max_basis = None))]
fn approximation_nfa(
    net: &PyNet,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<PyNfa> {
    let a = klmst::approximate(&net.0, &budgets(max_token, max_worklist, max_basis)).py()?;
    a.union_nfa().py().map(PyNfa)
}

/// `None` if unbounded, otherwise an expression `w_1*…w_n*` containing the language.
#[pyfunction]
#[pyo3(signature = (net, *, max_token = None, max_worklist = None, max_basis = None))]
fn decide_bounded(
    net: &PyNet,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<Option<String>> {
    let o = analyses::decide_bounded(&net.0, &budgets(max_token, max_worklist, max_basis)).py()?;
    Ok(match o.value {
        Boundedness::Bounded(e) => Some(e.to_string()),
        Boundedness::Unbounded => None,
    })
}

#[pyfunction]
#[pyo3(signature = (net, *, max_token = None, max_worklist = None, max_basis = None))]
fn downward_closure(
    net: &PyNet,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<PyNfa> {
    let o = analyses::downward_closure(&net.0, &budgets(max_token, max_worklist, max_basis)).py()?;
    Ok(PyNfa(o.value))
}

/// `None` if the number of disjoint factors from `k` is unbounded, otherwise a bound.
#[pyfunction]
#[pyo3(signature = (net, k, *, max_token = None, max_worklist = None, max_basis = None))]
fn factor_bound(
    net: &PyNet,
    k: &PyNfa,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<Option<u64>> {
    let b = budgets(max_token, max_worklist, max_basis);
    let o = analyses::decide_factor_unbounded(&net.0, &k.0, &b).py()?;
    Ok(match o.value {
        FactorBound::Unbounded => None,
        FactorBound::Bounded(x) => Some(x),
    })
}

/// Whether every word of `k*` is a factor of the language.
#[pyfunction]
#[pyo3(signature = (net, k, *, max_token = None, max_worklist = None, max_basis = None))]
fn factor_universal(
    net: &PyNet,
    k: &PyNfa,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<bool> {
    let b = budgets(max_token, max_worklist, max_basis);
    Ok(analyses::decide_factor_universal(&net.0, &k.0, &b).py()?.value)
}

/// Evaluates a named predicate (`inf`, `notb`, `sup:a,b`, `word:ab`, or
/// `nof:K` / `fu:K` / `count:K1,K2` with `K` keys of `automata`).
#[pyfunction]
#[pyo3(signature = (name, net, automata = None, *, max_token = None, max_worklist = None, max_basis = None))]
fn predicate(
    name: &str,
    net: &PyNet,
    automata: Option<std::collections::HashMap<String, PyNfa>>,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<bool> {
    let automata = automata.unwrap_or_default();
    let p = predicates::parse_predicate(name, |key| {
        automata
            .get(key)
            .map(|a| a.0.clone())
            .ok_or_else(|| Error::Precondition(format!("no automaton named `{key}`")))
    })
    .py()?;
    predicates::lift(&p, &net.0, &budgets(max_token, max_worklist, max_basis)).py()
}

/// Bound of a counting automaton given in text form; `check` file names
/// are looked up in `automata`. `None` means unbounded.
#[pyfunction]
#[pyo3(signature = (net, automaton, automata, *, max_token = None, max_worklist = None, max_basis = None))]
fn counting_bound(
    net: &PyNet,
    automaton: &str,
    automata: std::collections::HashMap<String, PyNfa>,
    max_token: Option<u64>,
    max_worklist: Option<usize>,
    max_basis: Option<usize>,
) -> PyResult<Option<u64>> {
    let a = analyses::parse_ca(automaton, |key| {
        automata
            .get(key)
            .map(|a| a.0.clone())
            .ok_or_else(|| Error::Precondition(format!("no automaton named `{key}`")))
    })
    .py()?;
    let o = analyses::decide_ca_bounded(&net.0, &a, &budgets(max_token, max_worklist, max_basis)).py()?;
    Ok(match o.value {
        FactorBound::Unbounded => None,
        FactorBound::Bounded(x) => Some(x),
    })
}

/// A word of the language containing `factors` in order, if found.
#[pyfunction]
#[pyo3(signature = (net, factors, max_token = 64, max_states = 1_000_000))]
fn oracle_factors(
    net: &PyNet,
    factors: Vec<Word>,
    max_token: u64,
    max_states: usize,
) -> PyResult<Option<Word>> {
    Ok(match nets::oracle_factors(&net.0, &factors, max_token, max_states).py()? {
        nets::FactorSearch::Witness(w) => Some(w),
        nets::FactorSearch::NotFound { .. } => None,
    })
}

#[pymodule]
fn vasbound(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_class::<PyNet>()?;
    m.add_class::<PyNfa>()?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(approximate, m)?)?;
    m.add_function(wrap_pyfunction!(approximation_nfa, m)?)?;
    m.add_function(wrap_pyfunction!(decide_bounded, m)?)?;
    m.add_function(wrap_pyfunction!(downward_closure, m)?)?;
    m.add_function(wrap_pyfunction!(factor_bound, m)?)?;
    m.add_function(wrap_pyfunction!(factor_universal, m)?)?;
    m.add_function(wrap_pyfunction!(predicate, m)?)?;
    m.add_function(wrap_pyfunction!(counting_bound, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_factors, m)?)?;
    Ok(())
}
