//! Python bindings for the penalty-logic engine.
//!
//! Exposes knowledge bases and the main operations as a `penlog_py`
//! extension module. Exact costs cross the boundary as strings (`5`,
//! `17/2`, `inf`) so Python code can keep or convert them without
//! rounding.

use std::collections::HashMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use penlog::inference::Query;
use penlog::kb::{parse_pkb, parse_rational, write_pkb};
use penlog::logic::{parse_formula, Interpretation};
use penlog::solver::{min_cost_interpretations, SearchConfig, WitnessMode};

fn to_py_err(err: penlog::Error) -> PyErr {
    match err {
        penlog::Error::Internal(msg) => PyRuntimeError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A penalty knowledge base: a finite multiset of formulas, each carrying
/// a strictly positive (possibly `inf`) violation penalty.
#[pyclass(frozen)]
struct PenaltyKb {
    inner: penlog::kb::PenaltyKb,
}

impl PenaltyKb {
    fn interpretation(&self, assignment: HashMap<String, bool>) -> PyResult<Interpretation> {
        Interpretation::from_pairs(
            self.inner.vocabulary().clone(),
            assignment.iter().map(|(k, &v)| (k.as_str(), v)),
        )
        .map_err(to_py_err)
    }
}

fn witness_dict(w: &Interpretation) -> HashMap<String, bool> {
    w.vocabulary()
        .atoms()
        .iter()
        .map(|a| (a.name().to_string(), w.value(a).expect("total assignment")))
        .collect()
}

#[pymethods]
impl PenaltyKb {
    /// Parses the `.pkb` text format: one `<penalty> <formula>` per line,
    /// `#` comments, blank lines ignored.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PenaltyKb {
            inner: parse_pkb(text).map_err(to_py_err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "PenaltyKb({} items, {} atoms)",
            self.inner.len(),
            self.inner.vocabulary().len()
        )
    }

    /// The items as `(formula, penalty)` text pairs, in occurrence order.
    fn items(&self) -> Vec<(String, String)> {
        self.inner
            .items()
            .iter()
            .map(|i| (i.formula().to_string(), i.penalty().to_string()))
            .collect()
    }

    /// Atom names, sorted.
    fn atoms(&self) -> Vec<String> {
        self.inner
            .vocabulary()
            .atoms()
            .iter()
            .map(|a| a.name().to_string())
            .collect()
    }

    /// The base in `.pkb` text form.
    fn to_pkb(&self) -> String {
        write_pkb(&self.inner)
    }

    /// Cost of a total assignment `{atom: bool}`: the summed penalties of
    /// the violated items.
    fn interpretation_cost(&self, assignment: HashMap<String, bool>) -> PyResult<String> {
        let w = self.interpretation(assignment)?;
        Ok(self
            .inner
            .interpretation_cost(&w)
            .map_err(to_py_err)?
            .to_string())
    }

    /// Minimum-cost interpretations: `(optimum, witnesses)` where each
    /// witness is an `{atom: bool}` dict. With `all_witnesses=False` only
    /// the lexicographically smallest optimum is returned.
    #[pyo3(signature = (all_witnesses = true))]
    fn solve(&self, all_witnesses: bool) -> PyResult<(String, Vec<HashMap<String, bool>>)> {
        let cfg = SearchConfig {
            witness_mode: if all_witnesses {
                WitnessMode::All
            } else {
                WitnessMode::One
            },
            ..SearchConfig::default()
        };
        let result = min_cost_interpretations(&self.inner, &cfg).map_err(to_py_err)?;
        Ok((
            result.optimum.to_string(),
            result.witnesses.iter().map(witness_dict).collect(),
        ))
    }

    /// Minimum cost of an interpretation satisfying the formula; `inf`
    /// when none is compatible with the inviolable items.
    fn consistency_cost(&self, formula: &str) -> PyResult<String> {
        let f = parse_formula(formula).map_err(to_py_err)?;
        Ok(penlog::solver::consistency_cost(&self.inner, &f)
            .map_err(to_py_err)?
            .to_string())
    }

    /// Nonmonotonic entailment: every minimal-cost model of the premise
    /// satisfies the conclusion.
    fn nm_entails(&self, premise: &str, conclusion: &str) -> PyResult<bool> {
        let query = Query::new(
            parse_formula(premise).map_err(to_py_err)?,
            parse_formula(conclusion).map_err(to_py_err)?,
        );
        penlog::inference::nm_entails(&self.inner, &query).map_err(to_py_err)
    }

    /// The same relation answered through preferred sub-theories; slower,
    /// kept as a cross-check.
    fn nm_entails_by_subtheories(&self, premise: &str, conclusion: &str) -> PyResult<bool> {
        let query = Query::new(
            parse_formula(premise).map_err(to_py_err)?,
            parse_formula(conclusion).map_err(to_py_err)?,
        );
        penlog::inference::nm_entails_by_subtheories(&self.inner, &query).map_err(to_py_err)
    }

    /// Preferred sub-theories as `(cost, item_indices)` pairs; indices
    /// are 1-based occurrence positions.
    #[pyo3(signature = (formula = None))]
    fn preferred_subtheories(&self, formula: Option<&str>) -> PyResult<Vec<(String, Vec<usize>)>> {
        let subs = match formula {
            Some(text) => {
                let f = parse_formula(text).map_err(to_py_err)?;
                penlog::solver::phi_preferred_subtheories(&self.inner, &f).map_err(to_py_err)?
            }
            None => penlog::solver::preferred_subtheories(&self.inner).map_err(to_py_err)?,
        };
        subs.into_iter()
            .map(|sub| {
                let cost = self.inner.subtheory_cost(&sub).map_err(to_py_err)?;
                Ok((cost.to_string(), sub.tags().map(|t| t + 1).collect()))
            })
            .collect()
    }

    /// Merges duplicate formulas, summing their penalties. With
    /// `semantic=True`, logically equivalent formulas also merge.
    #[pyo3(signature = (semantic = false))]
    fn normalize(&self, semantic: bool) -> PyResult<PenaltyKb> {
        let merged = if semantic {
            self.inner.normalize_semantic().map_err(to_py_err)?
        } else {
            self.inner.normalize()
        };
        Ok(PenaltyKb { inner: merged })
    }

    /// A new base with the formula added as an inviolable item.
    fn add_hard(&self, formula: &str) -> PyResult<PenaltyKb> {
        Ok(PenaltyKb {
            inner: self
                .inner
                .add_hard(parse_formula(formula).map_err(to_py_err)?),
        })
    }

    /// Formulas carrying an infinite penalty.
    fn hard_core(&self) -> Vec<String> {
        self.inner
            .hard_core()
            .iter()
            .map(|f| f.to_string())
            .collect()
    }

    /// True iff both bases induce the same cost on every interpretation.
    fn equivalent(&self, other: &PenaltyKb) -> PyResult<bool> {
        self.inner
            .semantically_equivalent(&other.inner)
            .map_err(to_py_err)
    }

    /// True iff this base costs no more than `other` everywhere.
    fn less_expensive(&self, other: &PenaltyKb) -> PyResult<bool> {
        self.inner.less_expensive(&other.inner).map_err(to_py_err)
    }

    /// Largest gap between interpretation costs and the negated
    /// log-contour of the combined belief mass; tiny for every base.
    fn contour_deviation(&self) -> PyResult<f64> {
        penlog::belief::max_contour_deviation(&self.inner).map_err(to_py_err)
    }

    /// Leading order `(exponent, multiplicity)` of the infinitesimal
    /// plausibility of the formula; the exponent equals
    /// `consistency_cost`.
    fn infinitesimal_order(&self, formula: &str) -> PyResult<(String, u64)> {
        let f = parse_formula(formula).map_err(to_py_err)?;
        let order =
            penlog::belief::infinitesimal_plausibility(&self.inner, &f).map_err(to_py_err)?;
        Ok((order.exponent.to_string(), order.multiplicity))
    }

    /// Weighted-CNF export for clausal bases; `scale` multiplies finite
    /// penalties to clear denominators.
    #[pyo3(signature = (scale = None))]
    fn to_wcnf(&self, scale: Option<&str>) -> PyResult<String> {
        let scale = scale
            .map(|s| parse_rational(s).map_err(to_py_err))
            .transpose()?;
        penlog::encoders::export_wcnf(&self.inner, scale.as_ref()).map_err(to_py_err)
    }
}

/// Parses a formula and returns its printed form; raises on bad syntax.
#[pyfunction]
fn check_formula(text: &str) -> PyResult<String> {
    Ok(parse_formula(text).map_err(to_py_err)?.to_string())
}

/// Classical entailment between two formulas.
#[pyfunction]
fn entails(premise: &str, conclusion: &str) -> PyResult<bool> {
    let f = parse_formula(premise).map_err(to_py_err)?;
    let g = parse_formula(conclusion).map_err(to_py_err)?;
    penlog::logic::entails(&f, &g).map_err(to_py_err)
}

/// Maximum clique of a DIMACS `p edge` graph, via the penalty encoding:
/// returns the member vertex names.
#[pyfunction]
fn max_clique(dimacs: &str) -> PyResult<Vec<String>> {
    let graph = penlog::encoders::read_dimacs_graph(dimacs).map_err(to_py_err)?;
    Ok(penlog::encoders::solve_max_clique(&graph)
        .map_err(to_py_err)?
        .vertices)
}

/// The penalty encoding of maximum clique for a DIMACS graph, in `.pkb`
/// text form.
#[pyfunction]
fn encode_max_clique(dimacs: &str) -> PyResult<String> {
    let graph = penlog::encoders::read_dimacs_graph(dimacs).map_err(to_py_err)?;
    Ok(write_pkb(&penlog::encoders::encode_max_clique(&graph)))
}

#[pymodule]
fn penlog_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PenaltyKb>()?;
    m.add_function(wrap_pyfunction!(check_formula, m)?)?;
    m.add_function(wrap_pyfunction!(entails, m)?)?;
    m.add_function(wrap_pyfunction!(max_clique, m)?)?;
    m.add_function(wrap_pyfunction!(encode_max_clique, m)?)?;
    Ok(())
}
