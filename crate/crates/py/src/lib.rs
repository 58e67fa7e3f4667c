//! Python bindings over the core engine: theory parsing, tag computation,
//! the three revision operators, the SAT bridge and the postulate audit.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use defrev_core::agm::{check_postulate, AuditOptions, PostulateId};
use defrev_core::sat::{SatResult, TruthTableResult};
use defrev_core::{
    belief_set, compute_tags, contract, expand, gamma_transform, parse_dimacs, parse_theory,
    revise, Literal, ProofTag, RevisionResult, Strategy, Theory, DEFAULT_BUDGET,
};

fn literal(s: &str) -> PyResult<Literal> {
    let (atom, positive) = match s.strip_prefix('~') {
        Some(rest) => (rest, false),
        None => (s, true),
    };
    Literal::new(atom, positive).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn tag(s: &str) -> PyResult<ProofTag> {
    ProofTag::from_ascii(s).ok_or_else(|| PyValueError::new_err(format!("unknown tag `{}`", s)))
}

/// A parsed defeasible theory.
#[pyclass(name = "Theory", skip_from_py_object)]
#[derive(Clone)]
struct PyTheory {
    inner: Theory,
}

/// Result of a revision operation.
#[pyclass(name = "Revision")]
struct PyRevision {
    #[pyo3(get)]
    status: String,
    #[pyo3(get)]
    instance: Option<String>,
    #[pyo3(get)]
    strategy: Option<String>,
    #[pyo3(get)]
    added: Vec<(String, String)>,
    #[pyo3(get)]
    removed: Vec<(String, String)>,
    theory: Option<Theory>,
}

#[pymethods]
impl PyRevision {
    /// The revised theory on success.
    fn theory(&self) -> Option<PyTheory> {
        self.theory.clone().map(|inner| PyTheory { inner })
    }

    fn __repr__(&self) -> String {
        format!(
            "Revision(status={}, instance={:?}, added={:?}, removed={:?})",
            self.status, self.instance, self.added, self.removed
        )
    }
}

fn wrap_revision(res: RevisionResult) -> PyRevision {
    match res {
        RevisionResult::Success(o) => PyRevision {
            status: "ok".to_string(),
            instance: o.instance.map(|i| i.ascii_name().to_string()),
            strategy: Some(o.strategy.ascii_name().to_string()),
            added: o.added.into_iter().collect(),
            removed: o.removed.into_iter().collect(),
            theory: Some(o.theory),
        },
        RevisionResult::Infeasible { instance, .. } => PyRevision {
            status: "infeasible".to_string(),
            instance: instance.map(|i| i.ascii_name().to_string()),
            strategy: None,
            added: vec![],
            removed: vec![],
            theory: None,
        },
        RevisionResult::ExhaustedBudget { .. } => PyRevision {
            status: "exhausted".to_string(),
            instance: None,
            strategy: None,
            added: vec![],
            removed: vec![],
            theory: None,
        },
    }
}

fn strategy(name: &str) -> PyResult<Strategy> {
    match name {
        "single_winner" => Ok(Strategy::SingleWinner),
        "team_defeater" => Ok(Strategy::TeamDefeater),
        "targeted" => Ok(Strategy::Targeted),
        "search" => Ok(Strategy::Search),
        other => Err(PyValueError::new_err(format!(
            "unknown strategy `{}`",
            other
        ))),
    }
}

#[pymethods]
impl PyTheory {
    /// Canonical text form.
    fn serialize(&self) -> String {
        self.inner.serialize()
    }

    /// `lit<TAB>+tags<TAB>-tags` per universe literal.
    fn extension_report(&self) -> String {
        let tags = compute_tags(&self.inner);
        let universe: Vec<Literal> = self.inner.universe().into_iter().collect();
        tags.report(universe.iter())
    }

    /// Whether a signed tag (e.g. `+partial`, `-chain`) is proved for a
    /// literal (e.g. `p`, `~p`).
    fn proves(&self, tag_name: &str, lit: &str) -> PyResult<bool> {
        let t = tag(tag_name)?;
        let l = literal(lit)?;
        Ok(compute_tags(&self.inner).holds(t, &l))
    }

    /// Believed and disbelieved literals (the partial projection over
    /// appearing literals).
    fn belief_set(&self) -> (Vec<String>, Vec<String>) {
        let bs = belief_set(&self.inner);
        (
            bs.believed.iter().map(|l| l.to_string()).collect(),
            bs.disbelieved.iter().map(|l| l.to_string()).collect(),
        )
    }

    fn is_consistent(&self) -> bool {
        defrev_core::is_consistent(&self.inner)
    }

    fn is_decisive(&self) -> bool {
        defrev_core::is_decisive(&self.inner)
    }

    fn conflicting_pairs(&self) -> Vec<(String, String)> {
        defrev_core::conflicting_pairs(&self.inner)
            .into_iter()
            .collect()
    }

    /// From +partial to -partial.
    #[pyo3(signature = (lit, strategy_name="targeted", budget=None))]
    fn contract(
        &self,
        lit: &str,
        strategy_name: &str,
        budget: Option<u64>,
    ) -> PyResult<PyRevision> {
        let l = literal(lit)?;
        let s = strategy(strategy_name)?;
        contract(&self.inner, &l, s, budget.unwrap_or(DEFAULT_BUDGET))
            .map(wrap_revision)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Make the literal defeasibly provable starting from +partial of its
    /// complement.
    #[pyo3(signature = (lit, strategy_name="single_winner", budget=None))]
    fn revise(&self, lit: &str, strategy_name: &str, budget: Option<u64>) -> PyResult<PyRevision> {
        let l = literal(lit)?;
        let s = strategy(strategy_name)?;
        revise(
            &self.inner,
            &l.complement(),
            s,
            budget.unwrap_or(DEFAULT_BUDGET),
        )
        .map(wrap_revision)
        .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// From -partial (with the complement also refuted) to +partial.
    #[pyo3(signature = (lit, strategy_name="targeted", budget=None))]
    fn expand(&self, lit: &str, strategy_name: &str, budget: Option<u64>) -> PyResult<PyRevision> {
        let l = literal(lit)?;
        let s = strategy(strategy_name)?;
        expand(&self.inner, &l, s, budget.unwrap_or(DEFAULT_BUDGET))
            .map(wrap_revision)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Postulate verdict (`holds`, `violated`, `n/a`, `infeasible`).
    #[pyo3(signature = (postulate, lit, lit2=None, all_minimal=false, budget=None))]
    fn check_postulate(
        &self,
        postulate: &str,
        lit: &str,
        lit2: Option<&str>,
        all_minimal: bool,
        budget: Option<u64>,
    ) -> PyResult<String> {
        let id = PostulateId::parse(postulate)
            .ok_or_else(|| PyValueError::new_err(format!("unknown postulate `{}`", postulate)))?;
        let p = literal(lit)?;
        let q = lit2.map(literal).transpose()?;
        let opts = AuditOptions {
            all_minimal,
            budget: budget.unwrap_or(DEFAULT_BUDGET),
        };
        check_postulate(&id, &self.inner, &p, q.as_ref(), &opts)
            .map(|v| v.status.ascii_name().to_string())
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Theory({} facts, {} rules, {} priorities)",
            self.inner.facts().len(),
            self.inner.rules().len(),
            self.inner.superiority().len()
        )
    }
}

/// Parse theory text into a [`Theory`].
#[pyfunction]
fn parse(text: &str) -> PyResult<PyTheory> {
    parse_theory(text)
        .map(|inner| PyTheory { inner })
        .map_err(|e| PyValueError::new_err(e.to_string()))
}

/// Map DIMACS 3-CNF text to its defeasible theory.
#[pyfunction]
fn gamma(dimacs: &str) -> PyResult<PyTheory> {
    let f = parse_dimacs(dimacs).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PyTheory {
        inner: gamma_transform(&f),
    })
}

/// Satisfiability via refutability: `(status, assignment)` where status is
/// `sat`, `unsat` or `exhausted` and the assignment lists signed variable
/// indexes.
#[pyfunction]
#[pyo3(signature = (dimacs, budget=None))]
fn sat(dimacs: &str, budget: Option<u64>) -> PyResult<(String, Option<Vec<i32>>)> {
    let f = parse_dimacs(dimacs).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(
        match defrev_core::sat_via_refutability(&f, budget.unwrap_or(DEFAULT_BUDGET)) {
            SatResult::Sat(a) => ("sat".to_string(), Some(signed(&a))),
            SatResult::Unsat => ("unsat".to_string(), None),
            SatResult::ExhaustedBudget { .. } => ("exhausted".to_string(), None),
        },
    )
}

/// Exhaustive truth-table oracle over the same input.
#[pyfunction]
fn truth_table(dimacs: &str) -> PyResult<(String, Option<Vec<i32>>)> {
    let f = parse_dimacs(dimacs).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let res = defrev_core::truth_table_sat(&f).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(match res {
        TruthTableResult::Sat(a) => ("sat".to_string(), Some(signed(&a))),
        TruthTableResult::Unsat => ("unsat".to_string(), None),
    })
}

fn signed(assignment: &[bool]) -> Vec<i32> {
    assignment
        .iter()
        .enumerate()
        .map(|(i, &v)| if v { i as i32 + 1 } else { -(i as i32 + 1) })
        .collect()
}

#[pymodule]
fn defrev_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTheory>()?;
    m.add_class::<PyRevision>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(sat, m)?)?;
    m.add_function(wrap_pyfunction!(truth_table, m)?)?;
    Ok(())
}
