//! Verification results and exhaustive sweeps.

use rayon::prelude::*;
use serde::Serialize;

use crate::exactfield::Field;
use crate::linalg::SparseVec;

/// A failing case: what was evaluated and both sides as sparse coefficient lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub case: String,
    pub lhs: Vec<(usize, String)>,
    pub rhs: Vec<(usize, String)>,
}

impl Counterexample {
    pub fn message(case: impl Into<String>) -> Self {
        Counterexample { case: case.into(), lhs: Vec::new(), rhs: Vec::new() }
    }
}

/// One identity (or axiom) checked over an exhaustive family of cases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub statement: String,
    pub scope: String,
    pub cases: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &str, statement: &str, scope: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            statement: statement.to_string(),
            scope: scope.into(),
            cases: 0,
            passed: true,
            counterexample: None,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Records a single boolean case.
    pub fn record(mut self, ok: bool, case: impl FnOnce() -> Counterexample) -> Self {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = Some(case());
        }
        self
    }

    /// Evaluates `eval` on every case in parallel; the reported counterexample
    /// is the first failing case in input order.
    pub fn sweep<T, Ev>(mut self, cases: &[T], eval: Ev) -> Self
    where
        T: Sync,
        Ev: Fn(&T) -> Result<(), Counterexample> + Sync,
    {
        self.cases += cases.len() as u64;
        if let Some(cx) = cases.par_iter().find_map_first(|c| eval(c).err()) {
            if self.passed {
                self.passed = false;
                self.counterexample = Some(cx);
            }
        }
        self
    }
}

/// Compares two sparse vectors, producing a counterexample on mismatch.
pub fn compare<F: Field>(
    field: &F,
    case: impl FnOnce() -> String,
    lhs: &SparseVec<F::Elem>,
    rhs: &SparseVec<F::Elem>,
) -> Result<(), Counterexample> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Counterexample { case: case(), lhs: render(field, lhs), rhs: render(field, rhs) })
    }
}

pub fn render<F: Field>(field: &F, v: &SparseVec<F::Elem>) -> Vec<(usize, String)> {
    v.iter().map(|(i, c)| (i, field.render(c))).collect()
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
