//! The report written to `--output` and summarised on stdout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use bvoperad::exactfield::Field;
use bvoperad::linalg::Matrix;
use bvoperad::report::all_passed;
use bvoperad::Check;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Section {
    pub name: String,
    /// Whether a failure here makes the run fail.
    pub gating: bool,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub kind: String,
    pub field: String,
    pub max_degree: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refusal: Option<String>,
    pub tables: BTreeMap<String, Value>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: &str, input: &str, kind: &str, field: String, max_degree: usize) -> Self {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            kind: kind.to_string(),
            field,
            max_degree,
            passed: true,
            refusal: None,
            tables: BTreeMap::new(),
            sections: Vec::new(),
        }
    }

    pub fn section(&mut self, name: &str, checks: Vec<Check>) {
        self.push_section(name, true, checks);
    }

    /// A section that is reported but does not affect the exit code.
    pub fn advisory(&mut self, name: &str, checks: Vec<Check>) {
        self.push_section(name, false, checks);
    }

    fn push_section(&mut self, name: &str, gating: bool, checks: Vec<Check>) {
        let passed = all_passed(&checks);
        if gating && !passed {
            self.passed = false;
        }
        self.sections.push(Section { name: name.to_string(), gating, passed, checks });
    }

    pub fn table(&mut self, name: &str, value: impl Serialize) {
        self.tables.insert(name.to_string(), serde_json::to_value(value).expect("tables serialize"));
    }

    pub fn refuse(&mut self, message: String) {
        self.passed = false;
        self.refusal = Some(message);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Human-readable summary: tables, one line per check, failures in full.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} ({} over {}, max degree {})", self.command, self.input, self.kind, self.field, self.max_degree);
        if let Some(r) = &self.refusal {
            let _ = writeln!(out, "refused: {r}");
        }
        for (name, value) in &self.tables {
            let _ = writeln!(out, "{name}: {value}");
        }
        for s in &self.sections {
            let tag = if s.gating { "" } else { " (advisory)" };
            let _ = writeln!(out, "[{}] {}{tag}", if s.passed { "pass" } else { "FAIL" }, s.name);
            for c in &s.checks {
                let _ = writeln!(out, "  {} {:<44} {:>8} cases  {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.cases, c.scope);
                if let Some(cx) = &c.counterexample {
                    let _ = writeln!(out, "       at {}", cx.case);
                    if !cx.lhs.is_empty() || !cx.rhs.is_empty() {
                        let _ = writeln!(out, "       lhs {:?}\n       rhs {:?}", cx.lhs, cx.rhs);
                    }
                }
            }
        }
        let _ = writeln!(out, "{}", if self.passed { "all checks passed" } else { "FAILED" });
        out
    }
}

/// A matrix as rows of rendered entries.
pub fn render_matrix<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<String>> {
    m.to_dense(field).iter().map(|row| row.iter().map(|x| field.render(x)).collect()).collect()
}

/// Check that compares two dimension lists degree by degree.
pub fn dims_agree(name: &str, statement: &str, pipeline: &[usize], oracle: &[usize]) -> Check {
    let degrees: Vec<usize> = (0..pipeline.len().max(oracle.len())).collect();
    Check::new(name, statement, format!("degrees ≤ {}", degrees.len() as isize - 1)).sweep(&degrees, |&n| {
        let (a, b) = (pipeline.get(n), oracle.get(n));
        if a == b {
            Ok(())
        } else {
            let show = |x: Option<&usize>| x.map_or("missing".to_string(), |d| d.to_string());
            Err(bvoperad::report::Counterexample {
                case: format!("degree {n}"),
                lhs: vec![(0, show(a))],
                rhs: vec![(0, show(b))],
            })
        }
    })
}
