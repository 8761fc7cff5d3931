//! Acceptance criteria, end to end through the `bvoperad` binary. Each test
//! prints one `PASS`/`FAIL` line and then asserts.

mod support;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::Value;
use support::{bvoperad, check_names, data, dims, failing, section, Run};

const SYMMETRIC: [&str; 5] = ["q_dual_numbers.json", "f2_dual_numbers.json", "q_group_z2.json", "q_group_z3.json", "q_mat2_trace.json"];
const MPI_HOPF: [&str; 4] = ["q_group_z2_hopf.json", "f2_primitive_x.json", "q_sweedler.json", "f7_group_z3_chi2.json"];

/// Runs are shared between criteria; the binary is deterministic.
fn cached(args: &[&str]) -> Arc<Run> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<OnceLock<Arc<Run>>>>>> = OnceLock::new();
    let key = args.join(" ");
    let slot = CACHE.get_or_init(Default::default).lock().unwrap().entry(key).or_default().clone();
    slot.get_or_init(|| Arc::new(bvoperad(args))).clone()
}

fn run(cmd: &str, file: &str, extra: &[&str]) -> Arc<Run> {
    let path = data(file).display().to_string();
    let mut args = vec![cmd, path.as_str()];
    args.extend_from_slice(extra);
    cached(&args)
}

/// Collects problems for one criterion and reports them.
struct Criterion {
    number: u32,
    title: &'static str,
    problems: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(number: u32, title: &'static str) -> Self {
        Criterion { number, title, problems: Vec::new(), notes: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }

    /// Every check in `sections` of the report passed, and the sections exist.
    fn sections_pass(&mut self, label: &str, report: &Value, sections: &[&str]) {
        for s in sections {
            match section(report, s) {
                None => self.problems.push(format!("{label}: no section {s}")),
                Some(_) => {
                    let bad = failing(report, Some(s));
                    self.expect(bad.is_empty(), || format!("{label}: {s} fails {bad:?}"));
                }
            }
        }
    }

    fn finish(self) {
        let verdict = if self.problems.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!("acceptance {}: {:<44} {verdict}", self.number, self.title);
        if !self.notes.is_empty() {
            line.push_str(&format!("  [{}]", self.notes.join("; ")));
        }
        for p in &self.problems {
            line.push_str(&format!("\n    {p}"));
        }
        println!("{line}");
        assert!(self.problems.is_empty(), "criterion {} failed:\n{}", self.number, self.problems.join("\n"));
    }
}

#[test]
fn criterion_1_cyclic_operad_axioms() {
    let mut c = Criterion::new(1, "cyclic-operad axiom suite");
    for file in SYMMETRIC.iter().chain(&MPI_HOPF) {
        let r = run("verify", file, &["--max-degree", "5"]);
        let report = r.report();
        c.sections_pass(file, &report, &["cyclic", "operad"]);
        let names = check_names(&report, "cyclic");
        for required in ["cyclic.order", "cyclic.multiplication_fixed", "cyclic.first_slot", "cyclic.inner_slot", "cyclic.inner_slot_powers"] {
            c.expect(names.iter().any(|n| n == required), || format!("{file}: missing {required}"));
        }
    }
    c.notes.push(format!("{} inputs, m+n−1 ≤ 5", SYMMETRIC.len() + MPI_HOPF.len()));
    c.finish();
}

#[test]
fn criterion_2_negative_controls() {
    let mut c = Criterion::new(2, "negative controls");
    let asym = run("verify", "fixtures/asym_form.json", &[]);
    c.expect(asym.code == 1, || format!("asym_form exit {}", asym.code));
    let report = asym.report();
    let first_slot = section(&report, "cyclic")
        .and_then(|s| s["checks"].as_array())
        .and_then(|cs| cs.iter().find(|ch| ch["name"] == "cyclic.first_slot"))
        .cloned();
    match first_slot {
        Some(ch) => {
            c.expect(ch["passed"] == false, || "cyclic.first_slot passed on an asymmetric form".into());
            c.expect(ch["counterexample"]["case"].is_string(), || "no counterexample for cyclic.first_slot".into());
        }
        None => c.problems.push("cyclic.first_slot missing".into()),
    }
    let sweedler = run("cotor", "q_sweedler_eps.json", &[]);
    c.expect(sweedler.code == 1, || format!("Sweedler χ = ε exit {}", sweedler.code));
    c.expect(sweedler.report()["refusal"].as_str().is_some_and(|m| m.contains("S̃² ≠ id")), || "Sweedler χ = ε not refused".into());
    c.notes.push(format!("asym_form fails {:?}", failing(&report, Some("cyclic"))));
    c.finish();
}

#[test]
fn criterion_3_chain_identities() {
    let mut c = Criterion::new(3, "chain-identity suite, m+n ≤ 6");
    for file in ["q_dual_numbers.json", "f2_primitive_x.json", "f2_dual_numbers.json"] {
        let r = run("verify", file, &["--max-degree", "7"]);
        let report = r.report();
        c.sections_pass(file, &report, &["chain"]);
        let names = check_names(&report, "chain");
        for required in [
            "chain.cup_extra_degeneracy",
            "chain.cup_exchange",
            "chain.h_two_forms",
            "chain.b_of_cup",
            "chain.b_of_square",
            "chain.bv_homotopy",
            "six.equation_1",
            "six.equation_6",
            "six.combination",
        ] {
            c.expect(names.iter().any(|n| n == required), || format!("{file}: missing {required}"));
        }
        let scope = section(&report, "chain").and_then(|s| s["checks"][1]["scope"].as_str()).unwrap_or("").to_string();
        c.expect(scope.contains("≤ 6"), || format!("{file}: scope {scope:?}"));
    }
    c.finish();
}

#[test]
fn criterion_4_mixed_complex() {
    let mut c = Criterion::new(4, "mixed-complex axioms");
    for file in SYMMETRIC.iter().chain(&MPI_HOPF) {
        let report = run("verify", file, &["--max-degree", "5"]).report();
        c.sections_pass(file, &report, &["mixed", "cocyclic"]);
    }
    c.notes.push("degrees ≤ 3 at max degree 5".into());
    c.finish();
}

#[test]
fn criterion_5_oracle_equivalence() {
    let mut c = Criterion::new(5, "oracle equivalence");
    for file in SYMMETRIC {
        let report = run("verify", file, &["--max-degree", "5"]).report();
        c.sections_pass(file, &report, &["oracle"]);
        let names = check_names(&report, "oracle");
        c.expect(names.len() >= 4, || format!("{file}: only {names:?}"));
        let h = run("hochschild", file, &["--oracle", "--max-degree", "5"]).report();
        c.sections_pass(file, &h, &["oracle_dims"]);
    }
    c.finish();
}

#[test]
fn criterion_6_known_cohomology() {
    let mut c = Criterion::new(6, "known cohomology");
    let m2 = run("hochschild", "q_mat2_trace.json", &["--max-degree", "4", "--oracle"]).report();
    c.expect(dims(&m2, "cohomology_dims") == [1, 0, 0, 0], || format!("M₂(ℚ): {:?}", dims(&m2, "cohomology_dims")));
    c.expect(dims(&m2, "oracle_dims") == [1, 0, 0, 0], || format!("M₂(ℚ) oracle: {:?}", dims(&m2, "oracle_dims")));
    let z2 = run("cotor", "q_group_z2_hopf.json", &["--max-degree", "5", "--oracle"]).report();
    c.expect(dims(&z2, "cohomology_dims") == [1, 0, 0, 0, 0], || format!("ℚ[ℤ/2]: {:?}", dims(&z2, "cohomology_dims")));
    c.expect(dims(&z2, "oracle_dims") == [1, 0, 0, 0, 0], || format!("ℚ[ℤ/2] oracle: {:?}", dims(&z2, "oracle_dims")));
    c.finish();
}

#[test]
fn criterion_7_bv_at_class_level() {
    let mut c = Criterion::new(7, "BV/Gerstenhaber on classes, degree ≤ 5");
    for (cmd, file) in [("hochschild", "f2_dual_numbers.json"), ("cotor", "f2_primitive_x.json"), ("hochschild", "q_dual_numbers.json")] {
        let report = run(cmd, file, &["--bv", "--max-degree", "6"]).report();
        c.sections_pass(file, &report, &["bv"]);
        let names = check_names(&report, "bv");
        for required in ["gerstenhaber.cup_commutative", "gerstenhaber.bracket_antisymmetric", "gerstenhaber.jacobi", "gerstenhaber.poisson", "bv.b_squared", "bv.relation"] {
            c.expect(names.iter().any(|n| n == required), || format!("{file}: missing {required}"));
        }
    }
    c.finish();
}

#[test]
fn criterion_8_cyclic_cohomology() {
    let mut c = Criterion::new(8, "cyclic cohomology, cutoff 5 → 7");
    for file in ["q_group_z2.json", "q_group_z2_hopf.json", "f2_dual_numbers.json", "f2_primitive_x.json"] {
        let large = run("cyclic", file, &["--max-degree", "7"]);
        let report = large.report();
        c.sections_pass(file, &report, &["cyclic_cohomology", "stability"]);
        let small = run("cyclic", file, &["--max-degree", "5"]).report();
        let hc = |r: &Value| -> Vec<u64> { r["tables"]["cyclic_dims"].as_array().unwrap().iter().map(|e| e["dim"].as_u64().unwrap()).collect() };
        let (a, b) = (hc(&small), hc(&report));
        c.expect(b.starts_with(&a), || format!("{file}: HC dims {a:?} at cutoff 5 vs {b:?} at cutoff 7"));
        for entry in report["tables"]["connes"].as_array().unwrap() {
            c.expect(entry["boundary_after_inclusion"] == entry["b_on_classes"], || format!("{file}: ∂∘I ≠ B in degree {}", entry["degree"]));
        }
    }
    c.finish();
}

#[test]
fn criterion_9_determinism_and_exit_codes() {
    let mut c = Criterion::new(9, "determinism and exit codes");
    for args in [["verify", "q_dual_numbers.json"], ["cyclic", "f2_dual_numbers.json"], ["hochschild", "q_mat2_trace.json"]] {
        let path = data(args[1]).display().to_string();
        let first = bvoperad(&[args[0], &path]);
        let second = bvoperad(&[args[0], &path]);
        c.expect(first.json.is_some() && first.json == second.json && first.stdout == second.stdout, || format!("{} {} differs between runs", args[0], args[1]));
    }
    for (cmd, file, extra, code) in [
        ("validate", "q_group_z2.json", &[][..], 0),
        ("validate", "fixtures/broken_assoc.json", &[], 1),
        ("validate", "fixtures/not_json.txt", &[], 2),
        ("verify", "fixtures/asym_form.json", &[], 1),
        ("cotor", "q_sweedler_eps.json", &[], 1),
        ("cyclic", "q_dual_numbers.json", &["--max-degree", "4"], 2),
        ("hochschild", "q_group_z2_hopf.json", &[], 2),
    ] {
        let r = run(cmd, file, extra);
        c.expect(r.code == code, || format!("{cmd} {file}: exit {} (expected {code})", r.code));
    }
    c.finish();
}
