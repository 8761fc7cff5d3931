mod job;
mod ledger;

use std::path::PathBuf;
use std::process::ExitCode;

use bvoperad::exactfield::{FieldSpec, PrimeField, Rationals};
use bvoperad::input::parse_presentation;
use clap::{Args, Parser, Subcommand};

use job::{Command, InputFailure, Job};

/// Hochschild and Cotor cohomology, their BV structure and cyclic
/// cohomology, computed exactly from structure constants.
#[derive(Parser)]
#[command(name = "bvoperad", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Check the axioms of an algebra or Hopf algebra presentation.
    Validate(JobArgs),
    /// Hochschild cohomology HH*(A, A) of an algebra.
    Hochschild(JobArgs),
    /// Cotor of a Hopf algebra with a character.
    Cotor(JobArgs),
    /// Cyclic cohomology, the Connes sequence and the degree −2 bracket.
    Cyclic(JobArgs),
    /// Every operadic, cyclic and chain-level identity on basis elements.
    Verify(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// JSON presentation with "kind": "algebra" or "hopf".
    input: PathBuf,
    /// Largest arity N of the truncated operad.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(2..))]
    max_degree: u64,
    /// Include the Gerstenhaber / BV ledger on cohomology classes.
    #[arg(long)]
    bv: bool,
    /// Cross-check against the classical complexes.
    #[arg(long)]
    oracle: bool,
    /// Build the Cobar operad even when (χ, 1) is not in involution.
    #[arg(long)]
    force: bool,
    /// Override the coefficient field of the file (Q, F2, F7, …).
    #[arg(long)]
    field: Option<String>,
    /// Write the full JSON report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn configure_threads() {
    let Ok(v) = std::env::var("BVOPERAD_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(0) => {}
        Ok(n) => {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        Err(_) => eprintln!("warning: ignoring BVOPERAD_THREADS={v:?}"),
    }
}

fn execute(command: Command, args: &JobArgs) -> Result<ledger::Report, InputFailure> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| InputFailure(format!("{}: {e}", args.input.display())))?;
    let mut pres = parse_presentation(&text).map_err(|e| InputFailure(format!("{}: {e}", args.input.display())))?;
    if let Some(name) = &args.field {
        let spec: FieldSpec = name.parse().map_err(|e| InputFailure(format!("--field: {e}")))?;
        pres.set_field(spec);
    }
    let spec = pres.field_spec().map_err(|e| InputFailure(e.to_string()))?;
    let job = Job {
        command,
        input_name: args.input.file_name().map_or_else(|| args.input.display().to_string(), |s| s.to_string_lossy().into_owned()),
        max_degree: args.max_degree as usize,
        bv: args.bv,
        oracle: args.oracle,
        force: args.force,
    };
    match spec {
        FieldSpec::Rational => job::run(Rationals, &pres, &job),
        FieldSpec::Prime(p) => job::run(PrimeField::new(p).map_err(|e| InputFailure(e.to_string()))?, &pres, &job),
    }
}

/// What a run produced: the exit code, the report when there is one, and
/// the message for an input error.
struct Outcome {
    code: u8,
    report: Option<ledger::Report>,
    error: Option<String>,
}

fn outcome(cli: &Cli) -> Outcome {
    let (command, args) = cli.command.job();
    match execute(command, args) {
        Ok(report) => Outcome { code: if report.passed { 0 } else { 1 }, report: Some(report), error: None },
        Err(InputFailure(msg)) => Outcome { code: 2, report: None, error: Some(msg) },
    }
}

impl Sub {
    fn job(&self) -> (Command, &JobArgs) {
        match self {
            Sub::Validate(a) => (Command::Validate, a),
            Sub::Hochschild(a) => (Command::Hochschild, a),
            Sub::Cotor(a) => (Command::Cotor, a),
            Sub::Cyclic(a) => (Command::Cyclic, a),
            Sub::Verify(a) => (Command::Verify, a),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let out = outcome(&cli);
    if let Some(msg) = &out.error {
        eprintln!("error: {msg}");
    }
    let Some(report) = &out.report else { return ExitCode::from(out.code) };
    print!("{}", report.summary());
    if let Some(refusal) = &report.refusal {
        eprintln!("refused: {refusal}");
    }
    if let Some(path) = &cli.command.job().1.output {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(out.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn data(name: &str) -> String {
        format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn run(args: &[&str]) -> Outcome {
        let cli = Cli::try_parse_from(std::iter::once("bvoperad").chain(args.iter().copied())).expect("arguments parse");
        outcome(&cli)
    }

    fn json(out: &Outcome) -> Value {
        serde_json::from_str(&out.report.as_ref().expect("a report").to_json()).unwrap()
    }

    fn section<'a>(report: &'a Value, name: &str) -> &'a Value {
        report["sections"].as_array().unwrap().iter().find(|s| s["name"] == name).unwrap_or_else(|| panic!("no section {name}"))
    }

    fn failing(report: &Value, name: &str) -> Vec<String> {
        section(report, name)["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].as_str().unwrap().to_string()).collect()
    }

    fn dims(report: &Value, table: &str) -> Vec<u64> {
        report["tables"][table].as_array().unwrap().iter().map(|d| d.as_u64().unwrap()).collect()
    }

    #[test]
    fn validate_exit_codes() {
        assert_eq!(run(&["validate", &data("q_group_z2.json")]).code, 0);
        let broken = run(&["validate", &data("fixtures/broken_assoc.json")]);
        assert_eq!(broken.code, 1);
        let report = json(&broken);
        assert_eq!(section(&report, "algebra")["checks"][0]["counterexample"]["case"], "(x, x, x)");
        assert!(broken.report.unwrap().summary().contains("at (x, x, x)"));
        let not_json = run(&["validate", &data("fixtures/not_json.txt")]);
        assert_eq!(not_json.code, 2);
        assert!(not_json.report.is_none());
        assert!(not_json.error.unwrap().contains("invalid JSON"));
        assert_eq!(run(&["validate", &data("does_not_exist.json")]).code, 2);
    }

    #[test]
    fn validate_reports_modular_pair_without_gating() {
        let out = run(&["validate", &data("q_sweedler_eps.json")]);
        assert_eq!(out.code, 0);
        let report = json(&out);
        assert_eq!(report["tables"]["modular_pair_in_involution"], false);
        assert_eq!(failing(&report, "modular_pair"), vec!["modular_pair.involution"]);
        assert_eq!(json(&run(&["validate", &data("q_sweedler.json")]))["tables"]["modular_pair_in_involution"], true);
    }

    #[test]
    fn bad_arguments_are_input_errors() {
        let q = data("q_dual_numbers.json");
        // clap reports usage errors with exit status 2
        for args in [&["hochschild", q.as_str(), "--max-degree", "1"][..], &["frobnicate", q.as_str()], &["verify"]] {
            let err = Cli::try_parse_from(std::iter::once("bvoperad").chain(args.iter().copied())).err().expect("rejected");
            assert_eq!(err.exit_code(), 2);
        }
        assert_eq!(run(&["cyclic", &q, "--max-degree", "4"]).code, 2);
        assert_eq!(run(&["hochschild", &data("q_group_z2_hopf.json")]).code, 2);
        assert_eq!(run(&["cotor", &q]).code, 2);
        assert_eq!(run(&["hochschild", &q, "--field", "F4"]).code, 2);
    }

    #[test]
    fn bv_needs_a_form() {
        let dir = std::env::temp_dir().join(format!("bvoperad-no-form-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let file = dir.join("no_form.json");
        std::fs::write(&file, r#"{"kind":"algebra","field":"Q","dim":2,"mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":["1","0"]}"#).unwrap();
        let f = file.display().to_string();
        let plain = run(&["hochschild", &f]);
        assert_eq!(plain.code, 0);
        assert_eq!(dims(&json(&plain), "cohomology_dims"), vec![2, 1, 1, 1, 1]);
        let bv = run(&["hochschild", &f, "--bv"]);
        assert_eq!(bv.code, 2);
        assert!(bv.error.unwrap().contains("form"));
        assert_eq!(run(&["verify", &f]).code, 2);
        let degenerate = dir.join("degenerate.json");
        std::fs::write(&degenerate, r#"{"kind":"algebra","field":"Q","dim":2,"mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":["1","0"],"form":[["1","0"],["0","0"]]}"#).unwrap();
        assert_eq!(run(&["verify", &degenerate.display().to_string()]).code, 2);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn hochschild_with_oracle() {
        let out = run(&["hochschild", &data("q_dual_numbers.json"), "--bv", "--oracle"]);
        assert_eq!(out.code, 0);
        let report = json(&out);
        assert_eq!(dims(&report, "cohomology_dims"), vec![2, 1, 1, 1, 1]);
        assert_eq!(dims(&report, "oracle_dims"), vec![2, 1, 1, 1, 1]);
        assert_eq!(section(&report, "oracle")["passed"], true);
        assert_eq!(section(&report, "bv")["passed"], true);
    }

    #[test]
    fn field_override_changes_the_answer() {
        // HH¹(𝕜[x]/x²) is spanned by x∂ₓ over ℚ, by ∂ₓ and x∂ₓ in characteristic 2
        let q = json(&run(&["hochschild", &data("q_dual_numbers.json")]));
        let f2 = json(&run(&["hochschild", &data("q_dual_numbers.json"), "--field", "F2"]));
        assert_eq!(dims(&q, "cohomology_dims"), vec![2, 1, 1, 1, 1]);
        assert_eq!(dims(&f2, "cohomology_dims"), vec![2, 2, 2, 2, 2]);
        assert_eq!(f2["field"], "F2");
    }

    #[test]
    fn cotor_refuses_without_involution() {
        let out = run(&["cotor", &data("q_sweedler_eps.json")]);
        assert_eq!(out.code, 1);
        assert!(json(&out)["refusal"].as_str().unwrap().contains("S̃² ≠ id"));
        let forced = run(&["cotor", &data("q_sweedler_eps.json"), "--force"]);
        assert_eq!(forced.code, 0);
        assert!(json(&forced)["refusal"].is_null());
    }

    #[test]
    fn cotor_of_group_algebra() {
        let out = run(&["cotor", &data("q_group_z2_hopf.json"), "--oracle"]);
        assert_eq!(out.code, 0);
        assert_eq!(dims(&json(&out), "cohomology_dims"), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn cyclic_report_has_tables() {
        let out = run(&["cyclic", &data("q_dual_numbers.json")]);
        assert_eq!(out.code, 0);
        let report = json(&out);
        assert_eq!(report["tables"]["cyclic_dims"].as_array().unwrap().len(), 3);
        for entry in report["tables"]["connes"].as_array().unwrap() {
            assert_eq!(entry["boundary_after_inclusion"], entry["b_on_classes"]);
        }
        assert!(report["tables"]["cyclic_bracket"].is_array());
    }

    #[test]
    fn verify_localizes_asymmetric_form() {
        let out = run(&["verify", &data("fixtures/asym_form.json")]);
        assert_eq!(out.code, 1);
        let report = json(&out);
        assert!(failing(&report, "cyclic").contains(&"cyclic.first_slot".to_string()));
        assert!(failing(&report, "operad").is_empty());
        assert!(failing(&report, "validation").contains(&"form.symmetry".to_string()));
    }

    #[test]
    fn thread_count_does_not_change_reports() {
        let args = ["verify", &data("f2_dual_numbers.json")];
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| run(&args));
        let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| run(&args));
        assert_eq!(one.code, 0);
        assert_eq!(one.report.unwrap().to_json(), many.report.unwrap().to_json());
    }
}
