//! The five subcommands, generic over the coefficient field.

use bvoperad::cobar::{build_cobar_operad, check_modular_pair, cobar_oracle_dims, validate_hopf, verify_cobar, CobarError};
use bvoperad::cohomology::{u_power, NormalizedComplex};
use bvoperad::endo::{build_endo_operad, validate_algebra, verify_oracles, BuildMode, EndoError, HochschildOracle};
use bvoperad::exactfield::Field;
use bvoperad::input::Presentation;
use bvoperad::operad::{verify_operad, Operad};
use bvoperad::{AlgebraPresentation, CyclicStructure, HopfPresentation};
use serde::Serialize;

use crate::ledger::{dims_agree, render_matrix, Report};

/// Per-check case budget for the pair and triple sweeps of the operad axioms.
const OPERAD_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Hochschild,
    Cotor,
    Cyclic,
    Verify,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Hochschild => "hochschild",
            Command::Cotor => "cotor",
            Command::Cyclic => "cyclic",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub input_name: String,
    pub max_degree: usize,
    pub bv: bool,
    pub oracle: bool,
    pub force: bool,
}

/// Problems with the input rather than with the mathematics (exit code 2).
#[derive(Debug)]
pub struct InputFailure(pub String);

impl From<EndoError> for InputFailure {
    fn from(e: EndoError) -> Self {
        InputFailure(e.to_string())
    }
}

enum Loaded<F: Field> {
    Algebra(AlgebraPresentation<F>),
    Hopf(HopfPresentation<F>),
}

pub fn run<F: Field>(field: F, pres: &Presentation, job: &Job) -> Result<Report, InputFailure> {
    let loaded = match pres {
        Presentation::Algebra(raw) => Loaded::Algebra(AlgebraPresentation::from_raw(field, raw).map_err(|e| InputFailure(e.to_string()))?),
        Presentation::Hopf(raw) => Loaded::Hopf(HopfPresentation::from_raw(field, raw).map_err(|e| InputFailure(e.to_string()))?),
    };
    let kind = match loaded {
        Loaded::Algebra(_) => "algebra",
        Loaded::Hopf(_) => "hopf",
    };
    let mut report = Report::new(job.command.name(), &job.input_name, kind, pres.field_name().to_string(), job.max_degree);
    match (job.command, loaded) {
        (Command::Validate, Loaded::Algebra(a)) => {
            report.section("algebra", validate_algebra(&a));
        }
        (Command::Validate, Loaded::Hopf(h)) => {
            report.section("hopf", validate_hopf(&h));
            let mpi = check_modular_pair(&h);
            report.table("modular_pair_in_involution", mpi.iter().all(|c| c.passed));
            report.advisory("modular_pair", mpi);
        }
        (Command::Hochschild, Loaded::Algebra(a)) => hochschild(&mut report, a, job)?,
        (Command::Hochschild, Loaded::Hopf(_)) => {
            return Err(InputFailure("hochschild expects an algebra presentation (kind \"algebra\"); use cotor for Hopf algebras".into()))
        }
        (Command::Cotor, Loaded::Hopf(h)) => cotor(&mut report, h, job),
        (Command::Cotor, Loaded::Algebra(_)) => {
            return Err(InputFailure("cotor expects a Hopf presentation (kind \"hopf\"); use hochschild for algebras".into()))
        }
        (Command::Cyclic, loaded) => {
            if job.max_degree < 5 {
                return Err(InputFailure(format!("cyclic needs --max-degree at least 5 for a nonempty validity window, got {}", job.max_degree)));
            }
            match loaded {
                Loaded::Algebra(a) => {
                    if a.form.is_none() {
                        return Err(EndoError::MissingForm.into());
                    }
                    let op = build_endo_operad(a, job.max_degree, BuildMode::Strict)?;
                    let cyc = CyclicStructure::new(op).map_err(|e| InputFailure(e.to_string()))?;
                    cyclic_cohomology(&mut report, &cyc, job.max_degree);
                }
                Loaded::Hopf(h) => {
                    if let Some(cyc) = cobar_or_refuse(&mut report, h, job)? {
                        cyclic_cohomology(&mut report, &cyc, job.max_degree);
                    }
                }
            }
        }
        (Command::Verify, Loaded::Algebra(a)) => verify_algebra(&mut report, a, job)?,
        (Command::Verify, Loaded::Hopf(h)) => verify_hopf(&mut report, h, job)?,
    }
    Ok(report)
}

fn hochschild<F: Field>(report: &mut Report, a: AlgebraPresentation<F>, job: &Job) -> Result<(), InputFailure> {
    let n = job.max_degree;
    if job.bv && a.form.is_none() {
        return Err(InputFailure("--bv needs a bilinear form (\"form\") on the algebra".into()));
    }
    let has_form = a.form.is_some();
    let oracle_dims = job.oracle.then(|| HochschildOracle::new(&a).cohomology_dims(n - 1));
    let op = match build_endo_operad(a, n, BuildMode::Strict) {
        Ok(op) => op,
        Err(EndoError::Validation(failed)) => {
            report.refuse(format!("the algebra fails validation: {failed}"));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    if has_form {
        let cyc = CyclicStructure::new(op).map_err(|e| InputFailure(e.to_string()))?;
        let c = complex(NormalizedComplex::cyclic(&cyc))?;
        cohomology_tables(report, &c, job, oracle_dims.as_deref());
        if job.oracle {
            report.section("oracle", verify_oracles(Some(&cyc), cyc.operad(), n));
        }
    } else {
        let c = complex(NormalizedComplex::new(&op))?;
        cohomology_tables(report, &c, job, oracle_dims.as_deref());
        if job.oracle {
            report.section("oracle", verify_oracles(None, &op, n));
        }
    }
    Ok(())
}

fn cotor<F: Field>(report: &mut Report, h: HopfPresentation<F>, job: &Job) {
    let oracle_dims = job.oracle.then(|| cobar_oracle_dims(&h, job.max_degree - 1));
    let cyc = match cobar_or_refuse(report, h, job) {
        Ok(Some(cyc)) => cyc,
        _ => return,
    };
    match NormalizedComplex::cyclic(&cyc) {
        Ok(c) => cohomology_tables(report, &c, job, oracle_dims.as_deref()),
        Err(e) => report.refuse(e.to_string()),
    }
    if job.oracle {
        report.section("oracle", verify_cobar(cyc.operad(), job.max_degree));
    }
}

/// Builds the Cobar operad, recording validation failures and the refusal
/// for a pair that is not in involution in the report.
fn cobar_or_refuse<F: Field>(
    report: &mut Report,
    h: HopfPresentation<F>,
    job: &Job,
) -> Result<Option<CyclicStructure<bvoperad::CobarOperad<F>>>, InputFailure> {
    match build_cobar_operad(h, job.max_degree, job.force) {
        Ok(op) => Ok(Some(CyclicStructure::new(op).map_err(|e| InputFailure(e.to_string()))?)),
        Err(e @ CobarError::NotModularPair) => {
            report.refuse(format!("{e}; rerun with --force to build the operad anyway"));
            Ok(None)
        }
        Err(e @ CobarError::Validation(_)) => {
            report.refuse(e.to_string());
            Ok(None)
        }
        Err(e) => Err(InputFailure(e.to_string())),
    }
}

fn complex<'a, O: Operad>(
    c: Result<NormalizedComplex<'a, O>, bvoperad::cohomology::CohomologyError>,
) -> Result<NormalizedComplex<'a, O>, InputFailure> {
    c.map_err(|e| InputFailure(e.to_string()))
}

fn cohomology_tables<O: Operad>(report: &mut Report, c: &NormalizedComplex<'_, O>, job: &Job, oracle: Option<&[usize]>) {
    let dims = c.h_dims();
    report.table("cohomology_dims", &dims);
    if let Some(o) = oracle {
        report.table("oracle_dims", o);
        report.section(
            "oracle_dims",
            vec![dims_agree("oracle.cohomology_dims", "dimensions from the operadic pipeline equal brute-force ranks of the classical complex", &dims, o)],
        );
    }
    if job.bv {
        report.section("bv", c.check_bv(job.max_degree - 1));
    }
}

#[derive(Serialize)]
struct HcRow {
    degree: usize,
    u_power: usize,
    dim: usize,
}

#[derive(Serialize)]
struct BracketEntry {
    a: (usize, usize),
    b: (usize, usize),
    degree: isize,
    value: Vec<String>,
}

#[derive(Serialize)]
struct ConnesEntry {
    degree: usize,
    boundary_after_inclusion: Vec<Vec<String>>,
    b_on_classes: Vec<Vec<String>>,
}

/// Dimensions, bracket table, `∂∘I` beside `[B]`, and the checks on the
/// total complex, for `O` with cutoff `n`.
fn cyclic_cohomology<O: Operad>(report: &mut Report, cyc: &CyclicStructure<O>, n: usize) {
    let c = match NormalizedComplex::cyclic(cyc) {
        Ok(c) => c,
        Err(e) => return report.refuse(e.to_string()),
    };
    let f = c.field();
    match c.dimension_table(n) {
        Ok(t) => {
            report.table("cohomology_dims", &t.h);
            let rows: Vec<HcRow> = t.hc.iter().map(|&(degree, u_power, dim)| HcRow { degree, u_power, dim }).collect();
            report.table("cyclic_dims", rows);
            let mut brackets = Vec::new();
            for &(p, _, dp) in &t.hc {
                for &(q, _, dq) in &t.hc {
                    let target = p as isize + q as isize - 2;
                    if target < 0 || target > n as isize - 3 {
                        continue;
                    }
                    for a in 0..dp {
                        for b in 0..dq {
                            let value = c.cyclic_bracket(p as isize, a, q as isize, b, n).map(|v| v.iter().map(|x| f.render(x)).collect());
                            match value {
                                Ok(value) => brackets.push(BracketEntry { a: (p, a), b: (q, b), degree: target, value }),
                                Err(e) => return report.refuse(e.to_string()),
                            }
                        }
                    }
                }
            }
            report.table("cyclic_bracket", brackets);
            let mut connes = Vec::new();
            for &(m, k, _) in &t.hc {
                let m = m as isize;
                let di = c.connes_boundary(m, k).and_then(|bd| {
                    let i = c.connes_i(m, k)?;
                    Ok(bd.compose(f, &i).expect("shapes match"))
                });
                match (di, c.b_on_classes(m)) {
                    (Ok(di), Ok(b)) => connes.push(ConnesEntry { degree: m as usize, boundary_after_inclusion: render_matrix(f, &di), b_on_classes: render_matrix(f, &b) }),
                    (Err(e), _) | (_, Err(e)) => return report.refuse(e.to_string()),
                }
            }
            report.table("connes", connes);
        }
        Err(e) => return report.refuse(e.to_string()),
    }
    report.section("cyclic_cohomology", c.check_cyclic(n));
    let small = n - 2;
    debug_assert!(u_power(small as isize - 3, small).is_some());
    report.section("stability", vec![c.check_stability(small, n)]);
}

fn verify_algebra<F: Field>(report: &mut Report, a: AlgebraPresentation<F>, job: &Job) -> Result<(), InputFailure> {
    let n = job.max_degree;
    if a.form.is_none() {
        return Err(EndoError::MissingForm.into());
    }
    report.section("validation", validate_algebra(&a));
    let op = build_endo_operad(a, n, BuildMode::Relaxed)?;
    let cyc = CyclicStructure::new(op).map_err(|e| InputFailure(e.to_string()))?;
    structural_suite(report, &cyc, n);
    report.section("oracle", verify_oracles(Some(&cyc), cyc.operad(), n));
    Ok(())
}

fn verify_hopf<F: Field>(report: &mut Report, h: HopfPresentation<F>, job: &Job) -> Result<(), InputFailure> {
    let n = job.max_degree;
    let validation = validate_hopf(&h);
    let valid = validation.iter().all(|c| c.passed);
    report.section("validation", validation);
    report.section("modular_pair", check_modular_pair(&h));
    if !valid {
        report.refuse("the Hopf algebra fails validation; the operad is not built".into());
        return Ok(());
    }
    let op = build_cobar_operad(h, n, true).map_err(|e| InputFailure(e.to_string()))?;
    let cyc = CyclicStructure::new(op).map_err(|e| InputFailure(e.to_string()))?;
    structural_suite(report, &cyc, n);
    report.section("oracle", verify_cobar(cyc.operad(), n));
    Ok(())
}

fn structural_suite<O: Operad>(report: &mut Report, cyc: &CyclicStructure<O>, n: usize) {
    report.section("operad", verify_operad(cyc.operad(), n, OPERAD_BUDGET));
    report.section("cyclic", cyc.verify_cyclic_axioms(n));
    report.section("cocyclic", cyc.verify_cocyclic(n));
    report.section("chain", cyc.verify_chain_identities(n - 1));
    report.section("mixed", cyc.verify_mixed_complex(n - 2));
}
