//! The endomorphism operad of a finite-dimensional algebra, its cyclic
//! structure coming from an invariant bilinear form, and two independent
//! oracles: the classical Hochschild complex and the dual cyclic module
//! `Hom(A^{⊗n+1}, 𝕜)`.
//!
//! Basis of `O(n) = Hom(A^{⊗n}, A)`: the map sending `e_{i₁}⊗…⊗e_{iₙ}` to
//! `e_j` and every other basis tensor to zero, indexed
//! `((i₁·d + i₂)·d + … + iₙ)·d + j` (inputs row-major, output last).

use thiserror::Error;

use crate::cyclic::CyclicStructure;
use crate::exactfield::Field;
use crate::input::{self, InputError, RawAlgebra};
use crate::linalg::{Matrix, SparseVec};
use crate::operad::{operator_matrix, Cochain, Elem, Operad, OperadError};
use crate::report::{compare, Check, Counterexample};

#[derive(Debug, Error)]
pub enum EndoError {
    #[error("algebra fails validation: {0}")]
    Validation(String),
    #[error("degree cutoff {0} is too small (need at least 2)")]
    CutoffTooSmall(usize),
    #[error("the bilinear form is degenerate")]
    DegenerateForm,
    #[error("no bilinear form given")]
    MissingForm,
    #[error("O({0}) is too large to enumerate")]
    TooLarge(usize),
    #[error(transparent)]
    Operad(#[from] OperadError),
}

/// A finite-dimensional algebra by structure constants, with an optional
/// bilinear form `form[i][j] = φ(eᵢ, eⱼ)`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<F: Field> {
    pub field: F,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `mul[i][j] = eᵢ·eⱼ`.
    pub mul: Vec<Vec<SparseVec<F::Elem>>>,
    pub unit: SparseVec<F::Elem>,
    pub form: Option<Vec<Vec<F::Elem>>>,
}

impl<F: Field> AlgebraPresentation<F> {
    pub fn from_raw(field: F, raw: &RawAlgebra) -> Result<Self, InputError> {
        let dim = raw.dim;
        if dim == 0 {
            return Err(InputError::Shape("dim must be positive".into()));
        }
        Ok(AlgebraPresentation {
            basis_names: input::basis_names(dim, &raw.basis_names)?,
            mul: input::parse_table(&field, dim, "mul", &raw.mul)?,
            unit: input::parse_vector(&field, dim, "unit", &raw.unit)?,
            form: raw.form.as_ref().map(|f| input::parse_matrix(&field, dim, "form", f)).transpose()?,
            field,
            dim,
        })
    }

    pub fn product(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(f, &f.mul(a, b), &self.mul[i][j]);
            }
        }
        out
    }

    pub fn basis(&self, i: usize) -> SparseVec<F::Elem> {
        SparseVec::unit(&self.field, i)
    }

    /// `φ(x, y)`; requires a form.
    pub fn pairing(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> F::Elem {
        let f = &self.field;
        let form = self.form.as_ref().expect("pairing needs a form");
        let mut acc = f.zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc = f.add(&acc, &f.mul(&f.mul(a, b), &form[i][j]));
            }
        }
        acc
    }

    fn gram(&self) -> Option<Matrix<F::Elem>> {
        self.form.as_ref().map(|rows| Matrix::from_dense(&self.field, rows))
    }

    fn names(&self, idx: &[usize]) -> String {
        idx.iter().map(|&i| self.basis_names[i].as_str()).collect::<Vec<_>>().join(", ")
    }
}

/// Checks the algebra axioms and, if a form is present, symmetry, invariance
/// `φ(a₂, a₀a₁) = φ(a₀, a₁a₂)` and nondegeneracy.
pub fn validate_algebra<F: Field>(p: &AlgebraPresentation<F>) -> Vec<Check> {
    let f = &p.field;
    let d = p.dim;
    let triples: Vec<[usize; 3]> =
        (0..d * d * d).map(|t| [t / (d * d), t / d % d, t % d]).collect();
    let singles: Vec<usize> = (0..d).collect();
    let e = |i| p.basis(i);
    let mut checks = vec![
        Check::new("algebra.associativity", "(a·b)·c = a·(b·c)", "all basis triples").sweep(&triples, |&[a, b, c]| {
            compare(f, || format!("({})", p.names(&[a, b, c])), &p.product(&p.product(&e(a), &e(b)), &e(c)), &p.product(&e(a), &p.product(&e(b), &e(c))))
        }),
        Check::new("algebra.unit", "1·a = a = a·1", "all basis elements").sweep(&singles, |&a| {
            compare(f, || format!("1·{}", p.basis_names[a]), &p.product(&p.unit, &e(a)), &e(a))?;
            compare(f, || format!("{}·1", p.basis_names[a]), &p.product(&e(a), &p.unit), &e(a))
        }),
    ];
    if let Some(form) = &p.form {
        let pairs: Vec<[usize; 2]> = (0..d * d).map(|t| [t / d, t % d]).collect();
        let scalar = |x: F::Elem| SparseVec::from_terms(f, [(0, x)]);
        checks.push(Check::new("form.symmetry", "φ(a, b) = φ(b, a)", "all basis pairs").sweep(&pairs, |&[a, b]| {
            compare(f, || format!("φ({}), φ({})", p.names(&[a, b]), p.names(&[b, a])), &scalar(form[a][b].clone()), &scalar(form[b][a].clone()))
        }));
        checks.push(Check::new("form.invariance", "φ(a₂, a₀a₁) = φ(a₀, a₁a₂)", "all basis triples").sweep(&triples, |&[a0, a1, a2]| {
            compare(
                f,
                || format!("(a₀, a₁, a₂) = ({})", p.names(&[a0, a1, a2])),
                &scalar(p.pairing(&e(a2), &p.product(&e(a0), &e(a1)))),
                &scalar(p.pairing(&e(a0), &p.product(&e(a1), &e(a2)))),
            )
        }));
        let nondegenerate = p.gram().map_or(false, |g| g.inverse(f).is_ok());
        checks.push(
            Check::new("form.nondegeneracy", "the Gram matrix of φ is invertible", "Gram matrix")
                .record(nondegenerate, || Counterexample::message("Gram matrix is singular")),
        );
    }
    checks
}

/// How strictly [`build_endo_operad`] checks its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildMode {
    /// Every axiom reported by [`validate_algebra`] must hold.
    Strict,
    /// Only nondegeneracy of the form is required, so that failures of the
    /// cyclic identities can be exhibited on purpose.
    Relaxed,
}

/// The endomorphism operad of an algebra, cyclic when a form is supplied.
#[derive(Clone, Debug)]
pub struct EndOperad<F: Field> {
    alg: AlgebraPresentation<F>,
    max: usize,
    /// `d^k` for `0 ≤ k ≤ max + 1`.
    powers: Vec<usize>,
    identity: Cochain<F::Elem>,
    multiplication: Cochain<F::Elem>,
    unit: Cochain<F::Elem>,
    /// Dense Gram matrix and its inverse.
    gram: Option<(Vec<Vec<F::Elem>>, Vec<Vec<F::Elem>>)>,
}

pub fn build_endo_operad<F: Field>(
    alg: AlgebraPresentation<F>,
    max_degree: usize,
    mode: BuildMode,
) -> Result<EndOperad<F>, EndoError> {
    if max_degree < 2 {
        return Err(EndoError::CutoffTooSmall(max_degree));
    }
    if mode == BuildMode::Strict {
        let failed: Vec<String> =
            validate_algebra(&alg).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
        if !failed.is_empty() {
            return Err(EndoError::Validation(failed.join(", ")));
        }
    }
    let f = &alg.field;
    let d = alg.dim;
    let mut powers = vec![1usize];
    for k in 1..=max_degree + 1 {
        let next = powers[k - 1].checked_mul(d).filter(|&x| x <= 1 << 40).ok_or(EndoError::TooLarge(k))?;
        powers.push(next);
    }
    let gram = match &alg.form {
        None => None,
        Some(rows) => {
            let g = Matrix::from_dense(f, rows);
            let inv = g.inverse(f).map_err(|_| EndoError::DegenerateForm)?;
            Some((rows.clone(), inv.to_dense(f)))
        }
    };
    let identity = Cochain::new(1, SparseVec::from_terms(f, (0..d).map(|i| (i * d + i, f.one()))));
    let mut mu_terms = Vec::new();
    for i in 0..d {
        for j in 0..d {
            for (k, c) in alg.mul[i][j].iter() {
                mu_terms.push(((i * d + j) * d + k, c.clone()));
            }
        }
    }
    let multiplication = Cochain::new(2, SparseVec::from_terms(f, mu_terms));
    let unit = Cochain::new(0, alg.unit.clone());
    Ok(EndOperad { alg, max: max_degree, powers, identity, multiplication, unit, gram })
}

impl<F: Field> EndOperad<F> {
    pub fn algebra(&self) -> &AlgebraPresentation<F> {
        &self.alg
    }

    /// Splits a basis index of `O(n)` into input digits and output index.
    pub fn decode(&self, n: usize, a: usize) -> (Vec<usize>, usize) {
        let d = self.alg.dim;
        (digits(a / d, n, d), a % d)
    }

    pub fn encode(&self, inputs: &[usize], output: usize) -> usize {
        encode(inputs, self.alg.dim) * self.alg.dim + output
    }
}

fn digits(mut code: usize, len: usize, d: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = code % d;
        code /= d;
    }
    out
}

fn encode(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * d + x)
}

impl<F: Field> Operad for EndOperad<F> {
    type F = F;

    fn field(&self) -> &F {
        &self.alg.field
    }

    fn max_degree(&self) -> usize {
        self.max
    }

    fn dim(&self, n: usize) -> usize {
        self.powers[n + 1]
    }

    fn compose_basis_into(
        &self,
        m: usize,
        a: usize,
        n: usize,
        b: usize,
        slot: usize,
        coeff: &F::Elem,
        out: &mut Vec<(usize, F::Elem)>,
    ) {
        let d = self.alg.dim;
        let (code_a, j) = (a / d, a % d);
        let (code_b, l) = (b / d, b % d);
        let after = self.powers[m - slot];
        if code_a / after % d != l {
            return;
        }
        let before = code_a / (after * d);
        let code = ((before * self.powers[n] + code_b) * after + code_a % after) * d + j;
        out.push((code, coeff.clone()));
    }

    fn identity(&self) -> Cochain<F::Elem> {
        self.identity.clone()
    }

    fn multiplication(&self) -> Cochain<F::Elem> {
        self.multiplication.clone()
    }

    fn unit(&self) -> Cochain<F::Elem> {
        self.unit.clone()
    }

    /// `φ(v₀, τf(v₁,…,vₙ)) = φ(vₙ, f(v₀,…,vₙ₋₁))`, solved with the inverse Gram matrix.
    fn tau_basis_into(&self, n: usize, a: usize, coeff: &F::Elem, out: &mut Vec<(usize, F::Elem)>) -> bool {
        let Some((gram, inv)) = &self.gram else { return false };
        let f = &self.alg.field;
        let d = self.alg.dim;
        if n == 0 {
            out.push((a, coeff.clone()));
            return true;
        }
        let (code, j) = (a / d, a % d);
        let first = code / self.powers[n - 1];
        let rest = code % self.powers[n - 1];
        for (c, row) in gram.iter().enumerate() {
            if f.is_zero(&row[j]) {
                continue;
            }
            let x = f.mul(coeff, &row[j]);
            let inputs = rest * d + c;
            for (k, inv_row) in inv.iter().enumerate() {
                if !f.is_zero(&inv_row[first]) {
                    out.push((inputs * d + k, f.mul(&x, &inv_row[first])));
                }
            }
        }
        true
    }

    fn is_cyclic(&self) -> bool {
        self.gram.is_some()
    }

    fn basis_label(&self, n: usize, a: usize) -> String {
        let (inputs, j) = self.decode(n, a);
        let names: Vec<&str> = inputs.iter().map(|&i| self.alg.basis_names[i].as_str()).collect();
        format!("({} ↦ {})", names.join("⊗"), self.alg.basis_names[j])
    }
}

/// Scatters `(row, col, coeff)` triples into a matrix.
fn matrix_from_entries<F: Field>(field: &F, rows: usize, cols: usize, entries: Vec<(usize, usize, F::Elem)>) -> Matrix<F::Elem> {
    let mut columns: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); cols];
    for (r, c, x) in entries {
        columns[c].push((r, x));
    }
    Matrix::from_columns(rows, columns.into_iter().map(|t| SparseVec::from_terms(field, t)).collect())
}

/// The classical Hochschild cochain complex `Hom(A^{⊗n}, A)`, written
/// directly from the multiplication table.
pub struct HochschildOracle<'a, F: Field> {
    alg: &'a AlgebraPresentation<F>,
}

impl<'a, F: Field> HochschildOracle<'a, F> {
    pub fn new(alg: &'a AlgebraPresentation<F>) -> Self {
        HochschildOracle { alg }
    }

    fn dim(&self, n: usize) -> usize {
        self.alg.dim.pow(n as u32 + 1)
    }

    /// Matrix of the `i`-th coface `Cⁿ → Cⁿ⁺¹`:
    /// `(δ₀f)(a₁,…) = a₁·f(a₂,…)`, `(δᵢf)(…) = f(…, aᵢaᵢ₊₁, …)`,
    /// `(δₙ₊₁f)(…, aₙ₊₁) = f(a₁,…,aₙ)·aₙ₊₁`.
    pub fn coface(&self, n: usize, i: usize) -> Matrix<F::Elem> {
        let (f, d, alg) = (&self.alg.field, self.alg.dim, self.alg);
        let mut entries = Vec::new();
        for code in 0..d.pow(n as u32 + 1) {
            let a = digits(code, n + 1, d);
            if i == 0 {
                let t = encode(&a[1..], d);
                for j in 0..d {
                    for (k, c) in alg.mul[a[0]][j].iter() {
                        entries.push((code * d + k, t * d + j, c.clone()));
                    }
                }
            } else if i <= n {
                for (c, x) in alg.mul[a[i - 1]][a[i]].iter() {
                    let mut t = a[..i - 1].to_vec();
                    t.push(c);
                    t.extend_from_slice(&a[i + 1..]);
                    let t = encode(&t, d);
                    for j in 0..d {
                        entries.push((code * d + j, t * d + j, x.clone()));
                    }
                }
            } else {
                let t = encode(&a[..n], d);
                for j in 0..d {
                    for (k, c) in alg.mul[j][a[n]].iter() {
                        entries.push((code * d + k, t * d + j, c.clone()));
                    }
                }
            }
        }
        matrix_from_entries(f, self.dim(n + 1), self.dim(n), entries)
    }

    /// Matrix of `σⱼ : Cⁿ → Cⁿ⁻¹`, `(σⱼf)(a₁,…,aₙ₋₁) = f(a₁,…,aⱼ, 1, aⱼ₊₁,…)`.
    pub fn codegeneracy(&self, n: usize, j: usize) -> Matrix<F::Elem> {
        let (f, d, alg) = (&self.alg.field, self.alg.dim, self.alg);
        let mut entries = Vec::new();
        for code in 0..d.pow(n as u32 - 1) {
            let a = digits(code, n - 1, d);
            for (c, u) in alg.unit.iter() {
                let mut t = a[..j].to_vec();
                t.push(c);
                t.extend_from_slice(&a[j..]);
                let t = encode(&t, d);
                for k in 0..d {
                    entries.push((code * d + k, t * d + k, u.clone()));
                }
            }
        }
        matrix_from_entries(f, self.dim(n - 1), self.dim(n), entries)
    }

    /// The Hochschild coboundary `Cⁿ → Cⁿ⁺¹`.
    pub fn differential(&self, n: usize) -> Matrix<F::Elem> {
        let f = &self.alg.field;
        let mut acc = Matrix::zero(self.dim(n + 1), self.dim(n));
        for i in 0..=n + 1 {
            let sign = f.signed(i % 2 == 1, &f.one());
            acc = acc.add(f, &self.coface(n, i).scaled(f, &sign));
        }
        acc
    }

    /// `dim HHⁿ` for `0 ≤ n ≤ top`, by ranks of the unnormalized complex.
    pub fn cohomology_dims(&self, top: usize) -> Vec<usize> {
        let f = &self.alg.field;
        let ranks: Vec<usize> = (0..=top).map(|n| crate::linalg::rank(f, &self.differential(n))).collect();
        (0..=top)
            .map(|n| self.dim(n) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect()
    }
}

/// The cocyclic module `Dⁿ = Hom(A^{⊗n+1}, 𝕜)` with
/// `(tF)(v₀,…,vₙ) = F(vₙ, v₀,…,vₙ₋₁)`, together with the transport
/// `f ↦ f̂`, `f̂(v₀,…,vₙ) = φ(v₀, f(v₁,…,vₙ))`.
///
/// Basis: the functional dual to `e_{w₀}⊗…⊗e_{wₙ}`, indexed row-major in `w`.
pub struct DualCyclicOracle<'a, F: Field> {
    alg: &'a AlgebraPresentation<F>,
}

impl<'a, F: Field> DualCyclicOracle<'a, F> {
    pub fn new(alg: &'a AlgebraPresentation<F>) -> Result<Self, EndoError> {
        if alg.form.is_none() {
            return Err(EndoError::MissingForm);
        }
        Ok(DualCyclicOracle { alg })
    }

    fn dim(&self, n: usize) -> usize {
        self.alg.dim.pow(n as u32 + 1)
    }

    /// `f ↦ f̂` from `Hom(A^{⊗n}, A)` to `Dⁿ`.
    pub fn hat(&self, n: usize) -> Matrix<F::Elem> {
        let (f, d) = (&self.alg.field, self.alg.dim);
        let form = self.alg.form.as_ref().expect("checked at construction");
        let inputs = d.pow(n as u32);
        let mut entries = Vec::new();
        for code in 0..inputs {
            for j in 0..d {
                for (v0, row) in form.iter().enumerate() {
                    if !f.is_zero(&row[j]) {
                        entries.push((v0 * inputs + code, code * d + j, row[j].clone()));
                    }
                }
            }
        }
        matrix_from_entries(f, self.dim(n), self.dim(n), entries)
    }

    /// The cyclic operator on `Dⁿ`.
    pub fn tau(&self, n: usize) -> Matrix<F::Elem> {
        let (f, d) = (&self.alg.field, self.alg.dim);
        let columns = (0..self.dim(n))
            .map(|code| {
                let w = digits(code, n + 1, d);
                let mut v = w[1..].to_vec();
                v.push(w[0]);
                SparseVec::unit(f, encode(&v, d))
            })
            .collect();
        Matrix::from_columns(self.dim(n), columns)
    }

    /// `(dᵢF)(v₀,…,vₙ₊₁) = F(v₀,…,vᵢvᵢ₊₁,…)` for `i ≤ n`, and
    /// `F(vₙ₊₁v₀, v₁,…,vₙ)` for `i = n+1`.
    pub fn coface(&self, n: usize, i: usize) -> Matrix<F::Elem> {
        let (f, d, alg) = (&self.alg.field, self.alg.dim, self.alg);
        let mut entries = Vec::new();
        for code in 0..d.pow(n as u32 + 2) {
            let v = digits(code, n + 2, d);
            let (x, y) = if i <= n { (v[i], v[i + 1]) } else { (v[n + 1], v[0]) };
            for (c, k) in alg.mul[x][y].iter() {
                let w: Vec<usize> = if i <= n {
                    v[..i].iter().copied().chain([c]).chain(v[i + 2..].iter().copied()).collect()
                } else {
                    [c].into_iter().chain(v[1..=n].iter().copied()).collect()
                };
                entries.push((code, encode(&w, d), k.clone()));
            }
        }
        matrix_from_entries(f, self.dim(n + 1), self.dim(n), entries)
    }

    /// `(sⱼF)(v₀,…,vₙ₋₁) = F(v₀,…,vⱼ, 1, vⱼ₊₁,…)`.
    pub fn codegeneracy(&self, n: usize, j: usize) -> Matrix<F::Elem> {
        let (f, d, alg) = (&self.alg.field, self.alg.dim, self.alg);
        let mut entries = Vec::new();
        for code in 0..d.pow(n as u32) {
            let v = digits(code, n, d);
            for (c, u) in alg.unit.iter() {
                let w: Vec<usize> = v[..=j].iter().copied().chain([c]).chain(v[j + 1..].iter().copied()).collect();
                entries.push((code, encode(&w, d), u.clone()));
            }
        }
        matrix_from_entries(f, self.dim(n - 1), self.dim(n), entries)
    }

    /// Connes' operator `Dⁿ → Dⁿ⁻¹`, `B = N∘sₙ₋₁∘t`.
    pub fn connes_b(&self, n: usize) -> Matrix<F::Elem> {
        let f = &self.alg.field;
        let k = n - 1;
        let tau = self.tau(k);
        let mut norm = Matrix::zero(self.dim(k), self.dim(k));
        let mut power = Matrix::identity(f, self.dim(k));
        for i in 0..=k {
            let sign = f.signed((i * k) % 2 == 1, &f.one());
            norm = norm.add(f, &power.scaled(f, &sign));
            power = tau.compose(f, &power).expect("square");
        }
        let extra = self.codegeneracy(n, n - 1).compose(f, &self.tau(n)).expect("shapes agree");
        norm.compose(f, &extra).expect("shapes agree")
    }
}

/// Cross-validation of the operadic structure against both oracles.
///
/// Cofaces and differentials are compared for `n + 1 ≤ top`, codegeneracies
/// for `n ≤ top`; with a form, `τ`, faces and degeneracies are transported
/// through `f ↦ f̂`, and Connes' operator on the normalized slice is compared
/// for degrees `≤ top`.
pub fn verify_oracles<F: Field>(cyc: Option<&CyclicStructure<EndOperad<F>>>, op: &EndOperad<F>, top: usize) -> Vec<Check> {
    let f = op.field();
    let alg = op.algebra();
    let hoch = HochschildOracle::new(alg);
    let top = top.min(op.max_degree());
    let mut checks = Vec::new();
    let matrix_eq = |name: &str, statement: &str, cases: &[(usize, usize)], build: &(dyn Fn(usize, usize) -> Result<(Matrix<Elem<EndOperad<F>>>, Matrix<Elem<EndOperad<F>>>), OperadError> + Sync)| {
        Check::new(name, statement, format!("degrees ≤ {top}")).sweep(cases, |&(n, i)| {
            let (lhs, rhs) = build(n, i).map_err(|e| Counterexample::message(format!("n = {n}, index {i}: {e}")))?;
            for (c, (x, y)) in lhs.columns().iter().zip(rhs.columns()).enumerate() {
                compare(f, || format!("n = {n}, index {i}, basis {}", op.basis_label(n, c)), x, y)?;
            }
            Ok(())
        })
    };
    let face_cases: Vec<(usize, usize)> = (0..top).flat_map(|n| (0..=n + 1).map(move |i| (n, i))).collect();
    checks.push(matrix_eq("oracle.hochschild_cofaces", "operadic δᵢ = classical Hochschild coface", &face_cases, &|n, i| {
        Ok((operator_matrix(op, n, n as isize + 1, |x| op.coface(i, x))?, hoch.coface(n, i)))
    }));
    let degen_cases: Vec<(usize, usize)> = (1..=top).flat_map(|n| (0..n).map(move |j| (n, j))).collect();
    checks.push(matrix_eq("oracle.hochschild_codegeneracies", "operadic σⱼ = insertion of the unit", &degen_cases, &|n, j| {
        Ok((operator_matrix(op, n, n as isize - 1, |x| op.codegeneracy(j, x))?, hoch.codegeneracy(n, j)))
    }));
    let diff_cases: Vec<(usize, usize)> = (0..top).map(|n| (n, 0)).collect();
    checks.push(matrix_eq("oracle.hochschild_differential", "operadic d = Hochschild coboundary", &diff_cases, &|n, _| {
        Ok((operator_matrix(op, n, n as isize + 1, |x| op.differential(x))?, hoch.differential(n)))
    }));
    let Some(cyc) = cyc else { return checks };
    let Ok(dual) = DualCyclicOracle::new(alg) else { return checks };
    let tau_cases: Vec<(usize, usize)> = (0..=top).map(|n| (n, 0)).collect();
    checks.push(matrix_eq("oracle.dual_tau", "(τf)^ = t(f̂)", &tau_cases, &|n, _| {
        let lhs = dual.hat(n).compose(f, &operator_matrix(op, n, n as isize, |x| op.tau(x))?).expect("shapes");
        Ok((lhs, dual.tau(n).compose(f, &dual.hat(n)).expect("shapes")))
    }));
    checks.push(matrix_eq("oracle.dual_cofaces", "(δᵢf)^ = dᵢ(f̂)", &face_cases, &|n, i| {
        let lhs = dual.hat(n + 1).compose(f, &operator_matrix(op, n, n as isize + 1, |x| op.coface(i, x))?).expect("shapes");
        Ok((lhs, dual.coface(n, i).compose(f, &dual.hat(n)).expect("shapes")))
    }));
    checks.push(matrix_eq("oracle.dual_codegeneracies", "(σⱼf)^ = sⱼ(f̂)", &degen_cases, &|n, j| {
        let lhs = dual.hat(n - 1).compose(f, &operator_matrix(op, n, n as isize - 1, |x| op.codegeneracy(j, x))?).expect("shapes");
        Ok((lhs, dual.codegeneracy(n, j).compose(f, &dual.hat(n)).expect("shapes")))
    }));
    let b_cases: Vec<(usize, usize)> = (1..=top).map(|n| (n, 0)).collect();
    checks.push(Check::new("oracle.dual_connes_b", "(Bf)^ = B(f̂) on the normalized slice", format!("degrees ≤ {top}")).sweep(&b_cases, |&(n, _)| {
        let slice = cyc.normalized(n).map_err(|e| Counterexample::message(format!("n = {n}: {e}")))?;
        let (hat_lo, hat_hi, bd) = (dual.hat(n - 1), dual.hat(n), dual.connes_b(n));
        for (k, v) in slice.basis().iter().enumerate() {
            let fk = Cochain::new(n, v.clone());
            let b = cyc.connes_b(&fk).map_err(|e| Counterexample::message(format!("n = {n}: {e}")))?;
            compare(f, || format!("n = {n}, normalized basis vector {k}"), &hat_lo.apply(f, &b.coeffs), &bd.apply(f, &hat_hi.apply(f, v)))?;
        }
        Ok(())
    }));
    let b2_cases: Vec<(usize, usize)> = (2..=top).map(|n| (n, 0)).collect();
    checks.push(Check::new("oracle.dual_b_squared", "B∘B = 0 on the image of the normalized slice", format!("degrees ≤ {top}")).sweep(&b2_cases, |&(n, _)| {
        let slice = cyc.normalized(n).map_err(|e| Counterexample::message(format!("n = {n}: {e}")))?;
        let bb = dual.connes_b(n - 1).compose(f, &dual.connes_b(n)).expect("shapes");
        let hat = dual.hat(n);
        for (k, v) in slice.basis().iter().enumerate() {
            compare(f, || format!("n = {n}, normalized basis vector {k}"), &bb.apply(f, &hat.apply(f, v)), &SparseVec::new())?;
        }
        Ok(())
    }));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rational, Rationals};
    use crate::input::{parse_presentation, Presentation};

    pub(crate) fn dual_numbers() -> AlgebraPresentation<Rationals> {
        let text = r#"{"kind":"algebra","field":"Q","dim":2,"basis_names":["1","x"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":["1","0"],
            "form":[["0","1"],["1","0"]]}"#;
        let Presentation::Algebra(raw) = parse_presentation(text).unwrap() else { panic!() };
        AlgebraPresentation::from_raw(Rationals, &raw).unwrap()
    }

    fn ground_field() -> AlgebraPresentation<PrimeField> {
        let text = r#"{"kind":"algebra","field":"F3","dim":1,"mul":[[0,0,0,"1"]],"unit":["1"],"form":[["1"]]}"#;
        let Presentation::Algebra(raw) = parse_presentation(text).unwrap() else { panic!() };
        AlgebraPresentation::from_raw(PrimeField::new(3).unwrap(), &raw).unwrap()
    }

    #[test]
    fn dual_numbers_validate() {
        assert!(validate_algebra(&dual_numbers()).iter().all(|c| c.passed));
    }

    #[test]
    fn broken_unit_is_reported() {
        let mut alg = dual_numbers();
        alg.unit = SparseVec::unit(&Rationals, 1);
        let checks = validate_algebra(&alg);
        let unit = checks.iter().find(|c| c.name == "algebra.unit").unwrap();
        assert!(!unit.passed);
        assert!(matches!(build_endo_operad(alg, 3, BuildMode::Strict), Err(EndoError::Validation(_))));
    }

    #[test]
    fn dimensions_and_cutoff() {
        let op = build_endo_operad(dual_numbers(), 4, BuildMode::Strict).unwrap();
        assert_eq!(op.dim(3), 16);
        assert!(matches!(build_endo_operad(dual_numbers(), 1, BuildMode::Strict), Err(EndoError::CutoffTooSmall(1))));
    }

    #[test]
    fn multiplication_axioms() {
        let op = build_endo_operad(dual_numbers(), 4, BuildMode::Strict).unwrap();
        let (mu, e, id) = (op.multiplication(), op.unit(), op.identity());
        assert_eq!(op.compose(&mu, &mu, 1).unwrap(), op.compose(&mu, &mu, 2).unwrap());
        assert_eq!(op.compose(&mu, &e, 1).unwrap(), id);
        assert_eq!(op.compose(&mu, &e, 2).unwrap(), id);
        assert_eq!(op.gamma(&mu, &[e.clone(), id.clone()]).unwrap(), id);
        assert_eq!(op.codegeneracy(0, &id).unwrap(), e);
        assert_eq!(op.codegeneracy(0, &mu).unwrap(), id);
        assert!(op.differential(&e).unwrap().is_zero());
        assert_eq!(op.cup(&mu, &e).unwrap(), mu);
        assert_eq!(op.cup(&e, &mu).unwrap(), mu);
        let two = Rational::from_integer(2);
        assert_eq!(op.comp_bar(&mu, &id).unwrap(), mu.scaled(&Rationals, &two));
        assert_eq!(op.comp_bar(&id, &mu).unwrap(), mu);
    }

    #[test]
    fn tau_on_small_cases() {
        let op = build_endo_operad(dual_numbers(), 4, BuildMode::Strict).unwrap();
        assert_eq!(op.tau(&op.multiplication()).unwrap(), op.multiplication());
        assert_eq!(op.tau(&op.identity()).unwrap(), op.identity());
        for n in 0..=4 {
            for a in 0..op.dim(n) {
                let mut x = Cochain::basis(&Rationals, n, a);
                for _ in 0..=n {
                    x = op.tau(&x).unwrap();
                }
                assert_eq!(x, Cochain::basis(&Rationals, n, a));
            }
        }
        let k = build_endo_operad(ground_field(), 4, BuildMode::Strict).unwrap();
        for n in 0..=4 {
            let x = Cochain::basis(&PrimeField::new(3).unwrap(), n, 0);
            assert_eq!(k.tau(&x).unwrap(), x);
        }
    }

    #[test]
    fn oracle_matches_and_ground_field_cohomology() {
        let alg = ground_field();
        assert_eq!(HochschildOracle::new(&alg).cohomology_dims(4), vec![1, 0, 0, 0, 0]);
        let op = build_endo_operad(alg, 4, BuildMode::Strict).unwrap();
        let checks = verify_oracles(None, &op, 4);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn dual_numbers_satisfy_operad_axioms() {
        let op = build_endo_operad(dual_numbers(), 5, BuildMode::Strict).unwrap();
        for c in crate::operad::verify_operad(&op, 5, 50_000) {
            assert!(c.passed, "{} failed: {:?}", c.name, c.counterexample);
        }
    }
}
