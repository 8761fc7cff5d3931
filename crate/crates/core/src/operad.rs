//! Non-symmetric operads with multiplication and the structure they carry:
//! cofaces, codegeneracies, the differential, cup product, composition
//! product and Gerstenhaber bracket.
//!
//! An instance only supplies basis-level partial compositions; everything
//! else is derived here by bilinear extension.

use rayon::prelude::*;
use thiserror::Error;

use crate::exactfield::Field;
use crate::linalg::{Matrix, SparseVec};
use crate::report::{compare, Check, Counterexample};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperadError {
    #[error("slot {slot} is out of range for an element of degree {degree}")]
    SlotOutOfRange { slot: usize, degree: isize },
    #[error("operator index {index} is out of range in degree {degree}")]
    OperatorIndex { index: usize, degree: isize },
    #[error("degree {degree} exceeds the cutoff {max}")]
    DegreeOverflow { degree: isize, max: usize },
    #[error("basis index {index} out of range for O({degree}) of dimension {dim}")]
    IndexOutOfRange { index: usize, degree: usize, dim: usize },
    #[error("expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("the operad has no cyclic structure")]
    NotCyclic,
    #[error("operation needs degree at least {min}, got {degree}")]
    DegreeTooSmall { degree: isize, min: isize },
}

/// An element of `O(n)` written in the instance's basis.
///
/// Negative degrees stand for the zero space; they arise from operators that
/// lower degree (B on degree 0, H on small degrees) and are always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain<E> {
    pub degree: isize,
    pub coeffs: SparseVec<E>,
}

impl<E: Clone + PartialEq> Cochain<E> {
    pub fn zero(degree: isize) -> Self {
        Cochain { degree, coeffs: SparseVec::new() }
    }

    pub fn new(degree: usize, coeffs: SparseVec<E>) -> Self {
        Cochain { degree: degree as isize, coeffs }
    }

    pub fn basis<F: Field<Elem = E>>(field: &F, degree: usize, index: usize) -> Self {
        Cochain { degree: degree as isize, coeffs: SparseVec::unit(field, index) }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding cochains of different degrees");
        Cochain { degree: self.degree, coeffs: self.coeffs.add(field, &other.coeffs) }
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "subtracting cochains of different degrees");
        Cochain { degree: self.degree, coeffs: self.coeffs.sub(field, &other.coeffs) }
    }

    pub fn add_scaled<F: Field<Elem = E>>(&mut self, field: &F, c: &E, other: &Self) {
        assert_eq!(self.degree, other.degree, "adding cochains of different degrees");
        self.coeffs.add_scaled(field, c, &other.coeffs);
    }

    /// `self += ±other`.
    pub fn add_signed<F: Field<Elem = E>>(&mut self, field: &F, negate: bool, other: &Self) {
        let c = field.signed(negate, &field.one());
        self.add_scaled(field, &c, other);
    }

    pub fn scaled<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        Cochain { degree: self.degree, coeffs: self.coeffs.scaled(field, c) }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        Cochain { degree: self.degree, coeffs: self.coeffs.neg(field) }
    }

    pub fn signed<F: Field<Elem = E>>(&self, field: &F, negate: bool) -> Self {
        if negate {
            self.neg(field)
        } else {
            self.clone()
        }
    }
}

/// `(-1)^k` is negative.
pub fn odd(k: isize) -> bool {
    k.rem_euclid(2) == 1
}

pub type Elem<O> = <<O as Operad>::F as Field>::Elem;
pub type OpCochain<O> = Cochain<Elem<O>>;

/// A non-symmetric operad with multiplication, truncated at a degree cutoff.
pub trait Operad: Send + Sync {
    type F: Field;

    fn field(&self) -> &Self::F;

    /// Largest degree `n` for which `O(n)` is available.
    fn max_degree(&self) -> usize;

    fn dim(&self, n: usize) -> usize;

    /// Adds `coeff · (a ∘_slot b)` to `out`, where `a` is basis element of
    /// `O(m)`, `b` a basis element of `O(n)` and `1 ≤ slot ≤ m`.
    fn compose_basis_into(
        &self,
        m: usize,
        a: usize,
        n: usize,
        b: usize,
        slot: usize,
        coeff: &Elem<Self>,
        out: &mut Vec<(usize, Elem<Self>)>,
    );

    fn identity(&self) -> OpCochain<Self>;
    fn multiplication(&self) -> OpCochain<Self>;
    fn unit(&self) -> OpCochain<Self>;

    /// Adds `coeff · τₙ(a)` to `out`; returns false if the operad is not cyclic.
    fn tau_basis_into(
        &self,
        _n: usize,
        _a: usize,
        _coeff: &Elem<Self>,
        _out: &mut Vec<(usize, Elem<Self>)>,
    ) -> bool {
        false
    }

    fn is_cyclic(&self) -> bool;

    fn basis_label(&self, n: usize, a: usize) -> String;

    /// Dimension of `O(degree)`, zero for negative degrees.
    fn dim_of(&self, degree: isize) -> usize {
        if degree < 0 {
            0
        } else {
            self.dim(degree as usize)
        }
    }

    fn check_degree(&self, degree: isize) -> Result<(), OperadError> {
        if degree > self.max_degree() as isize {
            Err(OperadError::DegreeOverflow { degree, max: self.max_degree() })
        } else {
            Ok(())
        }
    }

    fn check_cochain(&self, f: &OpCochain<Self>) -> Result<(), OperadError> {
        self.check_degree(f.degree)?;
        if let Some(index) = f.coeffs.max_index() {
            let dim = self.dim_of(f.degree);
            if index >= dim {
                return Err(OperadError::IndexOutOfRange { index, degree: f.degree.max(0) as usize, dim });
            }
        }
        Ok(())
    }

    /// `f ∘ᵢ g` for `1 ≤ i ≤ deg f`.
    fn compose(&self, f: &OpCochain<Self>, g: &OpCochain<Self>, i: usize) -> Result<OpCochain<Self>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        let out = m + n - 1;
        if m < 0 || n < 0 {
            return Ok(Cochain::zero(out));
        }
        if i < 1 || i as isize > m {
            return Err(OperadError::SlotOutOfRange { slot: i, degree: m });
        }
        self.check_degree(out)?;
        let field = self.field();
        let mut terms = Vec::new();
        for (a, x) in f.coeffs.iter() {
            for (b, y) in g.coeffs.iter() {
                let c = field.mul(x, y);
                self.compose_basis_into(m as usize, a, n as usize, b, i, &c, &mut terms);
            }
        }
        Ok(Cochain { degree: out, coeffs: SparseVec::from_terms(field, terms) })
    }

    /// `γ(f; g₁,…,gₙ)`, inserting `gₙ` first and `g₁` last.
    fn gamma(&self, f: &OpCochain<Self>, gs: &[OpCochain<Self>]) -> Result<OpCochain<Self>, OperadError> {
        if f.degree < 1 || gs.len() != f.degree as usize {
            return Err(OperadError::ArityMismatch { expected: f.degree.max(0) as usize, got: gs.len() });
        }
        let mut acc = f.clone();
        for (k, g) in gs.iter().enumerate().rev() {
            acc = self.compose(&acc, g, k + 1)?;
        }
        Ok(acc)
    }

    /// `δᵢ f` for `0 ≤ i ≤ n+1`.
    fn coface(&self, i: usize, f: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        let n = f.degree;
        if n < 0 {
            return Ok(Cochain::zero(n + 1));
        }
        if i as isize > n + 1 {
            return Err(OperadError::OperatorIndex { index: i, degree: n });
        }
        let mu = self.multiplication();
        if i == 0 {
            self.compose(&mu, f, 2)
        } else if (i as isize) <= n {
            self.compose(f, &mu, i)
        } else {
            self.compose(&mu, f, 1)
        }
    }

    /// `σⱼ f = f ∘_{j+1} e` for `0 ≤ j ≤ n−1`.
    fn codegeneracy(&self, j: usize, f: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        let n = f.degree;
        if n < 0 {
            return Ok(Cochain::zero(n - 1));
        }
        if j as isize >= n {
            return Err(OperadError::OperatorIndex { index: j, degree: n });
        }
        self.compose(f, &self.unit(), j + 1)
    }

    /// `d = Σᵢ (−1)^i δᵢ`.
    fn differential(&self, f: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        let n = f.degree;
        let mut out = Cochain::zero(n + 1);
        if n < 0 {
            return Ok(out);
        }
        self.check_degree(n + 1)?;
        let field = self.field();
        for i in 0..=(n as usize + 1) {
            out.add_signed(field, i % 2 == 1, &self.coface(i, f)?);
        }
        Ok(out)
    }

    /// `f ∪ g = (μ ∘₁ f) ∘_{m+1} g`, computed as `(μ ∘₂ g) ∘₁ f` when `μ ∘₁ f`
    /// would exceed the cutoff.
    fn cup(&self, f: &OpCochain<Self>, g: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        if m < 0 || n < 0 {
            return Ok(Cochain::zero(m + n));
        }
        self.check_degree(m + n)?;
        let mu = self.multiplication();
        if m < self.max_degree() as isize {
            self.compose(&self.compose(&mu, f, 1)?, g, m as usize + 1)
        } else {
            self.compose(&self.compose(&mu, g, 2)?, f, 1)
        }
    }

    /// `f ∘̄ g = (−1)^{(m−1)(n−1)} Σᵢ (−1)^{(n−1)(i−1)} f ∘ᵢ g`.
    fn comp_bar(&self, f: &OpCochain<Self>, g: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        let mut out = Cochain::zero(m + n - 1);
        if m <= 0 || n < 0 {
            return Ok(out);
        }
        let field = self.field();
        let global = odd((m - 1) * (n - 1));
        for i in 1..=m {
            let term = self.compose(f, g, i as usize)?;
            out.add_signed(field, global ^ odd((n - 1) * (i - 1)), &term);
        }
        Ok(out)
    }

    /// `{f, g} = f ∘̄ g − (−1)^{(m−1)(n−1)} g ∘̄ f`.
    fn bracket(&self, f: &OpCochain<Self>, g: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        let mut out = self.comp_bar(f, g)?;
        let other = self.comp_bar(g, f)?;
        out.add_signed(self.field(), !odd((m - 1) * (n - 1)), &other);
        Ok(out)
    }

    /// `τₙ f`; τ₀ is the identity.
    fn tau(&self, f: &OpCochain<Self>) -> Result<OpCochain<Self>, OperadError> {
        if !self.is_cyclic() {
            return Err(OperadError::NotCyclic);
        }
        if f.degree <= 0 {
            return Ok(f.clone());
        }
        self.check_cochain(f)?;
        let mut terms = Vec::new();
        for (a, x) in f.coeffs.iter() {
            self.tau_basis_into(f.degree as usize, a, x, &mut terms);
        }
        Ok(Cochain { degree: f.degree, coeffs: SparseVec::from_terms(self.field(), terms) })
    }
}

/// Matrix of a linear operator `O(n) → O(target)`, evaluated on every basis
/// element in parallel.
pub fn operator_matrix<O, Op>(op: &O, n: usize, target: isize, apply: Op) -> Result<Matrix<Elem<O>>, OperadError>
where
    O: Operad + ?Sized,
    Op: Fn(&OpCochain<O>) -> Result<OpCochain<O>, OperadError> + Sync,
{
    let field = op.field();
    let columns = (0..op.dim(n))
        .into_par_iter()
        .map(|a| apply(&Cochain::basis(field, n, a)).map(|c| c.coeffs))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(op.dim_of(target), columns))
}

/// Renders a cochain as `c·label + …` for reports.
pub fn render_cochain<O: Operad + ?Sized>(op: &O, f: &OpCochain<O>) -> Vec<(usize, String)> {
    f.coeffs.iter().map(|(i, c)| (i, op.field().render(c))).collect()
}

/// Basis cases for a sweep: one `(degree, index)` per argument.
pub type BasisCase = Vec<(usize, usize)>;

/// All basis tuples whose degree tuples are listed by `level(t)`, taking
/// whole levels `t = 0, 1, …, top` while the case count stays within
/// `budget`. Returns the cases and the last level included.
pub fn graded_cases<O: Operad + ?Sized>(
    op: &O,
    top: usize,
    budget: usize,
    level: impl Fn(usize) -> Vec<Vec<usize>>,
) -> (Vec<BasisCase>, Option<usize>) {
    let mut cases = Vec::new();
    let mut reached = None;
    for t in 0..=top {
        let mut here: Vec<BasisCase> = Vec::new();
        for degs in level(t) {
            if degs.iter().any(|&d| d > op.max_degree()) {
                continue;
            }
            let mut acc: Vec<BasisCase> = vec![Vec::new()];
            for &d in &degs {
                acc = acc.into_iter().flat_map(|c| (0..op.dim(d)).map(move |a| {
                    let mut c = c.clone();
                    c.push((d, a));
                    c
                })).collect();
            }
            here.extend(acc);
            if cases.len() + here.len() > budget {
                break;
            }
        }
        if cases.len() + here.len() > budget {
            break;
        }
        cases.extend(here);
        reached = Some(t);
    }
    (cases, reached)
}

fn degree_tuples(arity: usize, sum: usize) -> Vec<Vec<usize>> {
    if arity == 1 {
        return vec![vec![sum]];
    }
    (0..=sum)
        .flat_map(|first| degree_tuples(arity - 1, sum - first).into_iter().map(move |mut rest| {
            rest.insert(0, first);
            rest
        }))
        .collect()
}

fn scope_of(reached: Option<usize>, what: &str) -> String {
    match reached {
        Some(t) => format!("all basis {what} ≤ {t}"),
        None => format!("no {what} fit the case budget"),
    }
}

fn oerr(case: impl FnOnce() -> String) -> impl FnOnce(OperadError) -> Counterexample {
    move |e| Counterexample::message(format!("{}: {e}", case()))
}

/// The operad-with-multiplication axioms, the cosimplicial identities, and
/// the chain-level dga and dg-Lie identities, swept over basis elements.
/// Sweeps over pairs and triples take whole degree levels while the case
/// count stays within `budget`; each check's scope records the level reached.
pub fn verify_operad<O: Operad>(op: &O, top: usize, budget: usize) -> Vec<Check> {
    let f_ = op.field();
    let top = top.min(op.max_degree());
    let b = |(n, a): (usize, usize)| Cochain::basis(f_, n, a);
    let lbl = |(n, a): (usize, usize)| op.basis_label(n, a);
    let cmp = |case: &dyn Fn() -> String, x: &OpCochain<O>, y: &OpCochain<O>| -> Result<(), Counterexample> {
        if x.degree != y.degree && !(x.is_zero() && y.is_zero()) {
            return Err(Counterexample::message(format!("{}: degrees {} vs {}", case(), x.degree, y.degree)));
        }
        compare(f_, case, &x.coeffs, &y.coeffs)
    };
    let singles: Vec<(usize, usize)> = (0..=top).flat_map(|n| (0..op.dim(n)).map(move |a| (n, a))).collect();
    let mut checks = Vec::new();

    checks.push(Check::new("operad.unit", "f ∘ᵢ id = f and id ∘₁ f = f", format!("all basis elements of degree ≤ {top}")).sweep(&singles, |&x| {
        let case = || lbl(x);
        let f = b(x);
        let id = op.identity();
        for i in 1..=x.0 {
            cmp(&case, &op.compose(&f, &id, i).map_err(oerr(case))?, &f)?;
        }
        cmp(&case, &op.compose(&id, &f, 1).map_err(oerr(case))?, &f)
    }));
    checks.push(Check::new("operad.multiplication", "μ ∘₁ μ = μ ∘₂ μ and μ ∘₁ e = id = μ ∘₂ e", "μ, e").sweep(&[()], |_| {
        let (mu, e, id) = (op.multiplication(), op.unit(), op.identity());
        let case = || "μ".to_string();
        cmp(&case, &op.compose(&mu, &mu, 1).map_err(oerr(case))?, &op.compose(&mu, &mu, 2).map_err(oerr(case))?)?;
        cmp(&case, &op.compose(&mu, &e, 1).map_err(oerr(case))?, &id)?;
        cmp(&case, &op.compose(&mu, &e, 2).map_err(oerr(case))?, &id)
    }));
    checks.push(Check::new("operad.gamma_unit", "γ(f; id, …, id) = f", format!("all basis elements of degree 1..={top}")).sweep(&singles, |&x| {
        if x.0 == 0 {
            return Ok(());
        }
        let case = || lbl(x);
        let ids = vec![op.identity(); x.0];
        cmp(&case, &op.gamma(&b(x), &ids).map_err(oerr(case))?, &b(x))
    }));

    // triples by output degree m + n + p − 2
    let (seq, reached) = graded_cases(op, top, budget, |t| {
        degree_tuples(3, t + 2).into_iter().filter(|d| d[0] >= 1 && d[1] >= 1 && d[0] + d[1] - 1 <= top && d[1] + d[2] <= top + 1).collect()
    });
    checks.push(Check::new("operad.sequential_associativity", "(f ∘ᵢ g) ∘_{i+j−1} h = f ∘ᵢ (g ∘ⱼ h)", scope_of(reached, "triples, output degree")).sweep(&seq, |c| {
        let (x, y, z) = (c[0], c[1], c[2]);
        let (f, g, h) = (b(x), b(y), b(z));
        for i in 1..=x.0 {
            for j in 1..=y.0 {
                let case = || format!("f = {}, g = {}, h = {}, i = {i}, j = {j}", lbl(x), lbl(y), lbl(z));
                let lhs = op.compose(&op.compose(&f, &g, i).map_err(oerr(case))?, &h, i + j - 1).map_err(oerr(case))?;
                let rhs = op.compose(&f, &op.compose(&g, &h, j).map_err(oerr(case))?, i).map_err(oerr(case))?;
                cmp(&case, &lhs, &rhs)?;
            }
        }
        Ok(())
    }));
    let (par, reached) = graded_cases(op, top, budget, |t| {
        degree_tuples(3, t + 2).into_iter().filter(|d| d[0] >= 2 && d[0] + d[1] <= top + 1 && d[0] + d[2] <= top + 1).collect()
    });
    checks.push(Check::new("operad.parallel_associativity", "(f ∘ᵢ g) ∘_{k+n−1} h = (f ∘ₖ h) ∘ᵢ g for i < k", scope_of(reached, "triples, output degree")).sweep(&par, |c| {
        let (x, y, z) = (c[0], c[1], c[2]);
        let (f, g, h) = (b(x), b(y), b(z));
        for k in 2..=x.0 {
            for i in 1..k {
                let case = || format!("f = {}, g = {}, h = {}, i = {i}, k = {k}", lbl(x), lbl(y), lbl(z));
                let lhs = op.compose(&op.compose(&f, &g, i).map_err(oerr(case))?, &h, k + y.0 - 1).map_err(oerr(case))?;
                let rhs = op.compose(&op.compose(&f, &h, k).map_err(oerr(case))?, &g, i).map_err(oerr(case))?;
                cmp(&case, &lhs, &rhs)?;
            }
        }
        Ok(())
    }));

    let below = |k: usize| singles.iter().copied().filter(|x| x.0 + k <= top).collect::<Vec<_>>();
    checks.push(Check::new("cosimplicial.cofaces", "δⱼδᵢ = δᵢδⱼ₋₁ for i < j", format!("all basis elements of degree ≤ {}", top as isize - 2)).sweep(&below(2), |&x| {
        let f = b(x);
        for j in 1..=x.0 + 2 {
            for i in 0..j {
                let case = || format!("f = {}, i = {i}, j = {j}", lbl(x));
                let lhs = op.coface(j, &op.coface(i, &f).map_err(oerr(case))?).map_err(oerr(case))?;
                let rhs = op.coface(i, &op.coface(j - 1, &f).map_err(oerr(case))?).map_err(oerr(case))?;
                cmp(&case, &lhs, &rhs)?;
            }
        }
        Ok(())
    }));
    checks.push(Check::new("cosimplicial.codegeneracies", "σⱼσᵢ = σᵢσⱼ₊₁ for i ≤ j", format!("all basis elements of degree 2..={top}")).sweep(&singles, |&x| {
        let f = b(x);
        for j in 0..x.0.saturating_sub(1) {
            for i in 0..=j {
                let case = || format!("f = {}, i = {i}, j = {j}", lbl(x));
                let lhs = op.codegeneracy(j, &op.codegeneracy(i, &f).map_err(oerr(case))?).map_err(oerr(case))?;
                let rhs = op.codegeneracy(i, &op.codegeneracy(j + 1, &f).map_err(oerr(case))?).map_err(oerr(case))?;
                cmp(&case, &lhs, &rhs)?;
            }
        }
        Ok(())
    }));
    checks.push(Check::new("cosimplicial.mixed", "σⱼδᵢ = δᵢσⱼ₋₁ (i < j), id (i ∈ {j, j+1}), δᵢ₋₁σⱼ (i > j+1)", format!("all basis elements of degree ≤ {}", top as isize - 1)).sweep(&below(1), |&x| {
        let f = b(x);
        let n = x.0;
        for i in 0..=n + 1 {
            for j in 0..=n {
                let case = || format!("f = {}, i = {i}, j = {j}", lbl(x));
                let lhs = op.codegeneracy(j, &op.coface(i, &f).map_err(oerr(case))?).map_err(oerr(case))?;
                let rhs = if i < j {
                    op.coface(i, &op.codegeneracy(j - 1, &f).map_err(oerr(case))?).map_err(oerr(case))?
                } else if i == j || i == j + 1 {
                    f.clone()
                } else {
                    op.coface(i - 1, &op.codegeneracy(j, &f).map_err(oerr(case))?).map_err(oerr(case))?
                };
                cmp(&case, &lhs, &rhs)?;
            }
        }
        Ok(())
    }));
    checks.push(Check::new("chain.d_squared", "d∘d = 0", format!("all basis elements of degree ≤ {}", top as isize - 2)).sweep(&below(2), |&x| {
        let case = || lbl(x);
        let dd = op.differential(&op.differential(&b(x)).map_err(oerr(case))?).map_err(oerr(case))?;
        cmp(&case, &dd, &Cochain::zero(x.0 as isize + 2))
    }));

    checks.push(Check::new("dga.cup_unit", "f ∪ e = f = e ∪ f", format!("all basis elements of degree ≤ {top}")).sweep(&singles, |&x| {
        let case = || lbl(x);
        let (f, e) = (b(x), op.unit());
        cmp(&case, &op.cup(&f, &e).map_err(oerr(case))?, &f)?;
        cmp(&case, &op.cup(&e, &f).map_err(oerr(case))?, &f)
    }));
    let (cup3, reached) = graded_cases(op, top, budget, |t| degree_tuples(3, t));
    checks.push(Check::new("dga.cup_associative", "(f ∪ g) ∪ h = f ∪ (g ∪ h)", scope_of(reached, "triples, total degree")).sweep(&cup3, |c| {
        let (x, y, z) = (c[0], c[1], c[2]);
        let case = || format!("f = {}, g = {}, h = {}", lbl(x), lbl(y), lbl(z));
        let (f, g, h) = (b(x), b(y), b(z));
        let lhs = op.cup(&op.cup(&f, &g).map_err(oerr(case))?, &h).map_err(oerr(case))?;
        let rhs = op.cup(&f, &op.cup(&g, &h).map_err(oerr(case))?).map_err(oerr(case))?;
        cmp(&case, &lhs, &rhs)
    }));
    let (leib, reached) = graded_cases(op, top.saturating_sub(1), budget, |t| degree_tuples(2, t));
    checks.push(Check::new("dga.leibniz", "d(f ∪ g) = df ∪ g + (−1)^m f ∪ dg", scope_of(reached, "pairs, total degree")).sweep(&leib, |c| {
        let (x, y) = (c[0], c[1]);
        let case = || format!("f = {}, g = {}", lbl(x), lbl(y));
        let (f, g) = (b(x), b(y));
        let lhs = op.differential(&op.cup(&f, &g).map_err(oerr(case))?).map_err(oerr(case))?;
        let mut rhs = op.cup(&op.differential(&f).map_err(oerr(case))?, &g).map_err(oerr(case))?;
        rhs.add_signed(f_, odd(x.0 as isize), &op.cup(&f, &op.differential(&g).map_err(oerr(case))?).map_err(oerr(case))?);
        cmp(&case, &lhs, &rhs)
    }));

    // pairs and triples for the bracket, by output degree
    let (br2, reached) = graded_cases(op, top, budget, |t| degree_tuples(2, t + 1).into_iter().filter(|d| d[0] <= top && d[1] <= top).collect());
    checks.push(Check::new("dgla.antisymmetry", "{f,g} = −(−1)^{(m−1)(n−1)} {g,f}", scope_of(reached, "pairs, output degree")).sweep(&br2, |c| {
        let (x, y) = (c[0], c[1]);
        let case = || format!("f = {}, g = {}", lbl(x), lbl(y));
        let (f, g) = (b(x), b(y));
        let lhs = op.bracket(&f, &g).map_err(oerr(case))?;
        let rhs = op.bracket(&g, &f).map_err(oerr(case))?.signed(f_, !odd((x.0 as isize - 1) * (y.0 as isize - 1)));
        cmp(&case, &lhs, &rhs)
    }));
    let (der, reached) = graded_cases(op, top, budget, |t| degree_tuples(2, t).into_iter().filter(|d| d[0] < top && d[1] < top).collect());
    checks.push(Check::new("dgla.derivation", "d{f,g} = {df,g} + (−1)^{m−1} {f,dg}", scope_of(reached, "pairs, degree of d{f,g}")).sweep(&der, |c| {
        let (x, y) = (c[0], c[1]);
        let case = || format!("f = {}, g = {}", lbl(x), lbl(y));
        let (f, g) = (b(x), b(y));
        let lhs = op.differential(&op.bracket(&f, &g).map_err(oerr(case))?).map_err(oerr(case))?;
        let mut rhs = op.bracket(&op.differential(&f).map_err(oerr(case))?, &g).map_err(oerr(case))?;
        rhs.add_signed(f_, odd(x.0 as isize - 1), &op.bracket(&f, &op.differential(&g).map_err(oerr(case))?).map_err(oerr(case))?);
        cmp(&case, &lhs, &rhs)
    }));
    let (jac, reached) = graded_cases(op, top, budget, |t| {
        degree_tuples(3, t + 2).into_iter().filter(|d| d.iter().all(|&k| k <= top) && d[0] + d[1] <= top + 1 && d[1] + d[2] <= top + 1 && d[0] + d[2] <= top + 1).collect()
    });
    checks.push(Check::new("dgla.jacobi", "Σ_cyclic (−1)^{(m−1)(p−1)} {f,{g,h}} = 0", scope_of(reached, "triples, output degree")).sweep(&jac, |c| {
        let (x, y, z) = (c[0], c[1], c[2]);
        let case = || format!("f = {}, g = {}, h = {}", lbl(x), lbl(y), lbl(z));
        let (f, g, h) = (b(x), b(y), b(z));
        let s = |u: usize, v: usize| odd((u as isize - 1) * (v as isize - 1));
        let mut sum = op.bracket(&f, &op.bracket(&g, &h).map_err(oerr(case))?).map_err(oerr(case))?.signed(f_, s(x.0, z.0));
        sum.add_signed(f_, s(y.0, x.0), &op.bracket(&g, &op.bracket(&h, &f).map_err(oerr(case))?).map_err(oerr(case))?);
        sum.add_signed(f_, s(z.0, y.0), &op.bracket(&h, &op.bracket(&f, &g).map_err(oerr(case))?).map_err(oerr(case))?);
        cmp(&case, &sum, &Cochain::zero(sum.degree))
    }));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{Rational, Rationals};

    /// The associative operad: every O(n) is one-dimensional.
    struct Assoc {
        max: usize,
    }

    impl Operad for Assoc {
        type F = Rationals;
        fn field(&self) -> &Rationals {
            &Rationals
        }
        fn max_degree(&self) -> usize {
            self.max
        }
        fn dim(&self, _n: usize) -> usize {
            1
        }
        fn compose_basis_into(
            &self,
            _m: usize,
            _a: usize,
            _n: usize,
            _b: usize,
            _slot: usize,
            coeff: &Rational,
            out: &mut Vec<(usize, Rational)>,
        ) {
            out.push((0, coeff.clone()));
        }
        fn identity(&self) -> Cochain<Rational> {
            Cochain::basis(&Rationals, 1, 0)
        }
        fn multiplication(&self) -> Cochain<Rational> {
            Cochain::basis(&Rationals, 2, 0)
        }
        fn unit(&self) -> Cochain<Rational> {
            Cochain::basis(&Rationals, 0, 0)
        }
        fn is_cyclic(&self) -> bool {
            false
        }
        fn basis_label(&self, n: usize, _a: usize) -> String {
            format!("a{n}")
        }
    }

    fn b(n: usize) -> Cochain<Rational> {
        Cochain::basis(&Rationals, n, 0)
    }

    #[test]
    fn differential_alternates() {
        let op = Assoc { max: 6 };
        // d(x_n) = Σ_{i=0}^{n+1} (−1)^i x_{n+1}, which vanishes for even n
        for n in 0..5 {
            let d = op.differential(&b(n)).unwrap();
            assert_eq!(d.is_zero(), n % 2 == 0, "degree {n}");
            assert!(op.differential(&d).unwrap().is_zero());
        }
    }

    #[test]
    fn errors_are_reported() {
        let op = Assoc { max: 3 };
        assert_eq!(op.compose(&b(2), &b(1), 3), Err(OperadError::SlotOutOfRange { slot: 3, degree: 2 }));
        assert_eq!(op.compose(&b(3), &b(2), 1), Err(OperadError::DegreeOverflow { degree: 4, max: 3 }));
        assert_eq!(op.coface(4, &b(2)), Err(OperadError::OperatorIndex { index: 4, degree: 2 }));
        assert_eq!(op.codegeneracy(0, &b(0)), Err(OperadError::OperatorIndex { index: 0, degree: 0 }));
        assert_eq!(op.gamma(&b(2), &[b(1)]), Err(OperadError::ArityMismatch { expected: 2, got: 1 }));
        assert_eq!(op.tau(&b(1)), Err(OperadError::NotCyclic));
        assert!(op.differential(&b(3)).is_err());
    }

    #[test]
    fn comp_bar_with_identity_counts_slots() {
        let op = Assoc { max: 5 };
        let r = op.comp_bar(&b(3), &op.identity()).unwrap();
        assert_eq!(r, b(3).scaled(&Rationals, &Rational::from_integer(3)));
        assert!(op.comp_bar(&b(0), &b(2)).unwrap().is_zero());
        assert!(op.bracket(&op.unit(), &op.unit()).unwrap().is_zero());
    }

    #[test]
    fn cup_at_cutoff_uses_second_form() {
        let op = Assoc { max: 3 };
        assert_eq!(op.cup(&b(3), &b(0)).unwrap(), b(3));
        assert_eq!(op.cup(&b(1), &b(2)).unwrap(), b(3));
    }

    #[test]
    fn negative_degrees_are_zero() {
        let op = Assoc { max: 3 };
        let z = Cochain::<Rational>::zero(-1);
        assert_eq!(op.differential(&z).unwrap(), Cochain::zero(0));
        assert_eq!(op.cup(&z, &b(1)).unwrap(), Cochain::zero(0));
        assert_eq!(op.compose(&op.multiplication(), &Cochain::zero(-2), 1).unwrap(), Cochain::zero(-1));
    }

    #[test]
    fn assoc_satisfies_operad_axioms() {
        let op = Assoc { max: 6 };
        for c in verify_operad(&op, 6, 10_000) {
            assert!(c.passed, "{} failed: {:?}", c.name, c.counterexample);
        }
    }

    #[test]
    fn case_budget_limits_levels() {
        let op = Assoc { max: 6 };
        let (cases, reached) = graded_cases(&op, 6, 5, |t| degree_tuples(2, t));
        // levels 0, 1, 2 contribute 1 + 2 + 3 cases
        assert_eq!((cases.len(), reached), (3, Some(1)));
    }
}
