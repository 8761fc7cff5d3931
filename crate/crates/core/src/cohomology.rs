//! Cohomology of the normalized cochain complex, the induced BV structure on
//! classes, and cyclic cohomology of the mixed complex `(C̄, d, B)`.
//!
//! Grading is cohomological throughout. The total complex in degree `m` is
//! `Tᵐ = ⊕_{k≥0} C̄^{m+2k}` with `D(c_m, c_{m+2}, …) = (d c_m + B c_{m+2}, …)`.
//! Only finitely many summands fit under the operad cutoff, so we work with
//! the subcomplexes `Tᵐ_K = ⊕_{k≤K} C̄^{m+2k}`: `D` never raises `k`, so these
//! are honest subcomplexes and `HCᵐ` is their colimit in `K`. For a cutoff
//! `N` the reported `HCᵐ` uses the largest `K` with `m + 2K + 1 ≤ N`, and
//! degrees `m ≤ N − 3` (so that `K ≥ 1`).
//!
//! The Connes sequence comes from `0 → C̄ → T_K → T_{K−1}[2] → 0`:
//! `⋯ → Hᵐ →I HCᵐ →S HCᵐ⁺² →∂ Hᵐ⁺¹ → ⋯`, with `I(c) = (c, 0, …)`, `S`
//! dropping the leading coordinate and `∂(c_m, …) = [B c_m]`.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclic::{normalized_basis, CyclicStructure};
use crate::exactfield::Field;
use crate::linalg::{kernel_basis, Eliminator, Insertion, Matrix, SparseVec, Subspace};
use crate::operad::{odd, Cochain, Elem, OpCochain, Operad, OperadError};
use crate::report::{render, Check, Counterexample};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error(transparent)]
    Operad(#[from] OperadError),
    #[error("degree {degree} is outside the window 0..={max}")]
    Window { degree: isize, max: isize },
    #[error("a cochain of degree {0} left the normalized slice")]
    NotNormalized(isize),
    #[error("this operation needs the cyclic structure")]
    NotCyclic,
}

/// A cohomology class: coordinates in the computed basis and a cocycle representative.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyClass<E> {
    pub degree: usize,
    pub coords: Vec<E>,
    pub representative: Cochain<E>,
}

/// `ker(out) / span(incoming)` on a coordinate space of dimension `dim`.
///
/// Boundaries are inserted first, then the echelon basis of the cocycles;
/// the cocycles that are independent modulo boundaries become the basis
/// classes, so representatives are deterministic.
struct Quotient<F: Field> {
    field: F,
    outgoing: Matrix<F::Elem>,
    elim: Eliminator<F>,
    reps: Vec<SparseVec<F::Elem>>,
    class_of: HashMap<usize, usize>,
}

impl<F: Field> Quotient<F> {
    fn new(field: &F, incoming: &Matrix<F::Elem>, outgoing: Matrix<F::Elem>) -> Self {
        let mut elim = Eliminator::new(field.clone(), true);
        for c in incoming.columns() {
            elim.insert(c.clone());
        }
        let mut reps = Vec::new();
        let mut class_of = HashMap::new();
        for z in kernel_basis(field, &outgoing).basis() {
            if let Insertion::Independent(_) = elim.insert(z.clone()) {
                class_of.insert(elim.inserted() - 1, reps.len());
                reps.push(z.clone());
            }
        }
        Quotient { field: field.clone(), outgoing, elim, reps, class_of }
    }

    fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class coordinates of `v`, or `None` if `v` is not a cocycle.
    fn reduce(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        if !self.outgoing.apply(f, v).is_zero() {
            return None;
        }
        let combo = self.elim.express(v).expect("cocycles lie in the span of boundaries and representatives");
        let mut coords = vec![f.zero(); self.reps.len()];
        for (id, c) in combo.iter() {
            if let Some(&k) = self.class_of.get(&id) {
                coords[k] = c.clone();
            }
        }
        Some(coords)
    }
}

fn dense_to_sparse<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    SparseVec::from_dense(f, v)
}

/// The normalized cochain complex `C̄ⁿ = ∩ⱼ ker σⱼ` for `n ≤ N`, with the
/// matrices of `d` (and of `B`, when a cyclic structure is supplied) in
/// slice coordinates.
pub struct NormalizedComplex<'a, O: Operad> {
    op: &'a O,
    cyc: Option<&'a CyclicStructure<O>>,
    slices: Vec<Subspace<Elem<O>>>,
    d: Vec<Matrix<Elem<O>>>,
    b: Vec<Matrix<Elem<O>>>,
    h: Vec<OnceLock<Quotient<O::F>>>,
    hc: HashMap<(isize, usize), OnceLock<Quotient<O::F>>>,
}

impl<'a, O: Operad> NormalizedComplex<'a, O> {
    /// The complex without `B`; enough for cohomology, cup and bracket.
    pub fn new(op: &'a O) -> Result<Self, CohomologyError> {
        let slices = (0..=op.max_degree()).map(|n| normalized_basis(op, n)).collect::<Result<Vec<_>, _>>()?;
        Self::assemble(op, None, slices)
    }

    /// The mixed complex `(C̄, d, B)`.
    pub fn cyclic(cyc: &'a CyclicStructure<O>) -> Result<Self, CohomologyError> {
        let op = cyc.operad();
        let slices = (0..=op.max_degree()).map(|n| cyc.normalized(n).cloned()).collect::<Result<Vec<_>, _>>()?;
        Self::assemble(op, Some(cyc), slices)
    }

    fn assemble(op: &'a O, cyc: Option<&'a CyclicStructure<O>>, slices: Vec<Subspace<Elem<O>>>) -> Result<Self, CohomologyError> {
        let top = op.max_degree();
        let mut out = NormalizedComplex { op, cyc, slices, d: Vec::new(), b: Vec::new(), h: Vec::new(), hc: HashMap::new() };
        for n in 0..top {
            let m = out.slice_matrix(n, n as isize + 1, |x| op.differential(x))?;
            out.d.push(m);
        }
        if let Some(c) = cyc {
            for n in 0..=top {
                let m = out.slice_matrix(n, n as isize - 1, |x| c.connes_b(x))?;
                out.b.push(m);
            }
        }
        out.h = (0..top).map(|_| OnceLock::new()).collect();
        // every (m, K) the reports may ask for
        for k in 0..=top / 2 {
            for m in -2 * k as isize..=top as isize {
                if m + 2 * k as isize + 1 <= top as isize {
                    out.hc.insert((m, k), OnceLock::new());
                }
            }
        }
        Ok(out)
    }

    /// Matrix of a linear operator between slices, in slice coordinates.
    fn slice_matrix(
        &self,
        n: usize,
        target: isize,
        apply: impl Fn(&OpCochain<O>) -> Result<OpCochain<O>, OperadError> + Sync,
    ) -> Result<Matrix<Elem<O>>, CohomologyError> {
        let columns = self.slices[n]
            .basis()
            .par_iter()
            .map(|v| {
                let image = apply(&Cochain::new(n, v.clone()))?;
                self.coords(&image)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(self.slice_dim(target), columns))
    }

    pub fn operad(&self) -> &'a O {
        self.op
    }

    pub fn field(&self) -> &'a O::F {
        self.op.field()
    }

    pub fn has_b(&self) -> bool {
        self.cyc.is_some()
    }

    /// Largest degree whose cohomology is available (`N − 1`).
    pub fn top(&self) -> usize {
        self.op.max_degree() - 1
    }

    pub fn slice(&self, n: usize) -> &Subspace<Elem<O>> {
        &self.slices[n]
    }

    pub fn slice_dim(&self, n: isize) -> usize {
        if n < 0 || n as usize >= self.slices.len() {
            0
        } else {
            self.slices[n as usize].dim()
        }
    }

    /// Slice coordinates of a normalized cochain.
    pub fn coords(&self, c: &OpCochain<O>) -> Result<SparseVec<Elem<O>>, CohomologyError> {
        let f = self.field();
        if c.degree < 0 {
            return Ok(SparseVec::new());
        }
        if c.degree as usize >= self.slices.len() {
            return Err(CohomologyError::Window { degree: c.degree, max: self.op.max_degree() as isize });
        }
        match self.slices[c.degree as usize].in_span(f, &c.coeffs) {
            Ok(Some(x)) => Ok(dense_to_sparse(f, &x)),
            _ => Err(CohomologyError::NotNormalized(c.degree)),
        }
    }

    pub fn cochain(&self, n: usize, coords: &SparseVec<Elem<O>>) -> OpCochain<O> {
        let f = self.field();
        let dense = coords.to_dense(f, self.slices[n].dim());
        Cochain::new(n, self.slices[n].combine(f, &dense))
    }

    /// `d: C̄ⁿ → C̄ⁿ⁺¹` in slice coordinates.
    pub fn d_matrix(&self, n: isize) -> Matrix<Elem<O>> {
        if n < 0 {
            return Matrix::zero(self.slice_dim(n + 1), 0);
        }
        self.d[n as usize].clone()
    }

    /// `B: C̄ⁿ → C̄ⁿ⁻¹` in slice coordinates.
    pub fn b_matrix(&self, n: isize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        if self.cyc.is_none() {
            return Err(CohomologyError::NotCyclic);
        }
        if n < 0 {
            return Ok(Matrix::zero(0, 0));
        }
        Ok(self.b[n as usize].clone())
    }

    fn check_h(&self, n: isize) -> Result<usize, CohomologyError> {
        if n < 0 || n > self.top() as isize {
            return Err(CohomologyError::Window { degree: n, max: self.top() as isize });
        }
        Ok(n as usize)
    }

    fn h(&self, n: usize) -> &Quotient<O::F> {
        self.h[n].get_or_init(|| Quotient::new(self.field(), &self.d_matrix(n as isize - 1), self.d[n].clone()))
    }

    pub fn h_dim(&self, n: usize) -> Result<usize, CohomologyError> {
        Ok(self.h(self.check_h(n as isize)?).dim())
    }

    pub fn h_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.h(n).dim()).collect()
    }

    /// Basis of `Hⁿ`; representatives are echelon-first.
    pub fn cohomology_basis(&self, n: usize) -> Result<Vec<CohomologyClass<Elem<O>>>, CohomologyError> {
        let n = self.check_h(n as isize)?;
        let f = self.field();
        let q = self.h(n);
        Ok((0..q.dim())
            .map(|k| {
                let mut coords = vec![f.zero(); q.dim()];
                coords[k] = f.one();
                CohomologyClass { degree: n, coords, representative: self.cochain(n, &q.reps[k]) }
            })
            .collect())
    }

    /// Class coordinates of a normalized cochain; `None` if it is not a cocycle.
    pub fn reduce_to_class(&self, c: &OpCochain<O>) -> Result<Option<Vec<Elem<O>>>, CohomologyError> {
        let n = self.check_h(c.degree)?;
        Ok(self.h(n).reduce(&self.coords(c)?))
    }

    fn class_of(&self, c: &OpCochain<O>) -> Result<CohomologyClass<Elem<O>>, CohomologyError> {
        if c.degree < 0 {
            // negative degrees carry only the zero class
            return Ok(CohomologyClass { degree: 0, coords: Vec::new(), representative: c.clone() });
        }
        let coords = self.reduce_to_class(c)?.ok_or(CohomologyError::NotNormalized(c.degree))?;
        Ok(CohomologyClass { degree: c.degree as usize, coords, representative: c.clone() })
    }

    pub fn induced_cup(&self, a: &CohomologyClass<Elem<O>>, b: &CohomologyClass<Elem<O>>) -> Result<CohomologyClass<Elem<O>>, CohomologyError> {
        self.class_of(&self.op.cup(&a.representative, &b.representative)?)
    }

    pub fn induced_bracket(&self, a: &CohomologyClass<Elem<O>>, b: &CohomologyClass<Elem<O>>) -> Result<CohomologyClass<Elem<O>>, CohomologyError> {
        self.class_of(&self.op.bracket(&a.representative, &b.representative)?)
    }

    /// `[B a]` in `H^{n−1}`; the zero class of degree 0 is returned for `n = 0`.
    pub fn induced_b(&self, a: &CohomologyClass<Elem<O>>) -> Result<CohomologyClass<Elem<O>>, CohomologyError> {
        let cyc = self.cyc.ok_or(CohomologyError::NotCyclic)?;
        if a.degree == 0 {
            return Ok(CohomologyClass { degree: 0, coords: vec![self.field().zero(); self.h(0).dim()], representative: Cochain::zero(0) });
        }
        self.class_of(&cyc.connes_b(&a.representative)?)
    }

    /// Matrix of `[B]: Hⁿ → Hⁿ⁻¹` on basis classes.
    pub fn induced_b_matrix(&self, n: usize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        let f = self.field();
        let rows = if n == 0 { 0 } else { self.h_dim(n - 1)? };
        let cols = self
            .cohomology_basis(n)?
            .iter()
            .map(|a| Ok(if n == 0 { SparseVec::new() } else { dense_to_sparse(f, &self.induced_b(a)?.coords) }))
            .collect::<Result<Vec<_>, CohomologyError>>()?;
        Ok(Matrix::from_columns(rows, cols))
    }
}

/// Classes compared coordinatewise; degrees must agree unless both are zero.
fn same_class<F: Field>(
    f: &F,
    case: impl FnOnce() -> String,
    lhs: &CohomologyClass<F::Elem>,
    rhs: &CohomologyClass<F::Elem>,
) -> Result<(), Counterexample> {
    let (l, r) = (dense_to_sparse(f, &lhs.coords), dense_to_sparse(f, &rhs.coords));
    if (lhs.degree == rhs.degree || (l.is_zero() && r.is_zero())) && l == r {
        Ok(())
    } else {
        Err(Counterexample { case: format!("{} (degrees {} and {})", case(), lhs.degree, rhs.degree), lhs: render(f, &l), rhs: render(f, &r) })
    }
}

fn class_sum<F: Field>(f: &F, terms: &[(bool, &CohomologyClass<F::Elem>)], degree: usize, len: usize) -> CohomologyClass<F::Elem> {
    let mut coords = vec![f.zero(); len];
    for (negate, c) in terms {
        for (x, y) in coords.iter_mut().zip(&c.coords) {
            *x = f.add(x, &f.signed(*negate, y));
        }
    }
    CohomologyClass { degree, coords, representative: Cochain::zero(degree as isize) }
}

fn cerr(case: impl FnOnce() -> String) -> impl FnOnce(CohomologyError) -> Counterexample {
    move |e| Counterexample::message(format!("{}: {e}", case()))
}

impl<'a, O: Operad> NormalizedComplex<'a, O> {
    fn all_classes(&self, top: usize) -> Result<Vec<CohomologyClass<Elem<O>>>, CohomologyError> {
        let mut out = Vec::new();
        for n in 0..=top.min(self.top()) {
            out.extend(self.cohomology_basis(n)?);
        }
        Ok(out)
    }

    fn zero_class(&self, n: usize) -> CohomologyClass<Elem<O>> {
        let len = if n <= self.top() { self.h(n).dim() } else { 0 };
        CohomologyClass { degree: n, coords: vec![self.field().zero(); len], representative: Cochain::zero(n as isize) }
    }

    fn label(&self, a: &CohomologyClass<Elem<O>>) -> String {
        let k = a.coords.iter().position(|c| !self.field().is_zero(c)).unwrap_or(0);
        format!("H{}[{k}]", a.degree)
    }

    /// Graded commutativity and associativity of ∪, the Gerstenhaber Lie
    /// axioms, the Poisson rule and (with `B`) the BV relation, on all basis
    /// classes with total degree `≤ maxdeg`.
    pub fn check_bv(&self, maxdeg: usize) -> Vec<Check> {
        let f = self.field();
        let maxdeg = maxdeg.min(self.top());
        let classes = match self.all_classes(maxdeg) {
            Ok(c) => c,
            Err(e) => return vec![Check::new("classes.setup", "cohomology bases", "").record(false, || Counterexample::message(e.to_string()))],
        };
        let classes = &classes;
        let idx: Vec<usize> = (0..classes.len()).collect();
        let pairs: Vec<(usize, usize)> = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| classes[i].degree + classes[j].degree <= maxdeg)
            .collect();
        let triples: Vec<(usize, usize, usize)> = pairs
            .iter()
            .flat_map(|&(i, j)| idx.iter().map(move |&k| (i, j, k)))
            .filter(|&(i, j, k)| classes[i].degree + classes[j].degree + classes[k].degree <= maxdeg)
            .collect();
        let pair_scope = format!("all basis class pairs, |a|+|b| ≤ {maxdeg}");
        let triple_scope = format!("all basis class triples, |a|+|b|+|c| ≤ {maxdeg}");
        let cup = |a: &CohomologyClass<Elem<O>>, b: &CohomologyClass<Elem<O>>| self.induced_cup(a, b);
        let br = |a: &CohomologyClass<Elem<O>>, b: &CohomologyClass<Elem<O>>| self.induced_bracket(a, b);
        let name2 = |i: usize, j: usize| move || format!("a = {}, b = {}", self.label(&classes[i]), self.label(&classes[j]));
        let name3 = |i: usize, j: usize, k: usize| {
            move || format!("a = {}, b = {}, c = {}", self.label(&classes[i]), self.label(&classes[j]), self.label(&classes[k]))
        };
        let mut checks = Vec::new();

        checks.push(Check::new("classes.reduce_representatives", "each representative reduces to its unit coordinate vector", format!("all basis classes of degree ≤ {maxdeg}")).sweep(&idx, |&i| {
            let a = &classes[i];
            let back = self.class_of(&a.representative).map_err(cerr(|| self.label(a)))?;
            same_class(f, || self.label(a), &back, a)
        }));
        checks.push(Check::new("classes.cup_well_defined", "(a + d y) ∪ b and a ∪ b have the same class", pair_scope.clone()).sweep(&pairs, |&(i, j)| {
            let (a, b) = (&classes[i], &classes[j]);
            if a.degree == 0 {
                return Ok(());
            }
            let mut y = Cochain::zero(a.degree as isize - 1);
            for v in self.slices[a.degree - 1].basis() {
                y = y.add(f, &Cochain::new(a.degree - 1, v.clone()));
            }
            let dy = self.op.differential(&y).map_err(|e| cerr(name2(i, j))(e.into()))?;
            let moved = CohomologyClass { representative: a.representative.add(f, &dy), ..a.clone() };
            let lhs = cup(&moved, b).map_err(cerr(name2(i, j)))?;
            let rhs = cup(a, b).map_err(cerr(name2(i, j)))?;
            same_class(f, name2(i, j), &lhs, &rhs)
        }));
        checks.push(Check::new("classes.cup_unit", "1 ∪ a = a", format!("all basis classes of degree ≤ {maxdeg}")).sweep(&idx, |&i| {
            let a = &classes[i];
            let unit = self.class_of(&self.op.unit()).map_err(cerr(|| self.label(a)))?;
            same_class(f, || self.label(a), &cup(&unit, a).map_err(cerr(|| self.label(a)))?, a)
        }));
        checks.push(Check::new("gerstenhaber.cup_commutative", "a ∪ b = (−1)^{|a||b|} b ∪ a", pair_scope.clone()).sweep(&pairs, |&(i, j)| {
            let (a, b) = (&classes[i], &classes[j]);
            let lhs = cup(a, b).map_err(cerr(name2(i, j)))?;
            let rhs = cup(b, a).map_err(cerr(name2(i, j)))?;
            let n = lhs.coords.len();
            same_class(f, name2(i, j), &lhs, &class_sum(f, &[(odd((a.degree * b.degree) as isize), &rhs)], rhs.degree, n))
        }));
        checks.push(Check::new("gerstenhaber.cup_associative", "(a ∪ b) ∪ c = a ∪ (b ∪ c)", triple_scope.clone()).sweep(&triples, |&(i, j, k)| {
            let (a, b, c) = (&classes[i], &classes[j], &classes[k]);
            let e = cerr(name3(i, j, k));
            let lhs = cup(&cup(a, b).map_err(cerr(name3(i, j, k)))?, c).map_err(cerr(name3(i, j, k)))?;
            let rhs = cup(a, &cup(b, c).map_err(cerr(name3(i, j, k)))?).map_err(e)?;
            same_class(f, name3(i, j, k), &lhs, &rhs)
        }));
        checks.push(Check::new("gerstenhaber.bracket_antisymmetric", "{a,b} = −(−1)^{(|a|−1)(|b|−1)} {b,a}", pair_scope.clone()).sweep(&pairs, |&(i, j)| {
            let (a, b) = (&classes[i], &classes[j]);
            let lhs = br(a, b).map_err(cerr(name2(i, j)))?;
            let rhs = br(b, a).map_err(cerr(name2(i, j)))?;
            let sign = !odd((a.degree as isize - 1) * (b.degree as isize - 1));
            let n = lhs.coords.len();
            same_class(f, name2(i, j), &lhs, &class_sum(f, &[(sign, &rhs)], rhs.degree, n))
        }));
        checks.push(Check::new("gerstenhaber.jacobi", "Σ_cyclic (−1)^{(|a|−1)(|c|−1)} {a,{b,c}} = 0", triple_scope.clone()).sweep(&triples, |&(i, j, k)| {
            let (a, b, c) = (&classes[i], &classes[j], &classes[k]);
            let s = |x: &CohomologyClass<Elem<O>>, y: &CohomologyClass<Elem<O>>| odd((x.degree as isize - 1) * (y.degree as isize - 1));
            let t1 = br(a, &br(b, c).map_err(cerr(name3(i, j, k)))?).map_err(cerr(name3(i, j, k)))?;
            let t2 = br(b, &br(c, a).map_err(cerr(name3(i, j, k)))?).map_err(cerr(name3(i, j, k)))?;
            let t3 = br(c, &br(a, b).map_err(cerr(name3(i, j, k)))?).map_err(cerr(name3(i, j, k)))?;
            let deg = t1.degree;
            let sum = class_sum(f, &[(s(a, c), &t1), (s(b, a), &t2), (s(c, b), &t3)], deg, t1.coords.len());
            same_class(f, name3(i, j, k), &sum, &self.zero_class(deg))
        }));
        checks.push(Check::new("gerstenhaber.poisson", "{a, b ∪ c} = {a,b} ∪ c + (−1)^{(|a|−1)|b|} b ∪ {a,c}", triple_scope.clone()).sweep(&triples, |&(i, j, k)| {
            let (a, b, c) = (&classes[i], &classes[j], &classes[k]);
            let e = || name3(i, j, k);
            let lhs = br(a, &cup(b, c).map_err(cerr(e()))?).map_err(cerr(e()))?;
            let r1 = cup(&br(a, b).map_err(cerr(e()))?, c).map_err(cerr(e()))?;
            let r2 = cup(b, &br(a, c).map_err(cerr(e()))?).map_err(cerr(e()))?;
            let deg = lhs.degree;
            let rhs = class_sum(f, &[(false, &r1), (odd((a.degree as isize - 1) * b.degree as isize), &r2)], deg, lhs.coords.len());
            same_class(f, e(), &lhs, &rhs)
        }));
        if self.cyc.is_none() {
            return checks;
        }
        checks.push(Check::new("bv.b_squared", "[B]∘[B] = 0", format!("all basis classes of degree ≤ {maxdeg}")).sweep(&idx, |&i| {
            let a = &classes[i];
            let e = || self.label(a);
            let bb = self.induced_b(&self.induced_b(a).map_err(cerr(e))?).map_err(cerr(e))?;
            same_class(f, e, &bb, &self.zero_class(bb.degree))
        }));
        checks.push(Check::new("bv.relation", "{a,b} = (−1)^{|a|}(B(a ∪ b) − Ba ∪ b − (−1)^{|a|} a ∪ Bb)", pair_scope).sweep(&pairs, |&(i, j)| {
            let (a, b) = (&classes[i], &classes[j]);
            let e = || name2(i, j);
            let lhs = br(a, b).map_err(cerr(e()))?;
            let deg = lhs.degree;
            let t1 = self.induced_b(&cup(a, b).map_err(cerr(e()))?).map_err(cerr(e()))?;
            let t2 = cup(&self.induced_b(a).map_err(cerr(e()))?, b).map_err(cerr(e()))?;
            let t3 = cup(a, &self.induced_b(b).map_err(cerr(e()))?).map_err(cerr(e()))?;
            let pa = odd(a.degree as isize);
            let len = lhs.coords.len();
            let keep = |c: &CohomologyClass<Elem<O>>| if c.degree == deg { c.clone() } else { self.zero_class(deg) };
            let (t1, t2, t3) = (keep(&t1), keep(&t2), keep(&t3));
            let rhs = class_sum(f, &[(pa, &t1), (!pa, &t2), (true, &t3)], deg, len);
            same_class(f, e(), &lhs, &rhs)
        }));
        checks
    }
}

/// Per-degree dimensions of the cohomology and cyclic cohomology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionTable {
    pub cutoff: usize,
    pub h: Vec<usize>,
    /// `(m, K, dim HCᵐ_K)` for `0 ≤ m ≤ cutoff − 3`.
    pub hc: Vec<(usize, usize, usize)>,
}

/// Largest `u`-power that fits in degree `m` under `cutoff`.
pub fn u_power(m: isize, cutoff: usize) -> Option<usize> {
    let room = cutoff as isize - 1 - m;
    (room >= 0).then_some((room / 2) as usize)
}

/// Class coordinates in `HCᵐ_K` together with the maps of the Connes sequence.
impl<'a, O: Operad> NormalizedComplex<'a, O> {
    /// Degrees of the summands of `Tᵐ_K` (only nonnegative ones).
    fn summands(&self, m: isize, k: usize) -> Vec<usize> {
        (0..=k as isize).map(|i| m + 2 * i).filter(|&j| j >= 0).map(|j| j as usize).collect()
    }

    fn offsets(&self, m: isize, k: usize) -> Vec<(isize, usize)> {
        let mut off = 0;
        (0..=k as isize)
            .map(|i| {
                let j = m + 2 * i;
                let here = off;
                off += self.slice_dim(j);
                (j, here)
            })
            .collect()
    }

    pub fn total_dim(&self, m: isize, k: usize) -> usize {
        self.summands(m, k).iter().map(|&j| self.slice_dim(j as isize)).sum()
    }

    fn check_total(&self, m: isize, k: usize) -> Result<(), CohomologyError> {
        if self.cyc.is_none() {
            return Err(CohomologyError::NotCyclic);
        }
        if m + 2 * k as isize + 1 > self.op.max_degree() as isize {
            return Err(CohomologyError::Window { degree: m, max: self.op.max_degree() as isize - 1 - 2 * k as isize });
        }
        Ok(())
    }

    /// `D: Tᵐ_K → Tᵐ⁺¹_K`.
    pub fn total_differential(&self, m: isize, k: usize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        self.check_total(m, k)?;
        let f = self.field();
        let src = self.offsets(m, k);
        let dst = self.offsets(m + 1, k);
        let mut columns = Vec::new();
        for (i, &(j, _)) in src.iter().enumerate() {
            for col in 0..self.slice_dim(j) {
                let mut terms = Vec::new();
                // d lands in summand i of the target, B in summand i − 1
                let dcol = self.d_matrix(j);
                terms.extend(dcol.column(col).iter().map(|(r, c)| (dst[i].1 + r, c.clone())));
                if i > 0 && j >= 1 {
                    let bcol = self.b_matrix(j)?;
                    terms.extend(bcol.column(col).iter().map(|(r, c)| (dst[i - 1].1 + r, c.clone())));
                }
                columns.push(SparseVec::from_terms(f, terms));
            }
        }
        Ok(Matrix::from_columns(self.total_dim(m + 1, k), columns))
    }

    fn hc(&self, m: isize, k: usize) -> Result<&Quotient<O::F>, CohomologyError> {
        self.check_total(m, k)?;
        let cell = self.hc.get(&(m, k)).ok_or(CohomologyError::Window { degree: m, max: self.op.max_degree() as isize })?;
        if let Some(q) = cell.get() {
            return Ok(q);
        }
        let incoming = self.total_differential(m - 1, k)?;
        let outgoing = self.total_differential(m, k)?;
        Ok(cell.get_or_init(|| Quotient::new(self.field(), &incoming, outgoing)))
    }

    pub fn hc_dim(&self, m: isize, k: usize) -> Result<usize, CohomologyError> {
        Ok(self.hc(m, k)?.dim())
    }

    /// Representatives of the basis of `HCᵐ_K` as tuples `(c_m, c_{m+2}, …)`.
    pub fn cyclic_cohomology(&self, m: isize, k: usize) -> Result<Vec<Vec<OpCochain<O>>>, CohomologyError> {
        let q = self.hc(m, k)?;
        Ok(q.reps.iter().map(|r| self.split(m, k, r)).collect())
    }

    fn split(&self, m: isize, k: usize, v: &SparseVec<Elem<O>>) -> Vec<OpCochain<O>> {
        let f = self.field();
        self.offsets(m, k)
            .into_iter()
            .filter(|&(j, _)| j >= 0)
            .map(|(j, off)| {
                let part = SparseVec::from_terms(f, v.iter().filter(|&(i, _)| i >= off && i < off + self.slice_dim(j)).map(|(i, c)| (i - off, c.clone())));
                self.cochain(j as usize, &part)
            })
            .collect()
    }

    /// Block of `v ∈ Tᵐ_K` in the summand of degree `j`.
    fn block(&self, m: isize, k: usize, v: &SparseVec<Elem<O>>, j: isize) -> SparseVec<Elem<O>> {
        let f = self.field();
        let Some(&(_, off)) = self.offsets(m, k).iter().find(|&&(jj, _)| jj == j) else { return SparseVec::new() };
        let len = self.slice_dim(j);
        SparseVec::from_terms(f, v.iter().filter(|&(i, _)| i >= off && i < off + len).map(|(i, c)| (i - off, c.clone())))
    }

    fn reduce_h(&self, n: isize, v: &SparseVec<Elem<O>>) -> Result<Vec<Elem<O>>, CohomologyError> {
        if n < 0 {
            return Ok(Vec::new());
        }
        let n = self.check_h(n)?;
        self.h(n).reduce(v).ok_or(CohomologyError::NotNormalized(n as isize))
    }

    fn reduce_hc(&self, m: isize, k: usize, v: &SparseVec<Elem<O>>) -> Result<Vec<Elem<O>>, CohomologyError> {
        self.hc(m, k)?.reduce(v).ok_or(CohomologyError::NotNormalized(m))
    }

    fn h_reps(&self, n: isize) -> Result<Vec<SparseVec<Elem<O>>>, CohomologyError> {
        if n < 0 {
            return Ok(Vec::new());
        }
        Ok(self.h(self.check_h(n)?).reps.clone())
    }

    fn coord_matrix(&self, rows: usize, cols: Vec<Vec<Elem<O>>>) -> Matrix<Elem<O>> {
        let f = self.field();
        Matrix::from_columns(rows, cols.iter().map(|c| dense_to_sparse(f, c)).collect())
    }

    fn h_dim_signed(&self, n: isize) -> Result<usize, CohomologyError> {
        if n < 0 {
            Ok(0)
        } else {
            self.h_dim(n as usize)
        }
    }

    /// `I: Hᵐ → HCᵐ_K`.
    pub fn connes_i(&self, m: isize, k: usize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        let cols = self.h_reps(m)?.iter().map(|r| self.reduce_hc(m, k, r)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.coord_matrix(self.hc_dim(m, k)?, cols))
    }

    /// `S: HCᵐ_K → HCᵐ⁺²_{K−1}`.
    pub fn connes_s(&self, m: isize, k: usize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        let f = self.field();
        let q = self.hc(m, k)?;
        let cols = q
            .reps
            .iter()
            .map(|r| {
                let mut terms = Vec::new();
                for (j, off) in self.offsets(m + 2, k - 1) {
                    let part = self.block(m, k, r, j);
                    terms.extend(part.iter().map(|(i, c)| (off + i, c.clone())));
                }
                self.reduce_hc(m + 2, k - 1, &SparseVec::from_terms(f, terms))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.coord_matrix(self.hc_dim(m + 2, k - 1)?, cols))
    }

    /// `∂: HCᵐ_K → Hᵐ⁻¹`, the class of `B c_m`.
    pub fn connes_boundary(&self, m: isize, k: usize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        let q = self.hc(m, k)?;
        let cols = q
            .reps
            .iter()
            .map(|r| {
                if m <= 0 {
                    return Ok(Vec::new());
                }
                let lead = self.block(m, k, r, m);
                self.reduce_h(m - 1, &self.b_matrix(m)?.apply(self.field(), &lead))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.coord_matrix(self.h_dim_signed(m - 1)?, cols))
    }

    /// `[B]: Hᵐ → Hᵐ⁻¹` on class coordinates.
    pub fn b_on_classes(&self, m: isize) -> Result<Matrix<Elem<O>>, CohomologyError> {
        let cols = self
            .h_reps(m)?
            .iter()
            .map(|r| if m <= 0 { Ok(Vec::new()) } else { self.reduce_h(m - 1, &self.b_matrix(m)?.apply(self.field(), r)) })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.coord_matrix(self.h_dim_signed(m - 1)?, cols))
    }

    /// `HCᵐ` for `0 ≤ m ≤ cutoff − 3`, each with the largest `K` under `cutoff`.
    pub fn dimension_table(&self, cutoff: usize) -> Result<DimensionTable, CohomologyError> {
        let cutoff = cutoff.min(self.op.max_degree());
        let mut hc = Vec::new();
        for m in 0..=(cutoff as isize - 3) {
            let k = u_power(m, cutoff).expect("m ≤ cutoff − 3");
            hc.push((m as usize, k, self.hc_dim(m, k)?));
        }
        let h = (0..cutoff).map(|n| self.h(n).dim()).collect();
        Ok(DimensionTable { cutoff, h, hc })
    }

    /// Cyclic bracket `[a,b] = (−1)^{|a|} I(∂a ∪ ∂b)` on basis classes
    /// `a ∈ HCᵖ`, `b ∈ HC^q` (each with its largest `K` under `cutoff`), as
    /// coordinates in `HC^{p+q−2}`.
    pub fn cyclic_bracket(&self, p: isize, a: usize, q: isize, b: usize, cutoff: usize) -> Result<Vec<Elem<O>>, CohomologyError> {
        let va = self.hc_basis_vector(p, a, cutoff)?;
        let vb = self.hc_basis_vector(q, b, cutoff)?;
        self.bracket_vectors(p, &va, q, &vb, cutoff)
    }

    fn hc_basis_vector(&self, m: isize, idx: usize, cutoff: usize) -> Result<SparseVec<Elem<O>>, CohomologyError> {
        let k = u_power(m, cutoff).ok_or(CohomologyError::Window { degree: m, max: cutoff as isize - 1 })?;
        Ok(self.hc(m, k)?.reps[idx].clone())
    }

    /// `∂` on a total cocycle, as a cochain representative in `C̄ᵐ⁻¹`.
    fn boundary_rep(&self, m: isize, v: &SparseVec<Elem<O>>, cutoff: usize) -> Result<OpCochain<O>, CohomologyError> {
        if m <= 0 {
            return Ok(Cochain::zero(m - 1));
        }
        let k = u_power(m, cutoff).ok_or(CohomologyError::Window { degree: m, max: cutoff as isize - 1 })?;
        let lead = self.block(m, k, v, m);
        Ok(self.cochain(m as usize - 1, &self.b_matrix(m)?.apply(self.field(), &lead)))
    }

    fn bracket_vectors(&self, p: isize, va: &SparseVec<Elem<O>>, q: isize, vb: &SparseVec<Elem<O>>, cutoff: usize) -> Result<Vec<Elem<O>>, CohomologyError> {
        let f = self.field();
        let target = p + q - 2;
        if target < 0 {
            return Ok(Vec::new());
        }
        let k = u_power(target, cutoff).ok_or(CohomologyError::Window { degree: target, max: cutoff as isize - 1 })?;
        let x = self.boundary_rep(p, va, cutoff)?;
        let y = self.boundary_rep(q, vb, cutoff)?;
        if x.is_zero() || y.is_zero() {
            return Ok(vec![f.zero(); self.hc_dim(target, k)?]);
        }
        let prod = self.op.cup(&x, &y)?.signed(f, odd(p));
        let coords = self.coords(&prod)?;
        self.reduce_hc(target, k, &coords)
    }

    /// `D² = 0`, `∂∘I = [B]`, exactness of the Connes sequence, and the Lie
    /// axioms of the cyclic bracket, all inside the window of `cutoff`.
    pub fn check_cyclic(&self, cutoff: usize) -> Vec<Check> {
        let f = self.field();
        let cutoff = cutoff.min(self.op.max_degree());
        let window: Vec<isize> = (0..=cutoff as isize - 3).collect();
        let mut totals = Vec::new();
        for k in 0..=cutoff / 2 {
            for m in (-2 * k as isize)..=(cutoff as isize - 2 * k as isize - 2) {
                totals.push((m, k));
            }
        }
        let mut checks = Vec::new();
        checks.push(Check::new("total.d_squared", "D∘D = 0 on Tᵐ_K", format!("all (m, K) with m + 2K + 2 ≤ {cutoff}")).sweep(&totals, |&(m, k)| {
            let case = || format!("m = {m}, K = {k}");
            let d0 = self.total_differential(m, k).map_err(cerr(case))?;
            let d1 = self.total_differential(m + 1, k).map_err(cerr(case))?;
            let dd = d1.compose(f, &d0).map_err(|e| Counterexample::message(e.to_string()))?;
            for (c, col) in dd.columns().iter().enumerate() {
                if !col.is_zero() {
                    return Err(Counterexample { case: format!("{}, column {c}", case()), lhs: render(f, col), rhs: Vec::new() });
                }
            }
            Ok(())
        }));
        let mat_eq = |case: String, x: &Matrix<Elem<O>>, y: &Matrix<Elem<O>>| -> Result<(), Counterexample> {
            if x.rows() != y.rows() || x.cols() != y.cols() {
                return Err(Counterexample::message(format!("{case}: shapes {}×{} vs {}×{}", x.rows(), x.cols(), y.rows(), y.cols())));
            }
            for (c, (a, b)) in x.columns().iter().zip(y.columns()).enumerate() {
                if a != b {
                    return Err(Counterexample { case: format!("{case}, column {c}"), lhs: render(f, a), rhs: render(f, b) });
                }
            }
            Ok(())
        };
        checks.push(Check::new("connes.boundary_after_inclusion", "∂∘I = [B] on Hᵐ", format!("0 ≤ m ≤ {}", cutoff as isize - 3)).sweep(&window, |&m| {
            let k = u_power(m, cutoff).unwrap();
            let case = || format!("m = {m}");
            let di = self.connes_boundary(m, k).map_err(cerr(case))?.compose(f, &self.connes_i(m, k).map_err(cerr(case))?).map_err(|e| Counterexample::message(e.to_string()))?;
            mat_eq(case(), &di, &self.b_on_classes(m).map_err(cerr(case))?)
        }));

        // Exactness of ⋯ → Hᵐ →I HCᵐ_K →S HCᵐ⁺²_{K−1} →∂ Hᵐ⁺¹ → ⋯ at every node in range.
        let mut nodes = Vec::new();
        for k in 1..=cutoff / 2 {
            for m in 0..=(cutoff as isize - 2 * k as isize - 1) {
                nodes.push((m, k));
            }
        }
        let rank = |x: &Matrix<Elem<O>>| crate::linalg::rank(f, x);
        let exact = |name: &str, alpha: &Matrix<Elem<O>>, beta: &Matrix<Elem<O>>, dim: usize| -> Result<(), Counterexample> {
            let comp = beta.compose(f, alpha).map_err(|e| Counterexample::message(format!("{name}: {e}")))?;
            if !comp.is_zero() || rank(alpha) + rank(beta) != dim {
                return Err(Counterexample::message(format!(
                    "{name}: rank in {} + rank out {} vs dim {dim}, composite zero: {}",
                    rank(alpha),
                    rank(beta),
                    comp.is_zero()
                )));
            }
            Ok(())
        };
        checks.push(Check::new("connes.exact", "the Connes sequence is exact at Hᵐ, HCᵐ_K and HCᵐ⁺²_{K−1}", format!("K ≥ 1, m ≥ 0, m + 2K + 1 ≤ {cutoff}")).sweep(&nodes, |&(m, k)| {
            let case = || format!("m = {m}, K = {k}");
            let e = cerr(case);
            let run = || -> Result<Result<(), Counterexample>, CohomologyError> {
                // the map into Hᵐ is ∂: HCᵐ⁺¹_{K−1} → Hᵐ
                let i_m = self.connes_i(m, k)?;
                let s_m = self.connes_s(m, k)?;
                let bd = self.connes_boundary(m + 2, k - 1)?;
                let hdim = self.h_dim(m as usize)?;
                let into_h = self.connes_boundary(m + 1, k - 1)?;
                for (name, alpha, beta, dim) in [
                    (format!("at H^{m}"), &into_h, &i_m, hdim),
                    (format!("at HC^{m}_{k}"), &i_m, &s_m, self.hc_dim(m, k)?),
                    (format!("at HC^{}_{}", m + 2, k - 1), &s_m, &bd, self.hc_dim(m + 2, k - 1)?),
                ] {
                    if let Err(c) = exact(&format!("{}: {name}", case()), alpha, beta, dim) {
                        return Ok(Err(c));
                    }
                }
                Ok(Ok(()))
            };
            run().map_err(e)?
        }));

        // The bracket on basis classes within the window.
        let mut basis = Vec::new();
        for &m in &window {
            let k = u_power(m, cutoff).unwrap();
            match self.hc_dim(m, k) {
                Ok(n) => basis.extend((0..n).map(|i| (m, i))),
                Err(e) => {
                    checks.push(Check::new("cyclic_bracket.setup", "HC bases", "").record(false, || Counterexample::message(e.to_string())));
                    return checks;
                }
            }
        }
        let top = cutoff as isize - 3;
        let pairs: Vec<((isize, usize), (isize, usize))> = basis
            .iter()
            .flat_map(|&a| basis.iter().map(move |&b| (a, b)))
            .filter(|&((p, _), (q, _))| p + q - 2 <= top)
            .collect();
        let triples: Vec<((isize, usize), (isize, usize), (isize, usize))> = pairs
            .iter()
            .flat_map(|&(a, b)| basis.iter().map(move |&c| (a, b, c)))
            .filter(|&((p, _), (q, _), (r, _))| p + q - 2 <= top && p + q + r - 4 <= top && q + r - 2 <= top && p + r - 2 <= top)
            .collect();
        let add = |xs: &[(bool, &Vec<Elem<O>>)], len: usize| -> SparseVec<Elem<O>> {
            let mut out = vec![f.zero(); len];
            for (neg, v) in xs {
                for (o, x) in out.iter_mut().zip(v.iter()) {
                    *o = f.add(o, &f.signed(*neg, x));
                }
            }
            dense_to_sparse(f, &out)
        };
        checks.push(Check::new("cyclic_bracket.antisymmetric", "[a,b] = −(−1)^{|a||b|} [b,a]", format!("all basis class pairs with |a|+|b|−2 ≤ {top}")).sweep(&pairs, |&((p, i), (q, j))| {
            let case = || format!("a = HC{p}[{i}], b = HC{q}[{j}]");
            let ab = self.cyclic_bracket(p, i, q, j, cutoff).map_err(cerr(case))?;
            let ba = self.cyclic_bracket(q, j, p, i, cutoff).map_err(cerr(case))?;
            let lhs = dense_to_sparse(f, &ab);
            let rhs = add(&[(!odd(p * q), &ba)], ba.len());
            crate::report::compare(f, case, &lhs, &rhs)
        }));
        checks.push(Check::new("cyclic_bracket.jacobi", "Σ_cyclic (−1)^{|a||c|} [a,[b,c]] = 0", format!("all basis class triples with every bracket inside degree ≤ {top}")).sweep(&triples, |&((p, i), (q, j), (r, l))| {
            let case = || format!("a = HC{p}[{i}], b = HC{q}[{j}], c = HC{r}[{l}]");
            let nested = |x: (isize, usize), y: (isize, usize), z: (isize, usize)| -> Result<Vec<Elem<O>>, CohomologyError> {
                let inner = self.cyclic_bracket(y.0, y.1, z.0, z.1, cutoff)?;
                let deg = y.0 + z.0 - 2;
                if deg < 0 || x.0 + deg - 2 < 0 {
                    return Ok(Vec::new());
                }
                let k = u_power(deg, cutoff).ok_or(CohomologyError::Window { degree: deg, max: top })?;
                let q = self.hc(deg.max(0), k)?;
                let v = q.reps.iter().zip(&inner).fold(SparseVec::new(), |mut acc, (r, c)| {
                    acc.add_scaled(f, c, r);
                    acc
                });
                let va = self.hc_basis_vector(x.0, x.1, cutoff)?;
                self.bracket_vectors(x.0, &va, deg, &v, cutoff)
            };
            let (a, b, c) = ((p, i), (q, j), (r, l));
            let t1 = nested(a, b, c).map_err(cerr(case))?;
            let t2 = nested(b, c, a).map_err(cerr(case))?;
            let t3 = nested(c, a, b).map_err(cerr(case))?;
            let len = t1.len().max(t2.len()).max(t3.len());
            let sum = add(&[(odd(p * r), &t1), (odd(q * p), &t2), (odd(r * q), &t3)], len);
            crate::report::compare(f, case, &sum, &SparseVec::new())
        }));
        checks
    }

    /// `HCᵐ` dimensions agree for the two cutoffs on the smaller window.
    pub fn check_stability(&self, small: usize, large: usize) -> Check {
        let degrees: Vec<isize> = (0..=small as isize - 3).collect();
        Check::new("hc.stable_under_cutoff", "dim HCᵐ does not change when the cutoff grows", format!("cutoff {small} vs {large}, 0 ≤ m ≤ {}", small as isize - 3)).sweep(&degrees, |&m| {
            let case = || format!("m = {m}");
            let a = self.hc_dim(m, u_power(m, small).unwrap()).map_err(cerr(case))?;
            let b = self.hc_dim(m, u_power(m, large).unwrap()).map_err(cerr(case))?;
            if a == b {
                Ok(())
            } else {
                Err(Counterexample { case: case(), lhs: vec![(0, a.to_string())], rhs: vec![(0, b.to_string())] })
            }
        })
    }
}
