//! Cyclic operads with multiplication: powers of τ, the cocyclic structure,
//! the normalized complex, Connes' operator B, the operators Z and H, and
//! exhaustive verification of the chain-level identities relating them.

use std::sync::OnceLock;

use rayon::prelude::*;

use crate::exactfield::Field;
use crate::linalg::{kernel_basis, Matrix, SparseVec, Subspace};
use crate::operad::{odd, operator_matrix, Cochain, Elem, OpCochain, Operad, OperadError};
use crate::report::{compare, Check, Counterexample};

/// A cyclic operad with multiplication together with cached τ powers and
/// normalized slices.
pub struct CyclicStructure<O: Operad> {
    op: O,
    tau_powers: Vec<OnceLock<Vec<Matrix<Elem<O>>>>>,
    normalized: Vec<OnceLock<Subspace<Elem<O>>>>,
}

impl<O: Operad> CyclicStructure<O> {
    pub fn new(op: O) -> Result<Self, OperadError> {
        if !op.is_cyclic() {
            return Err(OperadError::NotCyclic);
        }
        let n = op.max_degree() + 1;
        Ok(CyclicStructure {
            op,
            tau_powers: (0..n).map(|_| OnceLock::new()).collect(),
            normalized: (0..n).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn operad(&self) -> &O {
        &self.op
    }

    pub fn into_operad(self) -> O {
        self.op
    }

    fn field(&self) -> &O::F {
        self.op.field()
    }

    /// Matrices of `τₙ^k` for `0 ≤ k ≤ n`.
    fn powers(&self, n: usize) -> Result<&[Matrix<Elem<O>>], OperadError> {
        self.op.check_degree(n as isize)?;
        let cell = &self.tau_powers[n];
        if let Some(p) = cell.get() {
            return Ok(p);
        }
        let f = self.field();
        let tau = operator_matrix(&self.op, n, n as isize, |x| self.op.tau(x))?;
        let mut powers = vec![Matrix::identity(f, self.op.dim(n))];
        for k in 1..=n {
            let next = tau.compose(f, &powers[k - 1]).expect("square matrices");
            powers.push(next);
        }
        Ok(cell.get_or_init(|| powers))
    }

    /// `τₙ^j f` for any integer `j`, reduced modulo `n+1`.
    pub fn tau_pow(&self, f: &OpCochain<O>, j: i64) -> Result<OpCochain<O>, OperadError> {
        if f.degree <= 0 {
            return Ok(f.clone());
        }
        self.op.check_cochain(f)?;
        let n = f.degree as usize;
        let k = j.rem_euclid(n as i64 + 1) as usize;
        if k == 0 {
            return Ok(f.clone());
        }
        let m = &self.powers(n)?[k];
        Ok(Cochain { degree: f.degree, coeffs: m.apply(self.field(), &f.coeffs) })
    }

    pub fn tau(&self, f: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        self.tau_pow(f, 1)
    }

    /// `σₙ = σₙ₋₁ τₙ`, from degree `n ≥ 1` to `n − 1`.
    pub fn extra_degeneracy(&self, f: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        let n = f.degree;
        if n < 0 {
            return Ok(Cochain::zero(n - 1));
        }
        if n == 0 {
            return Err(OperadError::DegreeTooSmall { degree: 0, min: 1 });
        }
        self.op.codegeneracy(n as usize - 1, &self.tau(f)?)
    }

    /// `N = Σ_{i=0}^{k} (−1)^{ik} τₖ^i` on degree `k`.
    pub fn norm_op(&self, f: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        let k = f.degree;
        if k <= 0 {
            return Ok(f.clone());
        }
        let mut out = Cochain::zero(k);
        for i in 0..=k {
            out.add_signed(self.field(), odd(i * k), &self.tau_pow(f, i as i64)?);
        }
        Ok(out)
    }

    /// Connes' operator `B = N σₙ`; zero on degree 0.
    pub fn connes_b(&self, f: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        if f.degree <= 0 {
            return Ok(Cochain::zero(f.degree - 1));
        }
        self.norm_op(&self.extra_degeneracy(f)?)
    }

    /// `B f = Σ_{j=1}^{m} (−1)^{j(m−1)} σ_{j−1} τₘ^{−j} f`.
    pub fn connes_b_sum(&self, f: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        let m = f.degree;
        let mut out = Cochain::zero(m - 1);
        for j in 1..=m.max(0) {
            let t = self.tau_pow(f, -j as i64)?;
            out.add_signed(self.field(), odd(j * (m - 1)), &self.op.codegeneracy(j as usize - 1, &t)?);
        }
        Ok(out)
    }

    /// `Z(f,g) = (−1)^{mn} Σ_{j=1}^{m} (−1)^{j(m+n−1)} τ^{−j}_{m+n−1} σ_{m+n}(g ∪ f)`.
    pub fn z_op(&self, f: &OpCochain<O>, g: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        let mut out = Cochain::zero(m + n - 1);
        if m <= 0 || n < 0 {
            return Ok(out);
        }
        let s = self.extra_degeneracy(&self.op.cup(g, f)?)?;
        for j in 1..=m {
            let t = self.tau_pow(&s, -j as i64)?;
            out.add_signed(self.field(), odd(m * n) ^ odd(j * (m + n - 1)), &t);
        }
        Ok(out)
    }

    fn h_sign(m: isize, n: isize, j: isize, p: isize) -> bool {
        odd(j * m - j + (n - 1) * (p + 1 + m))
    }

    /// `H_{j,p}(f,g) = ± τ^{−j}_{m+n−2} σ_{m+n−1}(f ∘_{p−j+1} g)` for `1 ≤ j ≤ p ≤ m−1`.
    pub fn h_jp(&self, f: &OpCochain<O>, g: &OpCochain<O>, j: usize, p: usize) -> Result<OpCochain<O>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        if m < 0 || n < 0 {
            return Ok(Cochain::zero(m + n - 2));
        }
        if !(1 <= j && j <= p && (p as isize) < m) {
            return Err(OperadError::OperatorIndex { index: p, degree: m });
        }
        let c = self.op.compose(f, g, p - j + 1)?;
        let t = self.tau_pow(&self.extra_degeneracy(&c)?, -(j as i64))?;
        Ok(t.signed(self.field(), Self::h_sign(m, n, j as isize, p as isize)))
    }

    /// The same `H_{j,p}` computed as `± σ_{j−1}(τₘ^{−j} f ∘_{p+1} g)`.
    pub fn h_jp_alt(&self, f: &OpCochain<O>, g: &OpCochain<O>, j: usize, p: usize) -> Result<OpCochain<O>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        if m < 0 || n < 0 {
            return Ok(Cochain::zero(m + n - 2));
        }
        if !(1 <= j && j <= p && (p as isize) < m) {
            return Err(OperadError::OperatorIndex { index: p, degree: m });
        }
        let c = self.op.compose(&self.tau_pow(f, -(j as i64))?, g, p + 1)?;
        let s = self.op.codegeneracy(j - 1, &c)?;
        Ok(s.signed(self.field(), Self::h_sign(m, n, j as isize, p as isize)))
    }

    /// `H(f,g) = Σ_{1≤j≤p≤m−1} H_{j,p}(f,g)`.
    pub fn h_op(&self, f: &OpCochain<O>, g: &OpCochain<O>) -> Result<OpCochain<O>, OperadError> {
        let (m, n) = (f.degree, g.degree);
        let mut out = Cochain::zero(m + n - 2);
        if m < 0 || n < 0 {
            return Ok(out);
        }
        for p in 1..m.max(1) as usize {
            for j in 1..=p {
                out = out.add(self.field(), &self.h_jp(f, g, j, p)?);
            }
        }
        Ok(out)
    }

    /// Echelon basis of `∩ⱼ ker σⱼ ⊂ O(n)`.
    pub fn normalized(&self, n: usize) -> Result<&Subspace<Elem<O>>, OperadError> {
        self.op.check_degree(n as isize)?;
        let cell = &self.normalized[n];
        if let Some(s) = cell.get() {
            return Ok(s);
        }
        let s = normalized_basis(&self.op, n)?;
        Ok(cell.get_or_init(|| s))
    }

    /// The normalized basis vectors of degree `n` as cochains.
    pub fn normalized_cochains(&self, n: usize) -> Result<Vec<OpCochain<O>>, OperadError> {
        Ok(self.normalized(n)?.basis().iter().map(|v| Cochain::new(n, v.clone())).collect())
    }

    /// Whether `σⱼ f = 0` for every `j`.
    pub fn is_normalized(&self, f: &OpCochain<O>) -> Result<bool, OperadError> {
        for j in 0..f.degree.max(0) as usize {
            if !self.op.codegeneracy(j, f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Echelon basis of the normalized slice `∩ⱼ ker σⱼ` in degree `n`.
pub fn normalized_basis<O: Operad + ?Sized>(op: &O, n: usize) -> Result<Subspace<Elem<O>>, OperadError> {
    let f = op.field();
    if n == 0 {
        return Ok(Subspace::full(f, op.dim(0)));
    }
    let block = op.dim(n - 1);
    let columns = (0..op.dim(n))
        .into_par_iter()
        .map(|a| {
            let x = Cochain::basis(f, n, a);
            let mut terms = Vec::new();
            for j in 0..n {
                let s = op.codegeneracy(j, &x)?;
                terms.extend(s.coeffs.iter().map(|(i, c)| (j * block + i, c.clone())));
            }
            Ok(SparseVec::from_terms(f, terms))
        })
        .collect::<Result<Vec<_>, OperadError>>()?;
    let stacked = Matrix::from_columns(n * block, columns);
    Ok(kernel_basis(f, &stacked))
}

fn err(case: impl FnOnce() -> String) -> impl FnOnce(OperadError) -> Counterexample {
    move |e| Counterexample::message(format!("{}: {e}", case()))
}

type Pair = (usize, usize, usize, usize);

/// All basis pairs `(m, a, n, b)` with `m ∈ ms`, `n ∈ ns` and `m + n − 1 ≤ top`
/// (`shift = 1`) or `m + n ≤ top` (`shift = 0`).
fn basis_pairs<O: Operad>(op: &O, mmin: usize, nmin: usize, top: usize, shift: usize) -> Vec<Pair> {
    let mut out = Vec::new();
    let max = op.max_degree();
    for m in mmin..=(top + shift).min(max) {
        for n in nmin..=(top + shift).saturating_sub(m).min(max) {
            if m + n > top + shift {
                continue;
            }
            for a in 0..op.dim(m) {
                for b in 0..op.dim(n) {
                    out.push((m, a, n, b));
                }
            }
        }
    }
    out
}

impl<O: Operad> CyclicStructure<O> {
    fn label(&self, n: usize, a: usize) -> String {
        self.op.basis_label(n, a)
    }

    fn basis(&self, n: usize, a: usize) -> OpCochain<O> {
        Cochain::basis(self.field(), n, a)
    }

    fn cmp(&self, case: impl FnOnce() -> String, lhs: &OpCochain<O>, rhs: &OpCochain<O>) -> Result<(), Counterexample> {
        if lhs.degree != rhs.degree && !(lhs.is_zero() && rhs.is_zero()) {
            return Err(Counterexample::message(format!("{}: degrees {} vs {}", case(), lhs.degree, rhs.degree)));
        }
        compare(self.field(), case, &lhs.coeffs, &rhs.coeffs)
    }

    /// The cyclic-operad axioms on every basis pair with `m + n − 1 ≤ top`.
    pub fn verify_cyclic_axioms(&self, top: usize) -> Vec<Check> {
        let op = &self.op;
        let top = top.min(op.max_degree());
        let scope = format!("all basis pairs, m+n−1 ≤ {top}");
        let mut checks = Vec::new();

        let singles: Vec<(usize, usize)> = (0..=top).flat_map(|n| (0..op.dim(n)).map(move |a| (n, a))).collect();
        checks.push(Check::new("cyclic.order", "τₙ^{n+1} = id", format!("all basis elements, n ≤ {top}")).sweep(&singles, |&(n, a)| {
            let x = self.basis(n, a);
            let mut y = x.clone();
            for _ in 0..=n {
                y = op.tau(&y).map_err(err(|| self.label(n, a)))?;
            }
            self.cmp(|| self.label(n, a), &y, &x)
        }));
        let mu = op.multiplication();
        checks.push(Check::new("cyclic.multiplication_fixed", "τ₂μ = μ", "μ").record(
            op.tau(&mu).map_or(false, |t| t == mu),
            || Counterexample { case: "τ₂μ".into(), lhs: op.tau(&mu).map(|t| crate::report::render(self.field(), &t.coeffs)).unwrap_or_default(), rhs: crate::report::render(self.field(), &mu.coeffs) },
        ));
        let id = op.identity();
        checks.push(Check::new("cyclic.identity_fixed", "τ₁ id = id", "id").record(
            op.tau(&id).map_or(false, |t| t == id),
            || Counterexample::message("τ₁ id ≠ id"),
        ));

        let pairs_11 = basis_pairs(op, 1, 1, top, 1);
        checks.push(Check::new("cyclic.first_slot", "τ_{m+n−1}(f ∘₁ g) = τₙg ∘ₙ τₘf", scope.clone()).sweep(&pairs_11, |&(m, a, n, b)| {
            let case = || format!("f = {}, g = {}", self.label(m, a), self.label(n, b));
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            let lhs = op.tau(&op.compose(&f, &g, 1).map_err(err(case))?).map_err(err(case))?;
            let rhs = op.compose(&op.tau(&g).map_err(err(case))?, &op.tau(&f).map_err(err(case))?, n).map_err(err(case))?;
            self.cmp(case, &lhs, &rhs)
        }));

        let pairs_20 = basis_pairs(op, 2, 0, top, 1);
        checks.push(Check::new("cyclic.inner_slot", "τ_{m+n−1}(f ∘ᵢ g) = τₘf ∘_{i−1} g, 2 ≤ i ≤ m", scope.clone()).sweep(&pairs_20, |&(m, a, n, b)| {
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            let tf = op.tau(&f).map_err(err(|| self.label(m, a)))?;
            for i in 2..=m {
                let case = || format!("f = {}, g = {}, i = {i}", self.label(m, a), self.label(n, b));
                let lhs = op.tau(&op.compose(&f, &g, i).map_err(err(case))?).map_err(err(case))?;
                let rhs = op.compose(&tf, &g, i - 1).map_err(err(case))?;
                self.cmp(case, &lhs, &rhs)?;
            }
            Ok(())
        }));

        let pairs_10 = basis_pairs(op, 1, 0, top, 1);
        checks.push(Check::new("cyclic.inner_slot_powers", "τ^{−j}_{m+n−1}(f ∘ᵢ g) = τₘ^{−j}f ∘_{i+j} g, 1 ≤ i+j ≤ m", scope.clone()).sweep(&pairs_10, |&(m, a, n, b)| {
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            for i in 1..=m as i64 {
                let c = op.compose(&f, &g, i as usize).map_err(err(|| self.label(m, a)))?;
                for j in (1 - i)..=(m as i64 - i) {
                    let case = || format!("f = {}, g = {}, i = {i}, j = {j}", self.label(m, a), self.label(n, b));
                    let lhs = self.tau_pow(&c, -j).map_err(err(case))?;
                    let tf = self.tau_pow(&f, -j).map_err(err(case))?;
                    let rhs = op.compose(&tf, &g, (i + j) as usize).map_err(err(case))?;
                    self.cmp(case, &lhs, &rhs)?;
                }
            }
            Ok(())
        }));

        let pairs_wrap = basis_pairs(op, 1, 1, top, 1);
        checks.push(Check::new(
            "cyclic.wrap_slot_powers",
            "τ^{−j}_{m+n−1}(f ∘ᵢ g) = τₙ^{−j+m−i} g ∘_{i+j−m} τₘ^{i−m−1} f, m+1 ≤ i+j ≤ m+n",
            scope,
        )
        .sweep(&pairs_wrap, |&(m, a, n, b)| {
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            let (mi, ni) = (m as i64, n as i64);
            for i in 1..=mi {
                let c = op.compose(&f, &g, i as usize).map_err(err(|| self.label(m, a)))?;
                let tf = self.tau_pow(&f, i - mi - 1).map_err(err(|| self.label(m, a)))?;
                for j in (mi + 1 - i)..=(mi + ni - i) {
                    let case = || format!("f = {}, g = {}, i = {i}, j = {j}", self.label(m, a), self.label(n, b));
                    let lhs = self.tau_pow(&c, -j).map_err(err(case))?;
                    let tg = self.tau_pow(&g, -j + mi - i).map_err(err(case))?;
                    let rhs = op.compose(&tg, &tf, (i + j - mi) as usize).map_err(err(case))?;
                    self.cmp(case, &lhs, &rhs)?;
                }
            }
            Ok(())
        }));
        checks
    }

    /// Relations between τ, the cofaces and the codegeneracies, on every
    /// basis element up to degree `top`.
    pub fn verify_cocyclic(&self, top: usize) -> Vec<Check> {
        let op = &self.op;
        let top = top.min(op.max_degree());
        let singles = |lo: usize, hi: usize| -> Vec<(usize, usize)> {
            (lo..=hi).flat_map(|n| (0..op.dim(n)).map(move |a| (n, a))).collect()
        };
        let mut checks = Vec::new();
        let below = singles(0, top.saturating_sub(1));
        checks.push(Check::new("cocyclic.tau_coface", "τₙδᵢ = δᵢ₋₁τₙ₋₁ (1 ≤ i ≤ n), τₙδ₀ = δₙ", format!("all basis elements of degree < {top}")).sweep(&below, |&(k, a)| {
            let f = self.basis(k, a);
            let tf = self.tau(&f).map_err(err(|| self.label(k, a)))?;
            for i in 0..=k + 1 {
                let case = || format!("f = {}, i = {i}", self.label(k, a));
                let lhs = self.tau(&op.coface(i, &f).map_err(err(case))?).map_err(err(case))?;
                let rhs = if i == 0 { op.coface(k + 1, &f) } else { op.coface(i - 1, &tf) }.map_err(err(case))?;
                self.cmp(case, &lhs, &rhs)?;
            }
            Ok(())
        }));
        let above = singles(1, top);
        checks.push(Check::new("cocyclic.tau_codegeneracy", "τₙ^r σᵢ = σ_{i−r} τ_{n+1}^r, 0 ≤ r ≤ i ≤ n", format!("all basis elements of degree ≤ {top}")).sweep(&above, |&(k, a)| {
            // f ∈ O(n+1) with n = k − 1
            let f = self.basis(k, a);
            for i in 0..k {
                let s = op.codegeneracy(i, &f).map_err(err(|| self.label(k, a)))?;
                for r in 0..=i {
                    let case = || format!("f = {}, i = {i}, r = {r}", self.label(k, a));
                    let lhs = self.tau_pow(&s, r as i64).map_err(err(case))?;
                    let t = self.tau_pow(&f, r as i64).map_err(err(case))?;
                    let rhs = op.codegeneracy(i - r, &t).map_err(err(case))?;
                    self.cmp(case, &lhs, &rhs)?;
                }
            }
            Ok(())
        }));
        checks.push(Check::new("cocyclic.extra_degeneracy_tau", "τₙ^{−j} σ_{n+1} = σ_{j−1} τ_{n+1}^{−j}, 1 ≤ j ≤ n+1", format!("all basis elements of degree ≤ {top}")).sweep(&above, |&(k, a)| {
            let f = self.basis(k, a);
            let s = self.extra_degeneracy(&f).map_err(err(|| self.label(k, a)))?;
            for j in 1..=k {
                let case = || format!("f = {}, j = {j}", self.label(k, a));
                let lhs = self.tau_pow(&s, -(j as i64)).map_err(err(case))?;
                let t = self.tau_pow(&f, -(j as i64)).map_err(err(case))?;
                let rhs = op.codegeneracy(j - 1, &t).map_err(err(case))?;
                self.cmp(case, &lhs, &rhs)?;
            }
            Ok(())
        }));
        checks.push(Check::new("connes_b.two_formulas", "N σₙ f = Σⱼ (−1)^{j(m−1)} σ_{j−1} τₘ^{−j} f", format!("all basis elements of degree ≤ {top}")).sweep(&above, |&(k, a)| {
            let case = || self.label(k, a);
            let f = self.basis(k, a);
            self.cmp(case, &self.connes_b(&f).map_err(err(case))?, &self.connes_b_sum(&f).map_err(err(case))?)
        }));
        let all = singles(0, top);
        checks.push(Check::new("connes_b.norm_telescopes", "(1 − (−1)^k τ) N = 0 on degree k", format!("all basis elements of degree ≤ {top}")).sweep(&all, |&(k, a)| {
            let case = || self.label(k, a);
            let nf = self.norm_op(&self.basis(k, a)).map_err(err(case))?;
            let mut lhs = nf.clone();
            lhs.add_signed(self.field(), !odd(k as isize), &self.tau(&nf).map_err(err(case))?);
            self.cmp(case, &lhs, &Cochain::zero(k as isize))
        }));
        checks
    }

    /// Normalized basis pairs `(m, k, n, l)`: the `k`-th normalized vector of
    /// degree `m` and the `l`-th of degree `n`, with `m + n ≤ top`.
    fn normalized_pairs(&self, mmin: usize, top: usize) -> Result<Vec<Pair>, OperadError> {
        let mut out = Vec::new();
        for m in mmin..=top {
            for n in 0..=top - m {
                let (dm, dn) = (self.normalized(m)?.dim(), self.normalized(n)?.dim());
                for k in 0..dm {
                    for l in 0..dn {
                        out.push((m, k, n, l));
                    }
                }
            }
        }
        Ok(out)
    }

    fn nvec(&self, n: usize, k: usize) -> OpCochain<O> {
        let s = self.normalized[n].get().expect("slice computed before sweeping");
        Cochain::new(n, s.basis()[k].clone())
    }

    /// The chain-level identities among cup, B, Z and H on normalized pairs
    /// with `m + n ≤ top`; requires `top + 1 ≤ N_max`.
    pub fn verify_chain_identities(&self, top: usize) -> Vec<Check> {
        let op = &self.op;
        let f_ = self.field();
        let top = top.min(op.max_degree().saturating_sub(1));
        let scope = format!("normalized basis pairs, m+n ≤ {top}");
        let pairs = match self.normalized_pairs(0, top) {
            Ok(p) => p,
            Err(e) => return vec![Check::new("chain.setup", "normalized slices", scope).record(false, || Counterexample::message(e.to_string()))],
        };
        let label = |m: usize, k: usize, n: usize, l: usize| format!("f = normalized[{m}][{k}], g = normalized[{n}][{l}]");
        let raw_pairs = basis_pairs(op, 1, 0, top, 0);
        let mut checks = Vec::new();

        checks.push(Check::new("chain.cup_extra_degeneracy", "σ_{m+n}(f ∪ g) = τₘf ∘ₘ g", format!("all basis pairs, 1 ≤ m, m+n ≤ {top}")).sweep(&raw_pairs, |&(m, a, n, b)| {
            let case = || format!("f = {}, g = {}", self.label(m, a), self.label(n, b));
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            let lhs = self.extra_degeneracy(&op.cup(&f, &g).map_err(err(case))?).map_err(err(case))?;
            let rhs = op.compose(&self.tau(&f).map_err(err(case))?, &g, m).map_err(err(case))?;
            self.cmp(case, &lhs, &rhs)
        }));
        let raw_any = basis_pairs(op, 0, 0, top, 0);
        checks.push(Check::new("chain.cup_exchange", "τ^{−n}_{m+n−1} σ_{m+n}(f ∪ g) = σ_{m+n}(g ∪ f)", format!("all basis pairs, 1 ≤ m+n ≤ {top}")).sweep(&raw_any, |&(m, a, n, b)| {
            if m + n == 0 {
                return Ok(());
            }
            let case = || format!("f = {}, g = {}", self.label(m, a), self.label(n, b));
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            let s = self.extra_degeneracy(&op.cup(&f, &g).map_err(err(case))?).map_err(err(case))?;
            let lhs = self.tau_pow(&s, -(n as i64)).map_err(err(case))?;
            let rhs = self.extra_degeneracy(&op.cup(&g, &f).map_err(err(case))?).map_err(err(case))?;
            self.cmp(case, &lhs, &rhs)
        }));
        let raw_h = basis_pairs(op, 2, 0, top, 0);
        checks.push(Check::new("chain.h_two_forms", "τ^{−j}σ(f ∘_{p−j+1} g) and σ_{j−1}(τₘ^{−j}f ∘_{p+1} g) define the same H_{j,p}", format!("all basis pairs, all 1 ≤ j ≤ p ≤ m−1, m+n ≤ {top}")).sweep(&raw_h, |&(m, a, n, b)| {
            let (f, g) = (self.basis(m, a), self.basis(n, b));
            for p in 1..m {
                for j in 1..=p {
                    let case = || format!("f = {}, g = {}, j = {j}, p = {p}", self.label(m, a), self.label(n, b));
                    self.cmp(case, &self.h_jp(&f, &g, j, p).map_err(err(case))?, &self.h_jp_alt(&f, &g, j, p).map_err(err(case))?)?;
                }
            }
            Ok(())
        }));

        checks.push(Check::new("chain.b_of_cup", "B(f ∪ g) = Z(f,g) + (−1)^{mn} Z(g,f)", scope.clone()).sweep(&pairs, |&(m, k, n, l)| {
            let case = || label(m, k, n, l);
            let (f, g) = (self.nvec(m, k), self.nvec(n, l));
            let lhs = self.connes_b(&op.cup(&f, &g).map_err(err(case))?).map_err(err(case))?;
            let mut rhs = self.z_op(&f, &g).map_err(err(case))?;
            rhs.add_signed(f_, odd((m * n) as isize), &self.z_op(&g, &f).map_err(err(case))?);
            self.cmp(case, &lhs, &rhs)
        }));
        let evens: Vec<(usize, usize)> = (0..=top / 2)
            .step_by(2)
            .flat_map(|m| (0..self.normalized[m].get().map_or(0, |s| s.dim())).map(move |k| (m, k)))
            .collect();
        checks.push(Check::new("chain.b_of_square", "B(f ∪ f) = 2 Z(f,f) for even m", format!("normalized basis vectors of even degree, 2m ≤ {top}")).sweep(&evens, |&(m, k)| {
            let case = || format!("f = normalized[{m}][{k}]");
            let f = self.nvec(m, k);
            let lhs = self.connes_b(&op.cup(&f, &f).map_err(err(case))?).map_err(err(case))?;
            let rhs = self.z_op(&f, &f).map_err(err(case))?.scaled(f_, &f_.from_i64(2));
            self.cmp(case, &lhs, &rhs)
        }));
        checks.push(Check::new("chain.bv_homotopy", "(−1)^m(Z(f,g) − (Bf) ∪ g) − f ∘̄ g = dH(f,g) + H(df,g) + (−1)^{m−1}H(f,dg)", scope.clone()).sweep(&pairs, |&(m, k, n, l)| {
            let case = || label(m, k, n, l);
            let (f, g) = (self.nvec(m, k), self.nvec(n, l));
            let (lhs, rhs) = self.homotopy_sides(&f, &g).map_err(err(case))?;
            self.cmp(case, &lhs, &rhs)
        }));
        checks.extend(self.verify_six_equations_on(&pairs, &scope));
        checks.push(Check::new("chain.normalized_closed", "d, ∪ and ∘ᵢ preserve the normalized slice", scope).sweep(&pairs, |&(m, k, n, l)| {
            let case = || label(m, k, n, l);
            let (f, g) = (self.nvec(m, k), self.nvec(n, l));
            let mut outputs = vec![op.differential(&f).map_err(err(case))?, op.cup(&f, &g).map_err(err(case))?];
            for i in 1..=m {
                outputs.push(op.compose(&f, &g, i).map_err(err(case))?);
            }
            for (idx, x) in outputs.iter().enumerate() {
                if !self.is_normalized(x).map_err(err(case))? {
                    return Err(Counterexample { case: format!("{} (output {idx})", case()), lhs: crate::report::render(f_, &x.coeffs), rhs: Vec::new() });
                }
            }
            Ok(())
        }));
        checks
    }

    /// Left and right sides of the homotopy formula for the BV relation.
    pub fn homotopy_sides(&self, f: &OpCochain<O>, g: &OpCochain<O>) -> Result<(OpCochain<O>, OpCochain<O>), OperadError> {
        let op = &self.op;
        let fl = self.field();
        let m = f.degree;
        let mut lhs = self.z_op(f, g)?;
        lhs.add_signed(fl, true, &op.cup(&self.connes_b(f)?, g)?);
        let mut lhs = lhs.signed(fl, odd(m));
        lhs.add_signed(fl, true, &op.comp_bar(f, g)?);
        let mut rhs = op.differential(&self.h_op(f, g)?)?;
        rhs = rhs.add(fl, &self.h_op(&op.differential(f)?, g)?);
        rhs.add_signed(fl, odd(m - 1), &self.h_op(f, &op.differential(g)?)?);
        Ok((lhs, rhs))
    }

    /// Both sides of the six auxiliary equations whose sum is the homotopy formula.
    pub fn six_equation_sides(&self, f: &OpCochain<O>, g: &OpCochain<O>) -> Result<Vec<(OpCochain<O>, OpCochain<O>)>, OperadError> {
        let op = &self.op;
        let fl = self.field();
        let (m, n) = (f.degree, g.degree);
        let mu = op.multiplication();
        let target = m + n - 1;
        let mut sides = Vec::with_capacity(6);

        // (1) (−1)^m Z(f,g) − f∘̄g = H(μ∘₂f, g) + H((−1)^{m+1} μ∘₁f, g)
        let mut l1 = self.z_op(f, g)?.signed(fl, odd(m));
        l1.add_signed(fl, true, &op.comp_bar(f, g)?);
        let mut r1 = self.h_op(&op.compose(&mu, f, 2)?, g)?;
        r1.add_signed(fl, odd(m + 1), &self.h_op(&op.compose(&mu, f, 1)?, g)?);
        sides.push((l1, r1));

        // (2) Σ_{1≤j<p≤m} H_{j,p}((−1)^{p−j} f∘_{p−j}μ, g) = (−1)^m H(f, μ∘₂g)
        let mut l2 = Cochain::zero(target);
        for p in 1..=m.max(0) as usize {
            for j in 1..p {
                let x = op.compose(f, &mu, p - j)?.signed(fl, odd((p - j) as isize));
                l2 = l2.add(fl, &self.h_jp(&x, g, j, p)?);
            }
        }
        let r2 = self.h_op(f, &op.compose(&mu, g, 2)?)?.signed(fl, odd(m));
        sides.push((l2, r2));

        // (3) Σ_{1≤j≤p≤m−1} H_{j,p}((−1)^{p−j+1} f∘_{p−j+1}μ, g) = (−1)^m H(f, (−1)^{n+1} μ∘₁g)
        let mut l3 = Cochain::zero(target);
        for p in 1..m.max(1) as usize {
            for j in 1..=p {
                let x = op.compose(f, &mu, p - j + 1)?.signed(fl, odd((p - j + 1) as isize));
                l3 = l3.add(fl, &self.h_jp(&x, g, j, p)?);
            }
        }
        let r3 = self.h_op(f, &op.compose(&mu, g, 1)?)?.signed(fl, odd(m) ^ odd(n + 1));
        sides.push((l3, r3));

        // (4) Σ_{1≤j≤m} H_{j,m}((−1)^{m−j+1} f∘_{m−j+1}μ, g) = −(−1)^m (Bf) ∪ g
        let mut l4 = Cochain::zero(target);
        let mm = m.max(0) as usize;
        for j in 1..=mm {
            let x = op.compose(f, &mu, mm - j + 1)?.signed(fl, odd((mm - j + 1) as isize));
            l4 = l4.add(fl, &self.h_jp(&x, g, j, mm)?);
        }
        let r4 = op.cup(&self.connes_b(f)?, g)?.signed(fl, !odd(m));
        sides.push((l4, r4));

        // (5) Σ_{1≤j≤p≤m} H_{j,p}(Σ_{i≠p−j, p−j+1} (−1)^i f∘ᵢμ, g)
        //       = −μ∘₂H(f,g) − (−1)^{m+n−1} μ∘₁H(f,g)
        //         − Σ_{1≤j≤p≤m−1} Σ_{i ∈ [1,p−1] ∪ [p+n, m+n−2]} (−1)^i H_{j,p}(f,g) ∘ᵢ μ
        let mut l5 = Cochain::zero(target);
        for p in 1..=mm {
            for j in 1..=p {
                let mut x = Cochain::zero(m + 1);
                for i in 1..=mm {
                    if i + j == p || i + j == p + 1 {
                        continue;
                    }
                    x.add_signed(fl, odd(i as isize), &op.compose(f, &mu, i)?);
                }
                l5 = l5.add(fl, &self.h_jp(&x, g, j, p)?);
            }
        }
        let h = self.h_op(f, g)?;
        let mut r5 = op.compose(&mu, &h, 2)?.neg(fl);
        r5.add_signed(fl, !odd(m + n - 1), &op.compose(&mu, &h, 1)?);
        let top_slot = m + n - 2;
        for p in 1..m.max(1) as usize {
            for j in 1..=p {
                let hjp = self.h_jp(f, g, j, p)?;
                for i in 1..=top_slot.max(0) as usize {
                    if i >= p && (i as isize) < p as isize + n {
                        continue;
                    }
                    r5.add_signed(fl, !odd(i as isize), &op.compose(&hjp, &mu, i)?);
                }
            }
        }
        sides.push((l5, r5));

        // (6) Σ_{1≤j≤p≤m−1} Σ_{p≤i≤p+n−1} (−1)^i H_{j,p}(f,g)∘ᵢμ = (−1)^m H(f, Σ_{i=1}^n (−1)^i g∘ᵢμ)
        let mut l6 = Cochain::zero(target);
        for p in 1..m.max(1) as usize {
            for j in 1..=p {
                let hjp = self.h_jp(f, g, j, p)?;
                for i in p..p + n.max(0) as usize {
                    l6.add_signed(fl, odd(i as isize), &op.compose(&hjp, &mu, i)?);
                }
            }
        }
        let mut dg = Cochain::zero(n + 1);
        for i in 1..=n.max(0) as usize {
            dg.add_signed(fl, odd(i as isize), &op.compose(g, &mu, i)?);
        }
        let r6 = self.h_op(f, &dg)?.signed(fl, odd(m));
        sides.push((l6, r6));
        Ok(sides)
    }

    /// The six equations and their combination on normalized pairs with `m + n ≤ top`.
    pub fn verify_six_equations(&self, top: usize) -> Vec<Check> {
        let top = top.min(self.op.max_degree());
        let scope = format!("normalized basis pairs, m+n ≤ {top}");
        match self.normalized_pairs(0, top) {
            Ok(pairs) => self.verify_six_equations_on(&pairs, &scope),
            Err(e) => vec![Check::new("six.setup", "normalized slices", scope).record(false, || Counterexample::message(e.to_string()))],
        }
    }

    fn verify_six_equations_on(&self, pairs: &[Pair], scope: &str) -> Vec<Check> {
        const STATEMENTS: [&str; 6] = [
            "(−1)^m Z(f,g) − f ∘̄ g = H(μ∘₂f, g) + H((−1)^{m+1} μ∘₁f, g)",
            "Σ_{j<p≤m} H_{j,p}((−1)^{p−j} f∘_{p−j}μ, g) = (−1)^m H(f, μ∘₂g)",
            "Σ_{j≤p≤m−1} H_{j,p}((−1)^{p−j+1} f∘_{p−j+1}μ, g) = (−1)^m H(f, (−1)^{n+1} μ∘₁g)",
            "Σ_{j≤m} H_{j,m}((−1)^{m−j+1} f∘_{m−j+1}μ, g) = −(−1)^m (Bf) ∪ g",
            "Σ_{j≤p≤m} H_{j,p}(Σ_{i∉{p−j,p−j+1}} (−1)^i f∘ᵢμ, g) = −μ∘₂H − (−1)^{m+n−1} μ∘₁H − Σ (−1)^i H_{j,p}∘ᵢμ over the outer slots",
            "Σ_{j≤p≤m−1} Σ_{p≤i≤p+n−1} (−1)^i H_{j,p}(f,g)∘ᵢμ = (−1)^m H(f, Σᵢ (−1)^i g∘ᵢμ)",
        ];
        let fl = self.field();
        let label = |m: usize, k: usize, n: usize, l: usize| format!("f = normalized[{m}][{k}], g = normalized[{n}][{l}]");
        let mut checks: Vec<Check> = (0..6)
            .map(|e| {
                Check::new(&format!("six.equation_{}", e + 1), STATEMENTS[e], scope).sweep(pairs, |&(m, k, n, l)| {
                    let case = || label(m, k, n, l);
                    let sides = self.six_equation_sides(&self.nvec(m, k), &self.nvec(n, l)).map_err(err(case))?;
                    self.cmp(case, &sides[e].0, &sides[e].1)
                })
            })
            .collect();
        checks.push(
            Check::new("six.combination", "the residuals r₁…r₆ satisfy −r₁ + r₂ + r₃ + r₄ + r₅ + r₆ = (right − left) of the homotopy formula", scope)
                .sweep(pairs, |&(m, k, n, l)| {
                    let case = || label(m, k, n, l);
                    let (f, g) = (self.nvec(m, k), self.nvec(n, l));
                    let sides = self.six_equation_sides(&f, &g).map_err(err(case))?;
                    let mut combo = Cochain::zero(f.degree + g.degree - 1);
                    for (e, (lhs, rhs)) in sides.iter().enumerate() {
                        let r = lhs.sub(fl, rhs);
                        combo.add_signed(fl, e == 0, &r);
                    }
                    let (pl, pr) = self.homotopy_sides(&f, &g).map_err(err(case))?;
                    self.cmp(case, &combo, &pr.sub(fl, &pl))
                }),
        );
        checks
    }

    /// `d² = B² = dB + Bd = 0` on normalized slices of degree `≤ top`, with `top + 2 ≤ N_max`.
    pub fn verify_mixed_complex(&self, top: usize) -> Vec<Check> {
        let op = &self.op;
        let fl = self.field();
        let top = top.min(op.max_degree().saturating_sub(2));
        let scope = format!("normalized basis vectors, degree ≤ {top}");
        let mut singles = Vec::new();
        for n in 0..=top {
            match self.normalized(n) {
                Ok(s) => singles.extend((0..s.dim()).map(|k| (n, k))),
                Err(e) => return vec![Check::new("mixed.setup", "normalized slices", scope).record(false, || Counterexample::message(e.to_string()))],
            }
        }
        if self.normalized(top + 1).is_err() {
            return vec![Check::new("mixed.setup", "normalized slices", scope).record(false, || Counterexample::message("cutoff too small"))];
        }
        let case = |n: usize, k: usize| move || format!("f = normalized[{n}][{k}]");
        vec![
            Check::new("mixed.d_squared", "d∘d = 0", scope.clone()).sweep(&singles, |&(n, k)| {
                let f = self.nvec(n, k);
                let dd = op.differential(&op.differential(&f).map_err(err(case(n, k)))?).map_err(err(case(n, k)))?;
                self.cmp(case(n, k), &dd, &Cochain::zero(n as isize + 2))
            }),
            Check::new("mixed.b_squared", "B∘B = 0", scope.clone()).sweep(&singles, |&(n, k)| {
                let f = self.nvec(n, k);
                let bb = self.connes_b(&self.connes_b(&f).map_err(err(case(n, k)))?).map_err(err(case(n, k)))?;
                self.cmp(case(n, k), &bb, &Cochain::zero(n as isize - 2))
            }),
            Check::new("mixed.anticommute", "d∘B + B∘d = 0", scope).sweep(&singles, |&(n, k)| {
                let f = self.nvec(n, k);
                let db = op.differential(&self.connes_b(&f).map_err(err(case(n, k)))?).map_err(err(case(n, k)))?;
                let bd = self.connes_b(&op.differential(&f).map_err(err(case(n, k)))?).map_err(err(case(n, k)))?;
                let z = if n == 0 { bd } else { db.add(fl, &bd) };
                self.cmp(case(n, k), &z, &Cochain::zero(n as isize))
            }),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::{build_endo_operad, AlgebraPresentation, BuildMode};
    use crate::exactfield::{Rational, Rationals};
    use crate::input::{parse_presentation, Presentation};

    fn dual_numbers(max: usize) -> CyclicStructure<crate::endo::EndOperad<Rationals>> {
        let text = r#"{"kind":"algebra","field":"Q","dim":2,"basis_names":["1","x"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":["1","0"],
            "form":[["0","1"],["1","0"]]}"#;
        let Presentation::Algebra(raw) = parse_presentation(text).unwrap() else { panic!() };
        let alg = AlgebraPresentation::from_raw(Rationals, &raw).unwrap();
        CyclicStructure::new(build_endo_operad(alg, max, BuildMode::Strict).unwrap()).unwrap()
    }

    #[test]
    fn tau_pow_examples() {
        let c = dual_numbers(4);
        let op = c.operad();
        assert_eq!(c.tau_pow(&op.identity(), 1).unwrap(), op.identity());
        assert_eq!(c.tau_pow(&op.multiplication(), 1).unwrap(), op.multiplication());
        let f = Cochain::basis(&Rationals, 3, 5);
        assert_eq!(c.tau_pow(&f, 4).unwrap(), f);
        assert_eq!(c.tau_pow(&c.tau_pow(&f, -1).unwrap(), 1).unwrap(), f);
    }

    #[test]
    fn small_values() {
        let c = dual_numbers(4);
        let op = c.operad();
        assert_eq!(c.extra_degeneracy(&op.multiplication()).unwrap(), op.identity());
        assert!(c.connes_b(&op.unit()).unwrap().is_zero());
        assert_eq!(c.connes_b(&op.unit()).unwrap().degree, -1);
        assert_eq!(c.norm_op(&op.unit()).unwrap(), op.unit());
        assert!(c.z_op(&op.unit(), &op.multiplication()).unwrap().is_zero());
        assert!(c.h_op(&op.identity(), &op.multiplication()).unwrap().is_zero());
        assert_eq!(c.normalized(0).unwrap().dim(), 2);
        // maps A → A killing the unit
        assert_eq!(c.normalized(1).unwrap().dim(), 2);
        let n3: Rational = Rational::from_integer(3);
        assert_eq!(c.norm_op(&op.multiplication()).unwrap(), op.multiplication().scaled(&Rationals, &n3));
    }

    #[test]
    fn dual_numbers_pass_everything() {
        let c = dual_numbers(5);
        let mut checks = c.verify_cyclic_axioms(5);
        checks.extend(c.verify_cocyclic(5));
        checks.extend(c.verify_chain_identities(4));
        checks.extend(c.verify_mixed_complex(3));
        for ch in &checks {
            assert!(ch.passed, "{ch:#?}");
            assert!(ch.cases > 0 || ch.name == "chain.b_of_square", "{} swept nothing", ch.name);
        }
    }
}
