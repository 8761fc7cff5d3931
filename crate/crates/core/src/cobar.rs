//! The Cobar operad of a finite-dimensional Hopf algebra with a character
//! `χ` such that `(χ, 1)` is a modular pair in involution.
//!
//! `O(n) = H^{⊗n}` with basis the tensors of basis vectors, indexed
//! row-major; `O(0) = 𝕜` with the single basis element `1_𝕜`.
//! Partial composition inserts the iterated coproduct of the `i`-th factor:
//! `(a₁⊗…⊗aₘ) ∘ᵢ (b₁⊗…⊗bₙ) = a₁⊗…⊗(Δ^{n−1}aᵢ)·(b₁⊗…⊗bₙ)⊗…⊗aₘ`, and
//! `τₙ(h₁⊗…⊗hₙ) = Δ^{n−1}S̃(h₁)·(h₂⊗…⊗hₙ⊗1)`.

use std::sync::OnceLock;

use thiserror::Error;

use crate::exactfield::Field;
use crate::input::{self, InputError, RawHopf};
use crate::linalg::{Matrix, SparseVec};
use crate::operad::{operator_matrix, Cochain, Operad};
use crate::report::{compare, render, Check, Counterexample};

#[derive(Debug, Error)]
pub enum CobarError {
    #[error("Hopf algebra fails validation: {0}")]
    Validation(String),
    #[error("(χ, 1) is not a modular pair in involution: S̃² ≠ id")]
    NotModularPair,
    #[error("degree cutoff {0} is too small (need at least 2)")]
    CutoffTooSmall(usize),
    #[error("H^⊗{0} is too large to enumerate")]
    TooLarge(usize),
}

/// A Hopf algebra by structure constants with a character `χ`.
#[derive(Clone, Debug)]
pub struct HopfPresentation<F: Field> {
    pub field: F,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `mul[i][j] = eᵢ·eⱼ`.
    pub mul: Vec<Vec<SparseVec<F::Elem>>>,
    pub unit: SparseVec<F::Elem>,
    /// `comul[i] = Δ(eᵢ)` indexed by `j·dim + k` for `e_j ⊗ e_k`.
    pub comul: Vec<SparseVec<F::Elem>>,
    pub counit: Vec<F::Elem>,
    /// `antipode[i] = S(eᵢ)`.
    pub antipode: Vec<SparseVec<F::Elem>>,
    pub character: Vec<F::Elem>,
}

impl<F: Field> HopfPresentation<F> {
    pub fn from_raw(field: F, raw: &RawHopf) -> Result<Self, InputError> {
        let d = raw.dim;
        if d == 0 {
            return Err(InputError::Shape("dim must be positive".into()));
        }
        let table = input::parse_table(&field, d, "comul", &raw.comul)?;
        let comul = table
            .iter()
            .map(|row| {
                let terms = row.iter().enumerate().flat_map(|(j, v)| v.iter().map(move |(k, c)| (j * d + k, c.clone())));
                SparseVec::from_terms(&field, terms)
            })
            .collect();
        let dense = |what: &str, xs: &[input::ScalarText]| -> Result<Vec<F::Elem>, InputError> {
            Ok(input::parse_vector(&field, d, what, xs)?.to_dense(&field, d))
        };
        let antipode = input::parse_matrix(&field, d, "antipode", &raw.antipode)?
            .iter()
            .map(|row| SparseVec::from_dense(&field, row))
            .collect();
        Ok(HopfPresentation {
            basis_names: input::basis_names(d, &raw.basis_names)?,
            mul: input::parse_table(&field, d, "mul", &raw.mul)?,
            unit: input::parse_vector(&field, d, "unit", &raw.unit)?,
            comul,
            counit: dense("counit", &raw.counit)?,
            antipode,
            character: dense("character", &raw.character)?,
            field,
            dim: d,
        })
    }

    pub fn basis(&self, i: usize) -> SparseVec<F::Elem> {
        SparseVec::unit(&self.field, i)
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

    /// Applies a linear map given by the images of the basis vectors.
    pub fn apply(&self, map: &[SparseVec<F::Elem>], x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            out.add_scaled(&self.field, a, &map[i]);
        }
        out
    }

    pub fn pair(&self, covector: &[F::Elem], x: &SparseVec<F::Elem>) -> F::Elem {
        let f = &self.field;
        x.iter().fold(f.zero(), |acc, (i, a)| f.add(&acc, &f.mul(a, &covector[i])))
    }

    pub fn coproduct(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.apply(&self.comul, x)
    }

    /// `S̃(eᵢ) = χ(eᵢ¹) S(eᵢ²)` for every basis vector.
    pub fn twisted_antipode(&self) -> Vec<SparseVec<F::Elem>> {
        let (f, d) = (&self.field, self.dim);
        (0..d)
            .map(|i| {
                let mut out = SparseVec::new();
                for (jk, c) in self.comul[i].iter() {
                    let x = f.mul(c, &self.character[jk / d]);
                    out.add_scaled(f, &x, &self.antipode[jk % d]);
                }
                out
            })
            .collect()
    }

    /// `Δ^{n−1}(x)` in `H^{⊗n}` (row-major), with `Δ^{−1} = ε` and `Δ⁰ = id`;
    /// higher powers split the first factor: `Δ^{n} = (Δ ⊗ id)∘Δ^{n−1}`.
    pub fn iterated_diagonal(&self, x: &SparseVec<F::Elem>, n: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        if n == 0 {
            return SparseVec::from_terms(f, [(0, self.pair(&self.counit, x))]);
        }
        let d = self.dim;
        let mut acc = x.clone();
        let mut rest_size = 1;
        for _ in 1..n {
            let mut terms = Vec::new();
            for (code, c) in acc.iter() {
                let (first, rest) = (code / rest_size, code % rest_size);
                for (jk, y) in self.comul[first].iter() {
                    terms.push((jk * rest_size + rest, f.mul(c, y)));
                }
            }
            acc = SparseVec::from_terms(f, terms);
            rest_size *= d;
        }
        acc
    }

    /// `Δ^{n−1}(x)` splitting the last factor each time.
    pub fn iterated_diagonal_right(&self, x: &SparseVec<F::Elem>, n: usize) -> SparseVec<F::Elem> {
        let f = &self.field;
        if n <= 1 {
            return self.iterated_diagonal(x, n);
        }
        let d = self.dim;
        let mut acc = x.clone();
        for _ in 1..n {
            let mut terms = Vec::new();
            for (code, c) in acc.iter() {
                let (head, last) = (code / d, code % d);
                for (jk, y) in self.comul[last].iter() {
                    terms.push((head * d * d + jk, f.mul(c, y)));
                }
            }
            acc = SparseVec::from_terms(f, terms);
        }
        acc
    }

    /// Expands `v₁ ⊗ … ⊗ vₖ` into row-major coordinates, scaled by `coeff`.
    pub fn tensor(&self, factors: &[SparseVec<F::Elem>], coeff: &F::Elem) -> Vec<(usize, F::Elem)> {
        let f = &self.field;
        let mut acc: Vec<(usize, F::Elem)> = vec![(0, coeff.clone())];
        for v in factors {
            let mut next = Vec::with_capacity(acc.len() * v.nnz());
            for (code, c) in &acc {
                for (i, x) in v.iter() {
                    next.push((code * self.dim + i, f.mul(c, x)));
                }
            }
            acc = next;
        }
        acc
    }

    fn names(&self, idx: &[usize]) -> String {
        idx.iter().map(|&i| self.basis_names[i].as_str()).collect::<Vec<_>>().join(", ")
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

/// Every Hopf-algebra axiom and the character condition, on all basis tuples.
pub fn validate_hopf<F: Field>(p: &HopfPresentation<F>) -> Vec<Check> {
    let f = &p.field;
    let d = p.dim;
    let e = |i| p.basis(i);
    let singles: Vec<usize> = (0..d).collect();
    let pairs: Vec<[usize; 2]> = (0..d * d).map(|t| [t / d, t % d]).collect();
    let triples: Vec<[usize; 3]> = (0..d * d * d).map(|t| [t / (d * d), t / d % d, t % d]).collect();
    let scalar = |x: F::Elem| SparseVec::from_terms(f, [(0, x)]);
    let tensor_mul = |x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>| {
        let mut terms = Vec::new();
        for (ab, c) in x.iter() {
            for (cd, c2) in y.iter() {
                let prod = p.tensor(&[p.product(&e(ab / d), &e(cd / d)), p.product(&e(ab % d), &e(cd % d))], &f.mul(c, c2));
                terms.extend(prod);
            }
        }
        SparseVec::from_terms(f, terms)
    };
    // (S ⊗ id) or (id ⊗ S) followed by multiplication
    let convolve = |x: &SparseVec<F::Elem>, left: bool| {
        let mut out = SparseVec::new();
        for (jk, c) in x.iter() {
            let (a, b) = (e(jk / d), e(jk % d));
            let prod = if left { p.product(&p.apply(&p.antipode, &a), &b) } else { p.product(&a, &p.apply(&p.antipode, &b)) };
            out.add_scaled(f, c, &prod);
        }
        out
    };
    vec![
        Check::new("algebra.associativity", "(a·b)·c = a·(b·c)", "all basis triples").sweep(&triples, |&[a, b, c]| {
            compare(f, || format!("({})", p.names(&[a, b, c])), &p.product(&p.product(&e(a), &e(b)), &e(c)), &p.product(&e(a), &p.product(&e(b), &e(c))))
        }),
        Check::new("algebra.unit", "1·a = a = a·1", "all basis elements").sweep(&singles, |&a| {
            compare(f, || format!("1·{}", p.basis_names[a]), &p.product(&p.unit, &e(a)), &e(a))?;
            compare(f, || format!("{}·1", p.basis_names[a]), &p.product(&e(a), &p.unit), &e(a))
        }),
        Check::new("coalgebra.coassociativity", "(Δ ⊗ id)Δ = (id ⊗ Δ)Δ", "all basis elements").sweep(&singles, |&a| {
            compare(f, || p.basis_names[a].clone(), &p.iterated_diagonal(&e(a), 3), &p.iterated_diagonal_right(&e(a), 3))
        }),
        Check::new("coalgebra.counit", "(ε ⊗ id)Δ = id = (id ⊗ ε)Δ", "all basis elements").sweep(&singles, |&a| {
            let mut left = SparseVec::new();
            let mut right = SparseVec::new();
            for (jk, c) in p.comul[a].iter() {
                left.add_scaled(f, &f.mul(c, &p.counit[jk / d]), &e(jk % d));
                right.add_scaled(f, &f.mul(c, &p.counit[jk % d]), &e(jk / d));
            }
            compare(f, || format!("(ε ⊗ id)Δ({})", p.basis_names[a]), &left, &e(a))?;
            compare(f, || format!("(id ⊗ ε)Δ({})", p.basis_names[a]), &right, &e(a))
        }),
        Check::new("bialgebra.coproduct_multiplicative", "Δ(ab) = Δ(a)Δ(b), Δ(1) = 1 ⊗ 1", "all basis pairs").sweep(&pairs, |&[a, b]| {
            if a == 0 && b == 0 {
                let one = SparseVec::from_terms(f, p.tensor(&[p.unit.clone(), p.unit.clone()], &f.one()));
                compare(f, || "Δ(1)".into(), &p.coproduct(&p.unit), &one)?;
            }
            compare(f, || format!("({})", p.names(&[a, b])), &p.coproduct(&p.product(&e(a), &e(b))), &tensor_mul(&p.comul[a], &p.comul[b]))
        }),
        Check::new("bialgebra.counit_multiplicative", "ε(ab) = ε(a)ε(b), ε(1) = 1", "all basis pairs").sweep(&pairs, |&[a, b]| {
            if a == 0 && b == 0 {
                compare(f, || "ε(1)".into(), &scalar(p.pair(&p.counit, &p.unit)), &scalar(f.one()))?;
            }
            compare(f, || format!("({})", p.names(&[a, b])), &scalar(p.pair(&p.counit, &p.product(&e(a), &e(b)))), &scalar(f.mul(&p.counit[a], &p.counit[b])))
        }),
        Check::new("hopf.antipode", "S(h¹)h² = ε(h)1 = h¹S(h²)", "all basis elements").sweep(&singles, |&a| {
            let expected = p.unit.scaled(f, &p.counit[a]);
            compare(f, || format!("S(h¹)h², h = {}", p.basis_names[a]), &convolve(&p.comul[a], true), &expected)?;
            compare(f, || format!("h¹S(h²), h = {}", p.basis_names[a]), &convolve(&p.comul[a], false), &expected)
        }),
        Check::new("character.algebra_map", "χ(ab) = χ(a)χ(b), χ(1) = 1", "all basis pairs").sweep(&pairs, |&[a, b]| {
            if a == 0 && b == 0 {
                compare(f, || "χ(1)".into(), &scalar(p.pair(&p.character, &p.unit)), &scalar(f.one()))?;
            }
            compare(f, || format!("({})", p.names(&[a, b])), &scalar(p.pair(&p.character, &p.product(&e(a), &e(b)))), &scalar(f.mul(&p.character[a], &p.character[b])))
        }),
    ]
}

/// Properties of the twisted antipode and the modular-pair condition `S̃² = id`.
pub fn check_modular_pair<F: Field>(p: &HopfPresentation<F>) -> Vec<Check> {
    let f = &p.field;
    let d = p.dim;
    let st = p.twisted_antipode();
    let singles: Vec<usize> = (0..d).collect();
    let pairs: Vec<[usize; 2]> = (0..d * d).map(|t| [t / d, t % d]).collect();
    let e = |i| p.basis(i);
    vec![
        Check::new("twisted_antipode.unit", "S̃(1) = 1", "unit").sweep(&[()], |_| compare(f, || "S̃(1)".into(), &p.apply(&st, &p.unit), &p.unit)),
        Check::new("twisted_antipode.anti_multiplicative", "S̃(ab) = S̃(b)S̃(a)", "all basis pairs").sweep(&pairs, |&[a, b]| {
            compare(f, || format!("({})", p.names(&[a, b])), &p.apply(&st, &p.product(&e(a), &e(b))), &p.product(&st[b], &st[a]))
        }),
        Check::new("twisted_antipode.coproduct", "ΔS̃(h) = S(h²) ⊗ S̃(h¹)", "all basis elements").sweep(&singles, |&a| {
            let mut terms = Vec::new();
            for (jk, c) in p.comul[a].iter() {
                terms.extend(p.tensor(&[p.antipode[jk % d].clone(), st[jk / d].clone()], c));
            }
            compare(f, || p.basis_names[a].clone(), &p.coproduct(&st[a]), &SparseVec::from_terms(f, terms))
        }),
        Check::new("modular_pair.involution", "S̃ ∘ S̃ = id", "all basis elements").sweep(&singles, |&a| {
            compare(f, || format!("S̃²({})", p.basis_names[a]), &p.apply(&st, &st[a]), &e(a))
        }),
    ]
}

/// The Cobar operad; see the module documentation for conventions.
pub struct CobarOperad<F: Field> {
    hopf: HopfPresentation<F>,
    max: usize,
    powers: Vec<usize>,
    twisted: Vec<SparseVec<F::Elem>>,
    /// `diag[n][a] = Δ^{n−1}(e_a)`.
    diag: Vec<Vec<SparseVec<F::Elem>>>,
    /// `twisted_diag[n][a] = Δ^{n−1}(S̃ e_a)`.
    twisted_diag: Vec<Vec<SparseVec<F::Elem>>>,
    /// `products[n][a·dⁿ + b] = Δ^{n−1}(e_a)·b` for a basis tensor `b` of `H^{⊗n}`.
    products: Vec<OnceLock<Vec<Vec<(usize, F::Elem)>>>>,
    identity: Cochain<F::Elem>,
    multiplication: Cochain<F::Elem>,
}

/// Builds the Cobar operad. Refuses when the Hopf axioms fail, and when
/// `S̃² ≠ id` unless `force` is set.
pub fn build_cobar_operad<F: Field>(hopf: HopfPresentation<F>, max_degree: usize, force: bool) -> Result<CobarOperad<F>, CobarError> {
    if max_degree < 2 {
        return Err(CobarError::CutoffTooSmall(max_degree));
    }
    let failed: Vec<String> = validate_hopf(&hopf).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
    if !failed.is_empty() {
        return Err(CobarError::Validation(failed.join(", ")));
    }
    if !force && !check_modular_pair(&hopf).iter().all(|c| c.passed) {
        return Err(CobarError::NotModularPair);
    }
    let f = hopf.field.clone();
    let d = hopf.dim;
    let mut powers = vec![1usize];
    for k in 1..=max_degree + 1 {
        let next = powers[k - 1].checked_mul(d).filter(|&x| x <= 1 << 40).ok_or(CobarError::TooLarge(k))?;
        powers.push(next);
    }
    let twisted = hopf.twisted_antipode();
    let diag = (0..=max_degree).map(|n| (0..d).map(|a| hopf.iterated_diagonal(&hopf.basis(a), n)).collect()).collect();
    let twisted_diag = (0..=max_degree).map(|n| (0..d).map(|a| hopf.iterated_diagonal(&twisted[a], n)).collect()).collect();
    let identity = Cochain::new(1, hopf.unit.clone());
    let multiplication = Cochain::new(2, SparseVec::from_terms(&f, hopf.tensor(&[hopf.unit.clone(), hopf.unit.clone()], &f.one())));
    Ok(CobarOperad {
        products: (0..=max_degree).map(|_| OnceLock::new()).collect(),
        hopf,
        max: max_degree,
        powers,
        twisted,
        diag,
        twisted_diag,
        identity,
        multiplication,
    })
}

impl<F: Field> CobarOperad<F> {
    pub fn hopf(&self) -> &HopfPresentation<F> {
        &self.hopf
    }

    pub fn twisted_antipode(&self) -> &[SparseVec<F::Elem>] {
        &self.twisted
    }

    /// Componentwise product of a tensor in `H^{⊗n}` with the basis tensor `b`
    /// (and optionally a trailing unit factor in place of the last slot).
    fn multiply_tensor(&self, t: &SparseVec<F::Elem>, right: &[SparseVec<F::Elem>]) -> Vec<(usize, F::Elem)> {
        let h = &self.hopf;
        let n = right.len();
        let mut out = Vec::new();
        for (code, c) in t.iter() {
            let left = digits(code, n, h.dim);
            let factors: Vec<SparseVec<F::Elem>> = left.iter().zip(right).map(|(&l, r)| h.product(&h.basis(l), r)).collect();
            out.extend(h.tensor(&factors, c));
        }
        out
    }

    fn products(&self, n: usize) -> &[Vec<(usize, F::Elem)>] {
        self.products[n].get_or_init(|| {
            let h = &self.hopf;
            let f = &h.field;
            let mut table = Vec::with_capacity(h.dim * self.powers[n]);
            for a in 0..h.dim {
                for b in 0..self.powers[n] {
                    let right: Vec<SparseVec<F::Elem>> = digits(b, n, h.dim).into_iter().map(|x| h.basis(x)).collect();
                    let terms = SparseVec::from_terms(f, self.multiply_tensor(&self.diag[n][a], &right));
                    table.push(terms.iter().map(|(i, c)| (i, c.clone())).collect());
                }
            }
            table
        })
    }
}

impl<F: Field> Operad for CobarOperad<F> {
    type F = F;

    fn field(&self) -> &F {
        &self.hopf.field
    }

    fn max_degree(&self) -> usize {
        self.max
    }

    fn dim(&self, n: usize) -> usize {
        self.powers[n]
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
        let f = &self.hopf.field;
        let d = self.hopf.dim;
        let after = self.powers[m - slot];
        let ai = a / after % d;
        let before = a / (after * d);
        let rest = a % after;
        for (code, c) in &self.products(n)[ai * self.powers[n] + b] {
            out.push((((before * self.powers[n] + code) * after) + rest, f.mul(coeff, c)));
        }
    }

    fn identity(&self) -> Cochain<F::Elem> {
        self.identity.clone()
    }

    fn multiplication(&self) -> Cochain<F::Elem> {
        self.multiplication.clone()
    }

    fn unit(&self) -> Cochain<F::Elem> {
        Cochain::basis(&self.hopf.field, 0, 0)
    }

    fn tau_basis_into(&self, n: usize, a: usize, coeff: &F::Elem, out: &mut Vec<(usize, F::Elem)>) -> bool {
        let h = &self.hopf;
        if n == 0 {
            out.push((a, coeff.clone()));
            return true;
        }
        let tuple = digits(a, n, h.dim);
        let mut right: Vec<SparseVec<F::Elem>> = tuple[1..].iter().map(|&x| h.basis(x)).collect();
        right.push(h.unit.clone());
        for (i, c) in self.multiply_tensor(&self.twisted_diag[n][tuple[0]], &right) {
            out.push((i, h.field.mul(coeff, &c)));
        }
        true
    }

    fn is_cyclic(&self) -> bool {
        true
    }

    fn basis_label(&self, n: usize, a: usize) -> String {
        if n == 0 {
            return "1_k".into();
        }
        let names: Vec<&str> = digits(a, n, self.hopf.dim).into_iter().map(|i| self.hopf.basis_names[i].as_str()).collect();
        format!("({})", names.join("⊗"))
    }
}

/// The Cobar differential written directly:
/// `d(h₁⊗…⊗hₙ) = 1⊗h₁⊗…⊗hₙ + Σᵢ (−1)^i h₁⊗…⊗Δhᵢ⊗…⊗hₙ + (−1)^{n+1} h₁⊗…⊗hₙ⊗1`.
pub fn cobar_differential_oracle<F: Field>(h: &HopfPresentation<F>, n: usize) -> Matrix<F::Elem> {
    let f = &h.field;
    let d = h.dim;
    let columns = (0..d.pow(n as u32))
        .map(|code| {
            let t: Vec<SparseVec<F::Elem>> = digits(code, n, d).into_iter().map(|x| h.basis(x)).collect();
            let mut terms = Vec::new();
            let mut first = vec![h.unit.clone()];
            first.extend(t.iter().cloned());
            terms.extend(h.tensor(&first, &f.one()));
            for i in 0..n {
                let sign = f.signed((i + 1) % 2 == 1, &f.one());
                let coprod = h.coproduct(&t[i]);
                for (jk, c) in coprod.iter() {
                    let mut factors: Vec<SparseVec<F::Elem>> = t[..i].to_vec();
                    factors.push(h.basis(jk / d));
                    factors.push(h.basis(jk % d));
                    factors.extend(t[i + 1..].iter().cloned());
                    terms.extend(h.tensor(&factors, &f.mul(&sign, c)));
                }
            }
            let mut last = t.clone();
            last.push(h.unit.clone());
            terms.extend(h.tensor(&last, &f.signed((n + 1) % 2 == 1, &f.one())));
            SparseVec::from_terms(f, terms)
        })
        .collect();
    Matrix::from_columns(d.pow(n as u32 + 1), columns)
}

/// `dim Cotorⁿ` for `0 ≤ n ≤ top`, by ranks of the directly written complex.
pub fn cobar_oracle_dims<F: Field>(h: &HopfPresentation<F>, top: usize) -> Vec<usize> {
    let f = &h.field;
    let ranks: Vec<usize> = (0..=top).map(|n| crate::linalg::rank(f, &cobar_differential_oracle(h, n))).collect();
    (0..=top).map(|n| h.dim.pow(n as u32) - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 }).collect()
}

/// Cross-checks specific to the Cobar operad up to degree `top`.
pub fn verify_cobar<F: Field>(op: &CobarOperad<F>, top: usize) -> Vec<Check> {
    let h = op.hopf();
    let f = &h.field;
    let d = h.dim;
    let top = top.min(op.max_degree());
    let singles: Vec<(usize, usize)> = (0..=top).flat_map(|n| (0..d).map(move |a| (n, a))).collect();
    let st = op.twisted_antipode();
    let degrees: Vec<usize> = (0..top).collect();
    vec![
        Check::new("coalgebra.iterated_diagonal_bracketing", "splitting the first or the last factor gives the same Δ^{n−1}", format!("all basis elements, n ≤ {top}")).sweep(&singles, |&(n, a)| {
            compare(f, || format!("Δ^{}({})", n as isize - 1, h.basis_names[a]), &h.iterated_diagonal(&h.basis(a), n), &h.iterated_diagonal_right(&h.basis(a), n))
        }),
        Check::new("twisted_antipode.iterated_coproduct", "Δ^{n−1}S̃(h) = S(hⁿ) ⊗ … ⊗ S(h²) ⊗ S̃(h¹)", format!("all basis elements, 1 ≤ n ≤ {top}")).sweep(&singles, |&(n, a)| {
            if n == 0 {
                return Ok(());
            }
            let mut terms = Vec::new();
            for (code, c) in h.iterated_diagonal(&h.basis(a), n).iter() {
                let tuple = digits(code, n, d);
                let mut factors: Vec<SparseVec<F::Elem>> = tuple[1..].iter().rev().map(|&x| h.antipode[x].clone()).collect();
                factors.push(st[tuple[0]].clone());
                terms.extend(h.tensor(&factors, c));
            }
            compare(f, || format!("n = {n}, h = {}", h.basis_names[a]), &h.iterated_diagonal(&st[a], n), &SparseVec::from_terms(f, terms))
        }),
        Check::new("oracle.cobar_differential", "operadic d = directly written Cobar differential", format!("degrees < {top}")).sweep(&degrees, |&n| {
            let lhs = operator_matrix(op, n, n as isize + 1, |x| op.differential(x)).map_err(|e| Counterexample::message(e.to_string()))?;
            let rhs = cobar_differential_oracle(h, n);
            for (c, (x, y)) in lhs.columns().iter().zip(rhs.columns()).enumerate() {
                if x != y {
                    return Err(Counterexample { case: format!("d{}", op.basis_label(n, c)), lhs: render(f, x), rhs: render(f, y) });
                }
            }
            Ok(())
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};
    use crate::input::{parse_presentation, Presentation};

    fn group_z2() -> HopfPresentation<Rationals> {
        let text = r#"{"kind":"hopf","field":"Q","dim":2,"basis_names":["1","g"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"],[1,1,0,"1"]],"unit":["1","0"],
            "comul":[[0,0,0,"1"],[1,1,1,"1"]],"counit":["1","1"],
            "antipode":[["1","0"],["0","1"]],"character":["1","1"]}"#;
        let Presentation::Hopf(raw) = parse_presentation(text).unwrap() else { panic!() };
        HopfPresentation::from_raw(Rationals, &raw).unwrap()
    }

    fn primitive(field: &str) -> String {
        format!(
            r#"{{"kind":"hopf","field":"{field}","dim":2,"basis_names":["1","x"],
            "mul":[[0,0,0,"1"],[0,1,1,"1"],[1,0,1,"1"]],"unit":["1","0"],
            "comul":[[0,0,0,"1"],[1,1,0,"1"],[1,0,1,"1"]],"counit":["1","0"],
            "antipode":[["1","0"],["0","-1"]],"character":["1","0"]}}"#
        )
    }

    #[test]
    fn group_algebra_examples() {
        let h = group_z2();
        assert!(validate_hopf(&h).iter().all(|c| c.passed));
        assert!(check_modular_pair(&h).iter().all(|c| c.passed));
        let g = h.basis(1);
        assert_eq!(h.iterated_diagonal(&g, 3), SparseVec::unit(&Rationals, 7));
        assert_eq!(h.iterated_diagonal(&g, 1), g);
        assert_eq!(h.iterated_diagonal(&g, 0), SparseVec::unit(&Rationals, 0));
        let op = build_cobar_operad(h, 4, false).unwrap();
        assert_eq!(op.dim(4), 16);
        let b = |n, a| Cochain::basis(&Rationals, n, a);
        // (g⊗1) ∘₁ (g) = g·g ⊗ 1 = 1⊗1 and (g ⊗ g) ∘₁ (g) = 1 ⊗ g
        assert_eq!(op.compose(&b(2, 2), &b(1, 1), 1).unwrap(), b(2, 0));
        assert_eq!(op.compose(&b(2, 3), &b(1, 1), 1).unwrap(), b(2, 1));
        // (g) ∪ (g) = g ⊗ g
        assert_eq!(op.cup(&b(1, 1), &b(1, 1)).unwrap(), b(2, 3));
        // τ₁ = S̃
        assert_eq!(op.tau(&b(1, 1)).unwrap(), b(1, 1));
        assert_eq!(op.tau(&op.multiplication()).unwrap(), op.multiplication());
        assert_eq!(cobar_oracle_dims(op.hopf(), 4), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn primitive_generator_needs_characteristic_two() {
        let Presentation::Hopf(raw) = parse_presentation(&primitive("F2")).unwrap() else { panic!() };
        let h = HopfPresentation::from_raw(PrimeField::new(2).unwrap(), &raw).unwrap();
        assert!(validate_hopf(&h).iter().all(|c| c.passed));
        let op = build_cobar_operad(h, 4, false).unwrap();
        let x = Cochain::basis(op.field(), 1, 1);
        // δ₀x = 1⊗x, δ₁x = Δx
        assert_eq!(op.coface(0, &x).unwrap(), Cochain::basis(op.field(), 2, 1));
        assert_eq!(op.coface(1, &x).unwrap().coeffs.nnz(), 2);
        assert!(verify_cobar(&op, 4).iter().all(|c| c.passed));

        let Presentation::Hopf(raw) = parse_presentation(&primitive("Q")).unwrap() else { panic!() };
        let h = HopfPresentation::from_raw(Rationals, &raw).unwrap();
        let failed: Vec<String> = validate_hopf(&h).into_iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert_eq!(failed, vec!["bialgebra.coproduct_multiplicative".to_string()]);
    }
}
