//! Exact sparse linear algebra: vectors, column-major matrices, echelon
//! subspaces, kernels and an incremental eliminator that remembers how each
//! stored row was built from the inserted vectors.
//!
//! Pivoting is always "first nonzero column", so every basis produced here
//! depends only on the input order.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactfield::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("vector has an entry at index {index}, ambient dimension is {dim}")]
    LengthMismatch { index: usize, dim: usize },
    #[error("matrix shapes do not compose: {left_cols} columns vs {right_rows} rows")]
    ShapeMismatch { left_cols: usize, right_rows: usize },
    #[error("matrix is not invertible")]
    Singular,
}

/// A sparse vector: entries sorted by index, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<E> {
    entries: Vec<(usize, E)>,
}

impl<E> Default for SparseVec<E> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<E: Clone + PartialEq> SparseVec<E> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds a vector from unsorted terms, summing repeated indices.
    pub fn from_terms<F, I>(field: &F, terms: I) -> Self
    where
        F: Field<Elem = E>,
        I: IntoIterator<Item = (usize, E)>,
    {
        let mut raw: Vec<(usize, E)> = terms.into_iter().collect();
        raw.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, E)> = Vec::with_capacity(raw.len());
        for (i, c) in raw {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc = field.add(acc, &c),
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !field.is_zero(c));
        SparseVec { entries }
    }

    pub fn unit<F: Field<Elem = E>>(field: &F, index: usize) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, values: &[E]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
            .collect();
        SparseVec { entries }
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, len: usize) -> Vec<E> {
        let mut out = vec![field.zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &E)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn get(&self, index: usize) -> Option<&E> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &E)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += c * other`.
    pub fn add_scaled<F: Field<Elem = E>>(&mut self, field: &F, c: &E, other: &SparseVec<E>) {
        if field.is_zero(c) || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let mut a = std::mem::take(&mut self.entries).into_iter().peekable();
        let mut b = other.entries.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap()),
                (Some((i, _)), Some((j, _))) if i > j => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, field.mul(c, y)));
                }
                (Some(_), Some(_)) => {
                    let (i, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let s = field.add(&x, &field.mul(c, y));
                    if !field.is_zero(&s) {
                        out.push((i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, field.mul(c, y)));
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scaled<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return SparseVec::new();
        }
        let entries = self.entries.iter().map(|(i, x)| (*i, field.mul(c, x))).collect();
        SparseVec { entries }
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let entries = self.entries.iter().map(|(i, x)| (*i, field.neg(x))).collect();
        SparseVec { entries }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(field, &field.one(), other);
        out
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(field, &field.neg(&field.one()), other);
        out
    }

    /// Reindexes entries through `map`; the map must be injective.
    pub fn remap(&self, mut map: impl FnMut(usize) -> usize) -> Self {
        let mut entries: Vec<(usize, E)> =
            self.entries.iter().map(|(i, c)| (map(*i), c.clone())).collect();
        entries.sort_by_key(|(i, _)| *i);
        SparseVec { entries }
    }

    fn check_len(&self, dim: usize) -> Result<(), LinalgError> {
        match self.max_index() {
            Some(index) if index >= dim => Err(LinalgError::LengthMismatch { index, dim }),
            _ => Ok(()),
        }
    }
}

/// Sparse matrix stored by columns. Column `j` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    columns: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.max_index().map_or(true, |i| i < rows)));
        Matrix { rows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        Matrix { rows: n, columns: (0..n).map(|i| SparseVec::unit(field, i)).collect() }
    }

    /// Builds a matrix from a dense row-major table.
    pub fn from_dense<F: Field<Elem = E>>(field: &F, rows: &[Vec<E>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let columns = (0..cols)
            .map(|j| {
                SparseVec::from_terms(field, rows.iter().enumerate().map(|(i, r)| (i, r[j].clone())))
            })
            .collect();
        Matrix { rows: rows.len(), columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<E> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.columns
    }

    pub fn get<F: Field<Elem = E>>(&self, field: &F, row: usize, col: usize) -> E {
        self.columns[col].get(row).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut terms = Vec::new();
        for (j, c) in v.iter() {
            for (i, x) in self.columns[j].iter() {
                terms.push((i, field.mul(c, x)));
            }
        }
        SparseVec::from_terms(field, terms)
    }

    /// `self ∘ other`.
    pub fn compose<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Result<Self, LinalgError> {
        if self.cols() != other.rows {
            return Err(LinalgError::ShapeMismatch { left_cols: self.cols(), right_rows: other.rows });
        }
        let columns = other.columns.iter().map(|c| self.apply(field, c)).collect();
        Ok(Matrix { rows: self.rows, columns })
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Matrix<E>) -> Self {
        assert_eq!((self.rows, self.cols()), (other.rows, other.cols()));
        let columns = self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(field, b)).collect();
        Matrix { rows: self.rows, columns }
    }

    pub fn scaled<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        let columns = self.columns.iter().map(|a| a.scaled(field, c)).collect();
        Matrix { rows: self.rows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Dense row-major copy.
    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        let mut out = vec![vec![field.zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }

    pub fn transpose<F: Field<Elem = E>>(&self, field: &F) -> Self {
        let mut terms: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                terms[i].push((j, x.clone()));
            }
        }
        let columns = terms.into_iter().map(|t| SparseVec::from_terms(field, t)).collect();
        Matrix { rows: self.cols(), columns }
    }

    pub fn inverse<F: Field<Elem = E>>(&self, field: &F) -> Result<Self, LinalgError> {
        let n = self.rows;
        if self.cols() != n {
            return Err(LinalgError::Singular);
        }
        let mut elim = Eliminator::new(field.clone(), true);
        for col in &self.columns {
            if elim.insert(col.clone()).is_dependent() {
                return Err(LinalgError::Singular);
            }
        }
        // Column j of the inverse expresses e_j in terms of the columns of self.
        let columns = (0..n)
            .map(|j| elim.express(&SparseVec::unit(field, j)).map_err(|_| LinalgError::Singular))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix { rows: n, columns })
    }
}

/// A subspace given by a basis in reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient_dim: usize,
    basis: Vec<SparseVec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq + Send + Sync + 'static> Subspace<E> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| SparseVec::unit(field, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Echelon basis of the span of `vectors`.
    pub fn echelonize<F: Field<Elem = E>>(
        field: &F,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = SparseVec<E>>,
    ) -> Result<Self, LinalgError> {
        let mut elim = Eliminator::new(field.clone(), false);
        for v in vectors {
            v.check_len(ambient_dim)?;
            elim.insert(v);
        }
        Ok(elim.into_subspace(ambient_dim))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Clears every pivot column of `v`; the result is a canonical
    /// representative of `v` modulo the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> SparseVec<E> {
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = out.get(p).cloned() {
                out.add_scaled(field, &field.neg(&c), row);
            }
        }
        out
    }

    /// Coordinates of `v` in this basis, or `None` if `v` is not in the span.
    pub fn in_span<F: Field<Elem = E>>(
        &self,
        field: &F,
        v: &SparseVec<E>,
    ) -> Result<Option<Vec<E>>, LinalgError> {
        v.check_len(self.ambient_dim)?;
        if !self.reduce(field, v).is_zero() {
            return Ok(None);
        }
        Ok(Some(
            self.pivots.iter().map(|&p| v.get(p).cloned().unwrap_or_else(|| field.zero())).collect(),
        ))
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &SparseVec<E>) -> bool {
        self.reduce(field, v).is_zero()
    }

    /// The vector with the given coordinates.
    pub fn combine<F: Field<Elem = E>>(&self, field: &F, coords: &[E]) -> SparseVec<E> {
        let mut out = SparseVec::new();
        for (row, c) in self.basis.iter().zip(coords) {
            out.add_scaled(field, c, row);
        }
        out
    }

    /// Whether the two subspaces coincide.
    pub fn same_as(&self, other: &Subspace<E>) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis == other.basis
    }
}

/// Outcome of inserting a vector into an [`Eliminator`].
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<E> {
    /// The vector was independent and is stored as row `row`.
    Independent(usize),
    /// The vector is a combination of the earlier inserted vectors.
    Dependent(SparseVec<E>),
}

impl<E> Insertion<E> {
    pub fn is_dependent(&self) -> bool {
        matches!(self, Insertion::Dependent(_))
    }
}

#[derive(Clone, Debug)]
struct Row<E> {
    vec: SparseVec<E>,
    /// The row as a combination of inserted vectors (only when tracking).
    combo: SparseVec<E>,
}

/// Incremental row-echelon elimination.
///
/// Each stored row has pivot coefficient 1 at its leading index. With
/// tracking enabled, rows also remember their expression in terms of the
/// inserted vectors (numbered in insertion order), which lets callers solve
/// `v = Σ cᵢ·inputᵢ`.
#[derive(Clone, Debug)]
pub struct Eliminator<F: Field> {
    field: F,
    track: bool,
    rows: Vec<Row<F::Elem>>,
    by_pivot: HashMap<usize, usize>,
    inserted: usize,
}

impl<F: Field> Eliminator<F> {
    pub fn new(field: F, track: bool) -> Self {
        Eliminator { field, track, rows: Vec::new(), by_pivot: HashMap::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` by leading entries. Returns the residual (zero iff `v` is
    /// in the span) and, when tracking, the combination that was subtracted.
    fn reduce(&self, v: &SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut residual = v.clone();
        let mut combo = SparseVec::new();
        while let Some((lead, c)) = residual.leading() {
            let Some(&r) = self.by_pivot.get(&lead) else { break };
            let c = c.clone();
            let minus_c = f.neg(&c);
            residual.add_scaled(f, &minus_c, &self.rows[r].vec);
            if self.track {
                combo.add_scaled(f, &c, &self.rows[r].combo);
            }
        }
        (residual, combo)
    }

    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> Insertion<F::Elem> {
        let id = self.inserted;
        self.inserted += 1;
        let (residual, combo) = self.reduce(&v);
        let f = &self.field;
        match residual.leading() {
            None => Insertion::Dependent(combo),
            Some((lead, c)) => {
                let inv = f.inv(c).expect("leading entry is nonzero");
                let vec = residual.scaled(f, &inv);
                let combo = if self.track {
                    let mut own = SparseVec::unit(f, id);
                    own.add_scaled(f, &f.neg(&f.one()), &combo);
                    own.scaled(f, &inv)
                } else {
                    SparseVec::new()
                };
                let row = self.rows.len();
                self.by_pivot.insert(lead, row);
                self.rows.push(Row { vec, combo });
                Insertion::Independent(row)
            }
        }
    }

    /// Solves `v = Σ cᵢ·inputᵢ`; `Err` carries the nonzero residual.
    pub fn express(&self, v: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>, SparseVec<F::Elem>> {
        assert!(self.track, "express needs a tracking eliminator");
        let (residual, combo) = self.reduce(v);
        if residual.is_zero() {
            Ok(combo)
        } else {
            Err(residual)
        }
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Back-substitutes to reduced row-echelon form.
    pub fn into_subspace(self, ambient_dim: usize) -> Subspace<F::Elem> {
        let f = self.field;
        let mut rows: Vec<(usize, SparseVec<F::Elem>)> = self
            .rows
            .into_iter()
            .map(|r| (r.vec.leading().expect("stored rows are nonzero").0, r.vec))
            .collect();
        rows.sort_by_key(|(p, _)| *p);
        for k in (0..rows.len()).rev() {
            let (p, pivot_row) = (rows[k].0, rows[k].1.clone());
            for (_, row) in rows.iter_mut().take(k) {
                if let Some(c) = row.get(p).cloned() {
                    row.add_scaled(&f, &f.neg(&c), &pivot_row);
                }
            }
        }
        let pivots = rows.iter().map(|(p, _)| *p).collect();
        let basis = rows.into_iter().map(|(_, v)| v).collect();
        Subspace { ambient_dim, basis, pivots }
    }
}

/// Rank of a matrix.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut elim = Eliminator::new(field.clone(), false);
    for c in m.columns() {
        elim.insert(c.clone());
    }
    elim.rank()
}

/// Basis of `{v : M·v = 0}` in reduced echelon form.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let vectors = kernel_vectors(field, m);
    Subspace::echelonize(field, m.cols(), vectors).expect("kernel vectors live in the domain")
}

/// Kernel vectors `e_j − Σ c·e_k`, one for each column that depends on earlier ones.
pub fn kernel_vectors<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<SparseVec<F::Elem>> {
    let mut elim = Eliminator::new(field.clone(), true);
    let mut out = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        if let Insertion::Dependent(combo) = elim.insert(c.clone()) {
            let mut k = SparseVec::unit(field, j);
            k.add_scaled(field, &field.neg(&field.one()), &combo);
            out.push(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rational, Rationals};
    use proptest::prelude::*;

    fn qv(xs: &[i64]) -> SparseVec<Rational> {
        let dense: Vec<Rational> = xs.iter().map(|&x| Rational::from_integer(x)).collect();
        SparseVec::from_dense(&Rationals, &dense)
    }

    #[test]
    fn echelonize_examples() {
        let s = Subspace::echelonize(&Rationals, 2, vec![qv(&[1, 1]), qv(&[2, 2])]).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis(), &[qv(&[1, 1])]);
        let s = Subspace::<Rational>::echelonize(&Rationals, 3, vec![]).unwrap();
        assert_eq!(s.dim(), 0);
        let s = Subspace::echelonize(&Rationals, 2, vec![qv(&[0, 1]), qv(&[1, 0])]).unwrap();
        assert_eq!((s.dim(), s.pivots()), (2, &[0usize, 1][..]));
        assert!(Subspace::echelonize(&Rationals, 1, vec![qv(&[0, 1])]).is_err());
    }

    #[test]
    fn rref_is_reduced() {
        let s = Subspace::echelonize(&Rationals, 3, vec![qv(&[1, 2, 3]), qv(&[0, 1, 1])]).unwrap();
        assert_eq!(s.basis(), &[qv(&[1, 0, 1]), qv(&[0, 1, 1])]);
    }

    #[test]
    fn kernel_examples() {
        let f = Rationals;
        assert_eq!(kernel_basis(&f, &Matrix::identity(&f, 3)).dim(), 0);
        assert_eq!(kernel_basis(&f, &Matrix::<Rational>::zero(2, 2)).dim(), 2);
        let m = Matrix::from_dense(&f, &[vec![Rational::from_integer(1), Rational::from_integer(1)]]);
        let k = kernel_basis(&f, &m);
        assert_eq!(k.basis(), &[qv(&[1, -1])]);
    }

    #[test]
    fn in_span_examples() {
        let f = Rationals;
        let s = Subspace::echelonize(&f, 2, vec![qv(&[1, 0])]).unwrap();
        assert_eq!(s.in_span(&f, &qv(&[2, 0])).unwrap(), Some(vec![Rational::from_integer(2)]));
        assert_eq!(s.in_span(&f, &qv(&[0, 1])).unwrap(), None);
        assert_eq!(s.in_span(&f, &qv(&[0, 0])).unwrap(), Some(vec![Rational::from_integer(0)]));
        assert!(s.in_span(&f, &qv(&[0, 0, 1])).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let f = Rationals;
        let r = |x| Rational::from_integer(x);
        let m = Matrix::from_dense(&f, &[vec![r(2), r(1)], vec![r(1), r(1)]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.compose(&f, &inv).unwrap(), Matrix::identity(&f, 2));
        let singular = Matrix::from_dense(&f, &[vec![r(1), r(2)], vec![r(2), r(4)]]);
        assert_eq!(singular.inverse(&f), Err(LinalgError::Singular));
    }

    #[test]
    fn express_tracks_combinations() {
        let f = Rationals;
        let mut e = Eliminator::new(f, true);
        e.insert(qv(&[1, 1, 0]));
        e.insert(qv(&[0, 1, 1]));
        assert_eq!(e.insert(qv(&[1, 2, 1])), Insertion::Dependent(qv(&[1, 1])));
        assert_eq!(e.express(&qv(&[2, 1, -1])), Ok(qv(&[2, -1])));
        assert!(e.express(&qv(&[0, 0, 1])).is_err());
    }

    fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(-3i64..4, r * c))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, xs) in small_matrix()) {
            let f = Rationals;
            let rows: Vec<Vec<Rational>> = xs.chunks(c).map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect()).collect();
            let m = Matrix::from_dense(&f, &rows);
            let k = kernel_basis(&f, &m);
            prop_assert_eq!(rank(&f, &m) + k.dim(), c);
            for v in k.basis() {
                prop_assert!(m.apply(&f, v).is_zero());
            }
            prop_assert_eq!(rank(&f, &m), rank(&f, &m.transpose(&f)));
            prop_assert!(rank(&f, &m) <= r.min(c));
        }

        #[test]
        fn in_span_reconstructs((_r, c, xs) in small_matrix(), ys in proptest::collection::vec(-3i64..4, 6)) {
            let f = Rationals;
            let vecs: Vec<SparseVec<Rational>> = xs.chunks(c).map(|row| qv(row)).collect();
            let s = Subspace::echelonize(&f, c, vecs).unwrap();
            let v = qv(&ys[..c]);
            if let Some(coords) = s.in_span(&f, &v).unwrap() {
                prop_assert_eq!(s.combine(&f, &coords), v);
            }
        }
    }

    /// Every vector over F2 of length ≤ 3 is tested against brute-force span enumeration.
    #[test]
    fn in_span_matches_f2_enumeration() {
        let f = PrimeField::new(2).unwrap();
        for n in 1..=3usize {
            let all: Vec<Vec<u64>> = (0..1u32 << n)
                .map(|bits| (0..n).map(|i| ((bits >> i) & 1) as u64).collect())
                .collect();
            // all sets of up to 3 generators
            for g0 in 0..all.len() {
                for g1 in g0..all.len() {
                    for g2 in g1..all.len() {
                        let gens = [&all[g0], &all[g1], &all[g2]];
                        let mut span = std::collections::HashSet::new();
                        for mask in 0..8u32 {
                            let mut s = vec![0u64; n];
                            for (k, g) in gens.iter().enumerate() {
                                if mask >> k & 1 == 1 {
                                    for i in 0..n {
                                        s[i] ^= g[i];
                                    }
                                }
                            }
                            span.insert(s);
                        }
                        let sub = Subspace::echelonize(
                            &f,
                            n,
                            gens.iter().map(|g| SparseVec::from_dense(&f, g)),
                        )
                        .unwrap();
                        assert_eq!(1usize << sub.dim(), span.len());
                        for v in &all {
                            let found = sub.in_span(&f, &SparseVec::from_dense(&f, v)).unwrap();
                            assert_eq!(found.is_some(), span.contains(v));
                        }
                    }
                }
            }
        }
    }
}
