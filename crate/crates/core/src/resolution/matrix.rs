use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{KMatrix, SparseMatrix};
use crate::qalgebra::{Algebra, AlgebraElement};
use crate::scalars::Field;

/// Matrix with entries in the algebra. Under the row-vector convention an
/// `m x n` matrix is a module map `R^m -> R^n`, `v |-> v M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgMatrix<E> {
    rows: usize,
    cols: usize,
    entries: Vec<AlgebraElement<E>>,
}

impl<E: Clone> AlgMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        AlgMatrix { rows, cols, entries: vec![AlgebraElement::zero(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<AlgebraElement<E>>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            entries.extend(r);
        }
        Ok(AlgMatrix { rows: nrows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement<E> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlgebraElement<E>) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[AlgebraElement<E>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &AlgebraElement<E>)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(k, e)| (k / self.cols, k % self.cols, e))
    }
}

impl<E: Clone + Send + Sync> AlgMatrix<E> {
    pub fn mul<F: Field<Elem = E>>(&self, alg: &Algebra<F>, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries: Vec<AlgebraElement<E>> = (0..self.rows * other.cols)
            .into_par_iter()
            .map(|k| {
                let (i, j) = (k / other.cols, k % other.cols);
                let mut acc = alg.zero();
                for t in 0..self.cols {
                    let a = self.get(i, t);
                    let b = other.get(t, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = alg.add(&acc, &alg.mul(a, b));
                    }
                }
                acc
            })
            .collect();
        Ok(AlgMatrix { rows: self.rows, cols: other.cols, entries })
    }

    pub fn sub<F: Field<Elem = E>>(&self, alg: &Algebra<F>, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix difference of different shapes".into()));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| alg.sub(a, b)).collect();
        Ok(AlgMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Entrywise augmentation.
    pub fn augment<F: Field<Elem = E>>(&self, alg: &Algebra<F>) -> KMatrix<E> {
        let f = alg.field();
        let mut out = KMatrix::zeros(f, self.rows, self.cols);
        for (i, j, e) in self.nonzero_entries() {
            out.set(i, j, alg.augmentation(e));
        }
        out
    }

    /// The `k`-linear map underlying `v |-> v M`, in the basis
    /// `(generator, PBW monomial)`: block `(i, j)` is the right
    /// multiplication matrix of entry `(i, j)`.
    pub fn flatten<F: Field<Elem = E>>(&self, alg: &Algebra<F>) -> SparseMatrix<E> {
        let d = alg.dim();
        let rows: Vec<Vec<(usize, E)>> = (0..self.rows * d)
            .into_par_iter()
            .map(|k| {
                let (i, a) = (k / d, k % d);
                let mut row = Vec::new();
                for j in 0..self.cols {
                    let e = self.get(i, j);
                    if e.is_zero() {
                        continue;
                    }
                    row.extend(alg.right_mult_row(a, e).into_iter().map(|(b, v)| (j * d + b, v)));
                }
                row
            })
            .collect();
        SparseMatrix::from_rows(self.cols * d, rows)
    }
}

/// Row-vector coordinates of a tuple of algebra elements.
pub fn flatten_row<F: Field>(alg: &Algebra<F>, row: &[AlgebraElement<F::Elem>]) -> Vec<F::Elem> {
    let f = alg.field();
    let d = alg.dim();
    let mut out = vec![f.zero(); row.len() * d];
    for (j, e) in row.iter().enumerate() {
        for (b, v) in e.terms() {
            out[j * d + b] = v.clone();
        }
    }
    out
}

/// Inverse of [`flatten_row`].
pub fn unflatten_row<F: Field>(alg: &Algebra<F>, v: &[F::Elem]) -> Vec<AlgebraElement<F::Elem>> {
    v.chunks(alg.dim()).map(|chunk| AlgebraElement::from_dense(alg.field(), chunk.to_vec())).collect()
}
