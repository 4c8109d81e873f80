//! Exact linear algebra over a [`Field`]: reduced row echelon form, rank,
//! kernels, solving and subspace arithmetic.
//!
//! The dense [`KMatrix`] API is what the rest of the crate thinks in. Large
//! flattened module maps go through [`SparseMatrix`], which splits the matrix
//! into independent diagonal blocks before eliminating. Both paths produce the
//! same canonical answers: a reduced echelon form is unique, and so is the
//! solution with all free variables set to zero.

mod sparse;

pub use sparse::{sparse_kernel, sparse_mul_vec, sparse_rank, LinearSolver, PivotOrder, SparseMatrix};

use crate::error::{Error, Result};
use crate::scalars::Field;

/// Gauss-Jordan elimination on `rows`, choosing pivots only among the first
/// `limit` columns: leftmost pivot column, topmost candidate row.
///
/// Returns the pivot columns. Afterwards `rows[..rank]` is reduced echelon in
/// the first `limit` columns; trailing columns are carried along, so appending
/// an identity records the transformation.
pub(crate) fn rref_in_place<F: Field>(f: &F, rows: &mut [Vec<F::Elem>], limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        if !f.is_one(&inv) {
            for v in rows[r][c..].iter_mut() {
                if !f.is_zero(v) {
                    *v = f.mul(v, &inv);
                }
            }
        }
        let (before, rest) = rows.split_at_mut(r);
        let (prow, after) = rest.split_first_mut().expect("row r exists");
        let nz: Vec<usize> = (c..prow.len()).filter(|&j| !f.is_zero(&prow[j])).collect();
        for other in before.iter_mut().chain(after.iter_mut()) {
            if f.is_zero(&other[c]) {
                continue;
            }
            let factor = other[c].clone();
            for &j in &nz {
                f.sub_mul_assign(&mut other[j], &factor, &prow[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Dense row-major matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KMatrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> KMatrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        KMatrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(KMatrix { rows: nrows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        KMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn to_sparse<F: Field<Elem = E>>(&self, f: &F) -> SparseMatrix<E> {
        SparseMatrix::from_rows(
            self.cols,
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !f.is_zero(v))
                        .map(|(j, v)| (j, v.clone()))
                        .collect()
                })
                .collect(),
        )
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|v| f.is_zero(v))
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        f.add_mul_assign(&mut out.data[idx], a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M x` for a column vector `x`.
    pub fn mul_vec<F: Field<Elem = E>>(&self, f: &F, x: &[E]) -> Vec<E> {
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(x) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(f: &F, m: &KMatrix<F::Elem>) -> (KMatrix<F::Elem>, Vec<usize>) {
    let mut rows = m.to_rows();
    let piv = rref_in_place(f, &mut rows, m.cols);
    let out = KMatrix::from_rows(m.cols, rows).expect("shape preserved");
    (out, piv)
}

pub fn rank<F: Field>(f: &F, m: &KMatrix<F::Elem>) -> usize {
    sparse_rank(f, &m.to_sparse(f))
}

/// `{x : M x = 0}`.
pub fn kernel<F: Field>(f: &F, m: &KMatrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::from_vectors(f, m.cols, sparse_kernel(f, &m.to_sparse(f)))
}

/// Canonical solution of `M x = b` (free variables zero).
pub fn solve<F: Field>(f: &F, m: &KMatrix<F::Elem>, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    LinearSolver::new(f, &m.to_sparse(f)).solve(b)
}

/// A subspace of `k^n`, stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone> Subspace<E> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<F: Field<Elem = E>>(f: &F, ambient: usize, vectors: Vec<Vec<E>>) -> Self {
        let mut rows = vectors;
        let piv = rref_in_place(f, &mut rows, ambient);
        rows.truncate(piv.len());
        Subspace { ambient, basis: rows, pivots: piv }
    }

    pub fn whole<F: Field<Elem = E>>(f: &F, ambient: usize) -> Self {
        Self::from_vectors(f, ambient, KMatrix::identity(f, ambient).to_rows())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo this subspace: all pivot
    /// coordinates eliminated.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if f.is_zero(&out[p]) {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    f.sub_mul_assign(o, &c, r);
                }
            }
        }
        out
    }

    pub fn contains<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    pub fn is_subspace_of<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(f, v))
    }
}

pub fn membership<F: Field>(f: &F, s: &Subspace<F::Elem>, v: &[F::Elem]) -> bool {
    s.contains(f, v)
}

/// Coordinates on `T / S` for `S ⊆ T`, relative to a fixed list of
/// representatives of a basis of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientCoordinates<F: Field> {
    field: F,
    sub_dim: usize,
    representatives: Vec<Vec<F::Elem>>,
    solver: LinearSolver<F>,
}

impl<F: Field> QuotientCoordinates<F> {
    /// Representatives are the basis vectors of `T`, in order, that stay
    /// independent modulo `S` and the representatives chosen before them.
    pub fn new(f: &F, sub: &Subspace<F::Elem>, sup: &Subspace<F::Elem>) -> Result<Self> {
        if sub.ambient != sup.ambient {
            return Err(Error::DimensionMismatch("subspaces in different ambient spaces".into()));
        }
        if !sub.is_subspace_of(f, sup) {
            return Err(Error::DimensionMismatch("S is not contained in T".into()));
        }
        let mut span = sub.clone();
        let mut reps = Vec::new();
        for v in &sup.basis {
            if !span.contains(f, v) {
                reps.push(v.clone());
                let mut vs = span.basis.clone();
                vs.push(v.clone());
                span = Subspace::from_vectors(f, sub.ambient, vs);
            }
        }
        Self::with_representatives(f, sub, reps)
    }

    /// Uses the given representatives, which must be independent modulo `sub`.
    pub fn with_representatives(f: &F, sub: &Subspace<F::Elem>, reps: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = sub.ambient;
        let cols: Vec<&Vec<F::Elem>> = sub.basis.iter().chain(reps.iter()).collect();
        let mut dense = KMatrix::zeros(f, n, cols.len());
        for (j, v) in cols.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                dense.set(i, j, x.clone());
            }
        }
        let solver = LinearSolver::new(f, &dense.to_sparse(f));
        if solver.rank() != cols.len() {
            return Err(Error::DimensionMismatch("representatives are dependent modulo S".into()));
        }
        Ok(QuotientCoordinates { field: f.clone(), sub_dim: sub.dim(), representatives: reps, solver })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<F::Elem>] {
        &self.representatives
    }

    /// Coordinates of `v + S`; fails with [`Error::Inconsistent`] if `v ∉ T`.
    pub fn coordinates(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let x = self.solver.solve(v)?;
        Ok(x[self.sub_dim..].to_vec())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
}

/// Convenience: `quotient_coordinates(S, T)`.
pub fn quotient_coordinates<F: Field>(
    f: &F,
    sub: &Subspace<F::Elem>,
    sup: &Subspace<F::Elem>,
) -> Result<QuotientCoordinates<F>> {
    QuotientCoordinates::new(f, sub, sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{CyclotomicField, PrimeField};

    fn m<F: Field>(f: &F, rows: &[&[i64]]) -> KMatrix<F::Elem> {
        KMatrix::from_rows(
            rows[0].len(),
            rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = PrimeField::new(7, 3).unwrap();
        let id = KMatrix::identity(&f, 3);
        assert_eq!(rref(&f, &id), (id.clone(), vec![0, 1, 2]));
        let z = KMatrix::zeros(&f, 2, 3);
        assert_eq!(rref(&f, &z), (z.clone(), vec![]));
        let a = m(&f, &[&[1, 1], &[1, 1]]);
        assert_eq!(rref(&f, &a), (m(&f, &[&[1, 1], &[0, 0]]), vec![0]));
    }

    #[test]
    fn rank_nullity_and_solve() {
        let f = CyclotomicField::new(3).unwrap();
        let a = m(&f, &[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        let k = kernel(&f, &a);
        assert_eq!(rank(&f, &a) + k.dim(), 4);
        for v in k.basis() {
            assert!(a.mul_vec(&f, v).iter().all(|x| f.is_zero(x)));
        }
        let zero = vec![f.zero(); 3];
        assert_eq!(solve(&f, &a, &zero).unwrap(), vec![f.zero(); 4]);
        let b: Vec<_> = [1, 2, 1].iter().map(|&v| f.from_i64(v)).collect();
        let x = solve(&f, &a, &b).unwrap();
        assert_eq!(a.mul_vec(&f, &x), b);
        let bad: Vec<_> = [1, 3, 1].iter().map(|&v| f.from_i64(v)).collect();
        assert!(matches!(solve(&f, &a, &bad), Err(Error::Inconsistent)));
    }

    #[test]
    fn quotient_coordinates_of_a_plane_mod_a_line() {
        let f = PrimeField::new(11, 5).unwrap();
        let e = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let s = Subspace::from_vectors(&f, 3, vec![e(&[1, 1, 0])]);
        let t = Subspace::from_vectors(&f, 3, vec![e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let q = quotient_coordinates(&f, &s, &t).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.coordinates(&e(&[1, 1, 0])).unwrap(), e(&[0]));
        assert_eq!(q.coordinates(&e(&[0, 2, 0])).unwrap(), e(&[-2]));
        assert!(q.coordinates(&e(&[0, 0, 1])).is_err());
        assert!(membership(&f, &t, &e(&[3, 4, 0])));
    }
}
