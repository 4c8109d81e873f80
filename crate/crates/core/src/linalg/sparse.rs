use rayon::prelude::*;

use super::rref_in_place;
use crate::error::{Error, Result};
use crate::scalars::Field;

/// Row-major sparse matrix; each row holds `(column, value)` pairs with
/// strictly increasing columns and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<E> {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    /// Builds a matrix from rows; entries must be sorted by column and nonzero.
    pub fn from_rows(ncols: usize, rows: Vec<Vec<(usize, E)>>) -> Self {
        debug_assert!(rows
            .iter()
            .all(|r| r.windows(2).all(|w| w[0].0 < w[1].0) && r.last().is_none_or(|e| e.0 < ncols)));
        SparseMatrix { nrows: rows.len(), ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, E)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, E)>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut out = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                out[*j].push((i, v.clone()));
            }
        }
        SparseMatrix { nrows: self.ncols, ncols: self.nrows, rows: out }
    }
}

/// A connected component of the bipartite row/column incidence graph.
#[derive(Clone, Debug)]
pub(crate) struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the matrix into independent diagonal blocks. Rows without entries
/// are returned separately; empty columns belong to no block.
pub(crate) fn blocks<E: Clone>(m: &SparseMatrix<E>) -> (Vec<Block>, Vec<usize>) {
    let mut parent: Vec<usize> = (0..m.ncols).collect();
    for row in &m.rows {
        if let Some(&(first, _)) = row.first() {
            let mut a = find(&mut parent, first);
            for (c, _) in &row[1..] {
                let b = find(&mut parent, *c);
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                    a = lo;
                }
            }
        }
    }
    let mut index_of_root = vec![usize::MAX; m.ncols];
    let mut out: Vec<Block> = Vec::new();
    let mut empty = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        match row.first() {
            None => empty.push(i),
            Some(&(c, _)) => {
                let r = find(&mut parent, c);
                if index_of_root[r] == usize::MAX {
                    index_of_root[r] = out.len();
                    out.push(Block { rows: Vec::new(), cols: Vec::new() });
                }
                out[index_of_root[r]].rows.push(i);
            }
        }
    }
    for c in 0..m.ncols {
        let r = find(&mut parent, c);
        if index_of_root[r] != usize::MAX {
            out[index_of_root[r]].cols.push(c);
        }
    }
    (out, empty)
}

fn dense_block<F: Field>(f: &F, m: &SparseMatrix<F::Elem>, b: &Block, extra: usize) -> Vec<Vec<F::Elem>> {
    let mut local = vec![usize::MAX; m.ncols];
    for (k, &c) in b.cols.iter().enumerate() {
        local[c] = k;
    }
    b.rows
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let mut row = vec![f.zero(); b.cols.len() + extra];
            for (c, v) in &m.rows[r] {
                row[local[*c]] = v.clone();
            }
            if extra > 0 {
                row[b.cols.len() + k] = f.one();
            }
            row
        })
        .collect()
}

/// Rank of a sparse matrix, computed block by block.
pub fn sparse_rank<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> usize {
    let (bl, _) = blocks(m);
    bl.par_iter()
        .map(|b| {
            let mut d = dense_block(f, m, b, 0);
            rref_in_place(f, &mut d, b.cols.len()).len()
        })
        .sum()
}

/// Canonical basis of `{x : M x = 0}`: one vector per non-pivot column `j`,
/// with `x_j = 1` and the remaining free coordinates zero. Sorted by `j`.
pub fn sparse_kernel<F: Field>(f: &F, m: &SparseMatrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (bl, _) = blocks(m);
    let mut in_block = vec![false; m.ncols];
    let mut out: Vec<(usize, Vec<F::Elem>)> = bl
        .par_iter()
        .flat_map_iter(|b| {
            let mut d = dense_block(f, m, b, 0);
            let piv = rref_in_place(f, &mut d, b.cols.len());
            let mut is_piv = vec![false; b.cols.len()];
            for &p in &piv {
                is_piv[p] = true;
            }
            let mut vecs = Vec::new();
            for j in (0..b.cols.len()).filter(|&j| !is_piv[j]) {
                let mut v = vec![f.zero(); m.ncols];
                v[b.cols[j]] = f.one();
                for (r, &p) in piv.iter().enumerate() {
                    if !f.is_zero(&d[r][j]) {
                        v[b.cols[p]] = f.neg(&d[r][j]);
                    }
                }
                vecs.push((b.cols[j], v));
            }
            vecs
        })
        .collect();
    for b in &bl {
        for &c in &b.cols {
            in_block[c] = true;
        }
    }
    for (c, _) in in_block.iter().enumerate().filter(|(_, &x)| !x) {
        let mut v = vec![f.zero(); m.ncols];
        v[c] = f.one();
        out.push((c, v));
    }
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, v)| v).collect()
}

/// Which columns elimination prefers as pivots. `Leftmost` yields the canonical
/// solution; `Rightmost` gives a different particular solution whenever the
/// system is underdetermined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotOrder {
    #[default]
    Leftmost,
    Rightmost,
}

#[derive(Clone, Debug)]
struct SolverBlock<E> {
    rows: Vec<usize>,
    pivot_cols: Vec<usize>,
    /// `T` with `T * M_block = RREF(M_block)`.
    transform: Vec<Vec<E>>,
}

/// Solves `M x = b` repeatedly for one fixed `M`.
///
/// The elimination is done once per diagonal block; each solve is then a
/// product with the stored transformation.
#[derive(Clone, Debug)]
pub struct LinearSolver<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    rank: usize,
    blocks: Vec<SolverBlock<F::Elem>>,
    empty_rows: Vec<usize>,
}

impl<F: Field> LinearSolver<F> {
    pub fn new(field: &F, m: &SparseMatrix<F::Elem>) -> Self {
        Self::with_order(field, m, PivotOrder::Leftmost)
    }

    pub fn with_order(field: &F, m: &SparseMatrix<F::Elem>, order: PivotOrder) -> Self {
        let (mut bl, empty_rows) = blocks(m);
        if order == PivotOrder::Rightmost {
            for b in &mut bl {
                b.cols.reverse();
            }
        }
        let solved: Vec<SolverBlock<F::Elem>> = bl
            .par_iter()
            .map(|b| {
                let ncols = b.cols.len();
                let mut d = dense_block(field, m, b, b.rows.len());
                let piv = rref_in_place(field, &mut d, ncols);
                SolverBlock {
                    rows: b.rows.clone(),
                    pivot_cols: piv.iter().map(|&p| b.cols[p]).collect(),
                    transform: d.into_iter().map(|row| row[ncols..].to_vec()).collect(),
                }
            })
            .collect();
        let rank = solved.iter().map(|b| b.pivot_cols.len()).sum();
        LinearSolver {
            field: field.clone(),
            nrows: m.nrows,
            ncols: m.ncols,
            rank,
            blocks: solved,
            empty_rows,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The solution with every non-pivot variable set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if b.len() != self.nrows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.nrows
            )));
        }
        let f = &self.field;
        if self.empty_rows.iter().any(|&r| !f.is_zero(&b[r])) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![f.zero(); self.ncols];
        for blk in &self.blocks {
            let local: Vec<(usize, &F::Elem)> = blk
                .rows
                .iter()
                .enumerate()
                .filter(|(_, &r)| !f.is_zero(&b[r]))
                .map(|(k, &r)| (k, &b[r]))
                .collect();
            if local.is_empty() {
                continue;
            }
            for (j, trow) in blk.transform.iter().enumerate() {
                let mut acc = f.zero();
                for (k, v) in &local {
                    if !f.is_zero(&trow[*k]) {
                        f.add_mul_assign(&mut acc, &trow[*k], v);
                    }
                }
                if j < blk.pivot_cols.len() {
                    x[blk.pivot_cols[j]] = acc;
                } else if !f.is_zero(&acc) {
                    return Err(Error::Inconsistent);
                }
            }
        }
        Ok(x)
    }
}

/// `M x` for a sparse `M`.
pub fn sparse_mul_vec<F: Field>(f: &F, m: &SparseMatrix<F::Elem>, x: &[F::Elem]) -> Vec<F::Elem> {
    m.rows
        .iter()
        .map(|row| {
            let mut acc = f.zero();
            for (c, v) in row {
                f.add_mul_assign(&mut acc, v, &x[*c]);
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Fp, PrimeField};

    fn sp(f: &PrimeField, dense: &[&[i64]]) -> SparseMatrix<Fp> {
        let ncols = dense.first().map_or(0, |r| r.len());
        SparseMatrix::from_rows(
            ncols,
            dense
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(j, &v)| (j, f.from_i64(v)))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn blocks_split_direct_sums() {
        let f = PrimeField::new(7, 3).unwrap();
        let m = sp(&f, &[&[1, 0, 0, 2], &[0, 3, 0, 0], &[0, 0, 0, 0], &[5, 0, 0, 1]]);
        let (bl, empty) = blocks(&m);
        assert_eq!(empty, vec![2]);
        assert_eq!(bl.len(), 2);
        assert_eq!(bl[0].rows, vec![0, 3]);
        assert_eq!(bl[0].cols, vec![0, 3]);
        assert_eq!(bl[1].cols, vec![1]);
        assert_eq!(sparse_rank(&f, &m), 3);
    }

    #[test]
    fn solver_matches_direct_substitution() {
        let f = PrimeField::new(101, 5).unwrap();
        let m = sp(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]]);
        let s = LinearSolver::new(&f, &m);
        assert_eq!(s.rank(), 2);
        let b: Vec<Fp> = [3, 4, 7].iter().map(|&v| f.from_i64(v)).collect();
        let x = s.solve(&b).unwrap();
        assert_eq!(sparse_mul_vec(&f, &m, &x), b);
        assert_eq!(x[2], f.zero());
        let bad: Vec<Fp> = [3, 4, 8].iter().map(|&v| f.from_i64(v)).collect();
        assert!(matches!(s.solve(&bad), Err(Error::Inconsistent)));
        let r = LinearSolver::with_order(&f, &m, PivotOrder::Rightmost);
        let y = r.solve(&b).unwrap();
        assert_eq!(sparse_mul_vec(&f, &m, &y), b);
        assert_ne!(x, y);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f = PrimeField::new(101, 5).unwrap();
        let m = sp(&f, &[&[1, 2, 0, 0, 0], &[2, 4, 0, 0, 0], &[0, 0, 1, 0, 1]]);
        let k = sparse_kernel(&f, &m);
        assert_eq!(k.len(), 5 - sparse_rank(&f, &m));
        for v in &k {
            assert!(sparse_mul_vec(&f, &m, v).iter().all(|e| f.is_zero(e)));
        }
    }

    #[test]
    fn blocks_merge_through_chained_rows() {
        let f = PrimeField::new(7, 3).unwrap();
        // the second row joins {2,3} to {0,1} after its first column was merged
        let m = sp(&f, &[&[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 1, 1, 0], &[1, 0, 0, 1]]);
        let (bl, _) = blocks(&m);
        assert_eq!(bl.len(), 1);
        assert_eq!(bl[0].cols, vec![0, 1, 2, 3]);
        assert_eq!(sparse_rank(&f, &m), 3);
    }

    proptest::proptest! {
        #[test]
        fn sparse_rank_matches_dense(rows in proptest::collection::vec(proptest::collection::vec(0i64..4, 6), 1..7)) {
            let f = PrimeField::new(7, 3).unwrap();
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            let m = sp(&f, &refs);
            let mut dense: Vec<Vec<Fp>> = rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect();
            let piv = crate::linalg::rref_in_place(&f, &mut dense, 6);
            proptest::prop_assert_eq!(sparse_rank(&f, &m), piv.len());
            let s = LinearSolver::new(&f, &m);
            let x: Vec<Fp> = (0..6).map(|i| f.from_i64(i as i64 + 1)).collect();
            let b = sparse_mul_vec(&f, &m, &x);
            let y = s.solve(&b).unwrap();
            proptest::prop_assert_eq!(sparse_mul_vec(&f, &m, &y), b);
        }
    }
}
