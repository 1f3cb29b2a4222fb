//! Sparse matrices over a [`Field`] and the elimination routines behind
//! every rank, kernel and solve in the crate.
//!
//! Elimination uses Markowitz-style pivoting: the pivot column is the active
//! column with the fewest nonzeros and the pivot row is the shortest row in
//! that column, ties broken by lowest index. Coboundary matrices have at most
//! `dim + 2` entries per row, and this rule keeps fill-in small enough that
//! exact rational arithmetic stays cheap. The pivot order depends only on
//! the sparsity pattern and values, so results are reproducible.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::scalar::{Field, Fp, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("prime {0} divides a denominator of the matrix")]
    BadPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// Sparse matrix keyed by `(row, col)`. No stored entry is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), F>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets; zeros are dropped and
    /// a repeated position keeps the last value.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut m = SparseMatrix::new(rows, cols);
        for (r, c, v) in triplets {
            m.insert(r, c, v);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn insert(&mut self, row: usize, col: usize, value: F) {
        assert!(
            row < self.rows && col < self.cols,
            "entry ({row}, {col}) outside {}x{}",
            self.rows,
            self.cols
        );
        if value.is_null() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&F> {
        self.entries.get(&(row, col))
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// Applies `f` entrywise, dropping entries that map to zero.
    pub fn try_map<G: Field, E>(
        &self,
        mut f: impl FnMut(&F) -> Result<G, E>,
    ) -> Result<SparseMatrix<G>, E> {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.insert(r, c, f(v)?);
        }
        Ok(out)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let rhs_rows = rhs.row_lists();
        let mut acc: BTreeMap<(usize, usize), F> = BTreeMap::new();
        for (&(r, k), a) in &self.entries {
            for (c, b) in &rhs_rows[k] {
                let term = a.mul_ref(b);
                match acc.get_mut(&(r, *c)) {
                    Some(v) => *v = v.add_ref(&term),
                    None => {
                        acc.insert((r, *c), term);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_null());
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries: acc,
        }
    }

    /// Places `rhs` to the right of `self`.
    pub fn hstack(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(self.rows, rhs.rows, "row counts differ");
        let mut out = self.clone();
        out.cols += rhs.cols;
        for (&(r, c), v) in &rhs.entries {
            out.entries.insert((r, c + self.cols), v.clone());
        }
        out
    }

    /// Keeps the listed rows and columns, renumbered in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix<F> {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = SparseMatrix::new(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if let (Some(&nr), Some(&nc)) = (row_pos.get(&r), col_pos.get(&c)) {
                out.entries.insert((nr, nc), v.clone());
            }
        }
        out
    }

    pub fn row_lists(&self) -> Vec<Vec<(usize, F)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exact rank over `F`.
    pub fn rank(&self) -> usize {
        Elimination::run(self.row_lists(), self.cols, self.cols, false).rank
    }
}

impl SparseMatrix<Rational> {
    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, v) in row.iter().enumerate() {
                m.insert(r, c, v.clone());
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, Rational::one())))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if x.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), v) in &self.entries {
            if !x[c].is_zero() {
                out[r] += v * &x[c];
            }
        }
        Ok(out)
    }

    /// A basis of `{ v : M v = 0 }`, one vector per non-pivot column in
    /// increasing column order; that column's coordinate is 1 and the other
    /// free coordinates are 0.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let elim = Elimination::run(self.row_lists(), self.cols, self.cols, true);
        let mut pivoted = vec![false; self.cols];
        for p in &elim.pivots {
            pivoted[p.col] = true;
        }
        (0..self.cols)
            .filter(|&c| !pivoted[c])
            .map(|free| {
                let mut x = vec![Rational::zero(); self.cols];
                x[free] = Rational::one();
                back_substitute(&elim.pivots, &mut x, None);
                x
            })
            .collect()
    }

    /// Some `x` with `M x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut rows = self.row_lists();
        for (row, rhs) in rows.iter_mut().zip(b) {
            if !rhs.is_zero() {
                row.push((self.cols, rhs.clone()));
            }
        }
        // The augmented column is never chosen as a pivot.
        let elim = Elimination::run(rows, self.cols + 1, self.cols, true);
        if elim.remaining.iter().any(|row| !row.is_empty()) {
            return Ok(None);
        }
        let mut x = vec![Rational::zero(); self.cols + 1];
        back_substitute(&elim.pivots, &mut x, Some(self.cols));
        x.truncate(self.cols);
        Ok(Some(x))
    }
}

/// Rank of `m` reduced modulo the prime `p`; never exceeds the rational rank.
pub fn rank_mod_p(m: &SparseMatrix<Rational>, p: u64) -> Result<usize, LinalgError> {
    if !crate::scalar::is_prime(p) {
        return Err(LinalgError::NotPrime(p));
    }
    let reduced = m.try_map(|q| Fp::from_rational(q, p).ok_or(LinalgError::BadPrime(p)))?;
    Ok(reduced.rank())
}

fn back_substitute(pivots: &[Pivot<Rational>], x: &mut [Rational], augmented: Option<usize>) {
    for p in pivots.iter().rev() {
        let mut acc = Rational::zero();
        let mut pivot_value = None;
        for (c, v) in &p.entries {
            if *c == p.col {
                pivot_value = Some(v);
            } else if Some(*c) == augmented {
                acc -= v;
            } else if !x[*c].is_zero() {
                acc += v * &x[*c];
            }
        }
        let pv = pivot_value.expect("pivot row lost its pivot");
        x[p.col] = -(acc / pv);
    }
}

struct Pivot<F> {
    col: usize,
    entries: Vec<(usize, F)>,
}

struct Elimination<F> {
    rank: usize,
    pivots: Vec<Pivot<F>>,
    remaining: Vec<Vec<(usize, F)>>,
}

impl<F: Field> Elimination<F> {
    /// Eliminates `rows` (each sorted by column). Columns `>= pivot_limit`
    /// are carried along but never pivoted on.
    fn run(mut rows: Vec<Vec<(usize, F)>>, ncols: usize, pivot_limit: usize, keep: bool) -> Self {
        let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
            for (c, _) in row {
                col_rows[*c].insert(r);
            }
        }
        let mut done = vec![false; ncols];
        let mut queue: BTreeSet<(usize, usize)> = (0..pivot_limit)
            .filter(|&c| !col_rows[c].is_empty())
            .map(|c| (col_rows[c].len(), c))
            .collect();

        let mut pivots = Vec::new();
        let mut rank = 0;

        while let Some((_, col)) = queue.pop_first() {
            done[col] = true;
            let pivot_row = *col_rows[col]
                .iter()
                .min_by_key(|&&r| (rows[r].len(), r))
                .expect("queued column without rows");
            let prow = std::mem::take(&mut rows[pivot_row]);
            for (c, _) in &prow {
                let before = col_rows[*c].len();
                col_rows[*c].remove(&pivot_row);
                requeue(&mut queue, &done, pivot_limit, *c, before, col_rows[*c].len());
            }
            let pv = &prow
                .iter()
                .find(|(c, _)| *c == col)
                .expect("pivot entry")
                .1;
            let pv_inv = pv.inv_ref();

            let targets: Vec<usize> = col_rows[col].iter().copied().collect();
            for r in targets {
                let old = std::mem::take(&mut rows[r]);
                let factor = old
                    .iter()
                    .find(|(c, _)| *c == col)
                    .expect("row listed under column")
                    .1
                    .mul_ref(&pv_inv);
                let mut merged = Vec::with_capacity(old.len() + prow.len());
                let (mut i, mut j) = (0, 0);
                while i < old.len() || j < prow.len() {
                    let take_old = j == prow.len() || (i < old.len() && old[i].0 < prow[j].0);
                    let take_piv = i == old.len() || (j < prow.len() && prow[j].0 < old[i].0);
                    if take_old {
                        merged.push(old[i].clone());
                        i += 1;
                    } else if take_piv {
                        let c = prow[j].0;
                        let v = prow[j].1.mul_ref(&factor).neg_ref();
                        let before = col_rows[c].len();
                        col_rows[c].insert(r);
                        requeue(&mut queue, &done, pivot_limit, c, before, col_rows[c].len());
                        merged.push((c, v));
                        j += 1;
                    } else {
                        let c = old[i].0;
                        let v = old[i].1.sub_mul(&factor, &prow[j].1);
                        if v.is_null() {
                            let before = col_rows[c].len();
                            col_rows[c].remove(&r);
                            requeue(&mut queue, &done, pivot_limit, c, before, col_rows[c].len());
                        } else {
                            merged.push((c, v));
                        }
                        i += 1;
                        j += 1;
                    }
                }
                rows[r] = merged;
            }
            debug_assert!(col_rows[col].is_empty());
            rank += 1;
            if keep {
                pivots.push(Pivot { col, entries: prow });
            }
        }
        Elimination {
            rank,
            pivots,
            remaining: rows,
        }
    }
}

fn requeue(
    queue: &mut BTreeSet<(usize, usize)>,
    done: &[bool],
    pivot_limit: usize,
    col: usize,
    before: usize,
    after: usize,
) {
    if col >= pivot_limit || done[col] || before == after {
        return;
    }
    if before > 0 {
        queue.remove(&(before, col));
    }
    if after > 0 {
        queue.insert((after, col));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> SparseMatrix<Rational> {
        SparseMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| integer(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    /// Plain dense Gaussian elimination, first nonzero pivot, no sparsity.
    fn dense_rank(mut a: Vec<Vec<Rational>>) -> usize {
        let rows = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    let pivot = a[rank].clone();
                    for (x, p) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn empty_and_identity() {
        assert_eq!(SparseMatrix::<Rational>::new(0, 0).rank(), 0);
        assert_eq!(SparseMatrix::identity(2).rank(), 2);
        assert!(SparseMatrix::identity(2).nullspace_basis().is_empty());
    }

    #[test]
    fn twisted_circle_coboundary_has_full_rank() {
        // rows: edges 01, 02, 12; columns: vertices 0, 1, 2; weight(0,2) = 2
        let m = q(&[&[-1, 1, 0], &[-1, 0, 2], &[0, -1, 1]]);
        assert_eq!(m.rank(), 3);
        let untwisted = q(&[&[-1, 1, 0], &[-1, 0, 1], &[0, -1, 1]]);
        assert_eq!(untwisted.rank(), 2);
        let kernel = untwisted.nullspace_basis();
        assert_eq!(kernel, vec![vec![integer(1), integer(1), integer(1)]]);
    }

    #[test]
    fn nullspace_of_difference_row() {
        let kernel = q(&[&[1, -1]]).nullspace_basis();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0][0], kernel[0][1]);
        assert!(!kernel[0][0].is_zero());
    }

    #[test]
    fn solve_cases() {
        let b = vec![rational(3, 2), integer(-1)];
        assert_eq!(SparseMatrix::identity(2).solve(&b).unwrap(), Some(b.clone()));

        let x = q(&[&[1, 1]]).solve(&[integer(2)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], integer(2));

        assert_eq!(q(&[&[1], &[1]]).solve(&[integer(1), integer(2)]).unwrap(), None);
        assert_eq!(
            SparseMatrix::identity(2).solve(&[integer(1)]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn modular_rank() {
        assert_eq!(rank_mod_p(&SparseMatrix::identity(2), 7), Ok(2));
        let two = q(&[&[2]]);
        assert_eq!(rank_mod_p(&two, 2), Ok(0));
        assert_eq!(two.rank(), 1);
        let half = SparseMatrix::from_dense(&[vec![rational(1, 2)]]);
        assert_eq!(rank_mod_p(&half, 2), Err(LinalgError::BadPrime(2)));
        assert_eq!(rank_mod_p(&half, 8), Err(LinalgError::NotPrime(8)));
    }

    #[test]
    fn product_and_stack() {
        let a = q(&[&[1, 2], &[0, 1]]);
        let b = q(&[&[1, -2], &[0, 1]]);
        assert_eq!(a.mul(&b), SparseMatrix::identity(2));
        let s = a.hstack(&b);
        assert_eq!(s.ncols(), 4);
        assert_eq!(s.get(0, 3), Some(&integer(-2)));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (0usize..7, 0usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, c), r)
        })
    }

    fn to_q(m: &[Vec<i64>]) -> (SparseMatrix<Rational>, Vec<Vec<Rational>>) {
        let cols = m.first().map_or(0, Vec::len);
        let dense: Vec<Vec<Rational>> =
            m.iter().map(|r| r.iter().map(|&v| integer(v)).collect()).collect();
        let mut sparse = SparseMatrix::new(m.len(), cols);
        for (r, row) in dense.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                sparse.insert(r, c, v.clone());
            }
        }
        (sparse, dense)
    }

    proptest! {
        #[test]
        fn sparse_rank_matches_dense_oracle(m in small_matrix()) {
            let (sparse, dense) = to_q(&m);
            prop_assert_eq!(sparse.rank(), dense_rank(dense));
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            let (sparse, _) = to_q(&m);
            prop_assert_eq!(sparse.rank(), sparse.transpose().rank());
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            let (sparse, _) = to_q(&m);
            let kernel = sparse.nullspace_basis();
            prop_assert_eq!(sparse.rank() + kernel.len(), sparse.ncols());
            for v in &kernel {
                prop_assert!(sparse.mul_vec(v).unwrap().iter().all(Zero::is_zero));
            }
            let stacked = SparseMatrix::from_dense(&kernel);
            prop_assert_eq!(stacked.rank(), kernel.len());
        }

        #[test]
        fn solve_consistent_systems(m in small_matrix(), seed in proptest::collection::vec(-3i64..=3, 7)) {
            let (sparse, _) = to_q(&m);
            let x0: Vec<Rational> = seed.iter().take(sparse.ncols()).map(|&v| integer(v)).collect();
            prop_assume!(x0.len() == sparse.ncols());
            let b = sparse.mul_vec(&x0).unwrap();
            let x = sparse.solve(&b).unwrap().expect("consistent by construction");
            prop_assert_eq!(sparse.mul_vec(&x).unwrap(), b);
        }

        #[test]
        fn modular_rank_never_exceeds_rational(m in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7, 1_000_003])) {
            let (sparse, _) = to_q(&m);
            prop_assert!(rank_mod_p(&sparse, p).unwrap() <= sparse.rank());
        }
    }
}
