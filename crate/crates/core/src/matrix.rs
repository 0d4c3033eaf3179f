//! Dense exact matrices and rank computation.

use crate::error::{Error, Result};
use crate::field::{dispatch_field, Field, FieldSpec, Scalar};

/// Dense row-major matrix over a typed field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: K, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_vec(field: K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: K, rows: usize, columns: &[Vec<K::Elem>]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (c, column) in columns.iter().enumerate() {
            assert_eq!(column.len(), rows, "column length");
            for (r, v) in column.iter().enumerate() {
                m.data[r * cols + c] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[K::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [K::Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }

    pub(crate) fn data_mut(&mut self) -> &mut [K::Elem] {
        &mut self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * cols);
        head[lo * cols..(lo + 1) * cols].swap_with_slice(&mut tail[..cols]);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    /// Keeps the first `n` rows.
    pub fn truncate_rows(&mut self, n: usize) {
        let n = n.min(self.rows);
        self.data.truncate(n * self.cols);
        self.rows = n;
    }

    /// The columns listed in `indices`, in that order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.field.clone(), self.rows, indices.len());
        for r in 0..self.rows {
            for (j, &c) in indices.iter().enumerate() {
                m.data[r * indices.len() + j] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn column(&self, c: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        self.field.rank_profile(self)
    }

    pub fn rank(&self) -> usize {
        self.rank_profile().len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        self.field.matmul(self, other)
    }

    /// Basis of the right kernel, one vector per row of the result.
    pub fn kernel(&self) -> Self {
        let mut work = self.clone();
        let pivots = self.field.rref(&mut work);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| is_pivot[c].is_none()).collect();
        let mut k = Self::zeros(self.field.clone(), free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            k.set(i, f, self.field.one());
            for (r, &pc) in pivots.iter().enumerate() {
                let v = work.get(r, f);
                if !self.field.is_zero(v) {
                    k.set(i, pc, self.field.neg(v));
                }
            }
        }
        k
    }
}

/// Result of [`reduce`]: the rank and the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub rank: usize,
    /// Strictly increasing; a column is a pivot iff it is not in the span of
    /// the columns before it.
    pub pivot_cols: Vec<usize>,
}

/// A dense matrix over one of the supported exact fields.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactMatrix {
    Prime(Matrix<crate::field::PrimeField>),
    Rational(Matrix<crate::field::RationalField>),
}

macro_rules! with_inner {
    ($m:expr, $inner:ident => $body:expr) => {
        match $m {
            ExactMatrix::Prime($inner) => $body,
            ExactMatrix::Rational($inner) => $body,
        }
    };
}

impl ExactMatrix {
    /// Row-major scalars; every entry must belong to `field`.
    pub fn from_scalars(field: FieldSpec, rows: usize, cols: usize, entries: &[Scalar]) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DegreeMismatch {
                expected: (rows * cols) as i64,
                found: entries.len() as i64,
            });
        }
        if let Some(bad) = entries.iter().find(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: format!("{bad:?}"),
            });
        }
        Ok(dispatch_field!(field, k => {
            let data = entries.iter().map(|s| k.from_scalar(s)).collect();
            Field::wrap(Matrix::from_vec(k, rows, cols, data))
        }))
    }

    /// Convenience constructor for integer entries.
    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        dispatch_field!(field, k => {
            let data = rows
                .iter()
                .flat_map(|r| {
                    assert_eq!(r.len(), cols, "ragged rows");
                    r.iter().map(|&v| k.from_i64(v)).collect::<Vec<_>>()
                })
                .collect();
            Field::wrap(Matrix::from_vec(k, rows.len(), cols, data))
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        dispatch_field!(field, k => Field::wrap(Matrix::zeros(k, rows, cols)))
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        dispatch_field!(field, k => Field::wrap(Matrix::identity(k, n)))
    }

    pub fn field(&self) -> FieldSpec {
        with_inner!(self, m => m.field().spec())
    }

    pub fn rows(&self) -> usize {
        with_inner!(self, m => m.rows())
    }

    pub fn cols(&self) -> usize {
        with_inner!(self, m => m.cols())
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        with_inner!(self, m => m.field().to_scalar(m.get(r, c)))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows()).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        match self {
            ExactMatrix::Prime(m) => ExactMatrix::Prime(m.transpose()),
            ExactMatrix::Rational(m) => ExactMatrix::Rational(m.transpose()),
        }
    }

    pub fn is_zero(&self) -> bool {
        with_inner!(self, m => m.is_zero())
    }

    pub fn reduce(&self) -> ReductionResult {
        let pivot_cols = with_inner!(self, m => m.rank_profile());
        ReductionResult { rank: pivot_cols.len(), pivot_cols }
    }

    pub fn rank(&self) -> usize {
        self.reduce().rank
    }

    /// Stacks blocks along the diagonal.
    pub fn block_diagonal(blocks: &[ExactMatrix]) -> Result<Self> {
        let field = blocks.first().map_or(FieldSpec::default(), ExactMatrix::field);
        let rows: usize = blocks.iter().map(ExactMatrix::rows).sum();
        let cols: usize = blocks.iter().map(ExactMatrix::cols).sum();
        let mut entries = vec![field.zero(); rows * cols];
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: b.field().to_string(),
                });
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    entries[(r0 + r) * cols + c0 + c] = b.get(r, c);
                }
            }
            r0 += b.rows();
            c0 += b.cols();
        }
        Self::from_scalars(field, rows, cols, &entries)
    }
}

/// Rank and pivot columns of `m`.
///
/// Prime fields use Gauss elimination; the rationals use fraction-free
/// (Bareiss) elimination over integers. Pivoting takes the first nonzero
/// entry scanning columns left to right, so the result is deterministic.
pub fn reduce(m: &ExactMatrix) -> ReductionResult {
    m.reduce()
}

pub fn transpose(m: &ExactMatrix) -> ExactMatrix {
    m.transpose()
}

/// Row rank equals column rank; always true.
pub fn rank_transpose_agrees(m: &ExactMatrix) -> bool {
    m.rank() == m.transpose().rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FP: FieldSpec = FieldSpec::Prime(65521);

    #[test]
    fn identity_has_full_rank() {
        let r = reduce(&ExactMatrix::identity(FP, 3));
        assert_eq!(r, ReductionResult { rank: 3, pivot_cols: vec![0, 1, 2] });
        assert!(rank_transpose_agrees(&ExactMatrix::identity(FP, 3)));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let z = ExactMatrix::zeros(FieldSpec::Rationals, 2, 3);
        assert_eq!(reduce(&z), ReductionResult { rank: 0, pivot_cols: vec![] });
        assert!(rank_transpose_agrees(&z));
        let empty = ExactMatrix::zeros(FP, 0, 4);
        assert_eq!(empty.rank(), 0);
        assert_eq!(ExactMatrix::zeros(FP, 4, 0).rank(), 0);
    }

    #[test]
    fn proportional_rows() {
        for field in [FieldSpec::Rationals, FP] {
            let m = ExactMatrix::from_i64_rows(field, &[vec![1, 2], vec![2, 4]]);
            assert_eq!(reduce(&m), ReductionResult { rank: 1, pivot_cols: vec![0] });
        }
    }

    #[test]
    fn pivots_skip_dependent_columns() {
        let rows = [vec![0, 1, 2, 0], vec![0, 2, 4, 1], vec![0, 3, 6, 5]];
        for field in [FieldSpec::Rationals, FP] {
            let m = ExactMatrix::from_i64_rows(field, &rows);
            assert_eq!(reduce(&m).pivot_cols, vec![1, 3]);
        }
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = ExactMatrix::from_i64_rows(FP, &[vec![1, 2, 3, 4], vec![2, 4, 6, 9]]);
        let ExactMatrix::Prime(inner) = &m else { unreachable!() };
        let k = inner.kernel();
        assert_eq!(k.rows(), 2);
        assert!(inner.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn block_diagonal_rank_is_additive() {
        let a = ExactMatrix::from_i64_rows(FP, &[vec![1, 2], vec![2, 4]]);
        let b = ExactMatrix::identity(FP, 3);
        let bd = ExactMatrix::block_diagonal(&[a.clone(), b.clone()]).unwrap();
        assert_eq!(bd.rank(), a.rank() + b.rank());
    }

    #[test]
    fn rejects_foreign_scalars() {
        let err = ExactMatrix::from_scalars(FieldSpec::Prime(7), 1, 1, &[Scalar::Mod(9)]);
        assert!(matches!(err, Err(Error::FieldMismatch { .. })));
    }
}
