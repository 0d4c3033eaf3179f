//! Incremental sparse echelon basis of a subspace of K^n.
//!
//! Rows are normalized to a leading 1 at their smallest index. The set of
//! non-leading indices is a complement: every vector reduces uniquely to a
//! combination of those coordinates modulo the subspace.

use crate::field::Field;
use crate::matrix::Matrix;

pub(crate) type SparseVec<E> = Vec<(usize, E)>;

/// Work limit exceeded; the caller should switch strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BudgetExceeded;

pub(crate) struct SparseEchelon<K: Field> {
    field: K,
    n: usize,
    rows: Vec<SparseVec<K::Elem>>,
    /// `lead[i]` is the row whose leading index is `i`.
    lead: Vec<Option<usize>>,
    work: u64,
    budget: u64,
}

impl<K: Field> SparseEchelon<K> {
    pub(crate) fn new(field: K, n: usize, budget: Option<u64>) -> Self {
        SparseEchelon {
            field,
            n,
            rows: Vec::new(),
            lead: vec![None; n],
            work: 0,
            budget: budget.unwrap_or(u64::MAX),
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn charge(&mut self, units: usize) -> Result<(), BudgetExceeded> {
        self.work = self.work.saturating_add(units as u64);
        if self.work > self.budget {
            Err(BudgetExceeded)
        } else {
            Ok(())
        }
    }

    /// `a - f*b` for sorted sparse vectors.
    fn axpy(&self, a: &SparseVec<K::Elem>, f: &K::Elem, b: &SparseVec<K::Elem>) -> SparseVec<K::Elem> {
        let k = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ai = a.get(i).map(|e| e.0);
            let bj = b.get(j).map(|e| e.0);
            match (ai, bj) {
                (Some(x), Some(y)) if x == y => {
                    let v = k.sub(&a[i].1, &k.mul(f, &b[j].1));
                    if !k.is_zero(&v) {
                        out.push((x, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(x), Some(y)) if x < y => {
                    out.push(a[i].clone());
                    i += 1;
                }
                (Some(_), None) => {
                    out.push(a[i].clone());
                    i += 1;
                }
                (_, Some(y)) => {
                    out.push((y, k.neg(&k.mul(f, &b[j].1))));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        out
    }

    /// Adds `v` to the spanning set. Returns whether the rank grew.
    pub(crate) fn insert(&mut self, mut v: SparseVec<K::Elem>) -> Result<bool, BudgetExceeded> {
        v.retain(|(_, x)| !self.field.is_zero(x));
        loop {
            let Some((l, coeff)) = v.first().cloned() else {
                return Ok(false);
            };
            match self.lead[l] {
                Some(r) => {
                    self.charge(v.len() + self.rows[r].len())?;
                    v = self.axpy(&v, &coeff, &self.rows[r]);
                }
                None => {
                    let inv = self.field.inv(&coeff);
                    for e in v.iter_mut() {
                        e.1 = self.field.mul(&e.1, &inv);
                    }
                    self.lead[l] = Some(self.rows.len());
                    self.rows.push(v);
                    return Ok(true);
                }
            }
        }
    }

    /// Indices that are not leading positions, ascending.
    pub(crate) fn complement(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.lead[i].is_none()).collect()
    }

    /// Matrix `P` (complement × n) with `P e_j` = coordinates of `e_j` in the
    /// complement basis modulo the subspace.
    pub(crate) fn normal_form_matrix(&mut self) -> Result<Matrix<K>, BudgetExceeded> {
        let k = self.field.clone();
        let complement = self.complement();
        let mut position = vec![usize::MAX; self.n];
        for (i, &c) in complement.iter().enumerate() {
            position[c] = i;
        }
        let mut p = Matrix::zeros(k.clone(), complement.len(), self.n);
        for (i, &c) in complement.iter().enumerate() {
            p.set(i, c, k.one());
        }
        // Fully reduce rows from the rightmost leading index down: afterwards
        // row l is e_l plus complement entries only.
        let mut reduced: Vec<Option<SparseVec<K::Elem>>> = vec![None; self.n];
        let mut acc = vec![k.zero(); self.n];
        for l in (0..self.n).rev() {
            let Some(r) = self.lead[l] else { continue };
            let row = std::mem::take(&mut self.rows[r]);
            let mut touched: Vec<usize> = Vec::new();
            for (idx, x) in row.iter().skip(1) {
                if position[*idx] != usize::MAX {
                    acc[*idx] = k.add(&acc[*idx], x);
                    touched.push(*idx);
                } else {
                    let sub = reduced[*idx].as_ref().expect("rows to the right are reduced");
                    self.charge(sub.len())?;
                    for (j, y) in sub {
                        acc[*j] = k.sub(&acc[*j], &k.mul(x, y));
                        touched.push(*j);
                    }
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for j in touched {
                let v = std::mem::replace(&mut acc[j], k.zero());
                if !k.is_zero(&v) {
                    p.set(position[j], l, k.neg(&v));
                    out.push((j, v));
                }
            }
            reduced[l] = Some(out);
            self.rows[r] = row;
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn complement_and_normal_form() {
        let k = PrimeField::new(101);
        let mut e = SparseEchelon::new(k, 4, None);
        // span{e0 + e2, e1 + 2 e2 + e3, e0 + e1 + 3 e2 + e3}
        assert!(e.insert(vec![(0, 1), (2, 1)]).unwrap());
        assert!(e.insert(vec![(1, 1), (2, 2), (3, 1)]).unwrap());
        assert!(!e.insert(vec![(0, 1), (1, 1), (2, 3), (3, 1)]).unwrap());
        assert_eq!(e.rank(), 2);
        assert_eq!(e.complement(), vec![2, 3]);
        let p = e.normal_form_matrix().unwrap();
        // e0 = -e2, e1 = -2 e2 - e3 modulo the span
        assert_eq!(p.row(0), &[100, 99, 1, 0]);
        assert_eq!(p.row(1), &[0, 100, 0, 1]);
    }

    #[test]
    fn budget_aborts() {
        let k = PrimeField::new(101);
        let mut e = SparseEchelon::new(k, 3, Some(1));
        e.insert(vec![(0, 1), (1, 1)]).unwrap();
        assert_eq!(e.insert(vec![(0, 1), (2, 1)]), Err(BudgetExceeded));
    }
}
