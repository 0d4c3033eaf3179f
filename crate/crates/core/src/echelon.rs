//! Elimination kernels behind [`Field::rref`] and [`Field::rank_profile`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::field::{Field, PrimeField, RationalField};
use crate::matrix::Matrix;

/// Gauss-Jordan elimination over any field.
pub(crate) fn generic_rref<K: Field>(m: &mut Matrix<K>) -> Vec<usize> {
    let field = m.field().clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(i, r);
        let inv = field.inv(m.get(r, c));
        for j in c..cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<K::Elem> = m.row(r)[c..].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if field.is_zero(&f) {
                continue;
            }
            let row = &mut m.row_mut(i)[c..];
            for (a, b) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(b) {
                    *a = field.sub(a, &field.mul(&f, b));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Number of unreduced `(p-1)^2` products a `u64` accumulator can absorb on
/// top of a value below `p`.
fn lazy_budget(p: u64) -> u64 {
    (u64::MAX - p).checked_div((p - 1) * (p - 1)).unwrap_or(u64::MAX)
}

/// Gauss-Jordan over `Z/pZ` with lazily reduced `u64` accumulators.
pub(crate) fn prime_rref(m: &mut Matrix<PrimeField>) -> Vec<usize> {
    let field = *m.field();
    let p = field.modulus() as u64;
    let (rows, cols) = (m.rows(), m.cols());
    let budget = lazy_budget(p);
    let mut work: Vec<u64> = m.data().iter().map(|&v| v as u64).collect();
    let mut pending = vec![0u64; rows];
    let mut pivot_row = vec![0u32; cols];
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = None;
        for i in r..rows {
            let v = &mut work[i * cols + c];
            *v %= p;
            if *v != 0 {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        if i != r {
            let (head, tail) = work.split_at_mut(i * cols);
            head[r * cols..(r + 1) * cols].swap_with_slice(&mut tail[..cols]);
            pending.swap(i, r);
        }
        let inv = field.inv(&(work[r * cols + c] as u32)) as u64;
        for j in c..cols {
            let v = (work[r * cols + j] % p) * inv % p;
            work[r * cols + j] = v;
            pivot_row[j] = v as u32;
        }
        pending[r] = 0;
        for i in 0..rows {
            if i == r {
                continue;
            }
            let row = &mut work[i * cols..(i + 1) * cols];
            let f = row[c] % p;
            row[c] = 0;
            if f == 0 {
                continue;
            }
            if pending[i] >= budget {
                for v in row[c + 1..].iter_mut() {
                    *v %= p;
                }
                pending[i] = 0;
            }
            let f = (p - f) as u32 as u64;
            for (a, &b) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                *a += f * b as u64;
            }
            pending[i] += 1;
        }
        pivots.push(c);
        r += 1;
    }
    for (dst, v) in m.data_mut().iter_mut().zip(work) {
        *dst = (v % p) as u32;
    }
    pivots
}

pub(crate) fn generic_matmul<K: Field>(a: &Matrix<K>, b: &Matrix<K>) -> Matrix<K> {
    let field = a.field().clone();
    let mut out = Matrix::zeros(field.clone(), a.rows(), b.cols());
    for i in 0..a.rows() {
        for l in 0..a.cols() {
            let x = a.get(i, l);
            if field.is_zero(x) {
                continue;
            }
            let brow = b.row(l);
            let orow = out.row_mut(i);
            for (o, y) in orow.iter_mut().zip(brow) {
                if !field.is_zero(y) {
                    *o = field.add(o, &field.mul(x, y));
                }
            }
        }
    }
    out
}

pub(crate) fn prime_matmul(a: &Matrix<PrimeField>, b: &Matrix<PrimeField>) -> Matrix<PrimeField> {
    let field = *a.field();
    let p = field.modulus() as u64;
    let budget = lazy_budget(p);
    let n = b.cols();
    let mut out = Matrix::zeros(field, a.rows(), n);
    let mut acc = vec![0u64; n];
    for i in 0..a.rows() {
        acc.iter_mut().for_each(|v| *v = 0);
        let mut pending = 0u64;
        for (l, &x) in a.row(i).iter().enumerate() {
            if x == 0 {
                continue;
            }
            if pending >= budget {
                acc.iter_mut().for_each(|v| *v %= p);
                pending = 0;
            }
            let x = x as u64;
            for (o, &y) in acc.iter_mut().zip(b.row(l)) {
                *o += x * y as u64;
            }
            pending += 1;
        }
        for (dst, v) in out.row_mut(i).iter_mut().zip(&acc) {
            *dst = (v % p) as u32;
        }
    }
    out
}

/// Fraction-free elimination: each row is scaled to integers, then Bareiss
/// elimination with exact divisions by the previous pivot.
pub(crate) fn bareiss_rank_profile(m: &Matrix<RationalField>) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
        })
        .collect();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(i, r);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let f = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn prime_from(rows: &[Vec<i64>], p: u32) -> Matrix<PrimeField> {
        let k = PrimeField::new(p);
        let cols = rows[0].len();
        let data = rows.iter().flatten().map(|&v| k.from_i64(v)).collect();
        Matrix::from_vec(k, rows.len(), cols, data)
    }

    #[test]
    fn prime_rref_matches_generic() {
        let rows = vec![
            vec![2, 4, 1, 7, 0],
            vec![1, 2, 0, 3, 5],
            vec![3, 6, 1, 10, 5],
            vec![0, 0, 4, 1, 1],
        ];
        for p in [7u32, 65521, 4294967291] {
            let mut fast = prime_from(&rows, p);
            let mut slow = fast.clone();
            let pf = prime_rref(&mut fast);
            let ps = generic_rref(&mut slow);
            assert_eq!(pf, ps);
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn lazy_accumulators_survive_many_updates() {
        // Large prime: only a handful of lazy updates fit in a u64.
        let p = 4294967291u32;
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect())
            .collect();
        let mut fast = prime_from(&rows, p);
        let mut slow = fast.clone();
        assert_eq!(prime_rref(&mut fast), generic_rref(&mut slow));
        assert_eq!(fast, slow);
    }

    #[test]
    fn bareiss_matches_gauss() {
        let rows = [
            vec![(1, 2), (3, 1), (0, 1)],
            vec![(1, 1), (6, 1), (0, 1)],
            vec![(0, 1), (0, 1), (-2, 3)],
            vec![(5, 7), (1, 1), (1, 1)],
        ];
        let data: Vec<BigRational> = rows
            .iter()
            .flatten()
            .map(|&(a, b)| BigRational::new(a.into(), b.into()))
            .collect();
        let mut m = Matrix::from_vec(RationalField, 4, 3, data);
        let fraction_free = bareiss_rank_profile(&m);
        assert_eq!(fraction_free, generic_rref(&mut m));
    }

    #[test]
    fn matmul_agrees() {
        let a = prime_from(&[vec![1, 2, 3], vec![4, 5, 6]], 65521);
        let b = prime_from(&[vec![1, 0], vec![0, 1], vec![-1, 2]], 65521);
        let fast = prime_matmul(&a, &b);
        assert_eq!(fast, generic_matmul(&a, &b));
        assert_eq!(fast, prime_from(&[vec![-2, 8], vec![-2, 17]], 65521));
    }
}
