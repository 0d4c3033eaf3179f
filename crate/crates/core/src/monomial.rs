//! Monomials in z0..z4 and graded bases of S^k.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Number of homogeneous coordinates of P^4.
pub const NVARS: usize = 5;

/// Exponent vector of a monomial in z0..z4.
///
/// `Ord` is graded reverse lexicographic: higher degree is larger; within a
/// degree, the monomial with the smaller exponent in the last variable where
/// the two differ is larger. Canonical listings are descending.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; NVARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; NVARS] };

    pub fn new(exps: [u16; NVARS]) -> Self {
        Monomial { exps }
    }

    /// z_i
    pub fn var(i: usize) -> Self {
        let mut exps = [0; NVARS];
        exps[i] = 1;
        Monomial { exps }
    }

    /// z_i^e
    pub fn power(i: usize, e: u16) -> Self {
        let mut exps = [0; NVARS];
        exps[i] = e;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        Monomial { exps }
    }

    /// The monomial divided by z_i, if z_i divides it.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        let mut exps = self.exps;
        exps[i] = exps[i].checked_sub(1)?;
        Some(Monomial { exps })
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps;
        exps[i] += 1;
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps).all(|(a, b)| *a <= b)
    }

    /// Lexicographic comparison (z0 > z1 > ... > z4) after degree.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..NVARS).rev() {
                match self.exps[i].cmp(&other.exps[i]) {
                    Ordering::Equal => continue,
                    ord => return ord.reverse(),
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    /// `z0^2*z3`, or `1` for the unit monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "z{i}")?;
            } else {
                write!(f, "z{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{:?}", self.exps)
    }
}

/// Order used to list graded bases.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

/// All exponent vectors of `nvars` variables with sum `k`.
pub fn exponent_vectors(nvars: usize, k: u32) -> Vec<Vec<u16>> {
    fn rec(remaining: u32, slots: usize, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if slots == 1 {
            prefix.push(remaining as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e as u16);
            rec(remaining - e, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(k, nvars, &mut Vec::with_capacity(nvars), &mut out);
    } else if k == 0 {
        out.push(Vec::new());
    }
    out
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// dim S^k = C(k+4, 4); zero for negative k.
pub fn dim_s(k: i64) -> usize {
    if k < 0 {
        0
    } else {
        binomial(k as u64 + NVARS as u64 - 1, NVARS as u64 - 1) as usize
    }
}

/// Ordered basis of S^k.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    degree: i64,
    order: MonomialOrder,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPiece {
    pub fn new(degree: i64) -> Self {
        Self::with_order(degree, MonomialOrder::Grevlex)
    }

    pub fn with_order(degree: i64, order: MonomialOrder) -> Self {
        let mut basis: Vec<Monomial> = if degree < 0 {
            Vec::new()
        } else {
            exponent_vectors(NVARS, degree as u32)
                .into_iter()
                .map(|v| Monomial::new(v.try_into().expect("five exponents")))
                .collect()
        };
        match order {
            MonomialOrder::Grevlex => basis.sort_by(|a, b| b.cmp(a)),
            MonomialOrder::Lex => basis.sort_by(|a, b| b.cmp_lex(a)),
        }
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        GradedPiece { degree, order, basis, index }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.basis[i]
    }
}

/// The canonical (grevlex-descending) basis of S^k; empty for `k < 0`.
pub fn enumerate_monomials(k: i64) -> GradedPiece {
    GradedPiece::new(k)
}
