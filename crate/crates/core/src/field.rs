//! Exact scalar fields: arbitrary-precision rationals and prime fields.
//!
//! [`FieldSpec`] and [`Scalar`] are the runtime, type-erased view used by
//! polynomials and the CLI. The [`Field`] trait is the typed view used by
//! the elimination kernels; [`dispatch_field!`] bridges the two.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::echelon;
use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, Matrix};

/// Largest prime below 2^16.
pub const DEFAULT_PRIME: u32 = 65521;

/// Which exact field the computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Prime(DEFAULT_PRIME)
    }
}

impl FieldSpec {
    /// A prime field, checking that `p` is a prime that fits in 32 bits.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn modulus(&self) -> Option<u32> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.modulus().map_or(0, u64::from)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(_) => Scalar::Mod(0),
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        dispatch_field!(*self, k => k.to_scalar(&k.from_i64(v)))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod(reduce_bigint(v, *p)),
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
        }
    }

    /// Whether `s` is a canonical element of this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Prime(p), Scalar::Mod(v)) => v < p,
            (FieldSpec::Rationals, Scalar::Rational(_)) => true,
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch_field!(*self, k => k.to_scalar(&k.add(&k.from_scalar(a), &k.from_scalar(b))))
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch_field!(*self, k => k.to_scalar(&k.sub(&k.from_scalar(a), &k.from_scalar(b))))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        dispatch_field!(*self, k => k.to_scalar(&k.mul(&k.from_scalar(a), &k.from_scalar(b))))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        dispatch_field!(*self, k => k.to_scalar(&k.neg(&k.from_scalar(a))))
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(dispatch_field!(*self, k => k.to_scalar(&k.inv(&k.from_scalar(a)))))
    }

    /// Parses an integer or `a/b` into a canonical scalar of this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        parse_scalar(text, *self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let digits = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::UnknownField(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A field element; which field it belongs to is carried by the surrounding
/// [`FieldSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Canonical residue in `[0, p-1]`.
    Mod(u32),
    /// Lowest terms, positive denominator.
    Rational(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rational(q) => q.is_one(),
        }
    }

    /// True for rationals below zero; residues are never negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Mod(_) => false,
            Scalar::Rational(q) => q.is_negative(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `text` (an integer or `a/b`) into a canonical scalar of `field`.
///
/// In a prime field `a/b` means `a * b^{-1} mod p`.
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<Scalar> {
    let malformed = || Error::MalformedScalar(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (t, None),
    };
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse::<BigInt>().map_err(|_| malformed())
    };
    let a = parse_int(num)?;
    let b = match den {
        Some(d) => parse_int(d)?,
        None => BigInt::one(),
    };
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match field {
        FieldSpec::Rationals => Ok(Scalar::Rational(BigRational::new(a, b))),
        FieldSpec::Prime(p) => {
            let bm = reduce_bigint(&b, p);
            if bm == 0 {
                return Err(Error::DivisionByZero);
            }
            let k = PrimeField::new(p);
            Ok(Scalar::Mod(k.mul(&reduce_bigint(&a, p), &k.inv(&bm))))
        }
    }
}

fn reduce_bigint(v: &BigInt, p: u32) -> u32 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    u32::try_from(r).expect("residue fits in u32")
}

/// Trial division; moduli are at most 32 bits.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut i = 3u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 2;
    }
    true
}

/// Typed field arithmetic used by the elimination kernels.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Panics if `s` belongs to a different kind of field.
    fn from_scalar(&self, s: &Scalar) -> Self::Elem;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    fn wrap(m: Matrix<Self>) -> ExactMatrix;
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<Self>>;

    /// In-place reduced row echelon form with first-nonzero pivoting in
    /// column order. Pivot rows end up on top; returns the pivot columns.
    fn rref(&self, m: &mut Matrix<Self>) -> Vec<usize> {
        echelon::generic_rref(m)
    }

    /// Rank profile (pivot columns) without modifying `m`.
    fn rank_profile(&self, m: &Matrix<Self>) -> Vec<usize> {
        let mut work = m.clone();
        self.rref(&mut work)
    }

    fn matmul(&self, a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        echelon::generic_matmul(a, b)
    }
}

/// `Z/pZ` with `p < 2^32`; elements are canonical `u32` residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// `p` must already be known to be prime.
    pub fn new(p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64 % p;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1 % self.p
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in fp:{}", self.p);
        self.pow(*a, self.p as u64 - 2)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_scalar(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Mod(v) => v % self.p,
            Scalar::Rational(_) => panic!("rational scalar used in fp:{}", self.p),
        }
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Mod(*a)
    }

    fn wrap(m: Matrix<Self>) -> ExactMatrix {
        ExactMatrix::Prime(m)
    }
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<Self>> {
        match m {
            ExactMatrix::Prime(inner) => Some(inner),
            ExactMatrix::Rational(_) => None,
        }
    }

    fn rref(&self, m: &mut Matrix<Self>) -> Vec<usize> {
        echelon::prime_rref(m)
    }

    fn matmul(&self, a: &Matrix<Self>, b: &Matrix<Self>) -> Matrix<Self> {
        echelon::prime_matmul(a, b)
    }
}

/// The rationals, with `BigRational` elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero rational");
        a.recip()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(q) => q.clone(),
            Scalar::Mod(_) => panic!("residue scalar used over the rationals"),
        }
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }

    fn wrap(m: Matrix<Self>) -> ExactMatrix {
        ExactMatrix::Rational(m)
    }
    fn unwrap(m: &ExactMatrix) -> Option<&Matrix<Self>> {
        match m {
            ExactMatrix::Rational(inner) => Some(inner),
            ExactMatrix::Prime(_) => None,
        }
    }

    fn rank_profile(&self, m: &Matrix<Self>) -> Vec<usize> {
        echelon::bareiss_rank_profile(m)
    }
}

/// Runs `$body` with `$k` bound to the typed field behind a [`FieldSpec`].
#[macro_export]
macro_rules! dispatch_field {
    ($spec:expr, $k:ident => $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Prime(p) => {
                let $k = $crate::field::PrimeField::new(p);
                $body
            }
            $crate::field::FieldSpec::Rationals => {
                let $k = $crate::field::RationalField;
                $body
            }
        }
    };
}
pub use dispatch_field;
