//! Homogeneous polynomials in z0..z4: parsing, printing, differentiation and
//! multiplication.
//!
//! Text grammar (whitespace is ignored):
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff '*'] factor ('*' factor)* | coeff
//! factor := 'z' digit ['^' exponent]
//! coeff  := integer | integer '/' integer
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};
use crate::monomial::{GradedPiece, Monomial, NVARS};

/// A homogeneous polynomial of a fixed degree over an exact field.
///
/// The zero polynomial keeps the degree it was built with, so derivatives
/// and products of zero stay correctly graded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperPoly {
    degree: u32,
    terms: BTreeMap<Monomial, Scalar>,
    field: FieldSpec,
}

impl HyperPoly {
    pub fn zero(field: FieldSpec, degree: u32) -> Self {
        HyperPoly { degree, terms: BTreeMap::new(), field }
    }

    /// Sums the given terms; zero coefficients are dropped and repeated
    /// monomials combined.
    pub fn from_terms<I>(field: FieldSpec, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut poly = HyperPoly::zero(field, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::Inhomogeneous { expected: degree, found: m.degree() });
            }
            if !field.contains(&c) {
                return Err(Error::FieldMismatch { left: field.to_string(), right: format!("{c:?}") });
            }
            poly.add_term(m, c);
        }
        Ok(poly)
    }

    /// A single monomial with coefficient 1.
    pub fn monomial(field: FieldSpec, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, field.one());
        HyperPoly { degree: m.degree(), terms, field }
    }

    /// z0^d + z1^d + z2^d + z3^d + z4^d
    pub fn fermat(field: FieldSpec, d: u16) -> Self {
        let terms = (0..NVARS).map(|i| (Monomial::power(i, d), field.one()));
        HyperPoly::from_terms(field, d as u32, terms).expect("homogeneous by construction")
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let field = self.field;
        match self.terms.remove(&m) {
            Some(old) => {
                let sum = field.add(&old, &c);
                if !sum.is_zero() {
                    self.terms.insert(m, sum);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Terms in canonical (grevlex-descending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    /// Support monomials in canonical order.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().rev().copied().collect()
    }

    /// ∂/∂z_var; coefficients are multiplied by the exponent.
    pub fn partial_derivative(&self, var: usize) -> HyperPoly {
        assert!(var < NVARS, "variable index {var} out of range");
        let mut out = HyperPoly::zero(self.field, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            if let Some(q) = m.div_var(var) {
                let e = self.field.from_i64(m.exps()[var] as i64);
                out.add_term(q, self.field.mul(c, &e));
            }
        }
        out
    }

    /// Product with a monomial.
    pub fn multiply(&self, m: &Monomial) -> HyperPoly {
        HyperPoly {
            degree: self.degree + m.degree(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
            field: self.field,
        }
    }

    pub fn scale(&self, s: &Scalar) -> HyperPoly {
        let mut out = HyperPoly::zero(self.field, self.degree);
        for (m, c) in &self.terms {
            out.add_term(*m, self.field.mul(c, s));
        }
        out
    }

    pub fn add(&self, other: &HyperPoly) -> Result<HyperPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HyperPoly) -> Result<HyperPoly> {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    fn check_compatible(&self, other: &HyperPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.to_string(), right: other.field.to_string() });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree as i64, found: other.degree as i64 });
        }
        Ok(())
    }

    /// Coordinates in the basis of `piece`.
    pub fn coeff_vector(&self, piece: &GradedPiece) -> Result<Vec<Scalar>> {
        self.check_piece(piece)?;
        let mut v = vec![self.field.zero(); piece.len()];
        for (m, c) in &self.terms {
            v[piece.index_of(m).expect("monomial of matching degree")] = c.clone();
        }
        Ok(v)
    }

    fn check_piece(&self, piece: &GradedPiece) -> Result<()> {
        if !self.is_zero() && piece.degree() != self.degree as i64 {
            return Err(Error::DegreeMismatch { expected: piece.degree(), found: self.degree as i64 });
        }
        Ok(())
    }

    /// Reinterprets the coefficients in another field (integers and
    /// fractions reduce mod p; residues lift to their representatives).
    pub fn convert(&self, field: FieldSpec) -> Result<HyperPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((*m, parse_coeff_in(c, field)?)))
            .collect::<Result<Vec<_>>>()?;
        HyperPoly::from_terms(field, self.degree, terms)
    }
}

fn parse_coeff_in(c: &Scalar, field: FieldSpec) -> Result<Scalar> {
    field.parse_scalar(&c.to_string())
}

/// Sparse typed polynomial used internally by the ring engines.
pub(crate) type TypedPoly<K> = Vec<(Monomial, <K as Field>::Elem)>;

impl HyperPoly {
    pub(crate) fn typed<K: Field>(&self, field: &K) -> TypedPoly<K> {
        self.terms().map(|(m, c)| (*m, field.from_scalar(c))).collect()
    }
}

impl fmt::Display for HyperPoly {
    /// Canonical form: grevlex-descending terms, explicit `*`, no `^1`, and
    /// no unit coefficients except on a bare constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let magnitude = if negative { self.field.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parses a homogeneous polynomial in z0..z4.
pub fn parse_poly(text: &str, field: FieldSpec) -> Result<HyperPoly> {
    Parser::new(text, field).parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, field: FieldSpec) -> Self {
        Parser { src: text.as_bytes(), pos: 0, field }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn parse(mut self) -> Result<HyperPoly> {
        let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            Some(_) => false,
            None => return Err(self.err("empty polynomial")),
        };
        loop {
            let (m, mut c) = self.term()?;
            if negative {
                c = self.field.neg(&c);
            }
            if let Some((first, _)) = terms.first() {
                if first.degree() != m.degree() {
                    return Err(Error::Inhomogeneous { expected: first.degree(), found: m.degree() });
                }
            }
            terms.push((m, c));
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(other) => return Err(self.err(format!("unexpected `{}`", other as char))),
            }
            self.pos += 1;
        }
        let degree = terms[0].0.degree();
        HyperPoly::from_terms(self.field, degree, terms)
    }

    fn term(&mut self) -> Result<(Monomial, Scalar)> {
        let mut coeff = self.field.one();
        let mut mono = Monomial::ONE;
        let mut first = true;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() && first => {
                    coeff = self.coefficient()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let (var, e) = self.factor()?;
                    mono = mono.mul(&Monomial::power(var, e));
                }
                Some(c) if c.is_ascii_digit() => {
                    return Err(self.err("coefficient must come first in a term"));
                }
                _ => return Err(self.err("expected a coefficient or a variable")),
            }
            first = false;
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }

    fn coefficient(&mut self) -> Result<Scalar> {
        let num = self.digits();
        let text = if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits();
            format!("{num}/{den}")
        } else {
            num.to_string()
        };
        self.field.parse_scalar(&text)
    }

    fn factor(&mut self) -> Result<(usize, u16)> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let var = match name.as_bytes() {
            [b'z', d] if (b'0'..b'0' + NVARS as u8).contains(d) => (d - b'0') as usize,
            _ => return Err(Error::UnknownVariable(name.to_string())),
        };
        if self.peek() != Some(b'^') {
            return Ok((var, 1));
        }
        self.pos += 1;
        self.skip_ws();
        let exp_start = self.pos;
        let digits = self.digits();
        let bad_exponent = |p: &Self| {
            let mut end = p.pos;
            while end < p.src.len() && !b"+-*".contains(&p.src[end]) && !p.src[end].is_ascii_whitespace() {
                end += 1;
            }
            Error::MalformedExponent(String::from_utf8_lossy(&p.src[exp_start..end]).into_owned())
        };
        if digits.is_empty() {
            return Err(bad_exponent(self));
        }
        let e: u16 = digits.parse().map_err(|_| bad_exponent(self))?;
        if self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'/') {
            return Err(bad_exponent(self));
        }
        Ok((var, e))
    }
}
