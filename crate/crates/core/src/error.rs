use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar `{0}`")]
    MalformedScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus {0}: expected a prime in 2..2^32")]
    InvalidModulus(u64),
    #[error("unknown field `{0}` (expected `q` or `fp:<prime>`)")]
    UnknownField(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}` (expected z0..z4)")]
    UnknownVariable(String),
    #[error("malformed exponent `{0}`")]
    MalformedExponent(String),
    #[error("inhomogeneous polynomial: term of degree {found} in a polynomial of degree {expected}")]
    Inhomogeneous { expected: u32, found: u32 },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i64, found: i64 },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("hypersurface is not smooth: Jacobian ring departs from the complete-intersection series at degree {first_bad_degree}")]
    NotSmooth { first_bad_degree: i64 },
    #[error("degree {degree} is below the required minimum {min}")]
    DegreeTooLow { degree: u32, min: u32 },
    #[error("degree {degree} outside the admissible range {min}..={max}")]
    DegreeOutOfRange { degree: i64, min: i64, max: i64 },
}

impl Error {
    /// Input could not be read as a scalar, field or polynomial.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::MalformedScalar(_)
                | Error::DivisionByZero
                | Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::MalformedExponent(_)
                | Error::Inhomogeneous { .. }
                | Error::ZeroPolynomial
        )
    }

    /// Well-formed input that fails a mathematical precondition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotSmooth { .. }
                | Error::DegreeTooLow { .. }
                | Error::DegreeOutOfRange { .. }
                | Error::DegreeMismatch { .. }
        )
    }
}
