//! Exact computations in the Jacobian ring of a hypersurface in P^4 and the
//! rank of the infinitesimal Abel-Jacobi multiplication map.
//!
//! Everything is exact: either over Q with arbitrary-precision rationals or
//! over a prime field F_p.

pub mod aj;
mod dual;
mod echelon;
pub mod error;
pub mod field;
pub mod jacobian;
pub mod matrix;
pub mod monomial;
pub mod poly;
mod sparse;

pub use aj::{
    aj_image_dimension, aj_image_dimension_in, coefficient_span, euler_characteristic,
    green_shortcut_applies, hodge_numbers, hodge_numbers_in, multiplication_map,
    multiplication_map_in, multiplication_map_shifted, AJReport, HodgeNumbers, WSpace,
};
pub use error::{Error, Result};
pub use field::{parse_scalar, Field, FieldSpec, PrimeField, RationalField, Scalar, DEFAULT_PRIME};
pub use jacobian::{
    expected_ci_dimension, ideal_piece, ideal_piece_with_order, jacobian_generators, ring_piece,
    smoothness_check, socle_degree, socle_pairing, JacobianRing, PieceSource, RingPiece, Route,
    SmoothnessCertificate,
};
pub use matrix::{rank_transpose_agrees, reduce, transpose, ExactMatrix, Matrix, ReductionResult};
pub use monomial::{dim_s, enumerate_monomials, GradedPiece, Monomial, MonomialOrder, NVARS};
pub use poly::{parse_poly, HyperPoly};
