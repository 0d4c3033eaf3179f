//! Seeded random hypersurfaces.

use std::fmt;
use std::str::FromStr;

use jacring::{enumerate_monomials, FieldSpec, HyperPoly, Monomial, Scalar};
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, Result};

/// Largest absolute value of a random rational coefficient.
pub const RATIONAL_COEFF_BOUND: i64 = 1000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Support {
    /// Every monomial of S^d.
    #[default]
    Full,
    /// z0^d + ... + z4^d, coefficients all 1.
    Fermat,
    /// K distinct monomials chosen uniformly.
    Sparse(usize),
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Support::Full => write!(f, "full"),
            Support::Fermat => write!(f, "fermat"),
            Support::Sparse(k) => write!(f, "sparse:{k}"),
        }
    }
}

impl FromStr for Support {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Support::Full),
            "fermat" => Ok(Support::Fermat),
            _ => s
                .strip_prefix("sparse:")
                .and_then(|k| k.parse().ok())
                .map(Support::Sparse)
                .ok_or_else(|| CliError::Usage(format!("unknown support `{s}` (expected full, fermat or sparse:<K>)"))),
        }
    }
}

/// Uniform in [1, p-1] over F_p; nonzero integers in ±[1, 1000] over Q.
fn coefficient(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        FieldSpec::Prime(p) => Scalar::Mod(rng.gen_range(1..p)),
        FieldSpec::Rationals => {
            let v = rng.gen_range(1..=RATIONAL_COEFF_BOUND);
            field.from_i64(if rng.gen::<bool>() { v } else { -v })
        }
    }
}

pub fn random_hypersurface(field: FieldSpec, d: u32, support: Support, seed: u64) -> Result<HyperPoly> {
    if d == 0 || d > 64 {
        return Err(CliError::Usage(format!("--d must be in 1..=64, got {d}")));
    }
    let piece = enumerate_monomials(d as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<Monomial> = match support {
        Support::Fermat => return Ok(HyperPoly::fermat(field, d as u16)),
        Support::Full => piece.basis().to_vec(),
        Support::Sparse(k) => {
            if k == 0 || k > piece.len() {
                return Err(CliError::Usage(format!("sparse:{k} needs 1..={} monomials in degree {d}", piece.len())));
            }
            let mut picks = index::sample(&mut rng, piece.len(), k).into_vec();
            picks.sort_unstable();
            picks.into_iter().map(|i| *piece.monomial(i)).collect()
        }
    };
    let terms: Vec<(Monomial, Scalar)> = chosen.into_iter().map(|m| (m, coefficient(field, &mut rng))).collect();
    Ok(HyperPoly::from_terms(field, d, terms)?)
}
