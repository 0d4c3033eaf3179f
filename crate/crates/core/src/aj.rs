//! The multiplication map W ⊗ R^{d-5} → R^{2d-5} and the dimension of its
//! cokernel, which is the image of the infinitesimal Abel-Jacobi map on the
//! primitive part.
//!
//! Residue dictionary for a smooth threefold X = {F = 0} ⊂ P^4:
//! H^{3,0} ↔ R^{d-5} and H^{2,1}_prim ↔ R^{2d-5}.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{dispatch_field, Field, FieldSpec};
use crate::jacobian::{JacobianRing, SmoothnessCertificate};
use crate::matrix::{ExactMatrix, Matrix};
use crate::monomial::{dim_s, GradedPiece, Monomial};
use crate::poly::HyperPoly;

/// A subspace W of S^d given by spanning polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct WSpace {
    ambient_degree: u32,
    field: FieldSpec,
    basis: Vec<HyperPoly>,
    rank: usize,
}

impl WSpace {
    /// Span of `polys`; each must be homogeneous of degree `d` over `field`.
    /// Linearly dependent input is allowed.
    pub fn from_polys(field: FieldSpec, d: u32, polys: Vec<HyperPoly>) -> Result<Self> {
        let piece = GradedPiece::new(d as i64);
        let mut entries = Vec::with_capacity(polys.len() * piece.len());
        for p in &polys {
            if p.field() != field {
                return Err(Error::FieldMismatch { left: field.to_string(), right: p.field().to_string() });
            }
            if p.degree() != d {
                return Err(Error::DegreeMismatch { expected: d as i64, found: p.degree() as i64 });
            }
            entries.extend(p.coeff_vector(&piece)?);
        }
        let rank = ExactMatrix::from_scalars(field, polys.len(), piece.len(), &entries)?.rank();
        Ok(WSpace { ambient_degree: d, field, basis: polys, rank })
    }

    pub fn ambient_degree(&self) -> u32 {
        self.ambient_degree
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn basis(&self) -> &[HyperPoly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.rank
    }

    /// dim S^d - dim W.
    pub fn codim(&self) -> usize {
        dim_s(self.ambient_degree as i64) - self.rank
    }

    /// W plus extra spanning polynomials.
    pub fn extended(&self, more: impl IntoIterator<Item = HyperPoly>) -> Result<Self> {
        let mut polys = self.basis.clone();
        polys.extend(more);
        WSpace::from_polys(self.field, self.ambient_degree, polys)
    }
}

/// W for a concrete F: the span of its support monomials.
///
/// When the coefficients of F are algebraically independent, differentiating
/// F along derivations of the coefficient field moves each coefficient
/// independently, and the derivatives span exactly these monomials.
pub fn coefficient_span(f: &HyperPoly) -> Result<WSpace> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let polys = f.support().into_iter().map(|m| HyperPoly::monomial(f.field(), m)).collect();
    WSpace::from_polys(f.field(), f.degree(), polys)
}

/// Codimension-zero criterion: W = S^d forces W ⊗ S^{d-5} → S^{2d-5}, and
/// hence W ⊗ R^{d-5} → R^{2d-5}, to be onto. Only meaningful for d ≥ 6.
pub fn green_shortcut_applies(w: &WSpace, d: u32) -> bool {
    d >= 6 && w.codim() == 0
}

/// Matrix of W ⊗ R^{d-5} → R^{2d-5}; see [`multiplication_map_shifted`].
pub fn multiplication_map(w: &WSpace, f: &HyperPoly) -> Result<ExactMatrix> {
    if f.degree() < 5 {
        return Err(Error::DegreeTooLow { degree: f.degree(), min: 5 });
    }
    let mut ring = JacobianRing::new(f)?;
    multiplication_map_in(&mut ring, w, f.degree() as i64 - 5)
}

/// Matrix of W ⊗ R^a → R^{deg W + a}. Any degree of F is accepted.
pub fn multiplication_map_shifted(w: &WSpace, f: &HyperPoly, a: i64) -> Result<ExactMatrix> {
    let mut ring = JacobianRing::new(f)?;
    multiplication_map_in(&mut ring, w, a)
}

/// Rows: complement basis of the target piece. Columns: pairs (w, m), w
/// over the spanning set of W and m over the complement basis of R^a, w
/// major. Each column is the class of w·m.
pub fn multiplication_map_in(ring: &mut JacobianRing, w: &WSpace, a: i64) -> Result<ExactMatrix> {
    if w.field() != ring.field() {
        return Err(Error::FieldMismatch { left: ring.field().to_string(), right: w.field().to_string() });
    }
    if a < 0 {
        return Err(Error::DegreeOutOfRange { degree: a, min: 0, max: i64::MAX });
    }
    ring.require_smooth()?;
    let source = ring.piece(a);
    let target_degree = w.ambient_degree() as i64 + a;
    let target = ring.piece(target_degree);
    let basis = GradedPiece::new(target_degree);
    Ok(dispatch_field!(ring.field(), k => {
        assemble_map(&k, w, &source.complement, target.reducer(), target.dim, &basis)
    }))
}

fn assemble_map<K: Field>(
    k: &K,
    w: &WSpace,
    source: &[Monomial],
    reducer: &ExactMatrix,
    rows: usize,
    basis: &GradedPiece,
) -> ExactMatrix {
    let p = K::unwrap(reducer).expect("reducer over the ring's field");
    let mut columns = Vec::with_capacity(w.basis().len() * source.len());
    for wp in w.basis() {
        let typed = wp.typed(k);
        for m in source {
            let mut col = vec![k.zero(); rows];
            for (t, c) in &typed {
                let j = basis.index_of(&t.mul(m)).expect("target degree");
                for (r, out) in col.iter_mut().enumerate() {
                    let x = p.get(r, j);
                    if !k.is_zero(x) {
                        *out = k.add(out, &k.mul(c, x));
                    }
                }
            }
            columns.push(col);
        }
    }
    K::wrap(Matrix::from_columns(k.clone(), rows, &columns))
}

/// Hodge numbers of a smooth threefold hypersurface via residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeNumbers {
    /// dim R^{d-5}
    pub h30: usize,
    /// dim R^{2d-5}
    pub h21: usize,
}

impl HodgeNumbers {
    /// 2 + 2 h^{1,1} - b_3 with h^{1,1} = 1 and b_3 = 2(h30 + h21).
    pub fn euler_characteristic(&self) -> i64 {
        4 - 2 * (self.h30 + self.h21) as i64
    }
}

/// χ of a smooth degree-d hypersurface in P^4: d(10 - 10d + 5d² - d³).
pub fn euler_characteristic(d: u32) -> i64 {
    let d = d as i64;
    d * (10 - 10 * d + 5 * d * d - d * d * d)
}

pub fn hodge_numbers(f: &HyperPoly) -> Result<HodgeNumbers> {
    hodge_numbers_in(&mut JacobianRing::new(f)?)
}

pub fn hodge_numbers_in(ring: &mut JacobianRing) -> Result<HodgeNumbers> {
    ring.require_smooth()?;
    let d = ring.degree() as i64;
    Ok(HodgeNumbers { h30: ring.dimension(d - 5), h21: ring.dimension(2 * d - 5) })
}

/// Everything computed for one hypersurface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AJReport {
    pub d: u32,
    pub field: FieldSpec,
    pub smooth: SmoothnessCertificate,
    pub h30: usize,
    pub h21: usize,
    pub w_dim: usize,
    pub w_codim: usize,
    pub mu_rows: usize,
    pub mu_cols: usize,
    pub mu_rank: usize,
    /// dim R^{2d-5} - mu_rank: the primitive part of the image.
    pub aj_image_dim: usize,
    pub surjective: bool,
    pub shortcut_applies: bool,
    /// Present when the shortcut applies: whether the explicit rank agrees.
    pub shortcut_consistent: Option<bool>,
    /// d ≥ 6.
    pub degree_hypothesis_met: bool,
}

/// dim of the image of the infinitesimal Abel-Jacobi map, computed as the
/// cokernel dimension of W ⊗ R^{d-5} → R^{2d-5}. W defaults to
/// [`coefficient_span`].
pub fn aj_image_dimension(f: &HyperPoly, w: Option<&WSpace>) -> Result<AJReport> {
    aj_image_dimension_in(&mut JacobianRing::new(f)?, w)
}

pub fn aj_image_dimension_in(ring: &mut JacobianRing, w: Option<&WSpace>) -> Result<AJReport> {
    let d = ring.degree();
    if d < 5 {
        return Err(Error::DegreeTooLow { degree: d, min: 5 });
    }
    ring.require_smooth()?;
    let default_w;
    let w = match w {
        Some(w) => w,
        None => {
            default_w = coefficient_span(ring.poly())?;
            &default_w
        }
    };
    if w.ambient_degree() != d {
        return Err(Error::DegreeMismatch { expected: d as i64, found: w.ambient_degree() as i64 });
    }
    let hodge = hodge_numbers_in(ring)?;
    let mu = multiplication_map_in(ring, w, d as i64 - 5)?;
    let mu_rank = mu.rank();
    let aj_image_dim = hodge.h21 - mu_rank;
    let shortcut_applies = green_shortcut_applies(w, d);
    Ok(AJReport {
        d,
        field: ring.field(),
        smooth: ring.smoothness().clone(),
        h30: hodge.h30,
        h21: hodge.h21,
        w_dim: w.dim(),
        w_codim: w.codim(),
        mu_rows: mu.rows(),
        mu_cols: mu.cols(),
        mu_rank,
        aj_image_dim,
        surjective: aj_image_dim == 0,
        shortcut_applies,
        shortcut_consistent: shortcut_applies.then_some(aj_image_dim == 0),
        degree_hypothesis_met: d >= 6,
    })
}
