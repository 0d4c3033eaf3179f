//! The Jacobian ring R = S / (∂F/∂z0, …, ∂F/∂z4), degree by degree.
//!
//! Each graded piece R^k is represented by a complement of the ideal piece
//! I_k inside S^k: the monomials that are not leading positions of a row
//! echelon basis of I_k (leading = first nonzero coordinate in the canonical
//! grevlex-descending order). Two routes compute the same data:
//!
//! * **direct**: sparse echelon basis of the Koszul image
//!   ⊕ S^{k-d+1} → S^k, (g_i) ↦ Σ g_i ∂F/∂z_i;
//! * **dual**: the inverse system tower of [`crate::dual`], whose cost grows
//!   with dim R^k instead of dim S^k.
//!
//! [`Route::Auto`] tries the direct route under a work budget and falls back
//! to the dual route.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::dual::DualTower;
use crate::error::{Error, Result};
use crate::field::{dispatch_field, Field, FieldSpec, Scalar};
use crate::matrix::{ExactMatrix, Matrix};
use crate::monomial::{dim_s, GradedPiece, Monomial, MonomialOrder, NVARS};
use crate::poly::{HyperPoly, TypedPoly};
use crate::sparse::SparseEchelon;

/// Work units the direct route may spend per degree under [`Route::Auto`].
const AUTO_DIRECT_BUDGET: u64 = 50_000_000;

/// How graded pieces are computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    #[default]
    Auto,
    Direct,
    Dual,
}

/// Which computation produced a [`RingPiece`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceSource {
    /// k < d - 1: no ideal generators reach this degree.
    Trivial,
    Direct,
    Dual,
}

/// A basis of R^k as a monomial complement of I_k in S^k.
#[derive(Clone, Debug)]
pub struct RingPiece {
    pub degree: i64,
    pub dim: usize,
    /// rank of the ideal piece, dim S^k - dim.
    pub ideal_rank: usize,
    /// Canonical order.
    pub complement: Vec<Monomial>,
    pub source: PieceSource,
    /// dim × dim S^k; column j holds the coordinates of the j-th basis
    /// monomial of S^k in the complement basis.
    reducer: ExactMatrix,
}

impl RingPiece {
    pub fn reducer(&self) -> &ExactMatrix {
        &self.reducer
    }

    pub fn complement_index(&self, m: &Monomial) -> Option<usize> {
        self.complement.binary_search_by(|c| m.cmp(c)).ok()
    }

    /// Coordinates in R^k of a vector of S^k (canonical basis).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let field = self.reducer.field();
        assert_eq!(v.len(), self.reducer.cols(), "vector length");
        (0..self.dim)
            .map(|r| {
                v.iter().enumerate().fold(field.zero(), |acc, (c, x)| {
                    if x.is_zero() {
                        acc
                    } else {
                        field.add(&acc, &field.mul(&self.reducer.get(r, c), x))
                    }
                })
            })
            .collect()
    }

    /// Coordinates in R^k of a degree-k polynomial.
    pub fn reduce_poly(&self, f: &HyperPoly) -> Result<Vec<Scalar>> {
        let piece = GradedPiece::new(self.degree);
        Ok(self.reduce(&f.coeff_vector(&piece)?))
    }
}

/// Evidence that F = 0 is smooth: the Hilbert function of R matches the
/// complete-intersection series up to one past the socle degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessCertificate {
    pub smooth: bool,
    /// σ = 5(d - 2)
    pub socle_degree: i64,
    /// σ + 1
    pub checked_degree: i64,
    /// dim R^k predicted for a complete intersection, k = 0..=σ+1.
    pub expected_series: Vec<usize>,
    /// dim R^k computed for F, k = 0..=σ+1.
    pub computed_series: Vec<usize>,
    pub first_mismatch: Option<i64>,
}

/// σ = 5(d - 2): five generators of degree d - 1 in five variables.
pub fn socle_degree(d: u32) -> i64 {
    NVARS as i64 * (d as i64 - 2)
}

/// Coefficient of t^k in ((1 - t^{d-1}) / (1 - t))^5.
pub fn expected_ci_dimension(d: u32, k: i64) -> usize {
    if k < 0 || d < 2 || k > socle_degree(d) {
        return 0;
    }
    let e = d as i64 - 1;
    let mut total: i64 = 0;
    let mut choose = 1i64;
    for i in 0..=NVARS as i64 {
        let term = choose * dim_s(k - i * e) as i64;
        total += if i % 2 == 0 { term } else { -term };
        choose = choose * (NVARS as i64 - i) / (i + 1);
    }
    total as usize
}

/// The five partial derivatives of F.
pub fn jacobian_generators(f: &HyperPoly) -> Result<[HyperPoly; NVARS]> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow { degree: f.degree(), min: 2 });
    }
    Ok(std::array::from_fn(|i| f.partial_derivative(i)))
}

/// Matrix of ⊕_{i} S^{k-(d-1)} → S^k, (g_i) ↦ Σ g_i ∂F/∂z_i.
///
/// Rows follow the canonical basis of S^k; columns are grouped by i, then by
/// the canonical basis of the multiplier degree.
pub fn ideal_piece(f: &HyperPoly, k: i64) -> ExactMatrix {
    ideal_piece_with_order(f, k, MonomialOrder::Grevlex)
}

pub fn ideal_piece_with_order(f: &HyperPoly, k: i64, order: MonomialOrder) -> ExactMatrix {
    let rows = GradedPiece::with_order(k, order);
    if f.degree() == 0 {
        return ExactMatrix::zeros(f.field(), rows.len(), 0);
    }
    let multipliers = GradedPiece::with_order(k - (f.degree() as i64 - 1), order);
    dispatch_field!(f.field(), field => {
        let partials: Vec<_> = (0..NVARS).map(|i| f.partial_derivative(i).typed(&field)).collect();
        let mut columns = Vec::with_capacity(NVARS * multipliers.len());
        for p in &partials {
            for g in multipliers.basis() {
                let mut col = vec![field.zero(); rows.len()];
                for (m, c) in p {
                    col[rows.index_of(&m.mul(g)).expect("degree k")] = c.clone();
                }
                columns.push(col);
            }
        }
        Field::wrap(Matrix::from_columns(field, rows.len(), &columns))
    })
}

/// R^k for F (fresh computation; use [`JacobianRing`] to share work).
pub fn ring_piece(f: &HyperPoly, k: i64) -> Result<Arc<RingPiece>> {
    Ok(JacobianRing::new(f)?.piece(k))
}

pub fn smoothness_check(f: &HyperPoly) -> Result<SmoothnessCertificate> {
    Ok(JacobianRing::new(f)?.smoothness().clone())
}

/// Matrix of the multiplication pairing R^k × R^{σ-k} → R^σ in complement
/// bases. Requires smooth F and 0 ≤ k ≤ σ.
pub fn socle_pairing(f: &HyperPoly, k: i64) -> Result<ExactMatrix> {
    JacobianRing::new(f)?.socle_pairing(k)
}

trait Engine: Send {
    fn dimension(&mut self, k: i64) -> usize;
    fn piece(&mut self, k: i64) -> Arc<RingPiece>;
}

struct RingEngine<K: Field> {
    field: K,
    d: u32,
    partials: Vec<TypedPoly<K>>,
    route: Route,
    dims: BTreeMap<i64, usize>,
    pieces: BTreeMap<i64, Arc<RingPiece>>,
    tower: Option<DualTower<K>>,
    /// Lowest degree where the budgeted direct route gave up.
    direct_gave_up: Option<i64>,
}

impl<K: Field> RingEngine<K> {
    fn new(field: K, f: &HyperPoly, route: Route) -> Self {
        let partials = (0..NVARS).map(|i| f.partial_derivative(i).typed(&field)).collect();
        RingEngine {
            field,
            d: f.degree(),
            partials,
            route,
            dims: BTreeMap::new(),
            pieces: BTreeMap::new(),
            tower: None,
            direct_gave_up: None,
        }
    }

    fn tower(&mut self) -> &mut DualTower<K> {
        if self.tower.is_none() {
            self.tower = Some(DualTower::new(self.field.clone(), self.d, &self.partials));
        }
        self.tower.as_mut().expect("just built")
    }

    fn trivial(&self, k: i64) -> bool {
        k < self.d as i64 - 1
    }

    /// Which route to use for degree k (non-trivial degrees only).
    fn use_dual(&self, k: i64) -> bool {
        match self.route {
            Route::Direct => false,
            Route::Dual => true,
            Route::Auto => {
                self.tower.as_ref().is_some_and(|t| t.top_degree() >= k)
                    || self.direct_gave_up.is_some_and(|g| k >= g)
            }
        }
    }

    fn budget(&self) -> Option<u64> {
        match self.route {
            Route::Auto => Some(AUTO_DIRECT_BUDGET),
            _ => None,
        }
    }

    fn give_up_direct(&mut self, k: i64) {
        self.direct_gave_up = Some(self.direct_gave_up.map_or(k, |g| g.min(k)));
    }

    fn echelon(&self, k: i64, budget: Option<u64>) -> Option<SparseEchelon<K>> {
        let target = GradedPiece::new(k);
        let multipliers = GradedPiece::new(k - (self.d as i64 - 1));
        let mut ech = SparseEchelon::new(self.field.clone(), target.len(), budget);
        for p in &self.partials {
            for g in multipliers.basis() {
                let mut v: Vec<(usize, K::Elem)> = p
                    .iter()
                    .map(|(m, c)| (target.index_of(&m.mul(g)).expect("degree k"), c.clone()))
                    .collect();
                v.sort_by_key(|e| e.0);
                ech.insert(v).ok()?;
                if ech.rank() == target.len() {
                    return Some(ech);
                }
            }
        }
        Some(ech)
    }

    fn direct_piece(&self, k: i64, budget: Option<u64>) -> Option<RingPiece> {
        let mut ech = self.echelon(k, budget)?;
        let reducer = ech.normal_form_matrix().ok()?;
        Some(self.assemble(k, ech.complement(), reducer, PieceSource::Direct))
    }

    fn assemble(&self, k: i64, complement: Vec<usize>, reducer: Matrix<K>, source: PieceSource) -> RingPiece {
        let basis = GradedPiece::new(k);
        let dim = complement.len();
        RingPiece {
            degree: k,
            dim,
            ideal_rank: basis.len() - dim,
            complement: complement.iter().map(|&i| *basis.monomial(i)).collect(),
            source,
            reducer: K::wrap(reducer),
        }
    }
}

impl<K: Field> Engine for RingEngine<K> {
    fn dimension(&mut self, k: i64) -> usize {
        if k < 0 {
            return 0;
        }
        if self.trivial(k) {
            return dim_s(k);
        }
        if let Some(&d) = self.dims.get(&k) {
            return d;
        }
        if let Some(p) = self.pieces.get(&k) {
            return p.dim;
        }
        let dim = if self.use_dual(k) {
            self.tower().dim(k)
        } else {
            match self.echelon(k, self.budget()) {
                Some(e) => dim_s(k) - e.rank(),
                None => {
                    self.give_up_direct(k);
                    self.tower().dim(k)
                }
            }
        };
        self.dims.insert(k, dim);
        dim
    }

    fn piece(&mut self, k: i64) -> Arc<RingPiece> {
        if let Some(p) = self.pieces.get(&k) {
            return p.clone();
        }
        let piece = if k < 0 {
            self.assemble(k, Vec::new(), Matrix::zeros(self.field.clone(), 0, 0), PieceSource::Trivial)
        } else if self.trivial(k) {
            let n = dim_s(k);
            self.assemble(k, (0..n).collect(), Matrix::identity(self.field.clone(), n), PieceSource::Trivial)
        } else {
            let direct = if self.use_dual(k) { None } else { self.direct_piece(k, self.budget()) };
            match direct {
                Some(p) => p,
                None => {
                    if self.route == Route::Auto {
                        self.give_up_direct(k);
                    }
                    let (complement, reducer) = self.tower().normal_form(k);
                    self.assemble(k, complement, reducer, PieceSource::Dual)
                }
            }
        };
        let piece = Arc::new(piece);
        self.dims.insert(k, piece.dim);
        self.pieces.insert(k, piece.clone());
        piece
    }
}

/// Jacobian ring of a hypersurface, computing and caching graded pieces on
/// demand.
pub struct JacobianRing {
    poly: HyperPoly,
    engine: Box<dyn Engine>,
    certificate: Option<SmoothnessCertificate>,
}

impl JacobianRing {
    pub fn new(f: &HyperPoly) -> Result<Self> {
        Self::with_route(f, Route::Auto)
    }

    pub fn with_route(f: &HyperPoly, route: Route) -> Result<Self> {
        if f.degree() < 2 {
            return Err(Error::DegreeTooLow { degree: f.degree(), min: 2 });
        }
        let engine: Box<dyn Engine> =
            dispatch_field!(f.field(), k => Box::new(RingEngine::new(k, f, route)) as Box<dyn Engine>);
        Ok(JacobianRing { poly: f.clone(), engine, certificate: None })
    }

    pub fn poly(&self) -> &HyperPoly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    pub fn field(&self) -> FieldSpec {
        self.poly.field()
    }

    pub fn socle_degree(&self) -> i64 {
        socle_degree(self.degree())
    }

    /// dim R^k.
    pub fn dimension(&mut self, k: i64) -> usize {
        self.engine.dimension(k)
    }

    pub fn piece(&mut self, k: i64) -> Arc<RingPiece> {
        self.engine.piece(k)
    }

    pub fn hilbert_function(&mut self, degrees: impl IntoIterator<Item = i64>) -> Vec<usize> {
        degrees.into_iter().map(|k| self.dimension(k)).collect()
    }

    pub fn smoothness(&mut self) -> &SmoothnessCertificate {
        if self.certificate.is_none() {
            let d = self.degree();
            let sigma = self.socle_degree();
            let expected: Vec<usize> = (0..=sigma + 1).map(|k| expected_ci_dimension(d, k)).collect();
            let computed = self.hilbert_function(0..=sigma + 1);
            let first_mismatch = expected
                .iter()
                .zip(&computed)
                .position(|(e, c)| e != c)
                .map(|k| k as i64);
            self.certificate = Some(SmoothnessCertificate {
                smooth: first_mismatch.is_none(),
                socle_degree: sigma,
                checked_degree: sigma + 1,
                expected_series: expected,
                computed_series: computed,
                first_mismatch,
            });
        }
        self.certificate.as_ref().expect("just built")
    }

    pub fn require_smooth(&mut self) -> Result<()> {
        match self.smoothness().first_mismatch {
            None => Ok(()),
            Some(k) => Err(Error::NotSmooth { first_bad_degree: k }),
        }
    }

    /// Coordinates in R^k of a degree-k polynomial.
    pub fn reduce(&mut self, f: &HyperPoly) -> Result<Vec<Scalar>> {
        self.piece(f.degree() as i64).reduce_poly(f)
    }

    /// See [`socle_pairing`].
    pub fn socle_pairing(&mut self, k: i64) -> Result<ExactMatrix> {
        self.require_smooth()?;
        let sigma = self.socle_degree();
        if !(0..=sigma).contains(&k) {
            return Err(Error::DegreeOutOfRange { degree: k, min: 0, max: sigma });
        }
        let left = self.piece(k);
        let right = self.piece(sigma - k);
        let top = self.piece(sigma);
        debug_assert_eq!(top.dim, 1);
        let basis = GradedPiece::new(sigma);
        let field = self.field();
        let mut entries = Vec::with_capacity(left.dim * right.dim);
        for a in &left.complement {
            for b in &right.complement {
                let idx = basis.index_of(&a.mul(b)).expect("degree σ");
                entries.push(top.reducer.get(0, idx));
            }
        }
        ExactMatrix::from_scalars(field, left.dim, right.dim, &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    const FP: FieldSpec = FieldSpec::Prime(65521);

    /// Coefficients of (1 + t + ... + t^{d-2})^5 by repeated convolution.
    fn ci_series_by_convolution(d: u32) -> Vec<usize> {
        let factor = vec![1usize; d as usize - 1];
        let mut acc = vec![1usize];
        for _ in 0..NVARS {
            let mut next = vec![0; acc.len() + factor.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in factor.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn ci_dimension_examples() {
        assert_eq!(expected_ci_dimension(6, 0), 1);
        // C(11,4) - 5 C(6,4) = 330 - 75
        assert_eq!(expected_ci_dimension(6, 7), 255);
        assert_eq!(expected_ci_dimension(6, 21), 0);
        assert_eq!(expected_ci_dimension(6, -1), 0);
        for d in 2..=8 {
            let series = ci_series_by_convolution(d);
            for k in 0..series.len() as i64 + 3 {
                let oracle = series.get(k as usize).copied().unwrap_or(0);
                assert_eq!(expected_ci_dimension(d, k), oracle, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn generators() {
        let g = jacobian_generators(&HyperPoly::fermat(FP, 6)).unwrap();
        for (i, p) in g.iter().enumerate() {
            assert_eq!(p, &parse_poly(&format!("6*z{i}^5"), FP).unwrap());
        }
        let g = jacobian_generators(&parse_poly("z0^6", FP).unwrap()).unwrap();
        assert!(g[1..].iter().all(|p| p.is_zero() && p.degree() == 5));
        let g = jacobian_generators(&parse_poly("z0*z1*z2*z3*z4", FP).unwrap()).unwrap();
        for p in &g {
            assert_eq!(p.num_terms(), 1);
            assert!(p.terms().all(|(m, c)| c.is_one() && m.exps().iter().all(|&e| e <= 1)));
        }
        assert!(jacobian_generators(&parse_poly("z0", FP).unwrap()).is_err());
    }

    #[test]
    fn ideal_piece_shapes() {
        let f = HyperPoly::fermat(FP, 6);
        let m = ideal_piece(&f, 5);
        assert_eq!((m.rows(), m.cols()), (126, 5));
        assert_eq!(m.rank(), 5);
        let s5 = GradedPiece::new(5);
        for i in 0..NVARS {
            let col = m.column(i);
            let at = s5.index_of(&Monomial::power(i, 5)).unwrap();
            assert_eq!(col[at], Scalar::Mod(6));
            assert_eq!(col.iter().filter(|s| !s.is_zero()).count(), 1);
        }
        let empty = ideal_piece(&f, 3);
        assert_eq!((empty.rows(), empty.cols()), (35, 0));
    }

    #[test]
    fn fermat_pieces() {
        let f = HyperPoly::fermat(FP, 6);
        let mut ring = JacobianRing::new(&f).unwrap();
        let r1 = ring.piece(1);
        assert_eq!(r1.dim, 5);
        assert_eq!(r1.complement, GradedPiece::new(1).basis());
        let r7 = ring.piece(7);
        assert_eq!(r7.dim, 255);
        assert!(r7.complement.iter().all(|m| m.exps().iter().all(|&e| e <= 4)));
        assert!(ring.piece(-2).complement.is_empty());
    }

    #[test]
    fn non_smooth_power() {
        let f = parse_poly("z0^6", FP).unwrap();
        let cert = smoothness_check(&f).unwrap();
        assert!(!cert.smooth);
        assert_eq!(cert.first_mismatch, Some(5));
        assert_eq!(socle_pairing(&f, 0), Err(Error::NotSmooth { first_bad_degree: 5 }));
    }

    #[test]
    fn pairing_range_is_checked() {
        let f = HyperPoly::fermat(FP, 3);
        assert!(matches!(socle_pairing(&f, 6), Err(Error::DegreeOutOfRange { .. })));
        assert!(matches!(socle_pairing(&f, -1), Err(Error::DegreeOutOfRange { .. })));
    }
}
