//! Graded pieces of the Jacobian ring through the Macaulay inverse system.
//!
//! Identify (S^k)* with the divided-power forms D_k: X^[a] is dual to z^a,
//! and z_i acts on D by contraction, z_i ∘ X^[a] = X^[a - e_i] (zero when
//! a_i = 0). Then R^k = S^k / I_k is dual to
//!
//! ```text
//! I_k^⊥ = { φ ∈ D_k : ⟨g, φ⟩ = 0 for all g ∈ I_k }.
//! ```
//!
//! With I generated by the partials in degree d-1:
//!
//! * I_k^⊥ = D_k for k < d-1;
//! * I_{d-1}^⊥ is the common kernel of the five partials;
//! * for k ≥ d every element of I_k is Σ z_j h_j with h_j ∈ I_{k-1}, so
//!   φ ∈ I_k^⊥ iff z_j ∘ φ ∈ I_{k-1}^⊥ for every j.
//!
//! A 5-tuple (v_j) of degree-(k-1) forms equals (z_j ∘ φ) for some φ ∈ D_k
//! iff z_i ∘ v_j = z_j ∘ v_i for all i < j; in divided powers this needs no
//! assumption on the characteristic. Writing v_j in a basis of I_{k-1}^⊥ and
//! the contractions of that basis in a basis of I_{k-2}^⊥, the closedness
//! conditions become a linear system of size 10·dim R^{k-2} × 5·dim R^{k-1}
//! whose kernel is I_k^⊥. Its cost is governed by dim R rather than dim S,
//! which is what makes degrees near the socle tractable.

use crate::field::Field;
use crate::matrix::Matrix;
use crate::monomial::{GradedPiece, Monomial, NVARS};
use crate::poly::TypedPoly;

struct Level<K: Field> {
    dim: usize,
    /// `contractions[i]` (dim of previous level × dim): coordinates of
    /// z_i ∘ (basis element t) in the previous level's basis. Empty at the
    /// base level.
    contractions: Vec<Matrix<K>>,
    /// Basis of I_k^⊥ as rows of divided-power coefficients over the
    /// canonical basis of S^k.
    explicit: Option<Matrix<K>>,
}

pub(crate) struct DualTower<K: Field> {
    field: K,
    /// Degree of the first stored level, d - 2.
    base: i64,
    levels: Vec<Level<K>>,
}

impl<K: Field> DualTower<K> {
    /// `partials` are the five generators, all of degree `d - 1`.
    pub(crate) fn new(field: K, d: u32, partials: &[TypedPoly<K>]) -> Self {
        assert!(d >= 2);
        let base = d as i64 - 2;
        let base_piece = GradedPiece::new(base);
        let top_piece = GradedPiece::new(base + 1);

        let base_level = Level {
            dim: base_piece.len(),
            contractions: Vec::new(),
            explicit: Some(Matrix::identity(field.clone(), base_piece.len())),
        };

        // I_{d-1}^⊥: forms annihilated by every partial.
        let mut g = Matrix::zeros(field.clone(), partials.len(), top_piece.len());
        for (i, p) in partials.iter().enumerate() {
            for (m, c) in p {
                let idx = top_piece.index_of(m).expect("partials have degree d-1");
                g.set(i, idx, c.clone());
            }
        }
        let basis = g.kernel();
        let contractions = (0..NVARS)
            .map(|i| {
                let mut a = Matrix::zeros(field.clone(), base_piece.len(), basis.rows());
                for (b, mono) in base_piece.basis().iter().enumerate() {
                    let up = top_piece.index_of(&mono.mul_var(i)).expect("degree d-1");
                    for t in 0..basis.rows() {
                        a.set(b, t, basis.get(t, up).clone());
                    }
                }
                a
            })
            .collect();
        let first = Level { dim: basis.rows(), contractions, explicit: Some(basis) };

        DualTower { field, base, levels: vec![base_level, first] }
    }

    pub(crate) fn top_degree(&self) -> i64 {
        self.base + self.levels.len() as i64 - 1
    }

    /// dim I_k^⊥ = dim R^k, for k ≥ d - 2.
    pub(crate) fn dim(&mut self, k: i64) -> usize {
        assert!(k >= self.base, "dual tower starts at degree {}", self.base);
        self.extend_to(k);
        self.levels[(k - self.base) as usize].dim
    }

    pub(crate) fn extend_to(&mut self, k: i64) {
        while self.top_degree() < k {
            self.push_level();
        }
    }

    fn push_level(&mut self) {
        let k = &self.field;
        let top = self.levels.len() - 1;
        let prev = &self.levels[top];
        let s = prev.dim;
        let s_prev = self.levels[top - 1].dim;
        let a = &prev.contractions;

        // Unknowns: c[j*s + l], v_j = Σ_l c[j*s + l] ψ_l.
        // Equations: z_i ∘ v_j - z_j ∘ v_i = 0 in the level below, i < j.
        let pairs: Vec<(usize, usize)> = (0..NVARS)
            .flat_map(|i| (i + 1..NVARS).map(move |j| (i, j)))
            .collect();
        let mut system = Matrix::zeros(k.clone(), pairs.len() * s_prev, NVARS * s);
        for (pi, &(i, j)) in pairs.iter().enumerate() {
            for m in 0..s_prev {
                let row = system.row_mut(pi * s_prev + m);
                for l in 0..s {
                    row[j * s + l] = a[i].get(m, l).clone();
                    row[i * s + l] = k.neg(a[j].get(m, l));
                }
            }
        }
        let solutions = if s == 0 {
            Matrix::zeros(k.clone(), 0, 0)
        } else {
            system.kernel()
        };
        let dim = solutions.rows();
        let contractions = (0..NVARS)
            .map(|j| {
                let mut block = Matrix::zeros(k.clone(), s, dim);
                for t in 0..dim {
                    for l in 0..s {
                        block.set(l, t, solutions.get(t, j * s + l).clone());
                    }
                }
                block
            })
            .collect();
        self.levels.push(Level { dim, contractions, explicit: None });
    }

    /// Explicit basis of I_k^⊥ (dim R^k × dim S^k).
    pub(crate) fn explicit(&mut self, k: i64) -> &Matrix<K> {
        self.extend_to(k);
        let idx = (k - self.base) as usize;
        if self.levels[idx].explicit.is_none() {
            self.explicit(k - 1);
            let built = self.integrate(k);
            self.levels[idx].explicit = Some(built);
        }
        self.levels[idx].explicit.as_ref().expect("just built")
    }

    /// φ_t[a] = Σ_l c_t[j·s + l] ψ_l[a - e_j], with j the first variable
    /// dividing z^a.
    fn integrate(&self, k: i64) -> Matrix<K> {
        let idx = (k - self.base) as usize;
        let level = &self.levels[idx];
        let psi = self.levels[idx - 1].explicit.as_ref().expect("lower level built");
        let piece = GradedPiece::new(k);
        let lower = GradedPiece::new(k - 1);
        let mut out = Matrix::zeros(self.field.clone(), level.dim, piece.len());
        for j in 0..NVARS {
            let (targets, sources): (Vec<usize>, Vec<usize>) = piece
                .basis()
                .iter()
                .enumerate()
                .filter(|(_, m)| first_var(m) == Some(j))
                .map(|(a, m)| (a, lower.index_of(&m.div_var(j).expect("z_j divides")).expect("degree k-1")))
                .unzip();
            if targets.is_empty() {
                continue;
            }
            let gathered = psi.select_columns(&sources);
            let coeffs = level.contractions[j].transpose();
            let block = coeffs.mul(&gathered);
            for t in 0..level.dim {
                for (col, &a) in targets.iter().enumerate() {
                    out.set(t, a, block.get(t, col).clone());
                }
            }
        }
        out
    }

    /// Complement indices (ascending) and normal-form matrix for R^k.
    ///
    /// Monomial j is in the complement iff column j of the dual basis is not
    /// in the span of the columns after it; this matches the non-leading
    /// positions of a row echelon basis of I_k.
    pub(crate) fn normal_form(&mut self, k: i64) -> (Vec<usize>, Matrix<K>) {
        let field = self.field.clone();
        let n = self.explicit(k).cols();
        let reversed: Vec<usize> = (0..n).rev().collect();
        let mut work = self.explicit(k).select_columns(&reversed);
        let pivots = field.rref(&mut work);
        let rank = pivots.len();
        work.truncate_rows(rank);
        let complement: Vec<usize> = pivots.iter().rev().map(|&p| n - 1 - p).collect();
        let mut p = Matrix::zeros(field, rank, n);
        for (out_row, src_row) in (0..rank).rev().enumerate() {
            for col in 0..n {
                p.set(out_row, col, work.get(src_row, n - 1 - col).clone());
            }
        }
        (complement, p)
    }
}

fn first_var(m: &Monomial) -> Option<usize> {
    m.exps().iter().position(|&e| e > 0)
}
