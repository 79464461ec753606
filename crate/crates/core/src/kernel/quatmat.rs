//! Matrices over ℝ, ℂ or ℍ, stored with quaternion entries.
//!
//! The three rings share one representation: real scalars occupy the `w`
//! component, complex scalars `w,x`. Real embeddings map a scalar `q` to its
//! left-multiplication block, so `embed` is a *-homomorphism and embeddings
//! of Hermitian matrices are symmetric.

use serde::{Deserialize, Serialize};

use crate::tol::Tolerances;

use super::quaternion::{Q_I, Q_J, Q_K, Q_ONE, Q_ZERO};
use super::{DenseMatrix, Quaternion};

/// Coefficient ring of a matrix algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl Ring {
    /// Real dimension of the ring; also the block size of its real embedding.
    pub fn factor(self) -> usize {
        match self {
            Ring::Real => 1,
            Ring::Complex => 2,
            Ring::Quaternion => 4,
        }
    }

    /// Orthonormal real basis of the ring inside ℍ.
    pub fn units(self) -> &'static [Quaternion] {
        match self {
            Ring::Real => &[Q_ONE],
            Ring::Complex => &[Q_ONE, Q_I],
            Ring::Quaternion => &[Q_ONE, Q_I, Q_J, Q_K],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Ring::Real => "R",
            Ring::Complex => "C",
            Ring::Quaternion => "H",
        }
    }
}

/// Dense matrix with quaternion entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct QuatMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Quaternion>,
}

impl QuatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QuatMatrix { rows, cols, data: vec![Q_ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QuatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q_ONE);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Quaternion) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &QuatMatrix) -> QuatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = QuatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> QuatMatrix {
        let mut out = QuatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, other: &QuatMatrix) -> QuatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect();
        QuatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &QuatMatrix) -> QuatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect();
        QuatMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, t: f64) -> QuatMatrix {
        QuatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q.scale(t)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, q| m.max(q.max_abs()))
    }

    /// `‖M − M^*‖_max`.
    pub fn hermitian_defect(&self) -> f64 {
        assert!(self.is_square());
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).max_abs());
            }
        }
        worst
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Re tr(A^* B): the real Hilbert-Schmidt inner product.
    pub fn re_inner(&self, other: &QuatMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(&other.data).map(|(a, b)| a.dot(*b)).sum()
    }

    /// Real embedding: each entry becomes its `factor×factor`
    /// left-multiplication block, truncated to the ring.
    pub fn embed(&self, ring: Ring) -> DenseMatrix {
        let f = ring.factor();
        let mut out = DenseMatrix::zeros(self.rows * f, self.cols * f);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let block = left_mul_block(self.get(i, j));
                for r in 0..f {
                    for c in 0..f {
                        out.set(i * f + r, j * f + c, block[r][c]);
                    }
                }
            }
        }
        out
    }

    /// Inverse of `embed`: reads the first column of each block.
    pub fn unembed(real: &DenseMatrix, ring: Ring, rows: usize, cols: usize) -> QuatMatrix {
        let f = ring.factor();
        assert_eq!(real.rows, rows * f);
        assert_eq!(real.cols, cols * f);
        let mut out = QuatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let mut q = Q_ZERO;
                q.w = real.get(i * f, j * f);
                if f >= 2 {
                    q.x = real.get(i * f + 1, j * f);
                }
                if f == 4 {
                    q.y = real.get(i * f + 2, j * f);
                    q.z = real.get(i * f + 3, j * f);
                }
                out.set(i, j, q);
            }
        }
        out
    }
}

/// Left-multiplication matrix of a quaternion on the basis (1, i, j, k).
fn left_mul_block(q: Quaternion) -> [[f64; 4]; 4] {
    [
        [q.w, -q.x, -q.y, -q.z],
        [q.x, q.w, -q.z, q.y],
        [q.y, q.z, q.w, -q.x],
        [q.z, -q.y, q.x, q.w],
    ]
}

/// Column vector over the ring.
pub type QuatVector = Vec<Quaternion>;

/// Read a real column of length `factor·m` back into a ring vector: each
/// entry's components are stacked contiguously in (1, i, j, k) order.
pub fn quat_vector_from_real(real: &[f64], ring: Ring) -> QuatVector {
    let f = ring.factor();
    assert_eq!(real.len() % f, 0);
    real.chunks(f)
        .map(|chunk| {
            let mut q = Q_ZERO;
            q.w = chunk[0];
            if f >= 2 {
                q.x = chunk[1];
            }
            if f == 4 {
                q.y = chunk[2];
                q.z = chunk[3];
            }
            q
        })
        .collect()
}

/// ⟨u, v⟩ = Σ conj(uᵢ) vᵢ — right-linear inner product.
pub fn quat_inner(u: &[Quaternion], v: &[Quaternion]) -> Quaternion {
    let mut acc = Q_ZERO;
    for (a, b) in u.iter().zip(v) {
        acc += a.conj() * *b;
    }
    acc
}

pub fn quat_norm(u: &[Quaternion]) -> f64 {
    u.iter().map(|q| q.norm_sq()).sum::<f64>().sqrt()
}

pub fn quat_scale_right(u: &[Quaternion], q: Quaternion) -> QuatVector {
    u.iter().map(|&ui| ui * q).collect()
}

/// Right-module modified Gram-Schmidt with pivoting by residual norm.
///
/// Keeps at most `max_keep` vectors; a residual below
/// `tol.gram_drop · max(1, ‖input‖)` ends consideration of that column.
pub fn quat_gram_schmidt(
    columns: &[QuatVector],
    max_keep: usize,
    tol: &Tolerances,
) -> Vec<QuatVector> {
    let mut basis: Vec<QuatVector> = Vec::new();
    let mut pool: Vec<QuatVector> = columns.to_vec();
    let original_norms: Vec<f64> = pool.iter().map(|v| quat_norm(v)).collect();
    while basis.len() < max_keep && !pool.is_empty() {
        // project the whole pool, then pick the largest residual
        for v in pool.iter_mut() {
            for u in &basis {
                let c = quat_inner(u, v);
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi -= *ui * c;
                }
            }
        }
        let (best, best_norm) = pool
            .iter()
            .enumerate()
            .map(|(i, v)| (i, quat_norm(v)))
            .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if best_norm < tol.gram_drop * 1.0f64.max(original_norms[best]) {
            break;
        }
        let mut w = pool.swap_remove(best);
        // second pass against the accepted basis for orthogonality
        for u in &basis {
            let c = quat_inner(u, &w);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi -= *ui * c;
            }
        }
        let n = quat_norm(&w);
        basis.push(w.iter().map(|q| q.scale(1.0 / n)).collect());
    }
    basis
}

/// Rank-one Hermitian matrix `u u^*`.
pub fn outer(u: &[Quaternion]) -> QuatMatrix {
    let m = u.len();
    let mut out = QuatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            out.set(i, j, u[i] * u[j].conj());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_homomorphism() {
        let mut a = QuatMatrix::zeros(2, 2);
        a.set(0, 0, Quaternion::new(1.0, 2.0, 0.5, -1.0));
        a.set(0, 1, Quaternion::new(0.0, 1.0, -2.0, 0.25));
        a.set(1, 0, Quaternion::new(-1.0, 0.0, 3.0, 1.0));
        a.set(1, 1, Quaternion::new(2.0, -0.5, 0.0, 0.75));
        let b = a.adjoint();
        let prod = a.mul(&b);
        let embedded = a.embed(Ring::Quaternion).matmul(&b.embed(Ring::Quaternion));
        assert!(embedded.sub(&prod.embed(Ring::Quaternion)).max_abs() <= 1e-12);
        // adjoint embeds to transpose
        assert!(b.embed(Ring::Quaternion).sub(&a.embed(Ring::Quaternion).transpose()).max_abs() <= 1e-15);
        // round trip
        let back = QuatMatrix::unembed(&a.embed(Ring::Quaternion), Ring::Quaternion, 2, 2);
        assert!(back.sub(&a).max_abs() <= 1e-15);
    }

    #[test]
    fn hermitian_embedding_symmetric() {
        let mut h = QuatMatrix::zeros(2, 2);
        h.set(0, 0, Quaternion::real(1.5));
        h.set(1, 1, Quaternion::real(-0.5));
        h.set(0, 1, Quaternion::new(0.5, 1.0, -2.0, 0.25));
        h.set(1, 0, h.get(0, 1).conj());
        let e = h.embed(Ring::Quaternion);
        assert!(e.max_asymmetry() <= 1e-15);
    }

    #[test]
    fn quat_gs_orthonormalizes() {
        let tol = Tolerances::default();
        let cols = vec![
            vec![Quaternion::new(1.0, 1.0, 0.0, 0.0), Quaternion::real(0.5)],
            vec![Quaternion::new(0.0, 0.0, 2.0, 0.0), Quaternion::new(1.0, 0.0, 0.0, -1.0)],
        ];
        let basis = quat_gram_schmidt(&cols, 2, &tol);
        assert_eq!(basis.len(), 2);
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let ip = quat_inner(u, v);
                let expect = if i == j { Q_ONE } else { Q_ZERO };
                assert!((ip - expect).max_abs() <= 1e-12);
            }
        }
    }
}
