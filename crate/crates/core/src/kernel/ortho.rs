//! Real Gram-Schmidt orthonormalization and nullspace extraction.

use crate::tol::Tolerances;

use super::DenseMatrix;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn project_off(v: &mut [f64], basis: &[Vec<f64>]) {
    for u in basis {
        let c = dot(u, v);
        for (vi, ui) in v.iter_mut().zip(u) {
            *vi -= c * ui;
        }
    }
}

/// Modified Gram-Schmidt with one reorthogonalization pass.
///
/// Preserves the span; vectors whose residual after projection falls below
/// `tol.gram_drop · max(1, ‖input‖)` are dropped (rank detection).
pub fn gram_schmidt(vectors: &[Vec<f64>], tol: &Tolerances) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let original_norm = norm(v);
        let mut w = v.clone();
        project_off(&mut w, &basis);
        project_off(&mut w, &basis);
        let n = norm(&w);
        if n < tol.gram_drop * 1.0f64.max(original_norm) {
            continue;
        }
        for wi in w.iter_mut() {
            *wi /= n;
        }
        basis.push(w);
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `basis` in ℝ^dim.
///
/// `basis` must already be orthonormal. Standard basis vectors are fed
/// through Gram-Schmidt against it; the survivors span the complement.
pub fn orthonormal_complement(basis: &[Vec<f64>], dim: usize, tol: &Tolerances) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for k in 0..dim {
        if basis.len() + out.len() == dim {
            break;
        }
        let mut v = vec![0.0; dim];
        v[k] = 1.0;
        project_off(&mut v, basis);
        project_off(&mut v, &out);
        project_off(&mut v, &out);
        let n = norm(&v);
        if n < 0.5 * tol.gram_drop.max(1e-6) {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= n;
        }
        out.push(v);
    }
    out
}

/// Orthonormal basis of the nullspace of a symmetric matrix, computed
/// without an eigensolver: the column space is orthonormalized and the
/// nullspace is its orthogonal complement.
pub fn symmetric_nullspace(m: &DenseMatrix, tol: &Tolerances) -> Vec<Vec<f64>> {
    assert!(m.is_square());
    let col_basis = gram_schmidt(&m.columns(), tol);
    orthonormal_complement(&col_basis, m.rows, tol)
}
