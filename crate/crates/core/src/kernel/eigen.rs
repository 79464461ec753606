//! Symmetric eigendecomposition via cyclic Jacobi rotations.

use crate::tol::Tolerances;

use super::{DenseMatrix, KernelError};

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub eigenvalues: Vec<f64>,
    pub vectors: DenseMatrix,
}

const MAX_SWEEPS: usize = 100;
const SWEEP_TOL: f64 = 1e-12;

/// Full eigendecomposition of a symmetric matrix.
///
/// Cyclic Jacobi: plane rotations annihilate off-diagonal entries sweep by
/// sweep until the off-diagonal Frobenius norm drops below
/// `1e-12·‖M‖_F`. Deterministic for a fixed input.
pub fn sym_eigen(m: &DenseMatrix, tol: &Tolerances) -> Result<EigenSystem, KernelError> {
    jacobi(m, tol, true)
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
pub fn sym_eigenvalues(m: &DenseMatrix, tol: &Tolerances) -> Result<Vec<f64>, KernelError> {
    Ok(jacobi(m, tol, false)?.eigenvalues)
}

fn check_input(m: &DenseMatrix, tol: &Tolerances) -> Result<(), KernelError> {
    if !m.is_square() {
        return Err(KernelError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let asym = m.max_asymmetry();
    if asym > tol.eigen_asym * 1.0f64.max(m.max_abs()) {
        return Err(KernelError::Asymmetric { asymmetry: asym });
    }
    Ok(())
}

fn jacobi(m: &DenseMatrix, tol: &Tolerances, want_vectors: bool) -> Result<EigenSystem, KernelError> {
    check_input(m, tol)?;
    let n = m.rows;
    if n == 0 {
        return Ok(EigenSystem { eigenvalues: vec![], vectors: DenseMatrix::zeros(0, 0) });
    }

    // Flat working copies; `a` stays symmetric, only the upper triangle drives
    // the rotations.
    let mut a: Vec<f64> = (0..n * n).map(|k| m.get(k / n, k % n)).collect();
    let mut v: Vec<f64> = vec![0.0; if want_vectors { n * n } else { 0 }];
    if want_vectors {
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }
    // Symmetrize exactly so rotations act on consistent data.
    for i in 0..n {
        for j in (i + 1)..n {
            let s = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = s;
            a[j * n + i] = s;
        }
    }

    let norm = m.frobenius();
    let threshold = SWEEP_TOL * norm;

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if off.sqrt() <= threshold {
            break;
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta.abs() > 1e150 {
                    // Avoid overflow in theta²; rotation angle is tiny.
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                for j in 0..n {
                    if j == p || j == q {
                        continue;
                    }
                    let ajp = a[j * n + p];
                    let ajq = a[j * n + q];
                    let njp = ajp - s * (ajq + tau * ajp);
                    let njq = ajq + s * (ajp - tau * ajq);
                    a[j * n + p] = njp;
                    a[p * n + j] = njp;
                    a[j * n + q] = njq;
                    a[q * n + j] = njq;
                }
                if want_vectors {
                    for j in 0..n {
                        let vjp = v[j * n + p];
                        let vjq = v[j * n + q];
                        v[j * n + p] = vjp - s * (vjq + tau * vjp);
                        v[j * n + q] = vjq + s * (vjp - tau * vjq);
                    }
                }
            }
        }
    }

    // Sort ascending, carrying eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = if want_vectors {
        DenseMatrix::from_fn(n, n, |i, j| v[i * n + order[j]])
    } else {
        DenseMatrix::zeros(0, 0)
    };
    Ok(EigenSystem { eigenvalues, vectors })
}

/// Group ascending eigenvalues into clusters of relative width
/// `tol.eigen_cluster`, scaled by `max(1, scale)`. Returns index ranges.
pub fn cluster_eigenvalues(
    eigenvalues: &[f64],
    scale: f64,
    tol: &Tolerances,
) -> Vec<std::ops::Range<usize>> {
    let width = tol.eigen_cluster * 1.0f64.max(scale);
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 1..=eigenvalues.len() {
        if i == eigenvalues.len() || (eigenvalues[i] - eigenvalues[i - 1]).abs() > width {
            out.push(start..i);
            start = i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn residual(m: &DenseMatrix, eig: &EigenSystem) -> f64 {
        // ‖M V − V diag(λ)‖_max
        let mv = m.matmul(&eig.vectors);
        let mut worst = 0.0f64;
        for i in 0..m.rows {
            for j in 0..m.cols {
                worst = worst.max((mv.get(i, j) - eig.vectors.get(i, j) * eig.eigenvalues[j]).abs());
            }
        }
        worst
    }

    #[test]
    fn identity_3x3() {
        let tol = Tolerances::default();
        let eig = sym_eigen(&DenseMatrix::identity(3), &tol).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);
        let vtv = eig.vectors.transpose().matmul(&eig.vectors);
        assert!(vtv.sub(&DenseMatrix::identity(3)).max_abs() <= 1e-10);
    }

    #[test]
    fn diagonal_sorted() {
        let tol = Tolerances::default();
        let m = DenseMatrix::from_rows(vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ]);
        let eig = sym_eigen(&m, &tol).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn random_symmetric_8x8() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let raw = DenseMatrix::from_fn(8, 8, |_, _| rng.gen_range(-1.0..1.0));
        let m = raw.add(&raw.transpose()).scale(0.5);
        let eig = sym_eigen(&m, &tol).unwrap();
        let norm = m.frobenius();
        assert!(residual(&m, &eig) <= 1e-9 * norm);
        let vtv = eig.vectors.transpose().matmul(&eig.vectors);
        assert!(vtv.sub(&DenseMatrix::identity(8)).max_abs() <= 1e-10);
        // eigenvalue sum equals the trace
        let sum: f64 = eig.eigenvalues.iter().sum();
        assert!((sum - m.trace()).abs() <= 1e-9 * norm);
    }

    #[test]
    fn asymmetric_rejected() {
        let tol = Tolerances::default();
        let m = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![0.0, 1.0]]);
        match sym_eigen(&m, &tol) {
            Err(KernelError::Asymmetric { asymmetry }) => assert!((asymmetry - 2.0).abs() < 1e-15),
            other => panic!("expected asymmetry rejection, got {other:?}"),
        }
    }

    #[test]
    fn non_square_rejected() {
        let tol = Tolerances::default();
        let m = DenseMatrix::zeros(2, 3);
        assert!(matches!(sym_eigen(&m, &tol), Err(KernelError::NotSquare { .. })));
    }

    #[test]
    fn clustering_groups_degenerate() {
        let tol = Tolerances::default();
        let vals = [0.0, 1e-12, 1.0, 1.0 + 1e-12, 2.0];
        let ranges = cluster_eigenvalues(&vals, 2.0, &tol);
        assert_eq!(ranges, vec![0..2, 2..4, 4..5]);
    }
}
