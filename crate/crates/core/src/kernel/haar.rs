//! Haar-distributed structured matrices over ℝ, ℂ and ℍ.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::tol::Tolerances;

use super::quatmat::{QuatMatrix, QuatVector, Ring};
use super::{DenseMatrix, KernelError, Quaternion};

/// Deterministic sub-seed for the `index`-th member of a seeded family
/// (splitmix64 of the master seed xored with a spread of the index).
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x243F_6A88_85A3_08D3);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian_quat(ring: Ring, rng: &mut ChaCha8Rng) -> Quaternion {
    let mut draw = || -> f64 { StandardNormal.sample(rng) };
    match ring {
        Ring::Real => Quaternion::real(draw()),
        Ring::Complex => Quaternion::new(draw(), draw(), 0.0, 0.0),
        Ring::Quaternion => Quaternion::new(draw(), draw(), draw(), draw()),
    }
}

/// Haar-distributed element of O(n), U(n) or Sp(n), as a ring-valued matrix.
///
/// Sampled as i.i.d. Gaussian entries over the ring followed by right-module
/// Gram-Schmidt; normalizing residuals to positive real length fixes the
/// phase (the triangular factor of the implicit QR has positive diagonal).
pub fn haar_unitary(n: usize, ring: Ring, rng: &mut ChaCha8Rng, tol: &Tolerances) -> QuatMatrix {
    assert!(n >= 1, "dimension must be positive");
    loop {
        let cols: Vec<QuatVector> =
            (0..n).map(|_| (0..n).map(|_| gaussian_quat(ring, rng)).collect()).collect();
        // Unpivoted pass preserves column order (required for the QR phase
        // convention); a rank-deficient Gaussian sample has probability zero
        // but is resampled defensively.
        let basis = ordered_gram_schmidt(&cols, tol);
        if basis.len() < n {
            continue;
        }
        let mut u = QuatMatrix::zeros(n, n);
        for (j, col) in basis.iter().enumerate() {
            for (i, &q) in col.iter().enumerate() {
                u.set(i, j, q);
            }
        }
        return u;
    }
}

fn ordered_gram_schmidt(cols: &[QuatVector], tol: &Tolerances) -> Vec<QuatVector> {
    let mut basis: Vec<QuatVector> = Vec::new();
    for v in cols {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &basis {
                let c = super::quatmat::quat_inner(u, &w);
                for (wi, ui) in w.iter_mut().zip(u) {
                    *wi -= *ui * c;
                }
            }
        }
        let n = super::quatmat::quat_norm(&w);
        if n < tol.gram_drop {
            return basis;
        }
        basis.push(w.iter().map(|q| q.scale(1.0 / n)).collect());
    }
    basis
}

/// Real embedding of a Haar-distributed orthogonal/unitary/symplectic matrix.
pub fn haar_structured(
    n: usize,
    ring: Ring,
    seed: u64,
    tol: &Tolerances,
) -> Result<DenseMatrix, KernelError> {
    if n == 0 {
        return Err(KernelError::InvalidDimension { n });
    }
    let mut rng = rng_for(seed);
    Ok(haar_unitary(n, ring, &mut rng, tol).embed(ring))
}
