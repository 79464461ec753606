//! Automorphisms of order unit algebras: Haar sampling, atom transport,
//! one-parameter paths and invariant inner products.

mod invariant;
mod transport;

pub use invariant::{invariant_inner_product, InvariantProduct};
pub use transport::{continuous_path, transport_automorphism, AutomorphismPath};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraView, Element};
use crate::checks::{CheckReport, Witness};
use crate::kernel::quatmat::QuatMatrix;
use crate::kernel::{
    derive_seed, haar_unitary, rng_for, sym_eigenvalues, DenseMatrix, Ring,
};
use crate::sample::random_cone_element;
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum SymmetryError {
    #[error("gram matrix is not symmetric (defect {defect:.3e})")]
    NotSymmetric { defect: f64 },
    #[error("gram matrix is not positive definite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },
    #[error("expected an atom, got a projection of rank {rank}")]
    NotAnAtom { rank: usize },
    #[error(
        "no automorphism transports between blocks {block_a} (dim {dim_a}) and {block_b} (dim {dim_b})"
    )]
    CrossBlockAtoms { block_a: String, dim_a: usize, block_b: String, dim_b: usize },
    #[error(
        "invariance residual {residual:.3e} exceeds {limit:.3e} after {n_samples} samples; raise n_samples"
    )]
    InconclusiveInvariance { residual: f64, limit: f64, n_samples: u32 },
}

/// An invertible positive unital map, stored as its action on coordinates.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Automorphism {
    algebra: Algebra,
    matrix: DenseMatrix,
    inverse: DenseMatrix,
}

impl Automorphism {
    pub fn identity(algebra: &Algebra) -> Automorphism {
        let id = DenseMatrix::identity(algebra.dim());
        Automorphism { algebra: algebra.clone(), matrix: id.clone(), inverse: id }
    }

    /// Wrap an explicit coordinate action and its inverse (e.g. ring
    /// automorphisms like entrywise conjugation that are not conjugations).
    pub fn from_matrices(algebra: Algebra, matrix: DenseMatrix, inverse: DenseMatrix) -> Self {
        Automorphism { algebra, matrix, inverse }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn apply(&self, a: &Element) -> Element {
        assert_eq!(*a.algebra(), self.algebra, "mismatched algebras");
        self.algebra.element_unchecked(self.matrix.matvec(a.coords()))
    }

    pub fn apply_inverse(&self, a: &Element) -> Element {
        assert_eq!(*a.algebra(), self.algebra, "mismatched algebras");
        self.algebra.element_unchecked(self.inverse.matvec(a.coords()))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        assert_eq!(self.algebra, other.algebra);
        Automorphism {
            algebra: self.algebra.clone(),
            matrix: self.matrix.matmul(&other.matrix),
            inverse: other.inverse.matmul(&self.inverse),
        }
    }

    /// Conjugation a ↦ U a U^* on a matrix algebra.
    pub(crate) fn conjugation(algebra: &Algebra, u: &QuatMatrix) -> Automorphism {
        let basis: Vec<QuatMatrix> = match algebra.kind() {
            AlgebraView::Matrix { basis, .. } => basis.to_vec(),
            _ => panic!("conjugation needs a matrix algebra"),
        };
        let ustar = u.adjoint();
        let build = |left: &QuatMatrix, right: &QuatMatrix| {
            let mut mat = DenseMatrix::zeros(algebra.dim(), algebra.dim());
            for (k, b) in basis.iter().enumerate() {
                let image = left.mul(b).mul(right);
                for (i, c) in algebra.from_matrix(&image).into_iter().enumerate() {
                    mat.set(i, k, c);
                }
            }
            mat
        };
        Automorphism {
            algebra: algebra.clone(),
            matrix: build(u, &ustar),
            inverse: build(&ustar, u),
        }
    }

    /// 𝕀 fixed, V rotated, on a spin factor.
    pub(crate) fn spin_rotation(algebra: &Algebra, r: &DenseMatrix) -> Automorphism {
        let n = algebra.dim() - 1;
        assert_eq!((r.rows, r.cols), (n, n));
        let place = |rot: &DenseMatrix| {
            let mut mat = DenseMatrix::identity(algebra.dim());
            for i in 0..n {
                for j in 0..n {
                    mat.set(i + 1, j + 1, rot.get(i, j));
                }
            }
            mat
        };
        Automorphism {
            algebra: algebra.clone(),
            matrix: place(r),
            inverse: place(&r.transpose()),
        }
    }

    /// Blockwise automorphism of a direct sum.
    pub(crate) fn blockwise(algebra: &Algebra, parts: Vec<Automorphism>) -> Automorphism {
        let blocks = algebra.blocks();
        assert_eq!(blocks.len(), parts.len());
        let mut matrix = DenseMatrix::identity(algebra.dim());
        let mut inverse = DenseMatrix::identity(algebra.dim());
        for ((_, off), part) in blocks.iter().zip(&parts) {
            let d = part.algebra.dim();
            for i in 0..d {
                for j in 0..d {
                    matrix.set(off + i, off + j, part.matrix.get(i, j));
                    inverse.set(off + i, off + j, part.inverse.get(i, j));
                }
            }
        }
        Automorphism { algebra: algebra.clone(), matrix, inverse }
    }

    /// Lift a block automorphism to the sum, identity elsewhere.
    pub(crate) fn lift_block(algebra: &Algebra, offset: usize, inner: &Automorphism) -> Automorphism {
        let mut matrix = DenseMatrix::identity(algebra.dim());
        let mut inverse = DenseMatrix::identity(algebra.dim());
        let d = inner.algebra.dim();
        for i in 0..d {
            for j in 0..d {
                matrix.set(offset + i, offset + j, inner.matrix.get(i, j));
                inverse.set(offset + i, offset + j, inner.inverse.get(i, j));
            }
        }
        Automorphism { algebra: algebra.clone(), matrix, inverse }
    }
}

/// A Haar-distributed automorphism: conjugation by a Haar unitary over the
/// matching ring for matrix algebras, a Haar rotation of V for spin factors,
/// independent blockwise samples for direct sums.
pub fn sample_automorphism(algebra: &Algebra, seed: u64, tol: &Tolerances) -> Automorphism {
    match algebra.kind() {
        AlgebraView::Matrix { ring, m, .. } => {
            let mut rng = rng_for(seed);
            let u = haar_unitary(m, ring, &mut rng, tol);
            Automorphism::conjugation(algebra, &u)
        }
        AlgebraView::Spin { n } => {
            let mut rng = rng_for(seed);
            let r = haar_unitary(n, Ring::Real, &mut rng, tol).embed(Ring::Real);
            Automorphism::spin_rotation(algebra, &r)
        }
        AlgebraView::Sum { parts, .. } => {
            let samples = parts
                .iter()
                .enumerate()
                .map(|(i, p)| sample_automorphism(p, derive_seed(seed, i as u64), tol))
                .collect();
            Automorphism::blockwise(algebra, samples)
        }
    }
}

/// A symmetric positive-definite bilinear form on the coordinate space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InnerProductForm {
    algebra: Algebra,
    gram: DenseMatrix,
}

impl InnerProductForm {
    pub fn new(
        algebra: &Algebra,
        gram: DenseMatrix,
        tol: &Tolerances,
    ) -> Result<InnerProductForm, SymmetryError> {
        let defect = gram.max_asymmetry();
        if defect > 1e-10 * 1.0f64.max(gram.max_abs()) {
            return Err(SymmetryError::NotSymmetric { defect });
        }
        let eigenvalues = sym_eigenvalues(&gram.symmetrize(), tol)
            .map_err(|_| SymmetryError::NotSymmetric { defect })?;
        let min = eigenvalues.first().copied().unwrap_or(0.0);
        if min <= 0.0 {
            return Err(SymmetryError::NotPositiveDefinite { min_eigenvalue: min });
        }
        Ok(InnerProductForm { algebra: algebra.clone(), gram: gram.symmetrize() })
    }

    /// The coordinate dot product; on matrix algebras this is the trace form
    /// Re tr(ab), since the basis is trace-orthonormal.
    pub fn coordinate_form(algebra: &Algebra) -> InnerProductForm {
        InnerProductForm { algebra: algebra.clone(), gram: DenseMatrix::identity(algebra.dim()) }
    }

    pub(crate) fn from_gram_unchecked(algebra: &Algebra, gram: DenseMatrix) -> InnerProductForm {
        InnerProductForm { algebra: algebra.clone(), gram }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn gram(&self) -> &DenseMatrix {
        &self.gram
    }

    pub fn eval(&self, a: &Element, b: &Element) -> f64 {
        assert_eq!(*a.algebra(), self.algebra);
        assert_eq!(*b.algebra(), self.algebra);
        let gb = self.gram.matvec(b.coords());
        a.coords().iter().zip(&gb).map(|(x, y)| x * y).sum()
    }

    /// Pull back along an automorphism: (a, b) ↦ ⟨Ta, Tb⟩.
    pub fn pull_back(&self, t: &Automorphism) -> InnerProductForm {
        let m = t.matrix();
        InnerProductForm {
            algebra: self.algebra.clone(),
            gram: m.transpose().matmul(&self.gram).matmul(m),
        }
    }
}

/// Verify the automorphism contract: unit fixed, cone preserved both ways on
/// random squares, inverse consistent.
pub fn verify_automorphism(
    algebra: &Algebra,
    t: &Automorphism,
    trials: u32,
    seed: u64,
    tol: &Tolerances,
) -> CheckReport {
    let mut worst = 0.0f64;
    let unit = algebra.unit();
    let unit_defect = t.apply(&unit).sub(&unit).coord_inf_norm();
    worst = worst.max(unit_defect);
    if unit_defect > tol.auto_unit_fix {
        return CheckReport::fail(
            "automorphism",
            algebra,
            0,
            seed,
            unit_defect,
            Witness::new(0, seed, vec![t.apply(&unit)], "unit not fixed"),
        );
    }
    let inv_defect = t.matrix.matmul(&t.inverse).sub(&DenseMatrix::identity(algebra.dim())).max_abs();
    if inv_defect > 1e-8 {
        return CheckReport::fail(
            "automorphism",
            algebra,
            0,
            seed,
            inv_defect,
            Witness::new(0, seed, vec![], "inverse residual too large"),
        );
    }
    worst = worst.max(inv_defect);
    let mut rng = rng_for(seed);
    for trial in 0..trials {
        let a = random_cone_element(algebra, &mut rng);
        for (label, image) in [("forward", t.apply(&a)), ("inverse", t.apply_inverse(&a))] {
            if !crate::algebra::in_cone(&image, tol) {
                let violation = -crate::algebra::raw_spectrum(&image, tol)
                    .first()
                    .copied()
                    .unwrap_or(0.0);
                return CheckReport::fail(
                    "automorphism",
                    algebra,
                    trial + 1,
                    seed,
                    violation,
                    Witness::new(trial, seed, vec![a.clone()], &format!("{label} image left the cone")),
                );
            }
        }
    }
    CheckReport::pass("automorphism", algebra, trials, seed, worst)
}
