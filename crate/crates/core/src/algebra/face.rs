//! Face algebras A_p and their isometric embeddings.

use crate::kernel::quatmat::QuatMatrix;
use crate::kernel::DenseMatrix;
use crate::lattice::{peel_atoms, Projection};
use crate::tol::Tolerances;

use super::state::atom_state;
use super::{range_vector, Algebra, AlgebraError, AlgebraView, Element};

/// The face algebra of a projection, with maps in and out of the parent.
///
/// `embed` is an isometric order embedding whose image satisfies
/// `−‖a‖ p ≤ embed(a) ≤ ‖a‖ p`; `compress` is its left inverse.
#[derive(Clone, Debug)]
pub struct Face {
    algebra: Algebra,
    parent: Algebra,
    projection: Projection,
    embed_mat: DenseMatrix,
    compress_mat: DenseMatrix,
}

impl Face {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn parent(&self) -> &Algebra {
        &self.parent
    }

    pub fn projection(&self) -> &Projection {
        &self.projection
    }

    /// Map a face element into the parent algebra.
    pub fn embed(&self, x: &Element) -> Element {
        assert_eq!(*x.algebra(), self.algebra, "element not in the face algebra");
        self.parent.element_unchecked(self.embed_mat.matvec(x.coords()))
    }

    /// Compress a parent element onto the face.
    pub fn compress(&self, a: &Element) -> Element {
        assert_eq!(*a.algebra(), self.parent, "element not in the parent algebra");
        self.algebra.element_unchecked(self.compress_mat.matvec(a.coords()))
    }

    /// Embed a face projection; rank is preserved.
    pub fn embed_projection(&self, p: &Projection) -> Projection {
        Projection::from_parts(self.embed(p.element()), p.rank())
    }
}

fn identity_face(algebra: &Algebra, p: &Projection) -> Face {
    Face {
        algebra: algebra.clone(),
        parent: algebra.clone(),
        projection: p.clone(),
        embed_mat: DenseMatrix::identity(algebra.dim()),
        compress_mat: DenseMatrix::identity(algebra.dim()),
    }
}

/// The face algebra A_p of a nonzero projection, with its embedding.
///
/// For matrix algebras this is the corner algebra H_r on the range of p over
/// the same ring; for a spin-factor atom it is the one-dimensional H_1(ℝ);
/// direct sums restrict blockwise.
pub fn restrict(algebra: &Algebra, p: &Projection, tol: &Tolerances) -> Result<Face, AlgebraError> {
    assert_eq!(*p.element().algebra(), *algebra, "projection not in this algebra");
    if p.rank() == 0 {
        return Err(AlgebraError::ZeroProjection);
    }
    if p.rank() == algebra.capacity() {
        return Ok(identity_face(algebra, p));
    }
    match algebra.kind() {
        AlgebraView::Matrix { ring, m, .. } => {
            let r = p.rank();
            let atoms = peel_atoms(p, tol);
            debug_assert_eq!(atoms.len(), r);
            // ring-orthonormal basis of range(p)
            let mut u = QuatMatrix::zeros(m, r);
            for (k, atom) in atoms.iter().enumerate() {
                let mat = algebra.to_matrix(atom.element().coords());
                for (i, q) in range_vector(&mat).into_iter().enumerate() {
                    u.set(i, k, q);
                }
            }
            let ustar = u.adjoint();
            let face = Algebra::matrix(ring, r);
            let face_basis: Vec<QuatMatrix> = match face.kind() {
                AlgebraView::Matrix { basis, .. } => basis.to_vec(),
                _ => unreachable!(),
            };
            let mut embed_mat = DenseMatrix::zeros(algebra.dim(), face.dim());
            for (k, b) in face_basis.iter().enumerate() {
                let lifted = u.mul(b).mul(&ustar);
                for (i, c) in algebra.from_matrix(&lifted).into_iter().enumerate() {
                    embed_mat.set(i, k, c);
                }
            }
            let parent_basis: Vec<QuatMatrix> = match algebra.kind() {
                AlgebraView::Matrix { basis, .. } => basis.to_vec(),
                _ => unreachable!(),
            };
            let mut compress_mat = DenseMatrix::zeros(face.dim(), algebra.dim());
            for (j, b) in parent_basis.iter().enumerate() {
                let corner = ustar.mul(b).mul(&u);
                for (i, c) in face.from_matrix(&corner).into_iter().enumerate() {
                    compress_mat.set(i, j, c);
                }
            }
            Ok(Face {
                algebra: face,
                parent: algebra.clone(),
                projection: p.clone(),
                embed_mat,
                compress_mat,
            })
        }
        AlgebraView::Spin { .. } => {
            // rank < capacity = 2 and nonzero, so p is an atom; its face is ℝp
            if p.rank() != 1 {
                return Err(AlgebraError::BadRank { rank: p.rank() });
            }
            let face = Algebra::matrix(crate::kernel::Ring::Real, 1);
            let mut embed_mat = DenseMatrix::zeros(algebra.dim(), 1);
            for (i, c) in p.element().coords().iter().enumerate() {
                embed_mat.set(i, 0, *c);
            }
            let mu = atom_state(p, tol)?;
            let mut compress_mat = DenseMatrix::zeros(1, algebra.dim());
            for (j, f) in mu.functional().iter().enumerate() {
                compress_mat.set(0, j, *f);
            }
            Ok(Face {
                algebra: face,
                parent: algebra.clone(),
                projection: p.clone(),
                embed_mat,
                compress_mat,
            })
        }
        AlgebraView::Sum { parts, offsets } => {
            // restrict blockwise over the blocks where p is nonzero
            let mut sub: Vec<(Face, usize)> = Vec::new();
            for (part, off) in parts.iter().zip(offsets) {
                let block = p.element().block(part, *off);
                let rank = crate::lattice::certify_rank(&block, tol)
                    .map_err(|_| AlgebraError::BadRank { rank: p.rank() })?;
                if rank == 0 {
                    continue;
                }
                let bp = Projection::from_parts(block, rank);
                sub.push((restrict(part, &bp, tol)?, *off));
            }
            debug_assert!(!sub.is_empty());
            let face = if sub.len() == 1 {
                sub[0].0.algebra.clone()
            } else {
                Algebra::direct_sum(sub.iter().map(|(f, _)| f.algebra.clone()).collect())
            };
            let mut embed_mat = DenseMatrix::zeros(algebra.dim(), face.dim());
            let mut compress_mat = DenseMatrix::zeros(face.dim(), algebra.dim());
            let mut face_off = 0usize;
            for (f, parent_off) in &sub {
                for fc in 0..f.algebra.dim() {
                    for pr in 0..f.parent.dim() {
                        embed_mat.set(parent_off + pr, face_off + fc, f.embed_mat.get(pr, fc));
                        compress_mat.set(face_off + fc, parent_off + pr, f.compress_mat.get(fc, pr));
                    }
                }
                face_off += f.algebra.dim();
            }
            Ok(Face {
                algebra: face,
                parent: algebra.clone(),
                projection: p.clone(),
                embed_mat,
                compress_mat,
            })
        }
    }
}
