//! Center of the projection lattice and the induced block decomposition.

use crate::algebra::{restrict, Algebra, Face};
use crate::kernel::rng_for;
use crate::sample::random_projection;
use crate::tol::Tolerances;

use super::{compatible, LatticeError, Projection};

/// Minimal central projections with the block algebras they carve out.
#[derive(Debug)]
pub struct CenterDecomposition {
    pub minimal_central: Vec<Projection>,
    pub blocks: Vec<Face>,
}

impl CenterDecomposition {
    pub fn is_trivial(&self) -> bool {
        self.minimal_central.len() == 1
    }
}

/// Compute the minimal nonzero central projections.
///
/// Candidates come from the descriptor's block structure (leaf blocks of a
/// sum; a single block yields only 𝕀); each candidate is then verified
/// compatible against `sample_budget` random projections.
pub fn center(
    algebra: &Algebra,
    sample_budget: u32,
    seed: u64,
    tol: &Tolerances,
) -> Result<CenterDecomposition, LatticeError> {
    let leaves = algebra.leaf_blocks();
    let mut minimal_central = Vec::with_capacity(leaves.len());
    for (leaf, off) in &leaves {
        let mut e = algebra.zero();
        e.set_block(*off, &leaf.unit());
        minimal_central.push(Projection::from_parts(e, leaf.capacity()));
    }

    let mut rng = rng_for(seed);
    for _ in 0..sample_budget {
        let r = random_projection(algebra, &mut rng, tol);
        for (i, c) in minimal_central.iter().enumerate() {
            if !compatible(c, &r, tol) {
                return Err(LatticeError::CentralityFailure {
                    candidate: i,
                    witness: Box::new(r.element().clone()),
                });
            }
        }
    }

    let blocks: Result<Vec<Face>, _> =
        minimal_central.iter().map(|c| restrict(algebra, c, tol).map_err(LatticeError::from)).collect();
    Ok(CenterDecomposition { minimal_central, blocks: blocks? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::in_cone;
    use crate::kernel::Ring;
    use crate::lattice::orthogonal;

    #[test]
    fn irreducible_algebras_have_trivial_center() {
        let tol = Tolerances::default();
        for alg in [Algebra::matrix(Ring::Complex, 3), Algebra::spin(4)] {
            let c = center(&alg, 20, 5, &tol).unwrap();
            assert!(c.is_trivial());
            assert!(c.minimal_central[0].element().approx_eq(&alg.unit(), &tol));
        }
    }

    #[test]
    fn sum_center_has_block_projections() {
        let tol = Tolerances::default();
        let alg = Algebra::direct_sum(vec![
            Algebra::matrix(Ring::Complex, 2),
            Algebra::matrix(Ring::Real, 3),
        ]);
        let c = center(&alg, 30, 7, &tol).unwrap();
        assert_eq!(c.minimal_central.len(), 2);
        // pairwise orthogonal and summing to the unit
        assert!(orthogonal(&c.minimal_central[0], &c.minimal_central[1], &tol));
        let sum = c.minimal_central[0].element().add(c.minimal_central[1].element());
        assert!(sum.approx_eq(&alg.unit(), &tol));
        assert!(in_cone(&sum, &tol));
        // block algebras match the parts
        assert_eq!(*c.blocks[0].algebra(), Algebra::matrix(Ring::Complex, 2));
        assert_eq!(*c.blocks[1].algebra(), Algebra::matrix(Ring::Real, 3));
    }

    #[test]
    fn nested_sum_flattens() {
        let tol = Tolerances::default();
        let alg = Algebra::direct_sum(vec![
            Algebra::matrix(Ring::Real, 2),
            Algebra::direct_sum(vec![Algebra::spin(2), Algebra::matrix(Ring::Real, 2)]),
        ]);
        let c = center(&alg, 10, 3, &tol).unwrap();
        assert_eq!(c.minimal_central.len(), 3);
    }
}
