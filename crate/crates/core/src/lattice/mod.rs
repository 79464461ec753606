//! The quantum logic L_A = ext[0,𝕀]: certified projections, order,
//! orthocomplement, meet/join, rank, compatibility, center and capacity.

mod center;

pub use center::{center, CenterDecomposition};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    in_cone, raw_spectrum, spectral_decompose, Algebra, AlgebraError, AlgebraView, Element,
};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("element is not an extreme point of [0,𝕀]: offending eigenvalue {eigenvalue}")]
    NotExtreme { eigenvalue: f64 },
    #[error("central candidate {candidate} is not compatible with a sampled projection")]
    CentralityFailure { candidate: usize, witness: Box<Element> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An element certified to lie in L_A = ext[0,𝕀], with its rank cached.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Projection {
    element: Element,
    rank: usize,
}

impl Projection {
    pub fn element(&self) -> &Element {
        &self.element
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn algebra(&self) -> &Algebra {
        self.element.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// Wrap an element the caller asserts to be a projection of this rank
    /// (e.g. a sum of orthogonal certified atoms).
    pub fn from_parts(element: Element, rank: usize) -> Projection {
        Projection { element, rank }
    }

    /// Wrap a known atom.
    pub fn from_atom(element: Element) -> Projection {
        Projection { element, rank: 1 }
    }

    pub fn zero(algebra: &Algebra) -> Projection {
        Projection { element: algebra.zero(), rank: 0 }
    }

    pub fn unit(algebra: &Algebra) -> Projection {
        Projection { element: algebra.unit(), rank: algebra.capacity() }
    }
}

/// Rank of a projection candidate: Err(λ) reports the first spectral value
/// away from {0, 1}.
pub(crate) fn certify_rank(a: &Element, tol: &Tolerances) -> Result<usize, f64> {
    let algebra = a.algebra().clone();
    match algebra.kind() {
        AlgebraView::Sum { parts, offsets } => {
            let mut rank = 0;
            for (p, off) in parts.iter().zip(offsets) {
                rank += certify_rank(&a.block(p, *off), tol)?;
            }
            Ok(rank)
        }
        _ => {
            let mut rank = 0;
            for v in raw_spectrum(a, tol) {
                if v.abs() <= tol.projection_spectrum {
                    continue;
                }
                if (v - 1.0).abs() <= tol.projection_spectrum {
                    rank += 1;
                    continue;
                }
                return Err(v);
            }
            Ok(rank)
        }
    }
}

/// Certify that an element is an extreme point of [0,𝕀]: its spectrum must
/// lie within `projection_spectrum` of {0, 1}. The rank is the number of
/// eigenvalue-1 atoms.
pub fn certify_projection(a: &Element, tol: &Tolerances) -> Result<Projection, LatticeError> {
    let rank = certify_rank(a, tol).map_err(|eigenvalue| LatticeError::NotExtreme { eigenvalue })?;
    Ok(Projection { element: a.clone(), rank })
}

/// p ≤ q in the algebra order.
pub fn leq(p: &Projection, q: &Projection, tol: &Tolerances) -> bool {
    in_cone(&q.element.sub(&p.element), tol)
}

/// The orthocomplement p' = 𝕀 − p.
pub fn complement(p: &Projection, _tol: &Tolerances) -> Projection {
    let algebra = p.algebra().clone();
    Projection {
        element: algebra.unit().sub(&p.element),
        rank: algebra.capacity() - p.rank,
    }
}

/// p and q are orthogonal iff p + q ≤ 𝕀.
pub fn orthogonal(p: &Projection, q: &Projection, tol: &Tolerances) -> bool {
    let sum = p.element.add(&q.element);
    in_cone(&p.algebra().unit().sub(&sum), tol)
}

/// The lattice meet p ∧ q.
///
/// Spectrally decompose p + q and sum the atoms whose eigenvalue lies within
/// `meet_two` of 2; states witnessing those atoms force membership below both
/// arguments.
pub fn meet(p: &Projection, q: &Projection, tol: &Tolerances) -> Projection {
    assert_eq!(p.algebra(), q.algebra(), "mismatched algebras");
    let sum = p.element.add(&q.element);
    let dec = spectral_decompose(&sum, tol);
    let mut element = p.algebra().zero();
    let mut rank = 0;
    for g in &dec.groups {
        if (g.eigenvalue - 2.0).abs() <= tol.meet_two {
            for atom in &g.atoms {
                element = element.add(atom);
                rank += 1;
            }
        }
    }
    Projection { element, rank }
}

/// The lattice join p ∨ q = (p' ∧ q')'.
pub fn join(p: &Projection, q: &Projection, tol: &Tolerances) -> Projection {
    complement(&meet(&complement(p, tol), &complement(q, tol), tol), tol)
}

/// Split a projection into rank many orthogonal atoms summing to it.
pub fn peel_atoms(q: &Projection, tol: &Tolerances) -> Vec<Projection> {
    if q.rank == 0 {
        return Vec::new();
    }
    let dec = spectral_decompose(&q.element, tol);
    let mut atoms = Vec::new();
    for g in &dec.groups {
        if (g.eigenvalue - 1.0).abs() <= tol.projection_spectrum {
            for atom in &g.atoms {
                atoms.push(Projection::from_atom(atom.clone()));
            }
        }
    }
    debug_assert_eq!(atoms.len(), q.rank, "peeled atom count disagrees with rank");
    atoms
}

/// The dimension function: each projection is the supremum of dim(p)
/// orthogonal atoms.
pub fn dim(p: &Projection) -> usize {
    p.rank
}

/// Compatibility: p and q decompose as q₁ + q₂ and q₂ + q₃ with q₁, q₂, q₃
/// pairwise orthogonal, where q₂ = p ∧ q.
pub fn compatible(p: &Projection, q: &Projection, tol: &Tolerances) -> bool {
    let q2 = meet(p, q, tol);
    let r1 = p.element.sub(&q2.element);
    let r3 = q.element.sub(&q2.element);
    let q1 = match certify_projection(&r1, tol) {
        Ok(x) => x,
        Err(_) => return false,
    };
    let q3 = match certify_projection(&r3, tol) {
        Ok(x) => x,
        Err(_) => return false,
    };
    orthogonal(&q1, &q2, tol) && orthogonal(&q2, &q3, tol) && orthogonal(&q1, &q3, tol)
}

/// Information capacity computed by peeling the unit into atoms.
pub fn info_capacity(algebra: &Algebra, tol: &Tolerances) -> usize {
    peel_atoms(&Projection::unit(algebra), tol).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rng_for, Ring};
    use crate::sample::{random_atom, random_commuting_pair, random_nonzero_projection};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn diag_projection(alg: &Algebra, pattern: &[f64]) -> Projection {
        let mut coords = vec![0.0; alg.dim()];
        coords[..pattern.len()].copy_from_slice(pattern);
        certify_projection(&alg.element(coords).unwrap(), &tol()).unwrap()
    }

    #[test]
    fn certify_accepts_unit_rejects_half() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Real, 2);
        let unit = certify_projection(&alg.unit(), &tol).unwrap();
        assert_eq!(unit.rank(), 2);
        match certify_projection(&alg.unit().scale(0.5), &tol) {
            Err(LatticeError::NotExtreme { eigenvalue }) => {
                assert!((eigenvalue - 0.5).abs() <= 1e-10)
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn certify_spin_atom() {
        let tol = tol();
        let alg = Algebra::spin(3);
        let e = alg.element(vec![0.5, 0.0, 0.5, 0.0]).unwrap();
        let p = certify_projection(&e, &tol).unwrap();
        assert_eq!(p.rank(), 1);
    }

    #[test]
    fn lemma_meet_example() {
        // diag(1,1,0) ∧ diag(0,1,1) = diag(0,1,0) in H_3(ℝ)
        let tol = tol();
        let alg = Algebra::matrix(Ring::Real, 3);
        let p = diag_projection(&alg, &[1.0, 1.0, 0.0]);
        let q = diag_projection(&alg, &[0.0, 1.0, 1.0]);
        let x = meet(&p, &q, &tol);
        assert_eq!(x.rank(), 1);
        let expect = diag_projection(&alg, &[0.0, 1.0, 0.0]);
        assert!(x.element().approx_eq(expect.element(), &tol));
        assert!(leq(&x, &p, &tol) && leq(&x, &q, &tol));
    }

    #[test]
    fn meet_of_equal_is_identity_map() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 3);
        let mut rng = rng_for(21);
        let p = random_nonzero_projection(&alg, &mut rng, &tol);
        let x = meet(&p, &p, &tol);
        assert_eq!(x.rank(), p.rank());
        assert!(x.element().approx_eq(p.element(), &tol));
    }

    #[test]
    fn distinct_qubit_atoms_meet_to_zero() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 2);
        let p = diag_projection(&alg, &[1.0, 0.0]);
        // |+⟩⟨+| has coordinates (½, ½, 1/√2·(1/√2)·... ) — build from matrix
        let q_el = alg
            .element(vec![0.5, 0.5, 0.5 * std::f64::consts::SQRT_2, 0.0])
            .unwrap();
        let q = certify_projection(&q_el, &tol).unwrap();
        assert_eq!(q.rank(), 1);
        let x = meet(&p, &q, &tol);
        assert!(x.is_zero());
        // and the join is everything
        let j = join(&p, &q, &tol);
        assert_eq!(j.rank(), 2);
    }

    #[test]
    fn join_of_orthogonal_is_sum() {
        let tol = tol();
        for alg in [Algebra::matrix(Ring::Quaternion, 3), Algebra::spin(5)] {
            let mut rng = rng_for(33);
            let e = random_atom(&alg, &mut rng, &tol);
            let rest = complement(&e, &tol);
            let atoms = peel_atoms(&rest, &tol);
            let f = &atoms[0];
            assert!(orthogonal(&e, f, &tol));
            let j = join(&e, f, &tol);
            assert!(j.element().approx_eq(&e.element().add(f.element()), &tol));
            assert_eq!(j.rank(), 2);
            // join dominates both
            assert!(leq(&e, &j, &tol) && leq(f, &j, &tol));
        }
    }

    #[test]
    fn complement_involution_and_rank() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 4);
        let mut rng = rng_for(2);
        let p = random_nonzero_projection(&alg, &mut rng, &tol);
        let pc = complement(&p, &tol);
        assert_eq!(pc.rank(), 4 - p.rank());
        assert_eq!(peel_atoms(&pc, &tol).len(), pc.rank());
        let pcc = complement(&pc, &tol);
        assert!(pcc.element().approx_eq(p.element(), &tol));
        assert!(orthogonal(&p, &pc, &tol));
        // 𝕀' = 0 and p ∨ 0 = p
        assert!(complement(&Projection::unit(&alg), &tol).is_zero());
        let j = join(&p, &Projection::zero(&alg), &tol);
        assert_eq!(j.rank(), p.rank());
        assert!(j.element().approx_eq(p.element(), &tol));
    }

    #[test]
    fn peel_reconstructs() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Quaternion, 4);
        let mut rng = rng_for(14);
        let q = random_nonzero_projection(&alg, &mut rng, &tol);
        let atoms = peel_atoms(&q, &tol);
        assert_eq!(atoms.len(), q.rank());
        let mut sum = alg.zero();
        for a in &atoms {
            sum = sum.add(a.element());
        }
        assert!(sum.sub(q.element()).coord_inf_norm() <= 1e-9);
        // 𝕀 peels into capacity many atoms
        assert_eq!(peel_atoms(&Projection::unit(&alg), &tol).len(), 4);
        assert!(peel_atoms(&Projection::zero(&alg), &tol).is_empty());
    }

    #[test]
    fn compatibility() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Real, 4);
        let mut rng = rng_for(40);
        // p is always compatible with p'
        let p = random_nonzero_projection(&alg, &mut rng, &tol);
        assert!(compatible(&p, &complement(&p, &tol), &tol));
        // commuting diagonal projections are compatible
        let (a, b, _) = random_commuting_pair(&alg, &mut rng, &tol);
        assert!(compatible(&a, &b, &tol));
        // qubit atoms at 45° are not
        let qalg = Algebra::matrix(Ring::Complex, 2);
        let p = certify_projection(&qalg.element(vec![1.0, 0.0, 0.0, 0.0]).unwrap(), &tol).unwrap();
        let q = certify_projection(
            &qalg.element(vec![0.5, 0.5, 0.5 * std::f64::consts::SQRT_2, 0.0]).unwrap(),
            &tol,
        )
        .unwrap();
        assert!(!compatible(&p, &q, &tol));
    }

    #[test]
    fn capacity_by_peeling() {
        let tol = tol();
        assert_eq!(info_capacity(&Algebra::matrix(Ring::Quaternion, 4), &tol), 4);
        assert_eq!(info_capacity(&Algebra::spin(7), &tol), 2);
        let sum = Algebra::direct_sum(vec![
            Algebra::matrix(Ring::Complex, 2),
            Algebra::matrix(Ring::Real, 3),
        ]);
        assert_eq!(info_capacity(&sum, &tol), 5);
        assert_eq!(sum.capacity(), 5);
    }

    #[test]
    fn meet_against_commuting_oracle() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 4);
        let mut rng = rng_for(77);
        for _ in 0..25 {
            let (p, q, expected) = random_commuting_pair(&alg, &mut rng, &tol);
            let x = meet(&p, &q, &tol);
            assert_eq!(x.rank(), expected.rank());
            assert!(x.element().approx_eq(expected.element(), &tol));
        }
    }
}
