//! Seeded sampling of elements, projections and atoms.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{jordan_product_unchecked, spectral_decompose, Algebra, Element};
use crate::kernel::DenseMatrix;
use crate::lattice::Projection;
use crate::symmetry::InnerProductForm;
use crate::tol::Tolerances;

/// Element with i.i.d. standard-Gaussian coordinates.
pub fn random_element(algebra: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    let coords = (0..algebra.dim()).map(|_| StandardNormal.sample(rng)).collect();
    algebra.element(coords).expect("dimension is correct by construction")
}

/// A random element of the positive cone (a Jordan square).
pub fn random_cone_element(algebra: &Algebra, rng: &mut ChaCha8Rng) -> Element {
    let b = random_element(algebra, rng);
    jordan_product_unchecked(&b, &b)
}

/// The orthogonal atoms of a random element's spectral decomposition.
pub fn random_atom_frame(
    algebra: &Algebra,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Vec<Projection> {
    let a = random_element(algebra, rng);
    spectral_decompose(&a, tol)
        .expanded()
        .into_iter()
        .map(|(_, e)| Projection::from_atom(e.clone()))
        .collect()
}

/// A single random atom.
pub fn random_atom(algebra: &Algebra, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Projection {
    let frame = random_atom_frame(algebra, rng, tol);
    let k = rng.gen_range(0..frame.len());
    frame.into_iter().nth(k).unwrap()
}

/// A random projection: each atom of a random frame joins with probability ½.
///
/// May be 0 or 𝕀.
pub fn random_projection(algebra: &Algebra, rng: &mut ChaCha8Rng, tol: &Tolerances) -> Projection {
    let frame = random_atom_frame(algebra, rng, tol);
    let mut element = algebra.zero();
    let mut rank = 0;
    for atom in &frame {
        if rng.gen_bool(0.5) {
            element = element.add(atom.element());
            rank += 1;
        }
    }
    Projection::from_parts(element, rank)
}

/// A pair of projections built from one shared atom frame (they commute, and
/// their meet is exactly the sum of the shared atoms).
pub fn random_commuting_pair(
    algebra: &Algebra,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> (Projection, Projection, Projection) {
    let frame = random_atom_frame(algebra, rng, tol);
    let mut p = algebra.zero();
    let mut q = algebra.zero();
    let mut both = algebra.zero();
    let (mut rp, mut rq, mut rb) = (0usize, 0usize, 0usize);
    for atom in &frame {
        let in_p = rng.gen_bool(0.5);
        let in_q = rng.gen_bool(0.5);
        if in_p {
            p = p.add(atom.element());
            rp += 1;
        }
        if in_q {
            q = q.add(atom.element());
            rq += 1;
        }
        if in_p && in_q {
            both = both.add(atom.element());
            rb += 1;
        }
    }
    (
        Projection::from_parts(p, rp),
        Projection::from_parts(q, rq),
        Projection::from_parts(both, rb),
    )
}

/// A random positive-definite inner product: `AᵀA/d + 0.2·I` with Gaussian A.
pub fn random_pd_form(algebra: &Algebra, seed: u64, tol: &Tolerances) -> InnerProductForm {
    let mut rng = crate::kernel::rng_for(seed);
    let d = algebra.dim();
    let a = DenseMatrix::from_fn(d, d, |_, _| StandardNormal.sample(&mut rng));
    let gram = a
        .transpose()
        .matmul(&a)
        .scale(1.0 / d as f64)
        .add(&DenseMatrix::identity(d).scale(0.2));
    InnerProductForm::new(algebra, gram, tol).expect("construction is positive definite")
}

/// A nonzero random projection (resamples until the rank is positive).
pub fn random_nonzero_projection(
    algebra: &Algebra,
    rng: &mut ChaCha8Rng,
    tol: &Tolerances,
) -> Projection {
    loop {
        let p = random_projection(algebra, rng, tol);
        if p.rank() > 0 {
            return p;
        }
    }
}
