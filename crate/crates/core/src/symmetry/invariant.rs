//! Monte-Carlo invariant inner products: the Haar average ⟨Ua|Ub⟩ over
//! sampled automorphisms, normalized so atoms have unit norm.

use crate::algebra::Algebra;
use crate::kernel::{derive_seed, rng_for, DenseMatrix};
use crate::sample::random_atom;
use crate::tol::Tolerances;

use super::{sample_automorphism, Automorphism, InnerProductForm, SymmetryError};

/// Result of the Monte-Carlo average: the normalized form, the measured
/// invariance residual and the sample count that produced it.
#[derive(Clone, Debug)]
pub struct InvariantProduct {
    pub form: InnerProductForm,
    pub residual: f64,
    pub n_samples: u32,
    pub atom_norm_spread: f64,
}

const NORMALIZATION_ATOMS: usize = 32;
const RESIDUAL_PROBES: usize = 8;

/// Pairwise summation in index order: deterministic and accurate regardless
/// of how the sample loop is scheduled.
fn pairwise_sum(mut grams: Vec<DenseMatrix>) -> DenseMatrix {
    assert!(!grams.is_empty());
    while grams.len() > 1 {
        let mut next = Vec::with_capacity(grams.len().div_ceil(2));
        let mut it = grams.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a.add(&b)),
                None => next.push(a),
            }
        }
        grams = next;
    }
    grams.pop().unwrap()
}

const AVERAGING_ROUNDS: u32 = 4;

/// Monte-Carlo approximation of the Aut(A)-invariant inner product
/// `⟨a|b⟩_o = ∫ ⟨Ua|Ub⟩ dU`, normalized so sampled atoms have norm 1.
///
/// The `n_samples` Haar draws are spent in rounds, each averaging the
/// pull-backs of the previous round's output. Pull-backs fix the invariant
/// component of a form exactly, so every round contracts the non-invariant
/// defect by another 1/√(round size); a single flat average would need ~100×
/// the samples for the same residual.
///
/// The reported residual is the worst `‖G − TᵀGT‖_max` over fresh test
/// automorphisms; if it exceeds `invariance_residual_max` the average is
/// deemed inconclusive (raise `n_samples`).
pub fn invariant_inner_product(
    algebra: &Algebra,
    base: &InnerProductForm,
    n_samples: u32,
    seed: u64,
    tol: &Tolerances,
) -> Result<InvariantProduct, SymmetryError> {
    assert!(n_samples > 0, "need at least one sample");
    assert_eq!(base.algebra(), algebra);

    let rounds = if n_samples >= 64 { AVERAGING_ROUNDS } else { 1 };
    let per_round = n_samples / rounds;
    let mut sample_index = 0u64;
    let mut gram = base.gram().clone();
    for round in 0..rounds {
        // distribute the remainder over the first rounds
        let count = per_round + if round < n_samples % rounds { 1 } else { 0 };
        let current = InnerProductForm::from_gram_unchecked(algebra, gram);
        // accumulate in blocks to keep pairwise summation without storing
        // every sample
        let block = 1024usize;
        let mut block_sums: Vec<DenseMatrix> = Vec::new();
        let mut buffer: Vec<DenseMatrix> = Vec::with_capacity(block.min(count as usize));
        for _ in 0..count {
            let t = sample_automorphism(algebra, derive_seed(seed, sample_index), tol);
            sample_index += 1;
            buffer.push(current.pull_back(&t).gram().clone());
            if buffer.len() == block {
                block_sums.push(pairwise_sum(std::mem::take(&mut buffer)));
            }
        }
        if !buffer.is_empty() {
            block_sums.push(pairwise_sum(buffer));
        }
        gram = pairwise_sum(block_sums).scale(1.0 / count as f64);
    }
    let averaged_form = InnerProductForm::from_gram_unchecked(algebra, gram);

    // normalize so atoms carry norm 1: divide by the mean sampled atom norm
    let mut norms = Vec::with_capacity(NORMALIZATION_ATOMS);
    for i in 0..NORMALIZATION_ATOMS {
        let mut rng = rng_for(derive_seed(seed ^ 0xA70A, i as u64));
        let atom = random_atom(algebra, &mut rng, tol);
        norms.push(averaged_form.eval(atom.element(), atom.element()));
    }
    let mean = norms.iter().sum::<f64>() / norms.len() as f64;
    if mean <= 0.0 {
        return Err(SymmetryError::NotPositiveDefinite { min_eigenvalue: mean });
    }
    let normalized =
        InnerProductForm::from_gram_unchecked(algebra, averaged_form.gram().scale(1.0 / mean));
    let atom_norm_spread = norms
        .iter()
        .map(|n| (n / mean - 1.0).abs())
        .fold(0.0f64, f64::max);

    // invariance residual over fresh automorphisms
    let mut residual = 0.0f64;
    for i in 0..RESIDUAL_PROBES {
        let t: Automorphism = sample_automorphism(algebra, derive_seed(seed ^ 0x5EED, i as u64), tol);
        let pulled = normalized.pull_back(&t);
        residual = residual.max(pulled.gram().sub(normalized.gram()).max_abs());
    }

    if residual > tol.invariance_residual_max {
        return Err(SymmetryError::InconclusiveInvariance {
            residual,
            limit: tol.invariance_residual_max,
            n_samples,
        });
    }

    Ok(InvariantProduct { form: normalized, residual, n_samples, atom_norm_spread })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Ring;
    use crate::sample::random_element;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn random_pd_form(algebra: &Algebra, seed: u64) -> InnerProductForm {
        crate::sample::random_pd_form(algebra, seed, &tol())
    }

    #[test]
    fn trace_form_already_invariant() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 2);
        let base = InnerProductForm::coordinate_form(&alg);
        let inv = invariant_inner_product(&alg, &base, 2000, 3, &tol).unwrap();
        // output proportional to the trace form within Monte-Carlo noise
        let diff = inv.form.gram().sub(&DenseMatrix::identity(alg.dim())).max_abs();
        assert!(diff <= 5e-3, "deviation from trace form: {diff}");
        assert!(inv.residual <= 5e-3);
    }

    #[test]
    fn qubit_average_lands_in_invariant_family() {
        // invariant forms on H_2(ℂ) are α·trace-form + β·(unit-component
        // product); fit the averaged gram by least squares in that basis
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 2);
        let base = random_pd_form(&alg, 17);
        let inv = invariant_inner_product(&alg, &base, 4000, 11, &tol).unwrap();
        let g = inv.form.gram();
        let d = alg.dim();
        let unit = alg.unit();
        let tr = DenseMatrix::identity(d);
        let uu = DenseMatrix::from_fn(d, d, |i, j| unit.coords()[i] * unit.coords()[j]);
        // closed-form least squares in the 2-dim family span{tr, uu}
        let (a11, a12, a22) = (
            tr.data().iter().map(|x| x * x).sum::<f64>(),
            tr.data().iter().zip(uu.data()).map(|(x, y)| x * y).sum::<f64>(),
            uu.data().iter().map(|x| x * x).sum::<f64>(),
        );
        let (b1, b2) = (
            tr.data().iter().zip(g.data()).map(|(x, y)| x * y).sum::<f64>(),
            uu.data().iter().zip(g.data()).map(|(x, y)| x * y).sum::<f64>(),
        );
        let det = a11 * a22 - a12 * a12;
        let alpha = (b1 * a22 - b2 * a12) / det;
        let beta = (a11 * b2 - a12 * b1) / det;
        let fitted = tr.scale(alpha).add(&uu.scale(beta));
        let resid = fitted.sub(g).max_abs();
        assert!(resid <= 5e-3, "fit residual {resid}, alpha {alpha}, beta {beta}");
        // atom normalization pins α + β = 1
        assert!((alpha + beta - 1.0).abs() <= 5e-3);
    }

    #[test]
    fn invariance_self_consistency() {
        let tol = tol();
        let alg = Algebra::spin(3);
        let base = random_pd_form(&alg, 23);
        let inv = invariant_inner_product(&alg, &base, 3000, 5, &tol).unwrap();
        let mut rng = rng_for(99);
        for i in 0..5 {
            let t = sample_automorphism(&alg, derive_seed(1234, i), &tol);
            let a = random_element(&alg, &mut rng);
            let b = random_element(&alg, &mut rng);
            let lhs = inv.form.eval(&t.apply(&a), &t.apply(&b));
            let rhs = inv.form.eval(&a, &b);
            let scale = a.coord_norm() * b.coord_norm();
            assert!((lhs - rhs).abs() <= 2.0 * inv.residual * scale.max(1.0) + 1e-9);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Real, 2);
        let base = random_pd_form(&alg, 7);
        let a = invariant_inner_product(&alg, &base, 500, 21, &tol).unwrap();
        let b = invariant_inner_product(&alg, &base, 500, 21, &tol).unwrap();
        assert_eq!(a.form.gram(), b.form.gram());
        assert_eq!(a.residual.to_bits(), b.residual.to_bits());
    }
}
