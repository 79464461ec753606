//! Spin-factor reconstruction for capacity-2 algebras: from an invariant
//! inner product, derive the atom cross norm s_o, the normalized form
//! ⟨·|·⟩₁, the 𝕀 ⊕ V split, and the spin product — then verify the Jordan
//! axioms numerically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{in_cone_with, jordan_product_unchecked, Algebra, Element};
use crate::checks::{CheckReport, Witness};
use crate::kernel::{derive_seed, rng_for, sym_eigen, DenseMatrix};
use crate::sample::{random_atom, random_element};
use crate::symmetry::{invariant_inner_product, InnerProductForm, InvariantProduct, SymmetryError};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum ReconstructError {
    #[error("reconstruction needs information capacity 2, algebra has {capacity}")]
    CapacityNot2 { capacity: usize },
    #[error("atom cross norms spread {spread:.3e} exceeds the limit {limit:.3e}; the form is not invariant enough")]
    SpreadTooLarge { spread: f64, limit: f64 },
    #[error("s_o = {s_o} violates the Cauchy-Schwarz bound |s_o| < 1")]
    SOutOfRange { s_o: f64 },
    #[error("constructed product violates `{what}` with residual {residual:.3e}")]
    InvariantViolated { what: String, residual: f64 },
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Structure constants of a bilinear product on coordinates:
/// `coeff(k, i, j)` is the k-th coordinate of `B_i ∘ B_j`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductTable {
    pub dim: usize,
    pub unit: Vec<f64>,
    coeffs: Vec<f64>,
}

impl ProductTable {
    pub fn new(dim: usize, unit: Vec<f64>, coeffs: Vec<f64>) -> ProductTable {
        assert_eq!(unit.len(), dim);
        assert_eq!(coeffs.len(), dim * dim * dim);
        ProductTable { dim, unit, coeffs }
    }

    #[inline]
    pub fn coeff(&self, k: usize, i: usize, j: usize) -> f64 {
        self.coeffs[(k * self.dim + i) * self.dim + j]
    }

    pub fn set_coeff(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.coeffs[(k * self.dim + i) * self.dim + j] = v;
    }

    /// Bilinear product of coordinate vectors.
    pub fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for (k, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for i in 0..self.dim {
                if a[i] == 0.0 {
                    continue;
                }
                let row = (k * self.dim + i) * self.dim;
                let mut inner = 0.0;
                for j in 0..self.dim {
                    inner += self.coeffs[row + j] * b[j];
                }
                acc += a[i] * inner;
            }
            *o = acc;
        }
        out
    }

    /// Copy with one structure constant shifted (for negative controls).
    pub fn perturbed(&self, k: usize, i: usize, j: usize, delta: f64) -> ProductTable {
        let mut out = self.clone();
        out.set_coeff(k, i, j, out.coeff(k, i, j) + delta);
        out
    }
}

/// The algebra's own Jordan product as a table.
pub fn native_product_table(algebra: &Algebra) -> ProductTable {
    let d = algebra.dim();
    let mut coeffs = vec![0.0; d * d * d];
    for i in 0..d {
        let mut ci = vec![0.0; d];
        ci[i] = 1.0;
        let bi = algebra.element_unchecked(ci);
        for j in 0..=i {
            let mut cj = vec![0.0; d];
            cj[j] = 1.0;
            let bj = algebra.element_unchecked(cj);
            let prod = jordan_product_unchecked(&bi, &bj);
            for (k, v) in prod.coords().iter().enumerate() {
                coeffs[(k * d + i) * d + j] = *v;
                coeffs[(k * d + j) * d + i] = *v;
            }
        }
    }
    ProductTable::new(d, algebra.unit().coords().to_vec(), coeffs)
}

/// Everything the capacity-2 construction produces.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpinConstruction {
    pub algebra: Algebra,
    pub product_o: InnerProductForm,
    pub product_1: InnerProductForm,
    pub s_o: f64,
    /// ⟨·|·⟩₁-orthonormal basis of V = 𝕀^⊥, as columns of coordinate vectors.
    pub v_basis: Vec<Element>,
    pub table: ProductTable,
}

const S_O_ATOM_SAMPLES: usize = 64;

/// The constant cross norm s_o = ⟨e|e'⟩_o, estimated over sampled atoms.
///
/// `residual` is the invariance residual of `product_o`; the sample spread
/// must stay within `s_o_spread_factor` times it.
pub fn compute_s_o(
    algebra: &Algebra,
    product_o: &InnerProductForm,
    n_atoms: usize,
    seed: u64,
    residual: f64,
    tol: &Tolerances,
) -> Result<f64, ReconstructError> {
    if algebra.capacity() != 2 {
        return Err(ReconstructError::CapacityNot2 { capacity: algebra.capacity() });
    }
    let n_atoms = n_atoms.max(2);
    let unit = algebra.unit();
    let mut values = Vec::with_capacity(n_atoms);
    for i in 0..n_atoms {
        let mut rng = rng_for(derive_seed(seed, i as u64));
        let atom = random_atom(algebra, &mut rng, tol);
        let comp = unit.sub(atom.element());
        values.push(product_o.eval(atom.element(), &comp));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let spread = values.iter().fold(0.0f64, |acc, v| acc.max((v - mean).abs()));
    // exact forms have residual ~ rounding noise; keep a floor on the limit
    let limit = (tol.s_o_spread_factor * residual).max(1e-9);
    if spread > limit {
        return Err(ReconstructError::SpreadTooLarge { spread, limit });
    }
    if mean.abs() >= 1.0 - tol.s_o_margin {
        return Err(ReconstructError::SOutOfRange { s_o: mean });
    }
    Ok(mean)
}

/// The normalized inner product
/// `⟨a|b⟩₁ = (⟨a|b⟩_o − s_o/(1+s_o)² ⟨𝕀|a⟩_o⟨𝕀|b⟩_o) / (1−s_o)`,
/// under which atoms have norm 1 and orthogonal atoms are ⟨·|·⟩₁-orthogonal.
pub fn build_product_1(
    algebra: &Algebra,
    product_o: &InnerProductForm,
    s_o: f64,
    tol: &Tolerances,
) -> Result<InnerProductForm, ReconstructError> {
    if s_o.abs() >= 1.0 {
        return Err(ReconstructError::SOutOfRange { s_o });
    }
    let g = product_o.gram();
    let gu = g.matvec(algebra.unit().coords());
    let d = algebra.dim();
    let coef = s_o / ((1.0 + s_o) * (1.0 + s_o));
    let gram = DenseMatrix::from_fn(d, d, |i, j| (g.get(i, j) - coef * gu[i] * gu[j]) / (1.0 - s_o));
    InnerProductForm::new(algebra, gram, tol).map_err(ReconstructError::from)
}

/// ⟨·|·⟩₁-orthonormal basis of V = {v : ⟨𝕀|v⟩₁ = 0}; dimension is dim(A) − 1.
pub fn split_unit_complement(
    algebra: &Algebra,
    product_1: &InnerProductForm,
    tol: &Tolerances,
) -> Vec<Element> {
    let d = algebra.dim();
    let unit = algebra.unit();
    let unit_sq = product_1.eval(&unit, &unit);
    let mut basis: Vec<Element> = Vec::with_capacity(d - 1);
    for k in 0..d {
        if basis.len() == d - 1 {
            break;
        }
        let mut coords = vec![0.0; d];
        coords[k] = 1.0;
        let mut v = algebra.element_unchecked(coords);
        // project off 𝕀, then Gram-Schmidt in the ⟨·|·⟩₁ metric
        let c = product_1.eval(&unit, &v) / unit_sq;
        v = v.sub(&unit.scale(c));
        for _ in 0..2 {
            for u in &basis {
                let c = product_1.eval(u, &v);
                v = v.sub(&u.scale(c));
            }
        }
        let norm = product_1.eval(&v, &v);
        if norm <= tol.gram_drop {
            continue;
        }
        basis.push(v.scale(1.0 / norm.sqrt()));
    }
    assert_eq!(basis.len(), d - 1, "unit complement has dimension dim − 1");
    basis
}

/// Build the spin product `(v+s𝕀)∘(w+t𝕀) = tv + sw + (½⟨v|w⟩₁ + st)𝕀`.
///
/// The coefficient ½ on the ⟨·|·⟩₁ term is what makes atoms idempotent under
/// the norm convention ⟨e|e⟩₁ = 1 (equivalently: the conventional ¼
/// coefficient applied to the doubled form with ⟨e−e'|e−e'⟩ = 4).
pub fn build_spin_product(
    algebra: &Algebra,
    product_o: &InnerProductForm,
    product_1: &InnerProductForm,
    s_o: f64,
    v_basis: Vec<Element>,
    match_tolerance: f64,
    tol: &Tolerances,
) -> Result<SpinConstruction, ReconstructError> {
    let d = algebra.dim();
    let unit = algebra.unit();
    let unit_sq = product_1.eval(&unit, &unit);

    let split = |a: &Element| -> (f64, Element) {
        let s = product_1.eval(&unit, a) / unit_sq;
        (s, a.sub(&unit.scale(s)))
    };
    let spin_mul = |a: &Element, b: &Element| -> Element {
        let (s, va) = split(a);
        let (t, vb) = split(b);
        let cross = 0.5 * product_1.eval(&va, &vb) + s * t;
        va.scale(t).add(&vb.scale(s)).add(&unit.scale(cross))
    };

    let mut coeffs = vec![0.0; d * d * d];
    for i in 0..d {
        let mut ci = vec![0.0; d];
        ci[i] = 1.0;
        let bi = algebra.element_unchecked(ci);
        for j in 0..=i {
            let mut cj = vec![0.0; d];
            cj[j] = 1.0;
            let bj = algebra.element_unchecked(cj);
            let prod = spin_mul(&bi, &bj);
            for (k, v) in prod.coords().iter().enumerate() {
                coeffs[(k * d + i) * d + j] = *v;
                coeffs[(k * d + j) * d + i] = *v;
            }
        }
    }
    let table = ProductTable::new(d, unit.coords().to_vec(), coeffs);

    // 𝕀 is the identity for the product
    for i in 0..d {
        let mut ci = vec![0.0; d];
        ci[i] = 1.0;
        let out = table.mul(unit.coords(), &ci);
        let residual =
            out.iter().zip(&ci).map(|(a, b)| (a - b).abs()).fold(0.0f64, f64::max);
        if residual > tol.jordan_table {
            return Err(ReconstructError::InvariantViolated {
                what: "unit law".into(),
                residual,
            });
        }
    }

    // constructed atoms ê = ½𝕀 + ŵ with ⟨ŵ|ŵ⟩₁ = ½ are idempotent, and
    // ê ∘ ê' = 0
    for w in &v_basis {
        let atom = unit.scale(0.5).add(&w.scale(0.5f64.sqrt()));
        let comp = unit.sub(&atom);
        let sq = table.mul(atom.coords(), atom.coords());
        let idem = sq
            .iter()
            .zip(atom.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if idem > tol.jordan_table {
            return Err(ReconstructError::InvariantViolated {
                what: "atom idempotency".into(),
                residual: idem,
            });
        }
        let cross = table.mul(atom.coords(), comp.coords());
        let cross_residual = cross.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if cross_residual > tol.jordan_table {
            return Err(ReconstructError::InvariantViolated {
                what: "atom-complement product".into(),
                residual: cross_residual,
            });
        }
    }

    // sampled native atoms are idempotent within the propagated Monte-Carlo
    // tolerance
    let mut rng = rng_for(0x5EED_A70E);
    for _ in 0..8 {
        let atom = random_atom(algebra, &mut rng, tol);
        let sq = table.mul(atom.element().coords(), atom.element().coords());
        let idem = sq
            .iter()
            .zip(atom.element().coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if idem > match_tolerance {
            return Err(ReconstructError::InvariantViolated {
                what: "sampled atom idempotency".into(),
                residual: idem,
            });
        }
    }

    Ok(SpinConstruction {
        algebra: algebra.clone(),
        product_o: product_o.clone(),
        product_1: product_1.clone(),
        s_o,
        v_basis,
        table,
    })
}

/// Verify commutativity, the unit law, the Jordan identity and positivity of
/// squares for a product table, on random normalized elements.
pub fn verify_jordan(
    algebra: &Algebra,
    table: &ProductTable,
    trials: u32,
    seed: u64,
    tol: &Tolerances,
) -> CheckReport {
    let property = "jordan";
    if trials == 0 {
        return CheckReport::inconclusive(property, algebra, 0, seed, 0.0, "trial budget is zero");
    }
    let mut worst = 0.0f64;
    let inf = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let diff = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0f64, f64::max)
    };
    for trial in 0..trials {
        let trial_seed = derive_seed(seed, trial as u64);
        let mut rng = rng_for(trial_seed);
        let a_el = random_element(algebra, &mut rng);
        let b_el = random_element(algebra, &mut rng);
        let a: Vec<f64> = a_el.coords().iter().map(|c| c / a_el.coord_norm()).collect();
        let b: Vec<f64> = b_el.coords().iter().map(|c| c / b_el.coord_norm()).collect();
        let fail = |desc: &str, residual: f64| {
            CheckReport::fail(
                property,
                algebra,
                trial + 1,
                seed,
                residual,
                Witness::new(
                    trial,
                    trial_seed,
                    vec![
                        algebra.element_unchecked(a.clone()),
                        algebra.element_unchecked(b.clone()),
                    ],
                    desc,
                ),
            )
        };
        let comm = diff(&table.mul(&a, &b), &table.mul(&b, &a));
        worst = worst.max(comm);
        if comm > tol.jordan_table {
            return fail("product is not commutative", comm);
        }
        let unit_res = diff(&table.mul(&table.unit, &a), &a);
        worst = worst.max(unit_res);
        if unit_res > tol.jordan_table {
            return fail("unit law fails", unit_res);
        }
        // (a²∘b)∘a = a²∘(b∘a)
        let a2 = table.mul(&a, &a);
        let lhs = table.mul(&table.mul(&a2, &b), &a);
        let rhs = table.mul(&a2, &table.mul(&b, &a));
        let jordan = diff(&lhs, &rhs);
        worst = worst.max(jordan);
        if jordan > tol.jordan_table {
            return fail("Jordan identity fails", jordan);
        }
        // squares lie in the cone and vanish only at zero
        let sq = algebra.element_unchecked(a2.clone());
        let eps = tol.jordan_table * 1.0f64.max(inf(&a2));
        if !in_cone_with(&sq, eps, tol) {
            return fail("square left the positive cone", 0.0);
        }
        if inf(&a2) <= 1e-8 {
            return fail("square of a unit-norm element vanished", inf(&a2));
        }
    }
    CheckReport::pass(property, algebra, trials, seed, worst)
}

/// The full capacity-2 pipeline: invariant product → s_o → ⟨·|·⟩₁ → V →
/// spin product → Jordan verification.
#[derive(Debug)]
pub struct Reconstruction {
    pub construction: SpinConstruction,
    pub invariant: InvariantProduct,
    pub jordan: CheckReport,
}

pub fn reconstruct_spin(
    algebra: &Algebra,
    base: Option<&InnerProductForm>,
    n_samples: u32,
    seed: u64,
    tol: &Tolerances,
) -> Result<Reconstruction, ReconstructError> {
    if algebra.capacity() != 2 {
        return Err(ReconstructError::CapacityNot2 { capacity: algebra.capacity() });
    }
    let default_base = InnerProductForm::coordinate_form(algebra);
    let base = base.unwrap_or(&default_base);
    let invariant = invariant_inner_product(algebra, base, n_samples, seed, tol)?;
    let s_o = compute_s_o(
        algebra,
        &invariant.form,
        S_O_ATOM_SAMPLES,
        derive_seed(seed, 1),
        invariant.residual,
        tol,
    )?;
    let product_1 = build_product_1(algebra, &invariant.form, s_o, tol)?;
    let v_basis = split_unit_complement(algebra, &product_1, tol);
    let match_tolerance = (tol.recon_match_factor * invariant.residual).max(tol.jordan_table);
    let construction = build_spin_product(
        algebra,
        &invariant.form,
        &product_1,
        s_o,
        v_basis,
        match_tolerance,
        tol,
    )?;
    let jordan = verify_jordan(algebra, &construction.table, 64, derive_seed(seed, 2), tol);
    Ok(Reconstruction { construction, invariant, jordan })
}

/// How far the constructed product is from the algebra's own Jordan product.
#[derive(Clone, Copy, Debug)]
pub struct NativeComparison {
    /// After aligning the constructed V basis onto the native one by
    /// orthogonal Procrustes.
    pub aligned_residual: f64,
    /// Raw coordinate-tensor difference.
    pub direct_residual: f64,
}

/// Compare a construction against the native Jordan product.
///
/// The isomorphism is only pinned up to a rotation of V, so the constructed
/// basis is aligned onto the native complement of 𝕀 by orthogonal Procrustes
/// before products are compared.
pub fn compare_to_native(
    algebra: &Algebra,
    cons: &SpinConstruction,
    tol: &Tolerances,
) -> NativeComparison {
    let d = algebra.dim();
    let native = native_product_table(algebra);

    let mut direct = 0.0f64;
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                direct = direct.max((cons.table.coeff(k, i, j) - native.coeff(k, i, j)).abs());
            }
        }
    }

    // native V basis, orthonormal under the exactly invariant atom-norm-1 form
    let native_v = split_unit_complement(algebra, &native_product_1(algebra), tol);
    let vc = DenseMatrix::from_columns(
        &cons.v_basis.iter().map(|e| e.coords().to_vec()).collect::<Vec<_>>(),
    );
    let vn = DenseMatrix::from_columns(
        &native_v.iter().map(|e| e.coords().to_vec()).collect::<Vec<_>>(),
    );
    let q = procrustes_rotation(&vc, &vn, tol);
    let vc_aligned = vc.matmul(&q);

    // linear map Φ with Φ(𝕀) = 𝕀, Φ(aligned constructed basis) = native basis
    let unit = algebra.unit().coords().to_vec();
    let mut pc_cols = vec![unit.clone()];
    pc_cols.extend(vc_aligned.columns());
    let mut pn_cols = vec![unit];
    pn_cols.extend(vn.columns());
    let pc = DenseMatrix::from_columns(&pc_cols);
    let pn = DenseMatrix::from_columns(&pn_cols);
    let phi = match pc.inverse() {
        Ok(pc_inv) => pn.matmul(&pc_inv),
        Err(_) => DenseMatrix::identity(d),
    };

    // residual of Φ as a Jordan homomorphism onto the native product
    let mut aligned = 0.0f64;
    for i in 0..d {
        let mut ei = vec![0.0; d];
        ei[i] = 1.0;
        for j in 0..=i {
            let mut ej = vec![0.0; d];
            ej[j] = 1.0;
            let lhs = phi.matvec(&cons.table.mul(&ei, &ej));
            let rhs = native.mul(&phi.matvec(&ei), &phi.matvec(&ej));
            for (x, y) in lhs.iter().zip(&rhs) {
                aligned = aligned.max((x - y).abs());
            }
        }
    }
    NativeComparison { aligned_residual: aligned, direct_residual: direct }
}

/// The exactly invariant inner product with atom norm 1: the trace form on
/// matrix algebras, twice the coordinate form on spin factors.
pub fn native_product_1(algebra: &Algebra) -> InnerProductForm {
    let gram = match algebra.spec() {
        crate::algebra::AlgebraSpec::Spin { .. } => DenseMatrix::identity(algebra.dim()).scale(2.0),
        _ => DenseMatrix::identity(algebra.dim()),
    };
    InnerProductForm::from_gram_unchecked(algebra, gram)
}

/// Orthogonal Procrustes: the rotation Q minimizing ‖A Q − B‖_F, via the
/// polar factor of AᵀB.
fn procrustes_rotation(a: &DenseMatrix, b: &DenseMatrix, tol: &Tolerances) -> DenseMatrix {
    let m = a.transpose().matmul(b);
    let mtm = m.transpose().matmul(&m).symmetrize();
    let eig = match sym_eigen(&mtm, tol) {
        Ok(e) => e,
        Err(_) => return DenseMatrix::identity(m.rows),
    };
    if eig.eigenvalues.iter().any(|v| *v <= 1e-12) {
        return DenseMatrix::identity(m.rows);
    }
    // (MᵀM)^{-1/2} = V diag(λ^{-1/2}) Vᵀ
    let n = m.rows;
    let mut inv_sqrt = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += eig.vectors.get(i, k) * eig.vectors.get(j, k) / eig.eigenvalues[k].sqrt();
            }
            inv_sqrt.set(i, j, acc);
        }
    }
    m.matmul(&inv_sqrt)
}
