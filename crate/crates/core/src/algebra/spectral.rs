//! Spectral decomposition of elements into orthogonal atoms.

use crate::kernel::quatmat::{outer, quat_gram_schmidt, quat_vector_from_real, QuatVector, Ring};
use crate::kernel::{cluster_eigenvalues, sym_eigen, sym_eigenvalues};
use crate::tol::Tolerances;

use super::{Algebra, AlgebraView, Element};

/// One eigenvalue with the orthogonal atoms spanning its eigenspace.
#[derive(Clone, Debug)]
pub struct SpectralGroup {
    pub eigenvalue: f64,
    pub atoms: Vec<Element>,
}

/// `a = Σ s_k e_k` with distinct eigenvalues listed once (ascending) and each
/// eigenspace expanded into orthogonal rank-one atoms.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub groups: Vec<SpectralGroup>,
}

impl SpectralDecomposition {
    /// Distinct eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.eigenvalue).collect()
    }

    /// All (eigenvalue, atom) pairs with eigenvalues repeated per atom.
    pub fn expanded(&self) -> Vec<(f64, &Element)> {
        self.groups
            .iter()
            .flat_map(|g| g.atoms.iter().map(move |e| (g.eigenvalue, e)))
            .collect()
    }

    pub fn atom_count(&self) -> usize {
        self.groups.iter().map(|g| g.atoms.len()).sum()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.groups.first().map(|g| g.eigenvalue).unwrap_or(0.0)
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.groups.last().map(|g| g.eigenvalue).unwrap_or(0.0)
    }

    /// `Σ s_k e_k`.
    pub fn reconstruct(&self, algebra: &Algebra) -> Element {
        let mut out = algebra.zero();
        for g in &self.groups {
            for atom in &g.atoms {
                out = out.add(&atom.scale(g.eigenvalue));
            }
        }
        out
    }

    /// Sum of all atoms (should be the unit).
    pub fn atom_sum(&self, algebra: &Algebra) -> Element {
        let mut out = algebra.zero();
        for g in &self.groups {
            for atom in &g.atoms {
                out = out.add(atom);
            }
        }
        out
    }
}

/// Decompose an element as `Σ s_k e_k` with orthogonal atoms summing to 𝕀.
pub fn spectral_decompose(a: &Element, tol: &Tolerances) -> SpectralDecomposition {
    let algebra = a.algebra().clone();
    match algebra.kind() {
        AlgebraView::Matrix { ring, .. } => decompose_matrix(&algebra, a, ring, tol),
        AlgebraView::Spin { n } => decompose_spin(&algebra, a, n, tol),
        AlgebraView::Sum { parts, offsets } => {
            let mut pairs: Vec<(f64, Element)> = Vec::new();
            for (p, off) in parts.iter().zip(offsets) {
                let block = a.block(p, *off);
                for g in spectral_decompose(&block, tol).groups {
                    for atom in g.atoms {
                        let mut embedded = algebra.zero();
                        embedded.set_block(*off, &atom);
                        pairs.push((g.eigenvalue, embedded));
                    }
                }
            }
            merge_groups(pairs, tol)
        }
    }
}

fn decompose_matrix(
    algebra: &Algebra,
    a: &Element,
    ring: Ring,
    tol: &Tolerances,
) -> SpectralDecomposition {
    let mat = algebra.to_matrix(a.coords());
    let embedded = mat.embed(ring);
    let eig = sym_eigen(&embedded, tol).expect("embedded Hermitian matrix must be symmetric");
    let factor = ring.factor();
    let scale = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut groups = Vec::new();
    for range in cluster_eigenvalues(&eig.eigenvalues, scale, tol) {
        let real_dim = range.len();
        assert!(
            real_dim % factor == 0,
            "eigenvalue multiplicity {real_dim} not divisible by embedding factor {factor}"
        );
        let rank = real_dim / factor;
        let eigenvalue =
            eig.eigenvalues[range.clone()].iter().sum::<f64>() / real_dim as f64;
        // Unembed the cluster's eigenvectors and orthonormalize as a right
        // module; each unit vector yields the atom u u^*.
        let columns: Vec<QuatVector> = range
            .clone()
            .map(|j| quat_vector_from_real(&eig.vectors.column(j), ring))
            .collect();
        let basis = quat_gram_schmidt(&columns, rank, tol);
        assert_eq!(basis.len(), rank, "eigenspace rank extraction failed");
        let atoms = basis
            .iter()
            .map(|u| {
                let mut v = u.clone();
                let n = crate::kernel::quat_norm(&v);
                for q in v.iter_mut() {
                    *q = q.scale(1.0 / n);
                }
                algebra.matrix_element(&outer(&v))
            })
            .collect();
        groups.push(SpectralGroup { eigenvalue, atoms });
    }
    SpectralDecomposition { groups }
}

fn decompose_spin(
    algebra: &Algebra,
    a: &Element,
    n: usize,
    tol: &Tolerances,
) -> SpectralDecomposition {
    let s = a.coords()[0];
    let v = &a.coords()[1..];
    let vn: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let scale = 1.0f64.max(s.abs() + vn);
    let atom = |dir: &[f64], sign: f64| -> Element {
        let mut coords = vec![0.0; n + 1];
        coords[0] = 0.5;
        for k in 0..n {
            coords[k + 1] = 0.5 * sign * dir[k];
        }
        algebra.element_unchecked(coords)
    };
    if vn <= tol.spin_merge * scale {
        // Degenerate a = s𝕀: the representation is not unique; use the atom
        // pair from the first basis direction of V.
        let mut dir = vec![0.0; n];
        dir[0] = 1.0;
        let atoms = vec![atom(&dir, -1.0), atom(&dir, 1.0)];
        return SpectralDecomposition { groups: vec![SpectralGroup { eigenvalue: s, atoms }] };
    }
    let dir: Vec<f64> = v.iter().map(|x| x / vn).collect();
    SpectralDecomposition {
        groups: vec![
            SpectralGroup { eigenvalue: s - vn, atoms: vec![atom(&dir, -1.0)] },
            SpectralGroup { eigenvalue: s + vn, atoms: vec![atom(&dir, 1.0)] },
        ],
    }
}

fn merge_groups(mut pairs: Vec<(f64, Element)>, tol: &Tolerances) -> SpectralDecomposition {
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let scale = eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut groups = Vec::new();
    for range in cluster_eigenvalues(&eigenvalues, scale, tol) {
        let eigenvalue =
            eigenvalues[range.clone()].iter().sum::<f64>() / range.len() as f64;
        let atoms = pairs[range].iter().map(|p| p.1.clone()).collect();
        groups.push(SpectralGroup { eigenvalue, atoms });
    }
    SpectralDecomposition { groups }
}

/// Eigenvalues of an element as seen by the real embedding: matrix blocks
/// contribute each eigenvalue with its ring multiplicity collapsed, spin
/// factors contribute the closed-form pair `s ± ‖v‖`.
pub fn raw_spectrum(a: &Element, tol: &Tolerances) -> Vec<f64> {
    let algebra = a.algebra().clone();
    match algebra.kind() {
        AlgebraView::Matrix { ring, .. } => {
            let embedded = algebra.to_matrix(a.coords()).embed(ring);
            let eig = sym_eigenvalues(&embedded, tol)
                .expect("embedded Hermitian matrix must be symmetric");
            // every eigenvalue appears `factor` times; keep one per multiple
            eig.iter().step_by(ring.factor()).copied().collect()
        }
        AlgebraView::Spin { .. } => {
            let s = a.coords()[0];
            let vn: f64 = a.coords()[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
            vec![s - vn, s + vn]
        }
        AlgebraView::Sum { parts, offsets } => {
            let mut out = Vec::new();
            for (p, off) in parts.iter().zip(offsets) {
                out.extend(raw_spectrum(&a.block(p, *off), tol));
            }
            out.sort_by(|a, b| a.partial_cmp(b).unwrap());
            out
        }
    }
}

/// The order-unit norm `inf{s : −s𝕀 ≤ a ≤ s𝕀}` = max |spectral value|.
pub fn order_norm(a: &Element, tol: &Tolerances) -> f64 {
    raw_spectrum(a, tol).iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// `0 ≤ a` up to the default tolerance `cone · max(1, ‖a‖)`.
pub fn in_cone(a: &Element, tol: &Tolerances) -> bool {
    let spectrum = raw_spectrum(a, tol);
    let norm = spectrum.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let min = spectrum.iter().fold(f64::INFINITY, |acc, v| acc.min(*v));
    min >= -tol.cone * 1.0f64.max(norm)
}

/// `0 ≤ a` with an explicit absolute tolerance.
pub fn in_cone_with(a: &Element, eps: f64, tol: &Tolerances) -> bool {
    let spectrum = raw_spectrum(a, tol);
    spectrum.iter().all(|v| *v >= -eps)
}
