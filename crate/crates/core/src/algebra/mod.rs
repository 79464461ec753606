//! Concrete order unit spaces: Jordan matrix algebras H_m(ℝ/ℂ/ℍ), spin
//! factors ℝ𝕀 ⊕ ℝⁿ, and finite direct sums.
//!
//! Elements are real coordinate vectors in a fixed basis. Matrix algebras use
//! the basis that is orthonormal under `Re tr(X Y)`: the diagonal units
//! `E_ii` followed by `(u E_ij + ū E_ji)/√2` for `i < j` and each ring unit
//! `u`. Spin factors use `(s, v)` with the unit at coordinate 0.

mod face;
mod spectral;
mod state;

pub use face::{restrict, Face};
pub use spectral::{
    in_cone, in_cone_with, order_norm, raw_spectrum, spectral_decompose, SpectralDecomposition,
    SpectralGroup,
};
pub use state::{atom_state, State};

use std::fmt;
use std::sync::Arc;

use serde::de::Error as SerdeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::kernel::quatmat::{QuatMatrix, Ring};
use crate::kernel::{Quaternion, Q_ONE};
use crate::tol::Tolerances;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("invalid algebra spec: {0}")]
    InvalidSpec(String),
    #[error("elements belong to different algebras")]
    MismatchedAlgebras,
    #[error("coordinate vector has length {got}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot restrict to the zero projection")]
    ZeroProjection,
    #[error("projection has unexpected rank {rank}")]
    BadRank { rank: usize },
}

/// Serializable description of an algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AlgebraSpec {
    Matrix { ring: Ring, m: usize },
    Spin { n: usize },
    Sum { parts: Vec<AlgebraSpec> },
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Matrix { ring, m } => write!(f, "H_{m}({})", ring.label()),
            AlgebraSpec::Spin { n } => write!(f, "spin({n})"),
            AlgebraSpec::Sum { parts } => {
                let inner: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", inner.join(" ⊕ "))
            }
        }
    }
}

#[derive(Debug)]
enum AlgebraKind {
    Matrix { ring: Ring, m: usize, basis: Vec<QuatMatrix> },
    Spin { n: usize },
    Sum { parts: Vec<Algebra>, offsets: Vec<usize> },
}

#[derive(Debug)]
struct AlgebraInner {
    spec: AlgebraSpec,
    kind: AlgebraKind,
    dim: usize,
    capacity: usize,
}

/// A concrete order unit algebra; cheap to clone (shared descriptor).
#[derive(Clone, Debug)]
pub struct Algebra {
    inner: Arc<AlgebraInner>,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.spec.fmt(f)
    }
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.inner.spec.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let spec = AlgebraSpec::deserialize(d)?;
        Algebra::from_spec(&spec).map_err(|e| D::Error::custom(e.to_string()))
    }
}

fn matrix_basis(ring: Ring, m: usize) -> Vec<QuatMatrix> {
    let mut basis = Vec::new();
    for i in 0..m {
        let mut b = QuatMatrix::zeros(m, m);
        b.set(i, i, Q_ONE);
        basis.push(b);
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..m {
        for j in (i + 1)..m {
            for &u in ring.units() {
                let mut b = QuatMatrix::zeros(m, m);
                b.set(i, j, u.scale(inv_sqrt2));
                b.set(j, i, u.conj().scale(inv_sqrt2));
                basis.push(b);
            }
        }
    }
    basis
}

/// dim H_m(ℝ) = m(m+1)/2, H_m(ℂ) = m², H_m(ℍ) = m(2m−1).
pub fn matrix_dim(ring: Ring, m: usize) -> usize {
    m + ring.factor() * m * (m - 1) / 2
}

impl Algebra {
    pub fn from_spec(spec: &AlgebraSpec) -> Result<Algebra, AlgebraError> {
        match spec {
            AlgebraSpec::Matrix { ring, m } => {
                if *m < 1 {
                    return Err(AlgebraError::InvalidSpec("matrix size m must be ≥ 1".into()));
                }
                Ok(Algebra::matrix(*ring, *m))
            }
            AlgebraSpec::Spin { n } => {
                if *n < 2 {
                    return Err(AlgebraError::InvalidSpec(
                        "spin factor needs n ≥ 2 (n = 1 is the reducible bit)".into(),
                    ));
                }
                Ok(Algebra::spin(*n))
            }
            AlgebraSpec::Sum { parts } => {
                if parts.is_empty() {
                    return Err(AlgebraError::InvalidSpec("sum needs at least one part".into()));
                }
                let parts: Result<Vec<Algebra>, AlgebraError> =
                    parts.iter().map(Algebra::from_spec).collect();
                Ok(Algebra::direct_sum(parts?))
            }
        }
    }

    pub fn matrix(ring: Ring, m: usize) -> Algebra {
        assert!(m >= 1);
        let basis = matrix_basis(ring, m);
        let dim = basis.len();
        debug_assert_eq!(dim, matrix_dim(ring, m));
        Algebra {
            inner: Arc::new(AlgebraInner {
                spec: AlgebraSpec::Matrix { ring, m },
                kind: AlgebraKind::Matrix { ring, m, basis },
                dim,
                capacity: m,
            }),
        }
    }

    pub fn spin(n: usize) -> Algebra {
        assert!(n >= 2, "spin factor needs n ≥ 2");
        Algebra {
            inner: Arc::new(AlgebraInner {
                spec: AlgebraSpec::Spin { n },
                kind: AlgebraKind::Spin { n },
                dim: n + 1,
                capacity: 2,
            }),
        }
    }

    pub fn direct_sum(parts: Vec<Algebra>) -> Algebra {
        assert!(!parts.is_empty());
        let mut offsets = Vec::with_capacity(parts.len());
        let mut dim = 0;
        let mut capacity = 0;
        for p in &parts {
            offsets.push(dim);
            dim += p.dim();
            capacity += p.capacity();
        }
        let spec = AlgebraSpec::Sum { parts: parts.iter().map(|p| p.spec().clone()).collect() };
        Algebra {
            inner: Arc::new(AlgebraInner {
                spec,
                kind: AlgebraKind::Sum { parts, offsets },
                dim,
                capacity,
            }),
        }
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.inner.spec
    }

    /// Real dimension of the coordinate space.
    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// Declared information capacity: m for H_m, 2 for spin factors, additive
    /// over sums.
    pub fn capacity(&self) -> usize {
        self.inner.capacity
    }

    pub fn is_sum(&self) -> bool {
        matches!(self.inner.kind, AlgebraKind::Sum { .. })
    }

    pub(crate) fn kind(&self) -> AlgebraView<'_> {
        match &self.inner.kind {
            AlgebraKind::Matrix { ring, m, basis } => {
                AlgebraView::Matrix { ring: *ring, m: *m, basis }
            }
            AlgebraKind::Spin { n } => AlgebraView::Spin { n: *n },
            AlgebraKind::Sum { parts, offsets } => AlgebraView::Sum { parts, offsets },
        }
    }

    /// Direct-sum parts with their coordinate offsets (singleton for leaves).
    pub fn blocks(&self) -> Vec<(Algebra, usize)> {
        match &self.inner.kind {
            AlgebraKind::Sum { parts, offsets } => {
                parts.iter().cloned().zip(offsets.iter().copied()).collect()
            }
            _ => vec![(self.clone(), 0)],
        }
    }

    /// Leaf blocks of a (possibly nested) sum with absolute offsets.
    pub fn leaf_blocks(&self) -> Vec<(Algebra, usize)> {
        match &self.inner.kind {
            AlgebraKind::Sum { parts, offsets } => {
                let mut out = Vec::new();
                for (p, off) in parts.iter().zip(offsets) {
                    for (leaf, inner_off) in p.leaf_blocks() {
                        out.push((leaf, off + inner_off));
                    }
                }
                out
            }
            _ => vec![(self.clone(), 0)],
        }
    }

    pub fn zero(&self) -> Element {
        Element { algebra: self.clone(), coords: vec![0.0; self.dim()] }
    }

    /// The order unit 𝕀.
    pub fn unit(&self) -> Element {
        let mut coords = vec![0.0; self.dim()];
        match &self.inner.kind {
            AlgebraKind::Matrix { m, .. } => {
                for c in coords.iter_mut().take(*m) {
                    *c = 1.0;
                }
            }
            AlgebraKind::Spin { .. } => coords[0] = 1.0,
            AlgebraKind::Sum { parts, offsets } => {
                for (p, off) in parts.iter().zip(offsets) {
                    let u = p.unit();
                    coords[*off..off + p.dim()].copy_from_slice(u.coords());
                }
            }
        }
        Element { algebra: self.clone(), coords }
    }

    pub fn element(&self, coords: Vec<f64>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim(), got: coords.len() });
        }
        Ok(Element { algebra: self.clone(), coords })
    }

    pub(crate) fn element_unchecked(&self, coords: Vec<f64>) -> Element {
        debug_assert_eq!(coords.len(), self.dim());
        Element { algebra: self.clone(), coords }
    }

    /// Materialize matrix-algebra coordinates as a Hermitian matrix.
    ///
    /// Panics on spin factors and sums.
    pub fn to_matrix(&self, coords: &[f64]) -> QuatMatrix {
        match &self.inner.kind {
            AlgebraKind::Matrix { m, basis, .. } => {
                let mut out = QuatMatrix::zeros(*m, *m);
                for (c, b) in coords.iter().zip(basis) {
                    if *c == 0.0 {
                        continue;
                    }
                    out = out.add(&b.scale(*c));
                }
                out
            }
            _ => panic!("to_matrix on a non-matrix algebra"),
        }
    }

    /// Coordinates of a Hermitian matrix in the trace-orthonormal basis.
    pub fn from_matrix(&self, mat: &QuatMatrix) -> Vec<f64> {
        match &self.inner.kind {
            AlgebraKind::Matrix { basis, .. } => {
                basis.iter().map(|b| b.re_inner(mat)).collect()
            }
            _ => panic!("from_matrix on a non-matrix algebra"),
        }
    }

    /// Element wrapping a Hermitian matrix.
    pub fn matrix_element(&self, mat: &QuatMatrix) -> Element {
        self.element_unchecked(self.from_matrix(mat))
    }
}

pub(crate) enum AlgebraView<'a> {
    Matrix { ring: Ring, m: usize, basis: &'a [QuatMatrix] },
    Spin { n: usize },
    Sum { parts: &'a [Algebra], offsets: &'a [usize] },
}

/// An observable: a coordinate vector in its algebra's fixed basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    algebra: Algebra,
    coords: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    algebra: AlgebraSpec,
    coords: Vec<f64>,
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ElementRepr { algebra: self.algebra.spec().clone(), coords: self.coords.clone() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let algebra =
            Algebra::from_spec(&repr.algebra).map_err(|e| D::Error::custom(e.to_string()))?;
        algebra.element(repr.coords).map_err(|e| D::Error::custom(e.to_string()))
    }
}

impl Element {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.algebra, other.algebra, "mismatched algebras");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Element { algebra: self.algebra.clone(), coords }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.algebra, other.algebra, "mismatched algebras");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Element { algebra: self.algebra.clone(), coords }
    }

    pub fn scale(&self, t: f64) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(-1.0)
    }

    /// Max-abs coordinate.
    pub fn coord_inf_norm(&self) -> f64 {
        self.coords.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Coordinate 2-norm.
    pub fn coord_norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Equality with absolute tolerance scaled by `max(1, ‖·‖)`.
    pub fn approx_eq(&self, other: &Element, tol: &Tolerances) -> bool {
        if self.algebra != other.algebra {
            return false;
        }
        let scale = 1.0f64.max(self.coord_inf_norm()).max(other.coord_inf_norm());
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| (a - b).abs() <= tol.element_abs * scale)
    }

    pub fn is_zero(&self, tol: &Tolerances) -> bool {
        self.coord_inf_norm() <= tol.element_abs
    }

    /// Block slice of a direct-sum element.
    pub fn block(&self, algebra: &Algebra, offset: usize) -> Element {
        algebra.element_unchecked(self.coords[offset..offset + algebra.dim()].to_vec())
    }

    /// Write a block's coordinates into a direct-sum element.
    pub fn set_block(&mut self, offset: usize, part: &Element) {
        self.coords[offset..offset + part.coords.len()].copy_from_slice(&part.coords);
    }
}

/// The commutative bilinear Jordan product.
///
/// Matrix algebras use the symmetrized matrix product `(ab + ba)/2`; spin
/// factors use `(v+s𝕀)∘(w+t𝕀) = tv + sw + (⟨v,w⟩ + st)𝕀` with the plain dot
/// product on V; direct sums act blockwise.
pub fn jordan_product(a: &Element, b: &Element) -> Result<Element, AlgebraError> {
    if a.algebra != b.algebra {
        return Err(AlgebraError::MismatchedAlgebras);
    }
    Ok(jordan_product_unchecked(a, b))
}

pub(crate) fn jordan_product_unchecked(a: &Element, b: &Element) -> Element {
    let algebra = a.algebra.clone();
    match algebra.kind() {
        AlgebraView::Matrix { .. } => {
            let x = algebra.to_matrix(a.coords());
            let y = algebra.to_matrix(b.coords());
            let sym = x.mul(&y).add(&y.mul(&x)).scale(0.5);
            algebra.matrix_element(&sym)
        }
        AlgebraView::Spin { n } => {
            let (s, v) = (a.coords[0], &a.coords[1..]);
            let (t, w) = (b.coords[0], &b.coords[1..]);
            let dot: f64 = v.iter().zip(w).map(|(x, y)| x * y).sum();
            let mut coords = vec![0.0; n + 1];
            coords[0] = s * t + dot;
            for k in 0..n {
                coords[k + 1] = t * v[k] + s * w[k];
            }
            algebra.element_unchecked(coords)
        }
        AlgebraView::Sum { parts, offsets } => {
            let mut out = algebra.zero();
            for (p, off) in parts.iter().zip(offsets) {
                let pa = a.block(p, *off);
                let pb = b.block(p, *off);
                out.set_block(*off, &jordan_product_unchecked(&pa, &pb));
            }
            out
        }
    }
}

/// Direct sum of algebras; coordinates concatenate and all operations act
/// blockwise.
pub fn direct_sum(parts: Vec<Algebra>) -> Algebra {
    Algebra::direct_sum(parts)
}

/// Extract the unit-norm range vector of a rank-one Hermitian matrix.
pub(crate) fn range_vector(atom: &QuatMatrix) -> Vec<Quaternion> {
    let m = atom.rows;
    // pick the column with the largest norm for stability
    let mut best = 0;
    let mut best_norm = -1.0;
    for j in 0..m {
        let n: f64 = (0..m).map(|i| atom.get(i, j).norm_sq()).sum();
        if n > best_norm {
            best_norm = n;
            best = j;
        }
    }
    let scale = 1.0 / best_norm.sqrt();
    (0..m).map(|i| atom.get(i, best).scale(scale)).collect()
}
