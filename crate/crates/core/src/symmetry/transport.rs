//! Atom transport and one-parameter automorphism paths.
//!
//! Transport uses minimal-angle plane rotations rather than reflections: the
//! same generator then yields the continuous path t ↦ exp(tK), with T₀ = id.

use crate::algebra::{range_vector, Algebra, AlgebraView, Element};
use crate::kernel::quatmat::{quat_inner, quat_norm, QuatMatrix, QuatVector};
use crate::kernel::{DenseMatrix, Quaternion};
use crate::lattice::Projection;
use crate::tol::Tolerances;

use super::{Automorphism, SymmetryError};

enum PathKind {
    Identity,
    /// Plane rotation in span{u, b} of the ring module, conjugated onto the algebra.
    Matrix { u: QuatVector, b: QuatVector, theta: f64 },
    /// Plane rotation in span{a, b} ⊂ V.
    Spin { a: Vec<f64>, b: Vec<f64>, theta: f64 },
    /// Path inside one block of a direct sum.
    Block { offset: usize, inner: Box<AutomorphismPath> },
}

/// A continuous map t ↦ T_t with T₀ = id and T₁ the transport automorphism.
pub struct AutomorphismPath {
    algebra: Algebra,
    kind: PathKind,
    lipschitz: f64,
}

impl AutomorphismPath {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// Observed Lipschitz constant of t ↦ T_t in the coordinate Frobenius norm.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    pub fn at(&self, t: f64) -> Automorphism {
        match &self.kind {
            PathKind::Identity => Automorphism::identity(&self.algebra),
            PathKind::Matrix { u, b, theta } => {
                let rot = plane_rotation_matrix(u, b, t * theta);
                Automorphism::conjugation(&self.algebra, &rot)
            }
            PathKind::Spin { a, b, theta } => {
                let rot = plane_rotation_real(a, b, t * theta);
                Automorphism::spin_rotation(&self.algebra, &rot)
            }
            PathKind::Block { offset, inner } => {
                let t_inner = inner.at(t);
                Automorphism::lift_block(&self.algebra, *offset, &t_inner)
            }
        }
    }
}

/// exp(tθ(b u^* − u b^*)) = I + sin(tθ)(b u^* − u b^*) + (cos(tθ)−1)(u u^* + b b^*)
fn plane_rotation_matrix(u: &[Quaternion], b: &[Quaternion], angle: f64) -> QuatMatrix {
    let m = u.len();
    let (s, c) = angle.sin_cos();
    let mut out = QuatMatrix::identity(m);
    for i in 0..m {
        for j in 0..m {
            let skew = b[i] * u[j].conj() - u[i] * b[j].conj();
            let proj = u[i] * u[j].conj() + b[i] * b[j].conj();
            let v = out.get(i, j) + skew.scale(s) + proj.scale(c - 1.0);
            out.set(i, j, v);
        }
    }
    out
}

fn plane_rotation_real(a: &[f64], b: &[f64], angle: f64) -> DenseMatrix {
    let n = a.len();
    let (s, c) = angle.sin_cos();
    DenseMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        id + s * (b[i] * a[j] - a[i] * b[j]) + (c - 1.0) * (a[i] * a[j] + b[i] * b[j])
    })
}

fn atom_block(algebra: &Algebra, e: &Element) -> Option<(usize, usize)> {
    if let AlgebraView::Sum { parts, offsets } = algebra.kind() {
        for (i, (p, off)) in parts.iter().zip(offsets).enumerate() {
            let block = e.block(p, *off);
            if block.coord_inf_norm() > 1e-12 {
                return Some((i, *off));
            }
        }
    }
    None
}

fn require_atom(p: &Projection) -> Result<(), SymmetryError> {
    if p.rank() != 1 {
        return Err(SymmetryError::NotAnAtom { rank: p.rank() });
    }
    Ok(())
}

fn build_path(
    algebra: &Algebra,
    e1: &Projection,
    e2: &Projection,
    tol: &Tolerances,
) -> Result<AutomorphismPath, SymmetryError> {
    require_atom(e1)?;
    require_atom(e2)?;
    assert_eq!(e1.algebra(), algebra);
    assert_eq!(e2.algebra(), algebra);
    let kind = match algebra.kind() {
        AlgebraView::Matrix { .. } => matrix_plane(algebra, e1, e2, tol)?,
        AlgebraView::Spin { .. } => spin_plane(e1, e2)?,
        AlgebraView::Sum { parts, offsets: _ } => {
            let (i1, off1) = atom_block(algebra, e1.element()).expect("atom has a home block");
            let (i2, _) = atom_block(algebra, e2.element()).expect("atom has a home block");
            if i1 != i2 {
                let (a, b) = (&parts[i1], &parts[i2]);
                return Err(SymmetryError::CrossBlockAtoms {
                    block_a: a.to_string(),
                    dim_a: a.dim(),
                    block_b: b.to_string(),
                    dim_b: b.dim(),
                });
            }
            let part = parts[i1].clone();
            let b1 = Projection::from_atom(e1.element().block(&part, off1));
            let b2 = Projection::from_atom(e2.element().block(&part, off1));
            let inner = build_path(&part, &b1, &b2, tol)?;
            PathKind::Block { offset: off1, inner: Box::new(inner) }
        }
    };
    let mut path = AutomorphismPath { algebra: algebra.clone(), kind, lipschitz: 0.0 };
    path.lipschitz = estimate_lipschitz(&path);
    Ok(path)
}

fn matrix_plane(
    algebra: &Algebra,
    e1: &Projection,
    e2: &Projection,
    tol: &Tolerances,
) -> Result<PathKind, SymmetryError> {
    let m1 = algebra.to_matrix(e1.element().coords());
    let m2 = algebra.to_matrix(e2.element().coords());
    let u1 = range_vector(&m1);
    let u2 = range_vector(&m2);
    // rotate the free phase of u2 so ⟨u1, û2⟩ is real ≥ 0: minimal angle branch
    let h = quat_inner(&u1, &u2);
    let habs = h.norm();
    let u2_aligned: QuatVector = if habs > 1e-12 {
        let q = h.conj().scale(1.0 / habs);
        u2.iter().map(|&x| x * q).collect()
    } else {
        u2
    };
    let c = habs.min(1.0);
    // orthogonal component of û2 against u1
    let mut b: QuatVector = u2_aligned.clone();
    for (bi, ui) in b.iter_mut().zip(&u1) {
        *bi -= ui.scale(c);
    }
    let bn = quat_norm(&b);
    if bn <= tol.transport * 1e-2 {
        // same atom (up to phase)
        return Ok(PathKind::Identity);
    }
    let b: QuatVector = b.iter().map(|q| q.scale(1.0 / bn)).collect();
    let theta = c.clamp(-1.0, 1.0).acos();
    Ok(PathKind::Matrix { u: u1, b, theta })
}

fn spin_plane(e1: &Projection, e2: &Projection) -> Result<PathKind, SymmetryError> {
    // atom coords are (½, v̂/2)
    let v1: Vec<f64> = e1.element().coords()[1..].iter().map(|c| 2.0 * c).collect();
    let v2: Vec<f64> = e2.element().coords()[1..].iter().map(|c| 2.0 * c).collect();
    let n = v1.len();
    let c: f64 = v1.iter().zip(&v2).map(|(x, y)| x * y).sum();
    let c = c.clamp(-1.0, 1.0);
    if 1.0 - c <= 1e-14 {
        return Ok(PathKind::Identity);
    }
    let theta = c.acos();
    let b = if 1.0 + c <= 1e-12 {
        // antipodal atoms: rotate by π in the lexicographically first plane
        // containing v̂₁
        let mut partner = None;
        for k in 0..n {
            let mut cand = vec![0.0; n];
            cand[k] = 1.0;
            let overlap: f64 = cand.iter().zip(&v1).map(|(x, y)| x * y).sum();
            for (ci, vi) in cand.iter_mut().zip(&v1) {
                *ci -= overlap * vi;
            }
            let norm: f64 = cand.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-6 {
                partner = Some(cand.iter().map(|x| x / norm).collect::<Vec<f64>>());
                break;
            }
        }
        partner.expect("some basis direction is transverse to v̂₁")
    } else {
        let mut b: Vec<f64> = v2.iter().zip(&v1).map(|(y, x)| y - c * x).collect();
        let norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in b.iter_mut() {
            *x /= norm;
        }
        b
    };
    Ok(PathKind::Spin { a: v1, b, theta })
}

fn estimate_lipschitz(path: &AutomorphismPath) -> f64 {
    let h = 1.0 / 64.0;
    let mut worst = 0.0f64;
    let mut prev = path.at(0.0);
    let mut t = 0.0;
    while t < 1.0 - 1e-12 {
        let next = path.at(t + h);
        let diff = next.matrix().sub(prev.matrix()).frobenius() / h;
        worst = worst.max(diff);
        prev = next;
        t += h;
    }
    1.1 * worst
}

/// An automorphism with T(e₁) = e₂.
///
/// Atoms in different direct-sum blocks admit no blockwise automorphism; the
/// error reports the obstruction.
pub fn transport_automorphism(
    algebra: &Algebra,
    e1: &Projection,
    e2: &Projection,
    tol: &Tolerances,
) -> Result<Automorphism, SymmetryError> {
    Ok(build_path(algebra, e1, e2, tol)?.at(1.0))
}

/// The continuous one-parameter family t ↦ T_t with T₀ = id, T₁(e₁) = e₂.
pub fn continuous_path(
    algebra: &Algebra,
    e1: &Projection,
    e2: &Projection,
    tol: &Tolerances,
) -> Result<AutomorphismPath, SymmetryError> {
    build_path(algebra, e1, e2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::Verdict;
    use crate::kernel::{rng_for, Ring};
    use crate::sample::random_atom;
    use crate::symmetry::verify_automorphism;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn transport_same_atom_is_identity() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 3);
        let mut rng = rng_for(3);
        let e = random_atom(&alg, &mut rng, &tol);
        let t = transport_automorphism(&alg, &e, &e, &tol).unwrap();
        assert!(t.matrix().sub(&DenseMatrix::identity(alg.dim())).max_abs() <= 1e-9);
    }

    #[test]
    fn qubit_transport_to_plus_state() {
        let tol = tol();
        let alg = Algebra::matrix(Ring::Complex, 2);
        let e1 = Projection::from_atom(alg.element(vec![1.0, 0.0, 0.0, 0.0]).unwrap());
        let e2 = Projection::from_atom(
            alg.element(vec![0.5, 0.5, 0.5 * std::f64::consts::SQRT_2, 0.0]).unwrap(),
        );
        let t = transport_automorphism(&alg, &e1, &e2, &tol).unwrap();
        assert!(t.apply(e1.element()).sub(e2.element()).coord_inf_norm() <= 1e-8);
        let report = verify_automorphism(&alg, &t, 20, 1, &tol);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn transport_random_atoms_all_algebras() {
        let tol = tol();
        for alg in [
            Algebra::matrix(Ring::Real, 3),
            Algebra::matrix(Ring::Complex, 3),
            Algebra::matrix(Ring::Quaternion, 2),
            Algebra::spin(5),
        ] {
            let mut rng = rng_for(8);
            for _ in 0..10 {
                let e1 = random_atom(&alg, &mut rng, &tol);
                let e2 = random_atom(&alg, &mut rng, &tol);
                let t = transport_automorphism(&alg, &e1, &e2, &tol).unwrap();
                let defect = t.apply(e1.element()).sub(e2.element()).coord_inf_norm();
                assert!(defect <= 1e-8, "{alg}: transport defect {defect}");
            }
        }
    }

    #[test]
    fn spin_antipodal_transport() {
        let tol = tol();
        let alg = Algebra::spin(3);
        let e = Projection::from_atom(alg.element(vec![0.5, 0.5, 0.0, 0.0]).unwrap());
        let ec = Projection::from_atom(alg.element(vec![0.5, -0.5, 0.0, 0.0]).unwrap());
        let t = transport_automorphism(&alg, &e, &ec, &tol).unwrap();
        assert!(t.apply(e.element()).sub(ec.element()).coord_inf_norm() <= 1e-8);
    }

    #[test]
    fn path_endpoints_and_group_property() {
        let tol = tol();
        for alg in [Algebra::matrix(Ring::Complex, 3), Algebra::spin(4)] {
            let mut rng = rng_for(10);
            let e1 = random_atom(&alg, &mut rng, &tol);
            let e2 = random_atom(&alg, &mut rng, &tol);
            let path = continuous_path(&alg, &e1, &e2, &tol).unwrap();
            // T₀ = id
            let t0 = path.at(0.0);
            assert!(t0.matrix().sub(&DenseMatrix::identity(alg.dim())).max_abs() <= 1e-10);
            // T₁ transports
            let t1 = path.at(1.0);
            assert!(t1.apply(e1.element()).sub(e2.element()).coord_inf_norm() <= 1e-8);
            // matches transport_automorphism
            let t = transport_automorphism(&alg, &e1, &e2, &tol).unwrap();
            assert!(t.matrix().sub(t1.matrix()).max_abs() <= 1e-12);
            // halfway applied twice equals the endpoint
            let half = path.at(0.5);
            let twice = half.compose(&half);
            assert!(twice.matrix().sub(t1.matrix()).max_abs() <= 1e-9);
            // Lipschitz bound holds on sampled pairs
            let l = path.lipschitz();
            for k in 0..8 {
                let (s, t) = (k as f64 / 8.0, (k as f64 + 1.0) / 8.0);
                let d = path.at(t).matrix().sub(path.at(s).matrix()).frobenius();
                assert!(d <= l * (t - s) + 1e-12);
            }
        }
    }

    #[test]
    fn cross_block_transport_fails() {
        let tol = tol();
        let alg = Algebra::direct_sum(vec![
            Algebra::matrix(Ring::Complex, 2),
            Algebra::matrix(Ring::Real, 3),
        ]);
        let blocks = alg.blocks();
        let mut rng = rng_for(1);
        let a1 = random_atom(&blocks[0].0, &mut rng, &tol);
        let a2 = random_atom(&blocks[1].0, &mut rng, &tol);
        let mut e1 = alg.zero();
        e1.set_block(blocks[0].1, a1.element());
        let mut e2 = alg.zero();
        e2.set_block(blocks[1].1, a2.element());
        let err = transport_automorphism(
            &alg,
            &Projection::from_atom(e1),
            &Projection::from_atom(e2),
            &tol,
        )
        .unwrap_err();
        assert!(matches!(err, SymmetryError::CrossBlockAtoms { .. }));
    }
}
