//! States: normalized non-negative linear functionals.

use serde::{Deserialize, Serialize};

use crate::lattice::Projection;
use crate::tol::Tolerances;

use super::{Algebra, AlgebraError, AlgebraView, Element};

/// A state μ, acting on coordinates by dot product with `functional`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct State {
    algebra: Algebra,
    functional: Vec<f64>,
}

impl State {
    pub fn eval(&self, a: &Element) -> f64 {
        assert_eq!(self.algebra, *a.algebra(), "mismatched algebras");
        self.functional.iter().zip(a.coords()).map(|(f, c)| f * c).sum()
    }

    pub fn functional(&self) -> &[f64] {
        &self.functional
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }
}

fn atom_functional(algebra: &Algebra, coords: &[f64]) -> Vec<f64> {
    match algebra.kind() {
        // μ_e(a) = Re tr(E A) = ⟨coords(E), coords(A)⟩ in the trace-orthonormal basis
        AlgebraView::Matrix { .. } => coords.to_vec(),
        // e = ½(𝕀 + v̂) evaluates as μ(t𝕀 + w) = t + v̂·w
        AlgebraView::Spin { .. } => coords.iter().map(|c| 2.0 * c).collect(),
        AlgebraView::Sum { parts, offsets } => {
            let mut out = vec![0.0; algebra.dim()];
            for (p, off) in parts.iter().zip(offsets) {
                let block = &coords[*off..off + p.dim()];
                if block.iter().any(|c| c.abs() > 0.0) {
                    let f = atom_functional(p, block);
                    out[*off..off + p.dim()].copy_from_slice(&f);
                }
            }
            out
        }
    }
}

/// The state with μ(e) = 1 carried by an atom: the vector state of the
/// atom's range for matrix algebras, the evaluation against the atom's
/// direction for spin factors.
pub fn atom_state(e: &Projection, _tol: &Tolerances) -> Result<State, AlgebraError> {
    if e.rank() != 1 {
        return Err(AlgebraError::BadRank { rank: e.rank() });
    }
    let algebra = e.element().algebra().clone();
    let functional = atom_functional(&algebra, e.element().coords());
    Ok(State { algebra, functional })
}
