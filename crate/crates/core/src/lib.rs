//! Finite-dimensional order-unit algebras and their projection logics.
//!
//! The crate implements three concrete families of Euclidean Jordan algebras —
//! Hermitian matrix algebras over the reals, complexes and quaternions, spin
//! factors, and finite direct sums of these — together with:
//!
//! * spectral decomposition of elements into orthogonal rank-one atoms,
//! * the lattice of projections (meet, join, orthocomplement, compatibility,
//!   center and capacity),
//! * seeded property checkers for spectrality, strong state spaces, the gbit
//!   and covering properties, irreducibility and weak symmetry,
//! * automorphism sampling, atom transport, one-parameter automorphism paths
//!   and Monte-Carlo invariant inner products,
//! * the capacity-2 spin-factor reconstruction pipeline.
//!
//! All randomized operations take explicit seeds and are deterministic.

pub mod algebra;
pub mod checks;
pub mod kernel;
pub mod lattice;
pub mod reconstruct;
pub mod sample;
pub mod symmetry;
pub mod tol;

pub use algebra::{
    atom_state, direct_sum, in_cone, jordan_product, order_norm, restrict, spectral_decompose,
    Algebra, AlgebraError, AlgebraSpec, Element, Face, SpectralDecomposition, State,
};
pub use checks::{run_named, run_suite, CheckReport, Verdict, Witness};
pub use kernel::{sym_eigen, DenseMatrix, EigenSystem, KernelError, Quaternion, Ring};
pub use lattice::{
    center, certify_projection, compatible, complement, info_capacity, join, leq, meet,
    orthogonal, peel_atoms, CenterDecomposition, LatticeError, Projection,
};
pub use reconstruct::{
    build_product_1, build_spin_product, compare_to_native, compute_s_o, native_product_1,
    native_product_table, reconstruct_spin, split_unit_complement, verify_jordan,
    NativeComparison, ProductTable, Reconstruction, ReconstructError, SpinConstruction,
};
pub use symmetry::{
    continuous_path, invariant_inner_product, sample_automorphism, transport_automorphism,
    verify_automorphism, Automorphism, AutomorphismPath, InnerProductForm, InvariantProduct,
    SymmetryError,
};
pub use tol::Tolerances;
