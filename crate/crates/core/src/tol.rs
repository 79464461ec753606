//! Numerical tolerances, defined once and threaded through every operation.

use serde::{Deserialize, Serialize};

/// All comparison thresholds used by the crate.
///
/// Residual-style fields are scaled by the magnitude of the inputs at the
/// point of use (`max(1, ‖·‖)` unless noted); the values here are the bare
/// constants.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Tolerances {
    /// Maximum allowed `‖M − Mᵀ‖_max` for symmetric-eigensolver input.
    pub eigen_asym: f64,
    /// Eigensystem reconstruction residual, relative to `‖M‖`.
    pub eigen_residual: f64,
    /// Orthonormality defect `‖VᵀV − I‖_max` of eigenvector matrices.
    pub eigen_orthonormal: f64,
    /// Relative width for clustering near-degenerate eigenvalues.
    pub eigen_cluster: f64,
    /// Gram-Schmidt rank threshold: vectors with smaller residual are dropped.
    pub gram_drop: f64,
    /// Pairwise inner products of orthonormalized vectors.
    pub gram_ortho: f64,
    /// Element equality, scaled by `max(1, ‖a‖, ‖b‖)`.
    pub element_abs: f64,
    /// Cone membership: minimum eigenvalue ≥ −cone·max(1, ‖a‖).
    pub cone: f64,
    /// Projection certification: spectrum within this of {0, 1}.
    pub projection_spectrum: f64,
    /// Meet algorithm: eigenvalues of p+q within this of 2 select the meet.
    pub meet_two: f64,
    /// Lattice-law residuals (orthomodularity, De Morgan, differences).
    pub lattice_law: f64,
    /// Jordan product of orthogonal atoms, and atom-sum defects.
    pub atom_orthogonality: f64,
    /// Spectral reconstruction `‖Σ s_k e_k − a‖`, relative to `‖a‖`.
    pub decomposition_residual: f64,
    /// Residual bound used by the spectrality checker (looser; re-derived data).
    pub spectrality_residual: f64,
    /// State normalization `|μ(𝕀) − 1|`.
    pub state_unit: f64,
    /// Strong-state witness margin: μ(q) must fall below 1 − witness_margin.
    pub witness_margin: f64,
    /// Automorphisms must fix the unit within this.
    pub auto_unit_fix: f64,
    /// Atom transport accuracy `‖T(e₁) − e₂‖`.
    pub transport: f64,
    /// Identity of a path at t = 0.
    pub path_identity: f64,
    /// Acceptable Monte-Carlo invariance residual of averaged inner products.
    pub invariance_residual_max: f64,
    /// Monte-Carlo spread of atom norms under an averaged inner product.
    pub atom_norm_mc: f64,
    /// Jordan identity residual on random elements, scaled by ‖a‖²‖b‖.
    pub jordan_identity: f64,
    /// Product-table verification (commutativity, unit, Jordan identity, idempotents).
    pub jordan_table: f64,
    /// Margin enforced in the Cauchy-Schwarz guard |s_o| < 1.
    pub s_o_margin: f64,
    /// Spread factor: s_o samples may spread up to this × invariance residual.
    pub s_o_spread_factor: f64,
    /// Spin-factor eigenvalue merge width (closed-form spectra, no solver noise).
    pub spin_merge: f64,
    /// Reconstruction-vs-native match, as a multiple of the invariance residual.
    pub recon_match_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eigen_asym: 1e-10,
            eigen_residual: 1e-9,
            eigen_orthonormal: 1e-10,
            eigen_cluster: 1e-8,
            gram_drop: 1e-9,
            gram_ortho: 1e-10,
            element_abs: 1e-9,
            cone: 1e-9,
            projection_spectrum: 1e-8,
            meet_two: 1e-7,
            lattice_law: 1e-8,
            atom_orthogonality: 1e-9,
            decomposition_residual: 1e-9,
            spectrality_residual: 1e-8,
            state_unit: 1e-10,
            witness_margin: 1e-8,
            auto_unit_fix: 1e-10,
            transport: 1e-8,
            path_identity: 1e-10,
            invariance_residual_max: 5e-3,
            atom_norm_mc: 5e-3,
            jordan_identity: 1e-8,
            jordan_table: 1e-7,
            s_o_margin: 1e-6,
            s_o_spread_factor: 10.0,
            spin_merge: 1e-12,
            recon_match_factor: 10.0,
        }
    }
}

impl Tolerances {
    /// Set a field by its name, as used for CLI overrides.
    pub fn set_by_name(&mut self, name: &str, value: f64) -> Result<(), String> {
        match name {
            "eigen_asym" => self.eigen_asym = value,
            "eigen_residual" => self.eigen_residual = value,
            "eigen_orthonormal" => self.eigen_orthonormal = value,
            "eigen_cluster" => self.eigen_cluster = value,
            "gram_drop" => self.gram_drop = value,
            "gram_ortho" => self.gram_ortho = value,
            "element_abs" => self.element_abs = value,
            "cone" => self.cone = value,
            "projection_spectrum" => self.projection_spectrum = value,
            "meet_two" => self.meet_two = value,
            "lattice_law" => self.lattice_law = value,
            "atom_orthogonality" => self.atom_orthogonality = value,
            "decomposition_residual" => self.decomposition_residual = value,
            "spectrality_residual" => self.spectrality_residual = value,
            "state_unit" => self.state_unit = value,
            "witness_margin" => self.witness_margin = value,
            "auto_unit_fix" => self.auto_unit_fix = value,
            "transport" => self.transport = value,
            "path_identity" => self.path_identity = value,
            "invariance_residual_max" => self.invariance_residual_max = value,
            "atom_norm_mc" => self.atom_norm_mc = value,
            "jordan_identity" => self.jordan_identity = value,
            "jordan_table" => self.jordan_table = value,
            "s_o_margin" => self.s_o_margin = value,
            "s_o_spread_factor" => self.s_o_spread_factor = value,
            "spin_merge" => self.spin_merge = value,
            "recon_match_factor" => self.recon_match_factor = value,
            other => return Err(format!("unknown tolerance `{other}`")),
        }
        Ok(())
    }
}
