use serde::Serialize;

use super::modules::{Decomposition, ModuleSignature};
use super::ops::DenseOperatorSet;

#[derive(Debug, Clone, Serialize)]
pub struct SignatureCount {
    pub signature: ModuleSignature,
    pub count: usize,
}

/// Exact integer checks on a numerical decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSummary {
    pub scheme: String,
    pub base: String,
    pub seed: u64,
    pub restarts: usize,
    pub vertex_count: usize,
    pub total_dim: usize,
    /// `Σ_W dim E_jW` for each `j`.
    pub eigen_totals: Vec<usize>,
    pub multiplicities_match: bool,
    pub certificates_hold: bool,
    pub all_thin: bool,
    pub all_dual_thin: bool,
    pub diameters_agree: bool,
    /// Every displacement-zero module is thin.
    pub displacement_zero_thin: bool,
    /// `2r + d >= D`, `2r* + d >= D` and `0 <= η <= D` everywhere.
    pub endpoint_bounds: bool,
    pub signatures: Vec<SignatureCount>,
}

impl DecompositionSummary {
    pub fn consistent(&self) -> bool {
        self.total_dim == self.vertex_count
            && self.multiplicities_match
            && self.certificates_hold
            && self.diameters_agree
            && self.displacement_zero_thin
            && self.endpoint_bounds
    }
}

pub fn summarize(ops: &DenseOperatorSet, dec: &Decomposition) -> DecompositionSummary {
    let scheme = ops.scheme();
    let d = scheme.classes();
    let sigs: Vec<&ModuleSignature> = dec.modules.iter().map(|m| &m.signature).collect();
    let eigen_totals: Vec<usize> =
        (0..=d).map(|j| sigs.iter().map(|s| s.eigen_dims[j]).sum()).collect();
    let multiplicities_match = eigen_totals
        .iter()
        .zip(scheme.multiplicities())
        .all(|(&got, m)| num_bigint::BigInt::from(got) == *m);
    DecompositionSummary {
        scheme: scheme.spec().to_string(),
        base: scheme.format_vertex(ops.base()),
        seed: dec.seed,
        restarts: dec.restarts,
        vertex_count: ops.len(),
        total_dim: dec.total_dim(),
        eigen_totals,
        multiplicities_match,
        certificates_hold: dec.modules.iter().all(|m| m.certificate.holds(m.basis.ncols())),
        all_thin: sigs.iter().all(|s| s.thin),
        all_dual_thin: sigs.iter().all(|s| s.dual_thin),
        diameters_agree: sigs.iter().all(|s| s.diameter == s.dual_diameter),
        displacement_zero_thin: sigs.iter().filter(|s| s.displacement == 0).all(|s| s.thin),
        endpoint_bounds: sigs.iter().all(|s| {
            2 * s.endpoint + s.diameter >= d
                && 2 * s.dual_endpoint + s.diameter >= d
                && (0..=d as isize).contains(&s.displacement)
        }),
        signatures: dec
            .signature_counts()
            .into_iter()
            .map(|(signature, count)| SignatureCount { signature, count })
            .collect(),
    }
}
