//! Irreducible T-modules of small schemes and the structural checks on them.
//!
//!     cargo run --release --example terwilliger_modules

use std::sync::Arc;

use amlab::lab::{self, DenseOperatorSet};
use amlab::{Budget, Scheme, SchemeSpec};

fn main() -> amlab::Result<()> {
    let budget = Budget::default();
    for spec in ["H(6,2)", "H(4,3)", "J(7,3)", "J(8,4)"] {
        let spec: SchemeSpec = spec.parse()?;
        let scheme = Arc::new(Scheme::build(spec)?);
        let ops = DenseOperatorSet::build(scheme.clone(), scheme.origin(), &budget)?;
        let dec = lab::decompose_modules(&ops, 7)?;
        let summary = lab::summarize(&ops, &dec);
        println!("{spec}: {} modules, dims sum to {} of {}, multiplicities match {}",
            dec.modules.len(), summary.total_dim, summary.vertex_count, summary.multiplicities_match);
        for sc in &summary.signatures {
            let s = &sc.signature;
            println!("    {:>3} x  r={} r*={} d={} eta={} thin={}", sc.count, s.endpoint, s.dual_endpoint, s.diameter, s.displacement, s.thin);
        }
        let tri = lab::verify_tridiagonal(&ops, &dec);
        let itt = lab::verify_itt(&ops, &dec);
        let split = lab::split_decomposition(&ops, &dec)?;
        println!("  tridiagonal {} (residual {:.1e}), W_ij = 0 below diagonal {}, split {} (V_eta residual {:.1e})",
            tri.passes, tri.max_residual.max(tri.max_dual_residual), itt.passes, split.passes, split.reconstruction_residual);
    }
    Ok(())
}
