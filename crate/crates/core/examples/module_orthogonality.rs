//! Codesigns and designs seen as orthogonality to small-endpoint modules.
//!
//!     cargo run --release --example module_orthogonality

use std::sync::Arc;

use amlab::corpus::random_subset;
use amlab::engine::{am_v1, AmOptions};
use amlab::lab::{self, DenseOperatorSet, Side};
use amlab::{Budget, CodeVector, Scheme};

fn main() -> amlab::Result<()> {
    let budget = Budget::default();
    let scheme = Arc::new(Scheme::hamming(6, 2)?);
    let x = scheme.origin();
    let ops = DenseOperatorSet::build(scheme.clone(), x, &budget)?;
    let dec = lab::decompose_modules(&ops, 3)?;
    let spaces = lab::split_spaces(&ops)?;

    let mut codes = vec![("sphere R_2(x)", CodeVector::from_subset(scheme.clone(), scheme.sphere(x, 2)?))];
    codes.push(("even weight", amlab::corpus::even_weight(6)?));
    for seed in 0..3 {
        codes.push(("random", random_subset(scheme.clone(), 12, seed)?));
    }
    for (name, code) in &codes {
        let v = ops.dense_vector(code);
        let p = lab::module_orthogonality_test(&ops, &dec, &v, Side::P);
        let q = lab::module_orthogonality_test(&ops, &dec, &v, Side::Q);
        let orth_p = p.rows.iter().take_while(|r| r.orthogonal).count();
        let orth_q = q.rows.iter().take_while(|r| r.orthogonal).count();
        let t = am_v1(code, x, &AmOptions::default()).map(|r| r.t).unwrap_or(0);
        let split = lab::split_orthogonality(&ops, &spaces, &v, t);
        println!("{name:<14} orthogonal up to r = {orth_p} (P), r* = {orth_q} (Q); discrepancies {}/{}; V1 t = {t}, split check {}",
            p.discrepancies, q.discrepancies, split.passes);
    }
    Ok(())
}
