//! The classical Assmus-Mattson theorem recovered from the binary Golay code.
//!
//!     cargo run --release --example golay_assmus_mattson

use amlab::catalog::closed_form;
use amlab::corpus;
use amlab::engine::{am_v2, am_v3, cor2_check, AmOptions, AmReport};

fn summary(label: &str, r: &AmReport) {
    println!("{label:<28} t = {}  verification: {:?} (measured {:?})", r.t, r.verification.status, r.verification.measured);
    for d in &r.designs {
        let verdict = d.verdict.as_ref().map(amlab::design::render_lambda).unwrap_or_else(|| "-".into());
        println!("    shell {:>2}: {}-({},{},{}) with {} blocks", d.shell, d.t, d.v, d.k, verdict, d.distinct_blocks);
    }
}

fn main() -> amlab::Result<()> {
    let golay = corpus::golay_binary();
    println!("weight distribution: {:?}", corpus::weight_distribution(&golay));
    let zero = golay.scheme().origin();

    let refined = AmOptions { refine: true, ..AmOptions::full() };
    let r = am_v2(&golay, zero, &refined)?;
    println!("delta* = {}, s_x = {}, refined s_x = {}", r.parameters.dual_distance, r.parameters.s_x, r.parameters.refined_s_x);
    summary("V2, refined", &r);
    summary("V2, plain", &am_v2(&golay, zero, &AmOptions::default())?);
    summary("V3 window counts", &am_v3(&golay, zero, &AmOptions { verify: true, ..Default::default() })?);

    let catalog = closed_form(golay.scheme().spec()).expect("H(24,2) has a closed form");
    let opts = AmOptions { catalog: Some(&catalog), verify: true, ..Default::default() };
    let r = cor2_check(&golay, zero, Some(5), &opts)?;
    summary("Cor2 with module catalog", &r);
    for row in r.ledger.iter().take(6) {
        let i = &row.inequalities[0];
        println!("    r* = {}: {} <= {}  {}", row.r, i.lhs, i.rhs, if row.passes { "ok" } else { "fails" });
    }
    Ok(())
}
