//! Cosets of the Golay codes that still support 1-designs.
//!
//!     cargo run --release --example coset_designs

use amlab::catalog::closed_form;
use amlab::corpus;
use amlab::engine::{am_v3, cor1_check, AmOptions};

fn main() -> amlab::Result<()> {
    let golay = corpus::golay_binary();
    let leader = corpus::coset_leader(&golay, 4)?.expect("covering radius 4");
    let scheme = golay.scheme().clone();
    println!("binary coset leader {} (coset weight {})", scheme.format_vertex(leader), corpus::coset_weight(&golay, leader));
    let coset = corpus::coset(&golay, leader)?;
    let catalog = closed_form(scheme.spec()).expect("closed form");
    let opts = AmOptions { catalog: Some(&catalog), ..AmOptions::full() };
    for t in [1, 2] {
        let r = cor1_check(&coset, scheme.origin(), Some(t), &opts)?;
        println!("  Cor1 at t = {t}: guaranteed {} -> exit code {}", r.t, r.exit_code());
        if t == 1 {
            for d in &r.designs {
                println!("    shell {:>2}: {} words, 1-design {}", d.shell, d.total, d.verdict.as_ref().is_some_and(|v| v.is_design()));
            }
        }
    }

    let ternary = corpus::golay_ternary();
    let leader = corpus::coset_leader(&ternary, 3)?.expect("covering radius 3");
    let coset = corpus::coset(&ternary, leader)?;
    let s = ternary.scheme();
    println!("ternary coset leader {}", s.format_vertex(leader));
    let r = am_v3(&coset, s.origin(), &AmOptions::full())?;
    for row in r.ledger.iter().take(2) {
        let parts: Vec<String> = row.inequalities.iter().map(|i| format!("{} <= {} ({})", i.lhs, i.rhs, i.holds)).collect();
        println!("  r = {}: {}", row.r, parts.join(" | "));
    }
    println!("  V3 guaranteed t = {}, all shells 1-designs: {}", r.t,
        r.designs.iter().all(|d| d.verdict.as_ref().is_some_and(|v| v.is_design())));
    Ok(())
}
