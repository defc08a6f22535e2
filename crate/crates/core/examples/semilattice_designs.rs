//! Relative designs agree with the semilattice counting criterion.
//!
//!     cargo run --release --example semilattice_designs

use std::sync::Arc;

use amlab::corpus::{random_linear, random_subset};
use amlab::design::{relative_design_level, semilattice_design_check, SemilatticeVerdict};
use amlab::rational::render;
use amlab::{Budget, CodeVector, Scheme};

fn compare(label: &str, code: &CodeVector, budget: &Budget) -> amlab::Result<()> {
    let scheme = code.scheme();
    let x = code.support().next().expect("nonempty");
    let level = relative_design_level(code, x).max_level;
    let counting = (1..=scheme.classes())
        .take_while(|&t| semilattice_design_check(code, x, t, budget).map(|v| v.holds()).unwrap_or(false))
        .count();
    let witness = match semilattice_design_check(code, x, (level + 1).min(scheme.classes()), budget)? {
        SemilatticeVerdict::Holds => "none".to_string(),
        SemilatticeVerdict::Witness { meet_rank, first, first_sum, second, second_sum } => format!(
            "{first} -> {} vs {second} -> {} at meet rank {meet_rank}",
            render(&first_sum),
            render(&second_sum)
        ),
    };
    println!("{label:<20} spectral {level}, counting {counting}; witness above: {witness}");
    Ok(())
}

fn main() -> amlab::Result<()> {
    let budget = Budget::default();
    for (spec, size) in [("H(5,2)", 8), ("H(4,3)", 27), ("J(8,3)", 14)] {
        let scheme = Arc::new(Scheme::build(spec.parse()?)?);
        compare(&format!("random {spec}"), &random_subset(scheme, size, 1)?, &budget)?;
    }
    for seed in 0..3 {
        compare(&format!("linear H(6,2) #{seed}"), &random_linear(6, 2, 3, seed)?, &budget)?;
    }
    compare("even weight H(5,2)", &amlab::corpus::even_weight(5)?, &budget)?;
    Ok(())
}
