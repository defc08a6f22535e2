//! Orthogonal-array strength equals dual distance minus one.
//!
//!     cargo run --release --example strength_link

use std::sync::Arc;

use amlab::corpus::{random_linear, random_subset};
use amlab::design::oa_strength;
use amlab::spectra::parameters;
use amlab::{Budget, CodeVector, Scheme};

fn report(label: &str, code: &CodeVector, budget: &Budget) -> amlab::Result<()> {
    let strength = oa_strength(code, budget)?;
    let dual = parameters(code, code.scheme().origin())?.dual_distance;
    println!("{label:<22} |Y| = {:>4}: strength {strength}, dual distance {dual}", code.support_len());
    Ok(())
}

fn main() -> amlab::Result<()> {
    let budget = Budget::default();
    for (seed, (d, q, size)) in [(6, 2, 20), (5, 3, 40), (4, 3, 9)].into_iter().enumerate() {
        let s = Arc::new(Scheme::hamming(d, q)?);
        report(&format!("random subset {}", s.spec()), &random_subset(s, size, seed as u64)?, &budget)?;
    }
    for (seed, (d, q, k)) in [(8, 2, 4), (8, 2, 6), (6, 3, 3), (7, 3, 4)].into_iter().enumerate() {
        let code = random_linear(d, q, k, seed as u64)?;
        report(&format!("random linear H({d},{q})"), &code, &budget)?;
    }
    report("even weight H(6,2)", &amlab::corpus::even_weight(6)?, &budget)?;
    report("Hamming [7,4]", &amlab::corpus::hamming_code(3)?, &budget)?;
    Ok(())
}
