//! Eigenmatrices of a Hamming and a Johnson scheme, printed exactly.
//!
//!     cargo run --example scheme_info

use amlab::rational::render;
use amlab::Scheme;

fn show(s: &Scheme) {
    println!("{}  |X| = {}  D = {}", s.spec(), s.vertex_count(), s.classes());
    let row = |r: Vec<_>| r.iter().map(render).collect::<Vec<_>>().join(" ");
    println!("  valencies      {:?}", s.valencies().iter().map(|k| k.to_string()).collect::<Vec<_>>());
    println!("  multiplicities {:?}", s.multiplicities().iter().map(|m| m.to_string()).collect::<Vec<_>>());
    println!("  P (row i = eigenvalues of A_i):");
    for r in s.p().rows() {
        println!("    {}", row(r));
    }
    println!("  Q:");
    for r in s.q().rows() {
        println!("    {}", row(r));
    }
    println!("  PQ = |X|I and the intersection identities hold: {}", s.check_invariants());
}

fn main() -> amlab::Result<()> {
    show(&Scheme::hamming(4, 2)?);
    show(&Scheme::hamming(3, 3)?);
    show(&Scheme::johnson(7, 3)?);
    Ok(())
}
