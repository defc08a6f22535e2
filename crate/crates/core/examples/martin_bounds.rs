//! Martin's trichotomies over the corpus and a batch of random linear codes.
//!
//!     cargo run --release --example martin_bounds

use amlab::corpus;
use amlab::lab::Side;
use amlab::martin::martin;

fn main() -> amlab::Result<()> {
    let mut codes: Vec<(String, amlab::CodeVector)> = Vec::new();
    for name in ["repetition8", "even-weight6", "antipodal-pair6", "complementary-pair8", "hamming7", "golay-ternary", "witt"] {
        codes.push((name.to_string(), corpus::generate(name)?));
    }
    for seed in 0..6u64 {
        let (d, q) = if seed % 2 == 0 { (9, 2) } else { (6, 3) };
        codes.push((format!("random H({d},{q}) #{seed}"), corpus::random_linear(d, q, 3, seed)?));
    }
    println!("{:<24} {:>4} {:<16} {:<18} {:<16} {:<18}", "code", "|Y|", "P branch", "P bound", "Q branch", "Q bound");
    for (name, code) in &codes {
        if code.support_len() < 2 {
            continue;
        }
        let p = martin(code, Side::P, None, None)?;
        let q = martin(code, Side::Q, None, None)?;
        let bound = |b: &Option<amlab::martin::BoundCheck>| match b {
            Some(b) if b.exempt => format!("exempt ({}<={})", b.lhs, b.rhs),
            Some(b) => format!("{} {}<={}", if b.holds { "ok" } else { "FAIL" }, b.lhs, b.rhs),
            None => "n/a".into(),
        };
        println!(
            "{:<24} {:>4} {:<16} {:<18} {:<16} {:<18}",
            name,
            code.support_len(),
            format!("{:?}", p.branch),
            bound(&p.bound),
            format!("{:?}", q.branch),
            bound(&q.bound)
        );
    }
    Ok(())
}
