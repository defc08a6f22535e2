//! The large Witt design as a code in J(24,8).
//!
//!     cargo run --release --example witt_design

use amlab::corpus;
use amlab::engine::{am_v1, AmOptions};
use amlab::DistanceDistribution;
use num_traits::Zero;

fn main() -> amlab::Result<()> {
    let witt = corpus::witt_design();
    let dist = DistanceDistribution::compute(&witt);
    let zero_b: Vec<usize> = (1..dist.b.len()).filter(|&j| dist.b[j].is_zero()).collect();
    println!("{} octads; E_j chi = 0 for j in {:?}", witt.support_len(), zero_b);

    let x = witt.support().next().expect("nonempty");
    let r = am_v1(&witt, x, &AmOptions { verify: true, ..Default::default() })?;
    let p = &r.parameters;
    println!("delta = {:?}, s* = {}, delta_x = {} at x = {{{}}}", p.delta, p.dual_degree, p.delta_x, r.base);
    println!("V1 guarantees t = {}", r.t);
    println!("sphere scan: {:?}, level {:?}", r.verification.status, r.verification.measured);
    Ok(())
}
