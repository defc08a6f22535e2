//! A nonlinear perfect code of length 15 and the 2-designs in its shells.
//!
//!     cargo run --release --example perfect_code

use amlab::corpus;
use amlab::engine::{am_v1, AmOptions};

fn main() -> amlab::Result<()> {
    let code = corpus::vasilev15();
    let s = code.scheme().clone();
    let members: Vec<_> = code.support().collect();

    let covered: usize = members.len() * (1 + s.classes());
    println!("{} words, spheres of radius 1 cover {covered} of {} vertices", members.len(), s.vertex_count());

    let sum = |a: amlab::Vertex, b: amlab::Vertex| {
        let (da, db) = (s.decode(a), s.decode(b));
        s.encode(&da.iter().zip(&db).map(|(x, y)| (x + y) % 2).collect::<Vec<_>>())
    };
    let witness = members
        .iter()
        .flat_map(|&a| members.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| !code.contains(sum(a, b).expect("same length")));
    if let Some((a, b)) = witness {
        println!("nonlinear: {} + {} is not a codeword", s.format_vertex(a), s.format_vertex(b));
    }

    let r = am_v1(&code, s.origin(), &AmOptions::full())?;
    println!("delta = {:?}, s* = {}, V1 t = {}", r.parameters.delta, r.parameters.dual_degree, r.t);
    for d in &r.designs {
        let lambda = d.verdict.as_ref().map(amlab::design::render_lambda).unwrap_or_default();
        println!("  shell {:>2}: {} blocks, 2-design with lambda {}", d.shell, d.total, lambda);
    }
    Ok(())
}
