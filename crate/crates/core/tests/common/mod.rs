//! Brute-force oracles and code samplers shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use amlab::corpus::{random_linear, random_subset};
use amlab::{CodeVector, Scheme, SchemeSpec, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn scheme(spec: &str) -> Arc<Scheme> {
    Arc::new(Scheme::build(spec.parse().unwrap()).unwrap())
}

/// Every `A_l χ` is constant on each sphere `R_i(x)` with `i <= t`.
pub fn all_codesign(chi: &CodeVector, x: Vertex, t: usize) -> bool {
    let s = chi.scheme();
    let members: Vec<(Vertex, i64)> = chi.iter().map(|(v, w)| (v, weight(w))).collect();
    (1..=t.min(s.classes())).all(|i| {
        let mut first: Option<Vec<i64>> = None;
        s.sphere(x, i).unwrap().into_iter().all(|y| {
            let mut counts = vec![0i64; s.classes() + 1];
            for &(z, w) in &members {
                counts[s.distance(y, z)] += w;
            }
            match &first {
                None => {
                    first = Some(counts);
                    true
                }
                Some(f) => *f == counts,
            }
        })
    })
}

fn weight(w: &amlab::Rational) -> i64 {
    assert!(w.is_integer(), "oracles take integer weights");
    i64::try_from(w.to_integer()).unwrap()
}

/// Rank-`r` objects below `x`: coordinate sets in Hamming schemes,
/// `r`-subsets of `x` in Johnson schemes.
fn lower_objects(s: &Scheme, x: Vertex, r: usize) -> Vec<Vec<usize>> {
    let ground: Vec<usize> = match s.spec() {
        SchemeSpec::Hamming { d, .. } => (0..d).collect(),
        SchemeSpec::Johnson { .. } => s.decode(x).into_iter().map(|e| e as usize).collect(),
    };
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(g: &[usize], r: usize, start: usize, pick: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pick.len() == r {
            out.push(pick.clone());
            return;
        }
        for i in start..g.len() {
            pick.push(g[i]);
            rec(g, r, i + 1, pick, out);
            pick.pop();
        }
    }
    rec(&ground, r, 0, &mut pick, &mut out);
    out
}

/// For every shell `k` and every `t' <= t`, the weight of shell-`k` members
/// above a rank-`t'` object `u` below `x` does not depend on `u`.
pub fn anchored_uniform(chi: &CodeVector, x: Vertex, t: usize) -> bool {
    let s = chi.scheme();
    let xd = s.decode(x);
    let above = |y: &[u32], u: &[usize]| match s.spec() {
        SchemeSpec::Hamming { .. } => u.iter().all(|&c| y[c] == xd[c]),
        SchemeSpec::Johnson { .. } => u.iter().all(|&e| y.contains(&(e as u32))),
    };
    let mut shells: HashMap<usize, Vec<(Vec<u32>, i64)>> = HashMap::new();
    for (y, w) in chi.iter() {
        shells.entry(s.distance(x, y)).or_default().push((s.decode(y), weight(w)));
    }
    (1..=t.min(s.classes())).all(|r| {
        let objs = lower_objects(s, x, r);
        shells.values().all(|members| {
            let mut sums = objs.iter().map(|u| members.iter().filter(|(y, _)| above(y, u)).map(|(_, w)| w).sum::<i64>());
            let first = sums.next();
            sums.all(|v| Some(v) == first)
        })
    })
}

const HAMMING: [(usize, u32); 14] =
    [(4, 2), (5, 2), (6, 2), (7, 2), (8, 2), (10, 2), (12, 2), (3, 3), (4, 3), (5, 3), (7, 3), (3, 4), (4, 4), (4, 5)];
const JOHNSON: [(usize, usize); 10] = [(6, 2), (6, 3), (7, 3), (8, 3), (8, 4), (9, 4), (10, 3), (10, 5), (12, 4), (14, 3)];

/// A seeded code with `|X| <= 4096` and its base vertex. Mixes random
/// subsets, random linear codes, translates and spheres so that both small
/// and nontrivial strengths appear. Degenerate draws are skipped.
pub fn sample_code(seed: u64) -> (CodeVector, Vertex) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (chi, x) = draw(&mut rng);
        if chi.check_code().is_ok() {
            return (chi, x);
        }
    }
}

fn draw(rng: &mut ChaCha8Rng) -> (CodeVector, Vertex) {
    let s = if rng.gen_bool(0.6) {
        let (d, q) = HAMMING[rng.gen_range(0..HAMMING.len())];
        Arc::new(Scheme::hamming(d, q).unwrap())
    } else {
        let (n, d) = JOHNSON[rng.gen_range(0..JOHNSON.len())];
        Arc::new(Scheme::johnson(n, d).unwrap())
    };
    draw_in(s, rng)
}

/// A code in the given scheme with a base vertex; see [`sample_code`].
pub fn draw_in(s: Arc<Scheme>, rng: &mut ChaCha8Rng) -> (CodeVector, Vertex) {
    let n = s.vertex_count_u128().unwrap() as usize;
    let random_vertex = |rng: &mut ChaCha8Rng| s.vertex_at(rng.gen_range(0..n as u128)).unwrap();
    let all = || s.vertices().unwrap().into_iter();
    match (rng.gen_range(0..5), s.spec()) {
        (0, SchemeSpec::Hamming { d, q }) if matches!(q, 2 | 3 | 5) => {
            let k = rng.gen_range(1..d).min((12.0 / (q as f64).log2()) as usize).max(1);
            let code = random_linear(d, q, k, rng.gen()).unwrap();
            let x = if rng.gen_bool(0.5) { s.origin() } else { random_vertex(rng) };
            (code, x)
        }
        (1, SchemeSpec::Hamming { d, q }) if matches!(q, 2 | 3) => {
            // A translate of a linear code, seen from the zero word.
            let code = random_linear(d, q, rng.gen_range(1..d), rng.gen()).unwrap();
            let shift = s.decode(random_vertex(rng));
            let words: Vec<Vertex> = code
                .support()
                .map(|v| {
                    let w: Vec<u32> = s.decode(v).iter().zip(&shift).map(|(a, b)| (a + b) % q).collect();
                    s.encode(&w).unwrap()
                })
                .collect();
            (CodeVector::from_subset(s.clone(), words), s.origin())
        }
        (2, _) => {
            // One or two spheres around a centre, often used as the base.
            let z = random_vertex(rng);
            let radii: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..=s.classes())).collect();
            let chi = CodeVector::from_subset(s.clone(), all().filter(|&y| radii.contains(&s.distance(z, y))));
            let x = if rng.gen_bool(0.6) { z } else { random_vertex(rng) };
            (chi, x)
        }
        (3, spec) => {
            // Hamming: a subcube fixing a few coordinates. Johnson: the
            // vertices meeting a fixed set in a fixed number of points.
            let chi = match spec {
                SchemeSpec::Hamming { d, .. } => {
                    let fixed: Vec<usize> = (0..d).filter(|_| rng.gen_bool(0.3)).collect();
                    CodeVector::from_subset(s.clone(), all().filter(|&y| fixed.iter().all(|&c| s.digit(y, c) == 0)))
                }
                SchemeSpec::Johnson { n: big_n, d } => {
                    let set: Vec<u32> = (1..=big_n as u32).filter(|_| rng.gen_bool(0.5)).collect();
                    let m = rng.gen_range(0..=d.min(set.len()));
                    CodeVector::from_subset(
                        s.clone(),
                        all().filter(|&y| s.decode(y).iter().filter(|e| set.contains(e)).count() == m),
                    )
                }
            };
            let x = match rng.gen_range(0..3) {
                0 => s.origin(),
                1 => chi.support().next().unwrap_or(s.origin()),
                _ => random_vertex(rng),
            };
            (chi, x)
        }
        _ => {
            let size = rng.gen_range(2..=(n / 2).clamp(2, 300));
            let chi = random_subset(s.clone(), size, rng.gen()).unwrap();
            let x = if rng.gen_bool(0.5) { chi.support().next().unwrap() } else { random_vertex(rng) };
            (chi, x)
        }
    }
}

/// Image of `chi` under an automorphism taking `x` to the origin.
pub fn recenter(chi: &CodeVector, x: Vertex) -> CodeVector {
    let s = chi.scheme();
    let xd = s.decode(x);
    let map = |y: Vertex| -> Vertex {
        let yd = s.decode(y);
        let image: Vec<u32> = match s.spec() {
            SchemeSpec::Hamming { q, .. } => yd.iter().zip(&xd).map(|(a, b)| (a + q - b) % q).collect(),
            SchemeSpec::Johnson { n, .. } => {
                let order: Vec<u32> = xd.iter().copied().chain((1..=n as u32).filter(|e| !xd.contains(e))).collect();
                let mut img: Vec<u32> =
                    yd.iter().map(|e| order.iter().position(|o| o == e).unwrap() as u32 + 1).collect();
                img.sort_unstable();
                img
            }
        };
        s.encode(&image).unwrap()
    };
    CodeVector::from_weights(s.clone(), chi.iter().map(|(y, w)| (map(y), w.clone())))
}
