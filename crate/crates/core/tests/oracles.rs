//! Exact library results against independent brute-force or dense oracles.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use amlab::corpus::{random_linear, random_subset};
use amlab::design::{oa_strength, relative_codesign_level, relative_design_level};
use amlab::martin::is_regular;
use amlab::rational::to_f64;
use amlab::{Budget, CodeVector, DistanceDistribution, Scheme, Vertex};
use nalgebra::{DMatrix, DVector};

const SCHEMES: [&str; 7] = ["H(3,2)", "H(3,3)", "H(4,2)", "H(3,4)", "J(6,2)", "J(7,3)", "J(8,4)"];

fn scheme(spec: &str) -> Arc<Scheme> {
    Arc::new(Scheme::build(spec.parse().unwrap()).unwrap())
}

fn adjacency(s: &Scheme, verts: &[Vertex], i: usize) -> DMatrix<f64> {
    let n = verts.len();
    DMatrix::from_fn(n, n, |a, b| if s.distance(verts[a], verts[b]) == i { 1.0 } else { 0.0 })
}

/// Primitive idempotents from a dense eigendecomposition of `A_1`,
/// matched to the library's ordering through the eigenvalues `P[1][j]`.
fn dense_idempotents(s: &Scheme, verts: &[Vertex]) -> Vec<DMatrix<f64>> {
    let n = verts.len();
    let eig = adjacency(s, verts, 1).symmetric_eigen();
    (0..=s.classes())
        .map(|j| {
            let theta = to_f64(s.p().get(1, j));
            let mut e = DMatrix::zeros(n, n);
            for (k, &ev) in eig.eigenvalues.iter().enumerate() {
                if (ev - theta).abs() < 1e-6 {
                    let u = eig.eigenvectors.column(k);
                    e += u * u.transpose();
                }
            }
            e
        })
        .collect()
}

fn dense(verts: &[Vertex], chi: &CodeVector) -> DVector<f64> {
    DVector::from_iterator(verts.len(), verts.iter().map(|&v| to_f64(&chi.get(v))))
}

#[test]
fn eigenmatrix_matches_dense_diagonalization() {
    for spec in SCHEMES {
        let s = scheme(spec);
        let verts = s.vertices().unwrap();
        let es = dense_idempotents(&s, &verts);
        for (j, e) in es.iter().enumerate() {
            let rank = e.trace().round() as i64;
            assert_eq!(rank.to_string(), s.multiplicities()[j].to_string(), "{spec} m_{j}");
            for i in 0..=s.classes() {
                let lhs = adjacency(&s, &verts, i) * e;
                let rhs = e * to_f64(s.p().get(i, j));
                assert!((lhs - rhs).amax() < 1e-8, "{spec} P[{i}][{j}]");
            }
        }
        assert_eq!(s.vertex_count().to_string(), verts.len().to_string());
    }
}

#[test]
fn dual_distribution_is_a_projector_norm() {
    for (n, spec) in SCHEMES.iter().enumerate() {
        let s = scheme(spec);
        let verts = s.vertices().unwrap();
        let es = dense_idempotents(&s, &verts);
        for seed in 0..4 {
            let size = 2 + (seed as usize * 3 + n) % (verts.len() / 2);
            let chi = random_subset(s.clone(), size, seed).unwrap();
            let dist = DistanceDistribution::compute(&chi);
            let v = dense(&verts, &chi);
            for (j, e) in es.iter().enumerate() {
                let want = v.dot(&(e * &v));
                assert!((to_f64(&dist.b[j]) - want).abs() < 1e-9, "{spec} b_{j}");
            }
            // Inner distribution by direct pair counting.
            for i in 0..=s.classes() {
                let pairs = chi.support().flat_map(|a| chi.support().map(move |b| (a, b)));
                let count = pairs.filter(|&(a, b)| s.distance(a, b) == i).count();
                assert!((to_f64(&dist.a[i]) - count as f64).abs() < 1e-12);
            }
        }
    }
}

fn dot_mod(a: &[u32], b: &[u32], q: u32) -> u32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum::<u32>() % q
}

#[test]
fn macwilliams_for_random_linear_codes() {
    for (d, q, k, seed) in [(6, 2, 3, 0), (7, 2, 4, 1), (8, 2, 2, 2), (5, 3, 2, 3), (6, 3, 3, 4), (4, 5, 2, 5)] {
        let code = random_linear(d, q, k, seed).unwrap();
        let s = code.scheme().clone();
        let words: Vec<Vec<u32>> = code.support().map(|v| s.decode(v)).collect();
        let mut dual_weights: BTreeMap<usize, u64> = BTreeMap::new();
        for v in s.vertices().unwrap() {
            let u = s.decode(v);
            if words.iter().all(|w| dot_mod(w, &u, q) == 0) {
                *dual_weights.entry(u.iter().filter(|&&x| x != 0).count()).or_default() += 1;
            }
        }
        let dist = DistanceDistribution::compute(&code);
        let scale = to_f64(&s.vertex_count_rational()) / (code.support_len() as f64).powi(2);
        for j in 0..=d {
            let want = *dual_weights.get(&j).unwrap_or(&0) as f64;
            assert!((to_f64(&dist.b[j]) * scale - want).abs() < 1e-9, "H({d},{q}) seed {seed} j {j}");
        }
        let dual_distance = dual_weights.keys().find(|&&w| w > 0).copied().unwrap_or(d + 1);
        assert_eq!(oa_strength(&code, &Budget::default()).unwrap(), dual_distance - 1);
    }
}

#[test]
fn regularity_by_direct_counts() {
    let cases = [
        amlab::corpus::hamming_code(3).unwrap(),
        amlab::corpus::even_weight(5).unwrap(),
        random_subset(scheme("H(4,2)"), 5, 3).unwrap(),
        random_subset(scheme("J(7,3)"), 6, 1).unwrap(),
        random_linear(6, 3, 2, 9).unwrap(),
    ];
    for chi in &cases {
        let s = chi.scheme();
        let profile = |y: Vertex| {
            let mut c = vec![0usize; s.classes() + 1];
            for z in chi.support() {
                c[s.distance(y, z)] += 1;
            }
            c
        };
        let first = profile(chi.support().next().unwrap());
        let want = chi.support().all(|y| profile(y) == first);
        assert_eq!(is_regular(chi), want);
    }
}

#[test]
fn design_levels_match_dense_parallelism() {
    for spec in SCHEMES {
        let s = scheme(spec);
        let verts = s.vertices().unwrap();
        let es = dense_idempotents(&s, &verts);
        for seed in 0..5u64 {
            let size = 1 + (seed as usize * 5) % (verts.len() - 1);
            let chi = random_subset(s.clone(), size, 100 + seed).unwrap();
            let x = if seed % 2 == 0 { s.origin() } else { chi.support().next().unwrap() };
            let v = dense(&verts, &chi);
            let xhat = dense(&verts, &CodeVector::point(s.clone(), x));

            let parallel = |a: &DVector<f64>, b: &DVector<f64>| {
                let (na, nb) = (a.norm(), b.norm());
                if na < 1e-9 || nb < 1e-9 {
                    return na < 1e-9;
                }
                (a.dot(b).abs() - na * nb).abs() < 1e-7 * na * nb
            };
            let design = (1..=s.classes()).take_while(|&j| parallel(&(&es[j] * &v), &(&es[j] * &xhat))).count();
            assert_eq!(relative_design_level(&chi, x).max_level, design, "{spec} seed {seed}");

            let shell_constant = |i: usize| {
                let vals: Vec<_> = s.sphere(x, i).unwrap().into_iter().map(|y| chi.contains(y)).collect();
                vals.windows(2).all(|w| w[0] == w[1])
            };
            let codesign = (1..=s.classes()).take_while(|&i| shell_constant(i)).count();
            assert_eq!(relative_codesign_level(&chi, x).max_level, codesign, "{spec} seed {seed}");
        }
    }
}

#[test]
fn oa_strength_by_column_projections() {
    for seed in 0..12u64 {
        let (d, q) = [(4, 2), (5, 2), (3, 3), (4, 3)][seed as usize % 4];
        let s = scheme(&format!("H({d},{q})"));
        let size = [4, 8, 9, 16, 27][seed as usize % 5].min(s.vertex_count_u128().unwrap() as usize);
        let chi = random_subset(s.clone(), size, seed).unwrap();
        let words: Vec<Vec<u32>> = chi.support().map(|v| s.decode(v)).collect();
        let balanced = |cols: &[usize]| {
            let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
            for w in &words {
                *counts.entry(cols.iter().map(|&c| w[c]).collect()).or_default() += 1;
            }
            let cells = (q as usize).pow(cols.len() as u32);
            counts.len() == cells && counts.values().all(|&n| n * cells == words.len())
        };
        let subsets = |t: usize| -> Vec<Vec<usize>> {
            (0u32..1 << d).filter(|m| m.count_ones() as usize == t).map(|m| (0..d).filter(|&c| m >> c & 1 == 1).collect()).collect()
        };
        let strength = (1..=d).take_while(|&t| subsets(t).iter().all(|c| balanced(c))).count();
        assert_eq!(oa_strength(&chi, &Budget::default()).unwrap(), strength, "seed {seed}");
    }
}
