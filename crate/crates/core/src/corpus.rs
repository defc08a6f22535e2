//! Named codes and code generators.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scheme::{Family, Scheme, SchemeSpec, Vertex};
use crate::spectra::{base_profile, CodeVector};

/// Parameters a named code is known to have.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub size: usize,
    pub min_distance: Option<usize>,
    pub dual_distance: Option<usize>,
    pub dual_degree: Option<usize>,
    /// Distance distribution from the zero word / first member, `(i, count)`.
    pub weights: Option<Vec<(usize, u64)>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub scheme: SchemeSpec,
    pub description: &'static str,
    pub fingerprint: Fingerprint,
}

fn fp(size: usize, delta: Option<usize>, dual: Option<usize>, s_star: Option<usize>) -> Fingerprint {
    Fingerprint { size, min_distance: delta, dual_distance: dual, dual_degree: s_star, weights: None }
}

pub fn entries() -> Vec<CorpusEntry> {
    let h = |d, q| SchemeSpec::Hamming { d, q };
    let j = |n, d| SchemeSpec::Johnson { n, d };
    vec![
        CorpusEntry {
            name: "golay-binary",
            scheme: h(24, 2),
            description: "extended binary Golay code [24,12,8]",
            fingerprint: Fingerprint {
                weights: Some(vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]),
                ..fp(4096, Some(8), Some(8), Some(4))
            },
        },
        CorpusEntry {
            name: "golay-binary-coset4",
            scheme: h(24, 2),
            description: "a coset of the binary Golay code with minimum weight 4",
            fingerprint: fp(4096, Some(8), Some(8), Some(4)),
        },
        CorpusEntry {
            name: "golay-ternary",
            scheme: h(12, 3),
            description: "extended ternary Golay code [12,6,6]",
            fingerprint: Fingerprint {
                weights: Some(vec![(0, 1), (6, 264), (9, 440), (12, 24)]),
                ..fp(729, Some(6), Some(6), Some(3))
            },
        },
        CorpusEntry {
            name: "golay-ternary-coset3",
            scheme: h(12, 3),
            description: "a coset of the ternary Golay code with minimum weight 3",
            fingerprint: fp(729, Some(6), Some(6), Some(3)),
        },
        CorpusEntry {
            name: "vasilev15",
            scheme: h(15, 2),
            description: "nonlinear perfect single-error-correcting code of length 15",
            fingerprint: fp(2048, Some(3), None, Some(1)),
        },
        CorpusEntry {
            name: "witt",
            scheme: j(24, 8),
            description: "octads of the 5-(24,8,1) Witt design",
            fingerprint: fp(759, Some(4), Some(6), Some(2)),
        },
        CorpusEntry {
            name: "hamming7",
            scheme: h(7, 2),
            description: "binary Hamming code [7,4,3]",
            fingerprint: fp(16, Some(3), Some(4), Some(1)),
        },
        CorpusEntry {
            name: "hamming15",
            scheme: h(15, 2),
            description: "binary Hamming code [15,11,3]",
            fingerprint: fp(2048, Some(3), Some(8), Some(1)),
        },
        CorpusEntry {
            name: "repetition8",
            scheme: h(8, 2),
            description: "binary repetition code of length 8",
            fingerprint: fp(2, Some(8), Some(2), Some(4)),
        },
        CorpusEntry {
            name: "even-weight8",
            scheme: h(8, 2),
            description: "even-weight words of length 8",
            fingerprint: fp(128, Some(2), Some(8), Some(1)),
        },
        CorpusEntry {
            name: "even-weight6",
            scheme: h(6, 2),
            description: "even-weight words of length 6",
            fingerprint: fp(32, Some(2), Some(6), Some(1)),
        },
        CorpusEntry {
            name: "antipodal-pair6",
            scheme: h(6, 2),
            description: "a word of length 6 and its complement",
            fingerprint: fp(2, Some(6), Some(2), Some(3)),
        },
        CorpusEntry {
            name: "complementary-pair8",
            scheme: j(8, 4),
            description: "a 4-subset of {1..8} and its complement",
            fingerprint: fp(2, Some(4), Some(2), Some(2)),
        },
    ]
}

pub fn entry(name: &str) -> Result<CorpusEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Config(format!("unknown corpus entry `{name}`")))
}

pub fn generate(name: &str) -> Result<CodeVector> {
    match entry(name)?.name {
        "golay-binary" => Ok(golay_binary()),
        "golay-binary-coset4" => weight_coset(&golay_binary(), 4),
        "golay-ternary" => Ok(golay_ternary()),
        "golay-ternary-coset3" => weight_coset(&golay_ternary(), 3),
        "vasilev15" => Ok(vasilev15()),
        "witt" => Ok(witt_design()),
        "hamming7" => hamming_code(3),
        "hamming15" => hamming_code(4),
        "repetition8" => repetition(8),
        "even-weight8" => even_weight(8),
        "even-weight6" => even_weight(6),
        "antipodal-pair6" => antipodal_pair(6),
        "complementary-pair8" => complementary_pair(4),
        _ => unreachable!("entry() only returns listed names"),
    }
}

fn hamming(d: usize, q: u32) -> Arc<Scheme> {
    Arc::new(Scheme::hamming(d, q).expect("valid built-in scheme"))
}

/// All multiples `m(x)g(x)` with `deg m < k`, as words of length `k + deg g`.
fn cyclic_words(g: &[u32], k: usize, q: u32) -> Vec<Vec<u32>> {
    let n = k + g.len() - 1;
    let mut out = Vec::with_capacity((q as usize).pow(k as u32));
    let mut m = vec![0u32; k];
    loop {
        let mut word = vec![0u32; n];
        for (i, &mi) in m.iter().enumerate().filter(|(_, &mi)| mi != 0) {
            for (j, &gj) in g.iter().enumerate() {
                word[i + j] = (word[i + j] + mi * gj) % q;
            }
        }
        out.push(word);
        let Some(pos) = m.iter().position(|&c| c + 1 < q) else {
            break;
        };
        m[pos] += 1;
        m[..pos].iter_mut().for_each(|c| *c = 0);
    }
    out
}

/// Append the digit making the coordinate sum zero mod `q`.
fn extend(mut word: Vec<u32>, q: u32) -> Vec<u32> {
    let sum: u32 = word.iter().sum::<u32>() % q;
    word.push((q - sum) % q);
    word
}

fn from_words(scheme: Arc<Scheme>, words: impl IntoIterator<Item = Vec<u32>>) -> CodeVector {
    let vertices: Vec<Vertex> = words
        .into_iter()
        .map(|w| scheme.encode(&w).expect("generated words fit the scheme"))
        .collect();
    CodeVector::from_subset(scheme, vertices)
}

pub fn golay_binary() -> CodeVector {
    let g = [1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 1, 1];
    let words = cyclic_words(&g, 12, 2).into_iter().map(|w| extend(w, 2));
    from_words(hamming(24, 2), words)
}

pub fn golay_ternary() -> CodeVector {
    let g = [2, 0, 1, 2, 1, 1];
    let words = cyclic_words(&g, 6, 3).into_iter().map(|w| extend(w, 3));
    from_words(hamming(12, 3), words)
}

/// `code + v` in a Hamming scheme.
pub fn coset(code: &CodeVector, v: Vertex) -> Result<CodeVector> {
    let scheme = code.scheme();
    let SchemeSpec::Hamming { q, .. } = scheme.spec() else {
        return Err(Error::Config("cosets are defined in Hamming schemes only".into()));
    };
    let shift = scheme.decode(v);
    let words = code.support().map(|c| {
        scheme.decode(c).iter().zip(&shift).map(|(a, b)| (a + b) % q).collect::<Vec<_>>()
    });
    Ok(from_words(scheme.clone(), words.collect::<Vec<_>>()))
}

/// Distance from `v` to the nearest member of `code`.
pub fn coset_weight(code: &CodeVector, v: Vertex) -> usize {
    let scheme = code.scheme();
    code.support().map(|c| scheme.distance(v, c)).min().unwrap_or(usize::MAX)
}

/// First word of weight `w` (in lexicographic order) whose coset has minimum weight `w`.
pub fn coset_leader(code: &CodeVector, w: usize) -> Result<Option<Vertex>> {
    let scheme = code.scheme();
    let members: Vec<Vertex> = code.support().collect();
    let far = |v: Vertex| members.iter().all(|&c| scheme.distance(v, c) >= w);
    Ok(scheme.sphere(scheme.origin(), w)?.into_iter().find(|&v| far(v)))
}

fn weight_coset(code: &CodeVector, w: usize) -> Result<CodeVector> {
    let leader = coset_leader(code, w)?
        .ok_or_else(|| Error::Config(format!("no coset of minimum weight {w}")))?;
    coset(code, leader)
}

/// Binary Hamming code of length `2^r - 1`: words whose set positions XOR to zero.
pub fn hamming_code(r: u32) -> Result<CodeVector> {
    if !(2..=5).contains(&r) {
        return Err(Error::Config(format!("Hamming code redundancy {r} outside 2..=5")));
    }
    let n = (1usize << r) - 1;
    let data: Vec<usize> = (1..=n).filter(|p| !p.is_power_of_two()).collect();
    let words = (0u64..1 << data.len()).map(|m| {
        let mut word = vec![0u32; n];
        let mut syndrome = 0usize;
        for (b, &p) in data.iter().enumerate() {
            if m >> b & 1 == 1 {
                word[p - 1] = 1;
                syndrome ^= p;
            }
        }
        for k in 0..r {
            if syndrome >> k & 1 == 1 {
                word[(1 << k) - 1] = 1;
            }
        }
        word
    });
    Ok(from_words(hamming(n, 2), words.collect::<Vec<_>>()))
}

/// `{(u, u + c, |u| + c_1 c_2 mod 2)}` over `u ∈ F_2^7` and `c` in the Hamming code.
pub fn vasilev15() -> CodeVector {
    let inner = hamming_code(3).expect("r = 3 is valid");
    let s7 = inner.scheme().clone();
    let hamming_words: Vec<Vec<u32>> = inner.support().map(|c| s7.decode(c)).collect();
    let mut words = Vec::with_capacity(2048);
    for u in 0u32..128 {
        let u: Vec<u32> = (0..7).map(|k| u >> k & 1).collect();
        let parity = u.iter().sum::<u32>() % 2;
        for c in &hamming_words {
            let mut w = u.clone();
            w.extend(u.iter().zip(c).map(|(a, b)| (a + b) % 2));
            w.push((parity + c[0] * c[1]) % 2);
            words.push(w);
        }
    }
    from_words(hamming(15, 2), words)
}

/// Supports of the weight-8 Golay codewords, as vertices of `J(24,8)`.
pub fn witt_design() -> CodeVector {
    let golay = golay_binary();
    let s = golay.scheme().clone();
    let j = Arc::new(Scheme::johnson(24, 8).expect("valid"));
    let blocks: Vec<Vertex> = golay
        .support()
        .filter(|&c| s.distance(s.origin(), c) == 8)
        .map(|c| {
            let elems: Vec<u32> = (0..24).filter(|&k| s.digit(c, k) == 1).map(|k| k as u32 + 1).collect();
            j.encode(&elems).expect("8 elements")
        })
        .collect();
    CodeVector::from_subset(j, blocks)
}

pub fn repetition(d: usize) -> Result<CodeVector> {
    let s = Arc::new(Scheme::hamming(d, 2)?);
    let o = s.origin();
    let far = s.antipode(o).expect("binary Hamming is antipodal");
    Ok(CodeVector::from_subset(s, [o, far]))
}

pub fn even_weight(d: usize) -> Result<CodeVector> {
    let s = Arc::new(Scheme::hamming(d, 2)?);
    let words = s.vertices()?.into_iter().filter(|v| v.bits().count_ones() % 2 == 0);
    Ok(CodeVector::from_subset(s.clone(), words.collect::<Vec<_>>()))
}

/// `{0101…, 1010…}` in `H(d,2)`.
pub fn antipodal_pair(d: usize) -> Result<CodeVector> {
    let s = Arc::new(Scheme::hamming(d, 2)?);
    let v = s.encode(&(0..d).map(|k| (k % 2) as u32).collect::<Vec<_>>())?;
    let w = s.antipode(v).expect("binary Hamming is antipodal");
    Ok(CodeVector::from_subset(s, [v, w]))
}

/// `{{1..d}, {d+1..2d}}` in `J(2d,d)`.
pub fn complementary_pair(d: usize) -> Result<CodeVector> {
    let s = Arc::new(Scheme::johnson(2 * d, d)?);
    let lo = s.encode(&(1..=d as u32).collect::<Vec<_>>())?;
    let hi = s.antipode(lo).expect("J(2d,d) is antipodal");
    Ok(CodeVector::from_subset(s, [lo, hi]))
}

/// A random `[d, k]` code over `F_q` (`q` prime): rows are drawn uniformly
/// and redrawn while they fall in the span of the earlier ones.
pub fn random_linear(d: usize, q: u32, k: usize, seed: u64) -> Result<CodeVector> {
    if ![2, 3, 5, 7].contains(&q) {
        return Err(Error::Config(format!("random linear codes need a small prime q, got {q}")));
    }
    if k == 0 || k > d {
        return Err(Error::Config(format!("dimension {k} must lie in 1..={d}")));
    }
    if (q as u128).pow(k as u32) > 1 << 20 {
        return Err(Error::Config(format!("q^k = {q}^{k} is too large")));
    }
    let s = Arc::new(Scheme::hamming(d, q)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0; d]]);
    for _ in 0..k {
        let row = loop {
            let r: Vec<u32> = (0..d).map(|_| rng.gen_range(0..q)).collect();
            if !span.contains(&r) {
                break r;
            }
        };
        span = span
            .iter()
            .flat_map(|w| {
                let row = &row;
                (0..q).map(move |a| w.iter().zip(row).map(|(x, y)| (x + a * y) % q).collect())
            })
            .collect();
    }
    Ok(from_words(s, span))
}

/// `size` distinct uniformly random vertices.
pub fn random_subset(scheme: Arc<Scheme>, size: usize, seed: u64) -> Result<CodeVector> {
    let n = scheme
        .vertex_count_u128()
        .filter(|_| scheme.supports_vertices())
        .ok_or_else(|| Error::Config(format!("{} is too large to sample", scheme.spec())))?;
    if size as u128 > n {
        return Err(Error::Config(format!("cannot pick {size} of {n} vertices")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = BTreeSet::new();
    while picked.len() < size {
        picked.insert(scheme.vertex_at(rng.gen_range(0..n))?);
    }
    Ok(CodeVector::from_subset(scheme, picked))
}

/// Weight distribution of a subset code from the zero word (Hamming) or from
/// its first member (Johnson).
pub fn weight_distribution(code: &CodeVector) -> Vec<(usize, u64)> {
    let scheme = code.scheme();
    let x = match scheme.family() {
        Family::Hamming => scheme.origin(),
        Family::Johnson => code.support().next().unwrap_or(scheme.origin()),
    };
    base_profile(code, x)
        .support_counts
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c > 0)
        .collect()
}
