use std::collections::{BTreeMap, BTreeSet};

use amlab::corpus::{self, entries, generate};
use amlab::spectra::parameters;
use amlab::CodeVector;

fn pair_distances(chi: &CodeVector) -> BTreeMap<usize, u64> {
    let s = chi.scheme();
    let members: Vec<_> = chi.support().collect();
    let mut out = BTreeMap::new();
    for (n, &a) in members.iter().enumerate() {
        for &b in &members[n + 1..] {
            *out.entry(s.distance(a, b)).or_default() += 1;
        }
    }
    out
}

#[test]
fn every_entry_matches_its_fingerprint() {
    for e in entries() {
        let chi = generate(e.name).unwrap();
        let fp = &e.fingerprint;
        assert_eq!(chi.scheme().spec(), e.scheme, "{}", e.name);
        assert_eq!(chi.support_len(), fp.size, "{}", e.name);
        let pairs = pair_distances(&chi);
        let delta = pairs.keys().next().copied();
        assert_eq!(delta, fp.min_distance, "{}", e.name);

        let x = chi.support().next().unwrap();
        let p = parameters(&chi, x).unwrap();
        assert_eq!(p.delta, delta, "{}", e.name);
        assert_eq!(p.degree, Some(pairs.len()), "{}", e.name);
        if let Some(dual) = fp.dual_distance {
            assert_eq!(p.dual_distance, dual, "{}", e.name);
        }
        if let Some(s_star) = fp.dual_degree {
            assert_eq!(p.dual_degree, s_star, "{}", e.name);
        }
        if let Some(w) = &fp.weights {
            let s = chi.scheme();
            let mut got: BTreeMap<usize, u64> = BTreeMap::new();
            for y in chi.support() {
                *got.entry(s.distance(s.origin(), y)).or_default() += 1;
            }
            assert_eq!(got.into_iter().collect::<Vec<_>>(), *w, "{}", e.name);
        }
    }
}

#[test]
fn golay_weight_enumerators() {
    assert_eq!(
        corpus::weight_distribution(&corpus::golay_binary()),
        vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]
    );
    assert_eq!(corpus::weight_distribution(&corpus::golay_ternary()), vec![(0, 1), (6, 264), (9, 440), (12, 24)]);
}

#[test]
fn cosets_have_the_requested_minimum_weight() {
    for (name, code, w) in [
        ("golay-binary-coset4", corpus::golay_binary(), 4),
        ("golay-ternary-coset3", corpus::golay_ternary(), 3),
    ] {
        let coset = generate(name).unwrap();
        let s = coset.scheme();
        let min = coset.support().map(|y| s.distance(s.origin(), y)).min().unwrap();
        assert_eq!(min, w, "{name}");
        // Differences of coset members are codewords.
        let a = coset.support().next().unwrap();
        let da = s.decode(a);
        let q = match s.spec() {
            amlab::SchemeSpec::Hamming { q, .. } => q,
            _ => unreachable!(),
        };
        for b in coset.support().take(50) {
            let diff: Vec<u32> = s.decode(b).iter().zip(&da).map(|(x, y)| (x + q - y) % q).collect();
            assert!(code.contains(s.encode(&diff).unwrap()), "{name}");
        }
    }
}

#[test]
fn octads_are_the_witt_blocks() {
    let golay = corpus::golay_binary();
    let s = golay.scheme();
    let octads: BTreeSet<Vec<u32>> = golay
        .support()
        .map(|v| s.decode(v))
        .filter(|w| w.iter().sum::<u32>() == 8)
        .map(|w| (1..=24).filter(|&i| w[i as usize - 1] == 1).collect())
        .collect();
    let witt = corpus::witt_design();
    let j = witt.scheme();
    let blocks: BTreeSet<Vec<u32>> = witt.support().map(|v| j.decode(v)).collect();
    assert_eq!(octads.len(), 759);
    assert_eq!(blocks, octads);
}

#[test]
fn vasilev_code_is_perfect_and_nonlinear() {
    let code = corpus::vasilev15();
    let s = code.scheme();
    let mut covered = BTreeSet::new();
    for y in code.support() {
        covered.insert(y);
        for z in s.sphere(y, 1).unwrap() {
            assert!(covered.insert(z), "spheres overlap");
        }
    }
    assert_eq!(covered.len(), 1 << 15);
    let members: Vec<_> = code.support().map(|v| s.decode(v)).collect();
    let nonlinear = members.iter().take(40).any(|a| {
        members.iter().take(40).any(|b| {
            let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| (x + y) % 2).collect();
            !code.contains(s.encode(&sum).unwrap())
        })
    });
    assert!(nonlinear);
}

#[test]
fn hamming_codes_are_perfect() {
    for r in 2..=4u32 {
        let code = corpus::hamming_code(r).unwrap();
        let n = (1usize << r) - 1;
        assert_eq!(code.support_len() * (n + 1), 1 << n);
        assert_eq!(pair_distances(&code).keys().next(), Some(&3));
    }
}

#[test]
fn seeded_generators_are_reproducible() {
    assert_eq!(corpus::random_linear(9, 3, 4, 17).unwrap(), corpus::random_linear(9, 3, 4, 17).unwrap());
    let s = std::sync::Arc::new(amlab::Scheme::johnson(9, 3).unwrap());
    let a = corpus::random_subset(s.clone(), 20, 5).unwrap();
    assert_eq!(a, corpus::random_subset(s.clone(), 20, 5).unwrap());
    assert_ne!(a, corpus::random_subset(s, 20, 6).unwrap());
}
