//! End-to-end acceptance checks. Each prints one PASS/FAIL line with its
//! runtime; the process fails if any check fails or exceeds its time limit.

mod common;

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use amlab::catalog::closed_form;
use amlab::corpus::{self, random_linear, random_subset};
use amlab::design::{
    oa_strength, relative_design_level, semilattice_design_check, shell_design_extract, t_design_check, TDesignVerdict,
};
use amlab::engine::{am_v1, am_v2, am_v3, cor1_check, extract_and_check, AmOptions, Status};
use amlab::lab::{self, DenseOperatorSet, Side};
use amlab::martin::{martin, Branch, HypothesisStatus};
use amlab::rational::{binomial, int};
use amlab::spectra::parameters;
use amlab::{Budget, CodeVector, DistanceDistribution, Scheme, Vertex};
use common::{all_codesign, anchored_uniform, draw_in, recenter, sample_code, scheme};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> String;

fn main() {
    let checks: [(&str, u64, Check); 10] = [
        ("Golay weight enumerators", 5, golay_fingerprints),
        ("binary Golay 5-designs from the refined theorem", 10, classical_recovery),
        ("coset designs", 30, coset_designs),
        ("Witt design as a Johnson code", 60, witt),
        ("perfect-code designs", 30, perfect_code),
        ("strength equals dual distance minus one", 60, strength_link),
        ("Martin trichotomies and bounds", 300, martin_bounds),
        ("dense module structure", 300, dense_lab),
        ("module orthogonality and semilattice equivalences", 300, equivalences),
        ("soundness sweep", 600, soundness),
    ];
    let mut failures = 0;
    for (n, (name, limit, check)) in checks.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check));
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let (tag, detail) = match outcome {
            Ok(summary) if within => ("PASS", summary),
            Ok(summary) => ("FAIL", format!("{summary}; over the time limit")),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                ("FAIL", msg)
            }
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!("{tag} [{:>2}] {name}: {detail} ({:.2} s, limit {limit} s)", n + 1, elapsed.as_secs_f64());
    }
    if failures > 0 {
        println!("{failures} acceptance check(s) failed");
        std::process::exit(1);
    }
    println!("all acceptance checks passed");
}

fn golay_fingerprints() -> String {
    let binary = corpus::weight_distribution(&corpus::golay_binary());
    assert_eq!(binary, vec![(0, 1), (8, 759), (12, 2576), (16, 759), (24, 1)]);
    let ternary = corpus::weight_distribution(&corpus::golay_ternary());
    assert_eq!(ternary, vec![(0, 1), (6, 264), (9, 440), (12, 24)]);
    format!("binary {binary:?}, ternary {ternary:?}")
}

fn classical_recovery() -> String {
    let golay = corpus::golay_binary();
    let x = golay.scheme().origin();
    let r = am_v2(&golay, x, &AmOptions { refine: true, ..AmOptions::default() }).unwrap();
    assert_eq!(r.t, 5);
    let blocks = shell_design_extract(&golay, x, 8).unwrap();
    assert_eq!(blocks.distinct(), 759);
    match t_design_check(&blocks, 5).unwrap() {
        TDesignVerdict::Design { lambda } => assert_eq!(lambda, int(1)),
        other => panic!("shell 8 is not a 5-design: {other:?}"),
    }
    // Each octad covers C(8,5) of the C(24,5) 5-subsets, so lambda = 1 means
    // every 5-subset is covered exactly once.
    assert_eq!(binomial(24, 5), binomial(8, 5) * 759);
    "t = 5; octads form a 5-(24,8,1) design".into()
}

fn shells_are_designs(chi: &CodeVector, x: Vertex, t: usize) -> usize {
    let s = chi.scheme();
    let mut checked = 0;
    for k in 0..=s.classes() {
        if chi.restrict_to_shell(x, k).is_zero() {
            continue;
        }
        let d = extract_and_check(chi, x, k, t);
        assert!(d.error.is_none(), "shell {k}: {:?}", d.error);
        let verdict = d.verdict.expect("verdict");
        assert!(verdict.is_design(), "shell {k} is not a {t}-design: {verdict:?}");
        checked += 1;
    }
    checked
}

fn coset_designs() -> String {
    let coset4 = corpus::generate("golay-binary-coset4").unwrap();
    let s = coset4.scheme().clone();
    let x = s.origin();
    let catalog = closed_form(s.spec()).expect("binary Hamming catalog");
    let opts = AmOptions { verify: true, catalog: Some(&catalog), ..AmOptions::default() };
    let r = cor1_check(&coset4, x, Some(1), &opts).unwrap();
    assert!(r.t >= 1 && r.requested_holds(), "cor1 t = {}", r.t);
    assert_eq!(r.verification.status, Status::Verified);
    let binary_shells = shells_are_designs(&coset4, x, 1);

    let coset3 = corpus::generate("golay-ternary-coset3").unwrap();
    let x3 = coset3.scheme().origin();
    let r3 = am_v3(&coset3, x3, &AmOptions { verify: true, ..AmOptions::default() }).unwrap();
    assert_eq!(r3.t, 1);
    assert_eq!(r3.verification.status, Status::Verified);
    let ternary_shells = shells_are_designs(&coset3, x3, 1);
    format!("binary cor1 t = {}, {binary_shells} shells; ternary V3 t = 1, {ternary_shells} shells", r.t)
}

fn witt() -> String {
    let witt = corpus::witt_design();
    let s = witt.scheme().clone();
    let dist = DistanceDistribution::compute(&witt);
    let zeros: BTreeSet<usize> = (0..dist.b.len()).filter(|&j| dist.b[j].is_zero()).collect();
    assert_eq!(zeros, BTreeSet::from([1, 2, 3, 4, 5, 7]));
    let x = witt.support().next().unwrap();
    let p = parameters(&witt, x).unwrap();
    assert_eq!((p.delta, p.dual_degree), (Some(4), 2));
    let r = am_v1(&witt, x, &AmOptions::default()).unwrap();
    assert_eq!(r.t, 2);

    // A_l chi restricted to R_i(x) is constant, by full scans of each sphere.
    let members: Vec<Vertex> = witt.support().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pairs = BTreeSet::new();
    while pairs.len() < 20 {
        pairs.insert((rng.gen_range(0..=r.t), rng.gen_range(0..=s.classes())));
    }
    for &(i, l) in &pairs {
        let values: BTreeSet<usize> = s
            .sphere(x, i)
            .unwrap()
            .into_iter()
            .map(|y| members.iter().filter(|&&z| s.distance(y, z) == l).count())
            .collect();
        assert_eq!(values.len(), 1, "A_{l} chi is not constant on R_{i}(x)");
    }
    format!("b_j = 0 for {zeros:?}, delta = 4, s* = 2, t = 2, {} sphere scans", pairs.len())
}

fn perfect_code() -> String {
    let code = corpus::vasilev15();
    let s = code.scheme().clone();
    let mut covered = BTreeSet::new();
    for y in code.support() {
        assert!(covered.insert(y));
        for z in s.sphere(y, 1).unwrap() {
            assert!(covered.insert(z), "radius-1 spheres overlap");
        }
    }
    assert_eq!(covered.len(), 1 << 15);
    let x = s.origin();
    let p = parameters(&code, x).unwrap();
    assert_eq!((p.delta, p.dual_degree), (Some(3), 1));
    let r = am_v1(&code, x, &AmOptions::default()).unwrap();
    assert_eq!(r.t, 2);
    let shells = shells_are_designs(&code, x, 2);
    format!("perfect, delta = 3, s* = 1, t = 2, {shells} shells are 2-designs")
}

fn strength_link() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut positive = 0;
    for seed in 0..20 {
        let (d, q) = (rng.gen_range(2..=8), rng.gen_range(2..=3u32));
        let s = Arc::new(Scheme::hamming(d, q).unwrap());
        let n = s.vertex_count_u128().unwrap() as usize;
        let size = rng.gen_range(2..n);
        let chi = random_subset(s, size, seed).unwrap();
        let strength = oa_strength(&chi, &Budget::default()).unwrap();
        let p = parameters(&chi, chi.support().next().unwrap()).unwrap();
        assert_eq!(strength, p.dual_distance - 1, "H({d},{q}) size {size}");
        positive += usize::from(strength > 0);
    }
    format!("20 codes agree, {positive} with positive strength")
}

fn martin_bounds() -> String {
    let mut codes: Vec<(String, CodeVector)> =
        corpus::entries().into_iter().map(|e| (e.name.to_string(), corpus::generate(e.name).unwrap())).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for seed in 0..100 {
        let q = rng.gen_range(2..=3u32);
        let d = rng.gen_range(3..=10usize);
        let max_k = if q == 2 { 10 } else { 6 };
        let k = rng.gen_range(1..d.min(max_k + 1));
        codes.push((format!("linear H({d},{q}) k={k} #{seed}"), random_linear(d, q, k, seed).unwrap()));
    }
    let mut branches: std::collections::BTreeMap<String, usize> = Default::default();
    let mut exempt = 0;
    for (name, chi) in &codes {
        for side in [Side::P, Side::Q] {
            let r = martin(chi, side, None, None).unwrap();
            assert!(!r.violation(), "{name} {side:?}: {r:?}");
            assert!(!r.holding.is_empty() && r.branch == r.holding[0], "{name} {side:?}");
            if r.hypothesis.status != HypothesisStatus::NotApplicable {
                assert_ne!(r.branch, Branch::Violation, "{name} {side:?}");
            }
            if let Some(b) = &r.bound {
                if b.exempt {
                    exempt += 1;
                } else {
                    assert!(b.holds, "{name} {side:?}: {} fails", b.statement);
                }
            }
            *branches.entry(format!("{:?}", r.branch)).or_default() += 1;
        }
    }
    let counts: Vec<_> = branches.into_iter().map(|(b, n)| format!("{b} {n}")).collect();
    format!("{} codes, branches [{}], {exempt} exempt bound checks, 0 violations", codes.len(), counts.join(", "))
}

fn dense_lab() -> String {
    let budget = Budget::default();
    let mut modules = 0;
    for spec in ["H(6,2)", "H(4,3)", "J(7,3)", "J(8,4)"] {
        let s = scheme(spec);
        let ops = DenseOperatorSet::build(s.clone(), s.origin(), &budget).unwrap();
        let dec = lab::decompose_modules(&ops, 1).unwrap();
        let summary = lab::summarize(&ops, &dec);
        assert_eq!(summary.total_dim, ops.len(), "{spec}");
        assert!(summary.multiplicities_match && summary.certificates_hold, "{spec}");
        assert!(summary.all_thin && summary.all_dual_thin, "{spec}");
        for m in &dec.modules {
            let sig = &m.signature;
            if spec == "H(6,2)" {
                assert_eq!(sig.endpoint, sig.dual_endpoint, "{spec}");
                assert_eq!(sig.diameter + 2 * sig.endpoint, 6, "{spec}");
            }
            if spec.starts_with('J') {
                assert!(sig.endpoint <= sig.dual_endpoint, "{spec}");
            }
        }
        let tri = lab::verify_tridiagonal(&ops, &dec);
        assert!(tri.max_residual <= 1e-8 && tri.max_dual_residual <= 1e-8, "{spec}: {tri:?}");
        let itt = lab::verify_itt(&ops, &dec);
        assert!(itt.passes && itt.max_rank_below == 0, "{spec}: {itt:?}");
        let split = lab::split_decomposition(&ops, &dec).unwrap();
        assert_eq!(split.max_below_antidiagonal, 0, "{spec}");
        assert!(split.reconstruction_residual <= 1e-8 && split.passes, "{spec}");
        modules += dec.modules.len();
    }
    format!("4 schemes, {modules} modules, all structural checks within 1e-8")
}

fn equivalences() -> String {
    let budget = Budget::default();
    let specs = ["H(3,2)", "H(4,2)", "H(5,2)", "H(6,2)", "H(3,3)", "H(4,3)", "H(5,3)", "H(6,3)", "J(6,2)", "J(7,3)", "J(8,3)", "J(8,4)"];
    let mut labs: HashMap<&str, (Arc<Scheme>, DenseOperatorSet, lab::Decomposition)> = HashMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut nontrivial, mut skipped) = (0, 0);
    for seed in 0..50u64 {
        let spec = specs[seed as usize % specs.len()];
        let (s, ops, dec) = labs.entry(spec).or_insert_with(|| {
            let s = scheme(spec);
            let ops = DenseOperatorSet::build(s.clone(), s.origin(), &budget).unwrap();
            let dec = lab::decompose_modules(&ops, 1).unwrap();
            (s, ops, dec)
        });
        let (chi, base) = draw_in(s.clone(), &mut rng);
        let chi = recenter(&chi, base);
        let x = s.origin();
        if chi.check_code().is_err() {
            skipped += 1;
            continue;
        }
        let v = ops.dense_vector(&chi);
        for side in [Side::P, Side::Q] {
            let rep = lab::module_orthogonality_test(ops, dec, &v, side);
            assert_eq!(rep.discrepancies, 0, "{spec} seed {seed} {side:?}");
        }
        let level = relative_design_level(&chi, x).max_level;
        nontrivial += usize::from(level > 0);
        for t in 1..=s.classes() {
            let holds = semilattice_design_check(&chi, x, t, &budget).unwrap().holds();
            assert_eq!(holds, t <= level, "{spec} seed {seed}: t = {t}, spectral level {level}");
        }
    }
    assert!(skipped < 10, "{skipped} degenerate draws");
    format!("{} codes on {} schemes, 0 discrepancies, {nontrivial} with positive design level", 50 - skipped, labs.len())
}

fn soundness() -> String {
    let mut nontrivial = [0usize; 3];
    let mut refined_gain = 0;
    for seed in 0..200u64 {
        let (chi, x) = sample_code(seed);
        assert!(chi.scheme().vertex_count_u128().unwrap() <= 4096);
        let spec = chi.scheme().spec();
        for refine in [false, true] {
            let opts = AmOptions { refine, verify: true, ..AmOptions::default() };
            let v1 = am_v1(&chi, x, &opts).unwrap();
            assert!(all_codesign(&chi, x, v1.t), "{spec} seed {seed}: V1 t = {}", v1.t);
            assert_ne!(v1.verification.status, Status::Failed, "{spec} seed {seed}");
            let v2 = am_v2(&chi, x, &opts).unwrap();
            for k in 0..=chi.scheme().classes() {
                let shell = chi.restrict_to_shell(x, k);
                if !shell.is_zero() {
                    let level = relative_design_level(&shell, x).max_level;
                    assert!(level >= v2.t, "{spec} seed {seed}: V2 t = {} > {level} on shell {k}", v2.t);
                }
            }
            assert_ne!(v2.verification.status, Status::Failed, "{spec} seed {seed}");
            if refine {
                let plain = AmOptions::default();
                let (p1, p2) = (am_v1(&chi, x, &plain).unwrap().t, am_v2(&chi, x, &plain).unwrap().t);
                assert!(v1.t >= p1 && v2.t >= p2, "{spec} seed {seed}: refinement lowered t");
                refined_gain += usize::from(v1.t > p1 || v2.t > p2);
                nontrivial[0] += usize::from(v1.t > 0);
                nontrivial[1] += usize::from(v2.t > 0);
            }
        }
        let v3 = am_v3(&chi, x, &AmOptions { verify: true, ..AmOptions::default() }).unwrap();
        assert!(anchored_uniform(&chi, x, v3.t), "{spec} seed {seed}: V3 t = {}", v3.t);
        assert_ne!(v3.verification.status, Status::Failed, "{spec} seed {seed}");
        nontrivial[2] += usize::from(v3.t > 0);
    }
    format!(
        "200 codes, positive t for V1/V2/V3 in {}/{}/{} cases, refinement helped {refined_gain} times, 0 violations",
        nontrivial[0], nontrivial[1], nontrivial[2]
    )
}
