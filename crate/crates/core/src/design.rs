//! Relative design and codesign levels, plus the brute-force combinatorial
//! oracles they are checked against.
//!
//! Linear dependence of two vectors `u, v` is decided by the exact Gram
//! residual `‖u‖²‖v‖² − <u,v>²`, which vanishes iff they are dependent.
//! For the design side (`u = E_jχ`, `v = E_j x̂`) every term is a linear
//! function of the inner distribution and the shell profile, so no
//! `|X|`-length vector is formed.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rational::{binomial_u128, render, serde_rat, Rational};
use crate::scheme::{Combinations, Family, Scheme, Vertex};
use crate::spectra::{base_profile, BaseProfile, CodeVector, DistanceDistribution};

/// Verdict for one index of a design or codesign test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexVerdict {
    pub index: usize,
    pub dependent: bool,
    #[serde(with = "serde_rat")]
    pub residual: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DesignLevelReport {
    pub max_level: usize,
    pub verdicts: Vec<IndexVerdict>,
    /// First index that could not be decided within budget, if any.
    pub undecided_from: Option<usize>,
}

impl DesignLevelReport {
    fn from_residuals(residuals: &[Rational]) -> Self {
        let verdicts: Vec<IndexVerdict> = residuals
            .iter()
            .enumerate()
            .skip(1)
            .map(|(index, r)| IndexVerdict { index, dependent: r.is_zero(), residual: r.clone() })
            .collect();
        let max_level = verdicts.iter().take_while(|v| v.dependent).count();
        Self { max_level, verdicts, undecided_from: None }
    }
}

/// Gram residuals of `(E_j χ, E_j x̂)` for `j = 0..=D`.
///
/// Uses `‖E_jχ‖² = b_j`, `<E_jχ, E_j x̂> = |X|^{-1} Σ_i Q[j][i] c_i` and
/// `‖E_j x̂‖² = m_j / |X|`.
pub fn design_residuals(scheme: &Scheme, b: &[Rational], c: &[Rational]) -> Vec<Rational> {
    let n = scheme.vertex_count_rational();
    (0..=scheme.classes())
        .map(|j| {
            let row = scheme.idempotent_coefficients(j);
            let cross = row.iter().zip(c).map(|(q, ci)| q * ci).sum::<Rational>() / &n;
            let m = Rational::from_integer(scheme.multiplicities()[j].clone());
            &b[j] * m / &n - &cross * &cross
        })
        .collect()
}

/// Gram residuals of `(E_i^*χ, A_i x̂)`: `‖E_i^*χ‖²·k_i − c_i²`.
pub fn codesign_residuals(scheme: &Scheme, profile: &BaseProfile) -> Vec<Rational> {
    (0..=scheme.classes())
        .map(|i| {
            let k = Rational::from_integer(scheme.valencies()[i].clone());
            &profile.shell_norms[i] * k - &profile.c[i] * &profile.c[i]
        })
        .collect()
}

/// Largest `t` with `E_jχ ∥ E_j x̂` for all `1 <= j <= t`.
pub fn relative_design_level(chi: &CodeVector, x: Vertex) -> DesignLevelReport {
    let dist = DistanceDistribution::compute(chi);
    relative_design_level_with(chi, &dist, x)
}

pub fn relative_design_level_with(
    chi: &CodeVector,
    dist: &DistanceDistribution,
    x: Vertex,
) -> DesignLevelReport {
    let profile = base_profile(chi, x);
    DesignLevelReport::from_residuals(&design_residuals(chi.scheme(), &dist.b, &profile.c))
}

/// Largest `t` with `E_i^*χ ∥ A_i x̂` for all `1 <= i <= t`, i.e. `χ`
/// constant on each of the spheres `R_1(x), …, R_t(x)`.
pub fn relative_codesign_level(chi: &CodeVector, x: Vertex) -> DesignLevelReport {
    let profile = base_profile(chi, x);
    DesignLevelReport::from_residuals(&codesign_residuals(chi.scheme(), &profile))
}

/// `A_i χ`. Without a restriction list the support is expanded sphere by
/// sphere; with one, each requested vertex is evaluated by a support scan.
pub fn apply_ai(
    chi: &CodeVector,
    i: usize,
    budget: &Budget,
    restrict: Option<&[Vertex]>,
) -> Result<CodeVector> {
    let scheme = chi.scheme();
    if i > scheme.classes() {
        return Err(Error::Config(format!("relation index {i} exceeds D")));
    }
    if let Some(points) = restrict {
        budget.check("A_i evaluation", points.len() as u128 * chi.support_len() as u128)?;
        let values = points.iter().map(|&z| {
            let v: Rational = chi
                .iter()
                .filter(|(y, _)| scheme.distance(z, *y) == i)
                .map(|(_, w)| w.clone())
                .sum();
            (z, v)
        });
        return Ok(CodeVector::from_weights(scheme.clone(), values.collect::<Vec<_>>()));
    }
    let needed = chi.support_len() as u128 * scheme.valency_u128(i);
    budget.check("A_i expansion", needed)?;
    let mut acc: BTreeMap<Vertex, Rational> = BTreeMap::new();
    for (y, w) in chi.iter() {
        for z in scheme.sphere(y, i)? {
            *acc.entry(z).or_insert_with(Rational::zero) += w;
        }
    }
    Ok(CodeVector::from_weights(scheme.clone(), acc))
}

/// Codesign behaviour of every `A_ℓχ` and `A_ℓE_k^*χ` around `x`, measured by
/// scanning the spheres `R_i(x)` and recording the distance profile of each
/// vertex against the support of `χ`.
#[derive(Debug, Clone, Serialize)]
pub struct ProductCodesignScan {
    /// `levels[ℓ]`: codesign level of `A_ℓ χ` (capped at the scanned depth).
    pub levels: Vec<usize>,
    /// Level valid simultaneously for all `A_ℓ`.
    pub level_all: usize,
    /// Level valid simultaneously for all `A_ℓ E_k^*`.
    pub level_all_split: usize,
    pub scanned_to: usize,
    pub undecided_from: Option<usize>,
    pub vertices_scanned: u64,
}

pub fn product_codesign_scan(
    chi: &CodeVector,
    x: Vertex,
    depth: usize,
    budget: &Budget,
) -> Result<ProductCodesignScan> {
    let scheme = chi.scheme();
    let d = scheme.classes();
    let depth = depth.min(d);
    let support: Vec<(Vertex, usize, &Rational)> =
        chi.iter().map(|(y, w)| (y, scheme.distance(x, y), w)).collect();
    let mut consistent_l = vec![vec![true; d + 1]; depth + 1];
    let mut consistent_split = vec![true; depth + 1];
    let mut spent: u128 = 0;
    let mut undecided_from = None;
    let mut scanned_to = 0;
    let mut vertices_scanned = 0u64;
    for i in 1..=depth {
        let shell_size = scheme.valency_u128(i);
        let cost = shell_size * support.len() as u128;
        if shell_size > budget.shell_cap as u128 || !budget.fits(spent + cost) {
            undecided_from = Some(i);
            break;
        }
        spent += cost;
        let mut reference: Option<Vec<Rational>> = None;
        for z in scheme.sphere(x, i)? {
            vertices_scanned += 1;
            let mut grid = vec![Rational::zero(); (d + 1) * (d + 1)];
            for (y, k, w) in &support {
                grid[k * (d + 1) + scheme.distance(z, *y)] += *w;
            }
            match &reference {
                None => reference = Some(grid),
                Some(r) => {
                    if *r != grid {
                        consistent_split[i] = false;
                        for l in 0..=d {
                            let lhs: Rational = (0..=d).map(|k| &r[k * (d + 1) + l]).sum();
                            let rhs: Rational = (0..=d).map(|k| &grid[k * (d + 1) + l]).sum();
                            if lhs != rhs {
                                consistent_l[i][l] = false;
                            }
                        }
                    }
                }
            }
        }
        scanned_to = i;
    }
    let prefix = |ok: &dyn Fn(usize) -> bool| (1..=scanned_to).take_while(|&i| ok(i)).count();
    let levels = (0..=d).map(|l| prefix(&|i| consistent_l[i][l])).collect::<Vec<_>>();
    let level_all = prefix(&|i| (0..=d).all(|l| consistent_l[i][l]));
    let level_all_split = prefix(&|i| consistent_split[i]);
    Ok(ProductCodesignScan {
        levels,
        level_all,
        level_all_split,
        scanned_to,
        undecided_from,
        vertices_scanned,
    })
}

/// A multiset of `k`-subsets of `{1..v}`; blocks are bitmasks (element `e`
/// at bit `e-1`) with rational multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMultiset {
    pub v: usize,
    pub k: usize,
    pub blocks: BTreeMap<u128, Rational>,
}

impl BlockMultiset {
    pub fn new(v: usize, k: usize) -> Self {
        Self { v, k, blocks: BTreeMap::new() }
    }

    pub fn from_blocks(v: usize, k: usize, blocks: &[Vec<u32>]) -> Result<Self> {
        let mut out = Self::new(v, k);
        for b in blocks {
            let mut mask = 0u128;
            for &e in b {
                if e == 0 || e as usize > v {
                    return Err(Error::Config(format!("block element {e} outside 1..={v}")));
                }
                mask |= 1u128 << (e - 1);
            }
            out.add(mask, Rational::one())?;
        }
        Ok(out)
    }

    pub fn add(&mut self, mask: u128, weight: Rational) -> Result<()> {
        if mask.count_ones() as usize != self.k {
            return Err(Error::Config(format!(
                "block of size {} in a design with block size {}",
                mask.count_ones(),
                self.k
            )));
        }
        if self.v < 128 && mask >> self.v != 0 {
            return Err(Error::Config(format!("block leaves the ground set 1..={}", self.v)));
        }
        let w = self.blocks.entry(mask).or_insert_with(Rational::zero);
        *w += weight;
        if w.is_zero() {
            self.blocks.remove(&mask);
        }
        Ok(())
    }

    pub fn total(&self) -> Rational {
        self.blocks.values().sum()
    }

    /// Number of distinct blocks.
    pub fn distinct(&self) -> usize {
        self.blocks.len()
    }

    pub fn elements(mask: u128) -> Vec<u32> {
        (0..128).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TDesignVerdict {
    Design {
        #[serde(with = "serde_rat")]
        lambda: Rational,
    },
    Counterexample {
        first: Vec<u32>,
        #[serde(with = "serde_rat")]
        first_count: Rational,
        second: Vec<u32>,
        #[serde(with = "serde_rat")]
        second_count: Rational,
    },
}

impl TDesignVerdict {
    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            TDesignVerdict::Design { lambda } => Some(lambda),
            _ => None,
        }
    }

    pub fn is_design(&self) -> bool {
        matches!(self, TDesignVerdict::Design { .. })
    }
}

pub const T_SUBSET_LIMIT: u128 = 100_000_000;

/// Exhaustive check that every `t`-subset of the ground set lies in the same
/// (weighted) number of blocks. For `t > k` the count is identically zero.
pub fn t_design_check(blocks: &BlockMultiset, t: usize) -> Result<TDesignVerdict> {
    let subsets = binomial_u128(blocks.v as u64, t as u64);
    if subsets > T_SUBSET_LIMIT {
        return Err(Error::Budget {
            what: format!("t-design check over C({}, {t}) subsets", blocks.v),
            needed: subsets,
            budget: T_SUBSET_LIMIT as u64,
        });
    }
    if t > blocks.k {
        return Ok(TDesignVerdict::Design { lambda: Rational::zero() });
    }
    let per_block = binomial_u128(blocks.k as u64, t as u64);
    let work = per_block.saturating_mul(blocks.distinct() as u128);
    if work > T_SUBSET_LIMIT {
        return Err(Error::Budget {
            what: "t-subsets of blocks".into(),
            needed: work,
            budget: T_SUBSET_LIMIT as u64,
        });
    }
    let mut counts: HashMap<u128, Rational> = HashMap::new();
    for (&mask, w) in &blocks.blocks {
        let elems = BlockMultiset::elements(mask);
        for combo in Combinations::new(elems.len(), t) {
            let sub = combo.iter().fold(0u128, |m, &c| m | 1u128 << (elems[c] - 1));
            *counts.entry(sub).or_insert_with(Rational::zero) += w;
        }
    }
    let zero = Rational::zero();
    let mut first: Option<(Vec<usize>, Rational)> = None;
    for combo in Combinations::new(blocks.v, t) {
        let mask = combo.iter().fold(0u128, |m, &c| m | 1u128 << c);
        let count = counts.get(&mask).unwrap_or(&zero);
        match &first {
            None => first = Some((combo, count.clone())),
            Some((f, fc)) => {
                if fc != count {
                    return Ok(TDesignVerdict::Counterexample {
                        first: f.iter().map(|&e| e as u32 + 1).collect(),
                        first_count: fc.clone(),
                        second: combo.iter().map(|&e| e as u32 + 1).collect(),
                        second_count: count.clone(),
                    });
                }
            }
        }
    }
    Ok(TDesignVerdict::Design { lambda: first.map(|(_, c)| c).unwrap_or_default() })
}

fn require_hamming(scheme: &Scheme, what: &str) -> Result<(usize, u32)> {
    match scheme.spec() {
        crate::scheme::SchemeSpec::Hamming { d, q } => Ok((d, q)),
        _ => Err(Error::Config(format!("{what} is defined for Hamming schemes only"))),
    }
}

/// Maximum strength of a subset code in `H(D,q)` as an orthogonal array.
pub fn oa_strength(chi: &CodeVector, budget: &Budget) -> Result<usize> {
    let scheme = chi.scheme();
    let (d, q) = require_hamming(scheme, "orthogonal-array strength")?;
    if !chi.is_subset() {
        return Err(Error::Config("orthogonal-array strength needs a subset code".into()));
    }
    let words: Vec<Vec<u32>> = chi.support().map(|v| scheme.decode(v)).collect();
    let size = words.len() as u128;
    let mut spent: u128 = 0;
    let mut strength = 0;
    for t in 1..=d {
        let patterns = (q as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
        let cost = binomial_u128(d as u64, t as u64).saturating_mul(size + patterns.min(size));
        spent = spent.saturating_add(cost);
        budget.check("orthogonal-array strength", spent)?;
        if !size.is_multiple_of(patterns) {
            break;
        }
        let expected = size / patterns;
        let balanced = Combinations::new(d, t).all(|cols| {
            let mut counts: HashMap<u128, u128> = HashMap::new();
            for w in &words {
                let key = cols.iter().fold(0u128, |acc, &c| acc * q as u128 + w[c] as u128);
                *counts.entry(key).or_insert(0) += 1;
            }
            counts.len() as u128 == patterns && counts.values().all(|&c| c == expected)
        });
        if !balanced {
            break;
        }
        strength = t;
    }
    Ok(strength)
}

/// Outcome of the semilattice criterion for relative `t`-designs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SemilatticeVerdict {
    Holds,
    Witness {
        /// `rank(x ∧ u)` shared by both objects.
        meet_rank: usize,
        first: String,
        #[serde(with = "serde_rat")]
        first_sum: Rational,
        second: String,
        #[serde(with = "serde_rat")]
        second_sum: Rational,
    },
}

impl SemilatticeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SemilatticeVerdict::Holds)
    }
}

/// Per meet-rank bookkeeping: the first object seen and the first that disagrees.
#[derive(Default)]
struct RankGroups {
    groups: BTreeMap<usize, (String, Rational, Option<(String, Rational)>)>,
}

impl RankGroups {
    fn record(&mut self, rank: usize, object: impl FnOnce() -> String, sum: Rational) {
        match self.groups.get_mut(&rank) {
            None => {
                self.groups.insert(rank, (object(), sum, None));
            }
            Some((_, first, mismatch)) => {
                if mismatch.is_none() && *first != sum {
                    *mismatch = Some((object(), sum));
                }
            }
        }
    }

    fn verdict(self) -> SemilatticeVerdict {
        for (rank, (first, first_sum, mismatch)) in self.groups {
            if let Some((second, second_sum)) = mismatch {
                return SemilatticeVerdict::Witness {
                    meet_rank: rank,
                    first,
                    first_sum,
                    second,
                    second_sum,
                };
            }
        }
        SemilatticeVerdict::Holds
    }
}

/// For each rank-`t` object `u` of the semilattice, `Σ_{u ≼ y} χ(y)` must
/// depend only on `rank(x ∧ u)`. Witnesses are reported for the smallest
/// offending meet rank, in enumeration order.
///
/// Hamming objects are printed as words over `{0..q-1, .}`; Johnson objects
/// as `{a,b,…}`.
pub fn semilattice_design_check(
    chi: &CodeVector,
    x: Vertex,
    t: usize,
    budget: &Budget,
) -> Result<SemilatticeVerdict> {
    let scheme = chi.scheme();
    let d = scheme.classes();
    if t > d {
        return Err(Error::Config(format!("rank {t} exceeds D = {d}")));
    }
    let mut groups = RankGroups::default();
    match scheme.spec() {
        crate::scheme::SchemeSpec::Hamming { d, q } => {
            let patterns = (q as u128).pow(t as u32);
            let combos = binomial_u128(d as u64, t as u64);
            budget.check(
                "semilattice check",
                combos.saturating_mul(chi.support_len() as u128 + patterns),
            )?;
            let xd = scheme.decode(x);
            let words: Vec<(Vec<u32>, &Rational)> =
                chi.iter().map(|(v, w)| (scheme.decode(v), w)).collect();
            let zero = Rational::zero();
            for cols in Combinations::new(d, t) {
                let mut sums: HashMap<u128, Rational> = HashMap::new();
                for (w, val) in &words {
                    let key = cols.iter().fold(0u128, |acc, &c| acc * q as u128 + w[c] as u128);
                    *sums.entry(key).or_insert_with(Rational::zero) += *val;
                }
                for key in 0..patterns {
                    let mut digits = vec![0u32; t];
                    let mut rest = key;
                    for slot in (0..t).rev() {
                        digits[slot] = (rest % q as u128) as u32;
                        rest /= q as u128;
                    }
                    let rank = cols.iter().zip(&digits).filter(|(&c, &g)| xd[c] == g).count();
                    let sum = sums.get(&key).unwrap_or(&zero).clone();
                    groups.record(
                        rank,
                        || {
                            let mut s = vec!['.'; d];
                            for (&c, &g) in cols.iter().zip(&digits) {
                                s[c] = char::from_digit(g, 36).unwrap();
                            }
                            s.into_iter().collect()
                        },
                        sum,
                    );
                }
            }
        }
        crate::scheme::SchemeSpec::Johnson { n, d } => {
            let objects = binomial_u128(n as u64, t as u64);
            let per_word = binomial_u128(d as u64, t as u64);
            budget.check(
                "semilattice check",
                objects + per_word.saturating_mul(chi.support_len() as u128),
            )?;
            let mut sums: HashMap<u128, Rational> = HashMap::new();
            for (y, w) in chi.iter() {
                let elems = scheme.decode(y);
                for combo in Combinations::new(d, t) {
                    let mask = combo.iter().fold(0u128, |m, &c| m | 1u128 << (elems[c] - 1));
                    *sums.entry(mask).or_insert_with(Rational::zero) += w;
                }
            }
            let zero = Rational::zero();
            for combo in Combinations::new(n, t) {
                let mask = combo.iter().fold(0u128, |m, &c| m | 1u128 << c);
                let rank = (mask & x.bits()).count_ones() as usize;
                let sum = sums.get(&mask).unwrap_or(&zero).clone();
                groups.record(
                    rank,
                    || {
                        let parts: Vec<String> = combo.iter().map(|c| (c + 1).to_string()).collect();
                        format!("{{{}}}", parts.join(","))
                    },
                    sum,
                );
            }
        }
    }
    Ok(groups.verdict())
}

/// Blocks from one shell of a code around `x`.
///
/// Hamming (only at the zero word): supports of the weight-`k` words, as
/// `k`-subsets of `{1..D}`. Johnson: the multiset `{x ∩ y : y ∈ Y ∩ R_k(x)}`,
/// relabelled as `(D-k)`-subsets of `{1..D}` by position inside `x`.
pub fn shell_design_extract(chi: &CodeVector, x: Vertex, k: usize) -> Result<BlockMultiset> {
    let scheme = chi.scheme();
    let d = scheme.classes();
    if k > d {
        return Err(Error::Config(format!("shell {k} exceeds D = {d}")));
    }
    match scheme.family() {
        Family::Hamming => {
            if x != scheme.origin() {
                return Err(Error::Config(
                    "Hamming shell designs are defined at the zero word only".into(),
                ));
            }
            let mut out = BlockMultiset::new(d, k);
            for (y, w) in chi.iter() {
                if scheme.distance(x, y) != k {
                    continue;
                }
                let mask = (0..d)
                    .filter(|&c| scheme.digit(y, c) != 0)
                    .fold(0u128, |m, c| m | 1u128 << c);
                out.add(mask, w.clone())?;
            }
            Ok(out)
        }
        Family::Johnson => anchored_blocks(chi, x, k),
    }
}

/// Agreement blocks of shell `k`: coordinates where `y` agrees with `x`
/// (Hamming) or `x ∩ y` by position in `x` (Johnson); size `D-k`.
pub fn anchored_blocks(chi: &CodeVector, x: Vertex, k: usize) -> Result<BlockMultiset> {
    let scheme = chi.scheme();
    let d = scheme.classes();
    let mut out = BlockMultiset::new(d, d - k);
    match scheme.family() {
        Family::Hamming => {
            for (y, w) in chi.iter() {
                if scheme.distance(x, y) != k {
                    continue;
                }
                let mask = (0..d)
                    .filter(|&c| scheme.digit(y, c) == scheme.digit(x, c))
                    .fold(0u128, |m, c| m | 1u128 << c);
                out.add(mask, w.clone())?;
            }
        }
        Family::Johnson => {
            let xs = scheme.decode(x);
            for (y, w) in chi.iter() {
                if scheme.distance(x, y) != k {
                    continue;
                }
                let mask = xs
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| y.bits() >> (e - 1) & 1 == 1)
                    .fold(0u128, |m, (pos, _)| m | 1u128 << pos);
                out.add(mask, w.clone())?;
            }
        }
    }
    Ok(out)
}

/// Largest `t` such that for every shell and every `t' <= t` the anchored
/// blocks are uniform on `t'`-subsets, i.e. `<E_k^*χ, χ_{≽u}>` is the same
/// for all rank-`t'` objects `u ≼ x`.
pub fn anchored_design_level(chi: &CodeVector, x: Vertex) -> Result<usize> {
    let scheme = chi.scheme();
    let d = scheme.classes();
    let shells: Vec<BlockMultiset> = (0..=d)
        .map(|k| anchored_blocks(chi, x, k))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|b| !b.blocks.is_empty())
        .collect();
    let mut level = 0;
    for t in 1..=d {
        for blocks in &shells {
            if !t_design_check(blocks, t)?.is_design() {
                return Ok(level);
            }
        }
        level = t;
    }
    Ok(level)
}

/// Human-readable rendering of a block.
pub fn render_block(mask: u128) -> String {
    let parts: Vec<String> = BlockMultiset::elements(mask).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn render_lambda(v: &TDesignVerdict) -> String {
    match v {
        TDesignVerdict::Design { lambda } => render(lambda),
        TDesignVerdict::Counterexample { .. } => "-".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use std::sync::Arc;

    fn scheme(d: usize, q: u32) -> Arc<Scheme> {
        Arc::new(Scheme::hamming(d, q).unwrap())
    }

    fn subset(s: &Arc<Scheme>, words: &[&str]) -> CodeVector {
        CodeVector::from_subset(s.clone(), words.iter().map(|w| s.parse_vertex(w).unwrap()))
    }

    #[test]
    fn point_mass_is_full_design() {
        let s = scheme(4, 3);
        let x = s.parse_vertex("0120").unwrap();
        let r = relative_design_level(&CodeVector::point(s.clone(), x), x);
        assert_eq!(r.max_level, 4);
    }

    #[test]
    fn sphere_indicator_is_full_design() {
        let s = scheme(5, 2);
        let x = s.origin();
        for k in 0..=5 {
            let chi = CodeVector::from_subset(s.clone(), s.sphere(x, k).unwrap());
            assert_eq!(relative_design_level(&chi, x).max_level, 5, "A_{k} x");
        }
    }

    #[test]
    fn codesign_small_example() {
        let s = scheme(3, 2);
        let chi = subset(&s, &["000", "110"]);
        let r = relative_codesign_level(&chi, s.origin());
        assert_eq!(r.max_level, 1);
        assert!(!r.verdicts[1].dependent);
        assert_eq!(r.verdicts[1].index, 2);
        // shell {011,101,110} takes values (0,0,1): residual = 1*3 - 1 = 2
        assert_eq!(r.verdicts[1].residual, int(2));
    }

    #[test]
    fn all_ones_codesign() {
        let s = scheme(3, 3);
        let chi = CodeVector::all_ones(s.clone()).unwrap();
        assert_eq!(relative_codesign_level(&chi, s.origin()).max_level, 3);
    }

    #[test]
    fn apply_ai_identity_and_sphere() {
        let s = scheme(3, 2);
        let budget = Budget::default();
        let chi = subset(&s, &["000", "011"]);
        let a0 = apply_ai(&chi, 0, &budget, None).unwrap();
        assert_eq!(a0.iter().collect::<Vec<_>>(), chi.iter().collect::<Vec<_>>());
        let pt = subset(&s, &["000"]);
        let a1 = apply_ai(&pt, 1, &budget, None).unwrap();
        let mut got: Vec<String> = a1.support().map(|v| s.format_vertex(v)).collect();
        got.sort();
        assert_eq!(got, vec!["001", "010", "100"]);
        assert!(a1.is_subset());
        assert!(apply_ai(&pt, 4, &budget, None).is_err());
        let tiny = Budget::with_steps(2);
        assert!(apply_ai(&pt, 1, &tiny, None).is_err());
        let restricted = apply_ai(&pt, 1, &tiny, Some(&[s.parse_vertex("001").unwrap()])).unwrap();
        assert_eq!(restricted.support_len(), 1);
    }

    #[test]
    fn fano_plane() {
        let lines = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
        let blocks: Vec<Vec<u32>> = lines.iter().map(|l| l.to_vec()).collect();
        let b = BlockMultiset::from_blocks(7, 3, &blocks).unwrap();
        assert_eq!(t_design_check(&b, 2).unwrap(), TDesignVerdict::Design { lambda: int(1) });
        assert_eq!(t_design_check(&b, 1).unwrap(), TDesignVerdict::Design { lambda: int(3) });
        assert!(!t_design_check(&b, 3).unwrap().is_design());
    }

    #[test]
    fn complete_design() {
        for (v, k) in [(6, 3), (7, 2), (5, 5)] {
            let blocks: Vec<Vec<u32>> = Combinations::new(v, k)
                .map(|c| c.iter().map(|&e| e as u32 + 1).collect())
                .collect();
            let b = BlockMultiset::from_blocks(v, k, &blocks).unwrap();
            assert_eq!(t_design_check(&b, k).unwrap().lambda(), Some(&int(1)));
        }
    }

    #[test]
    fn counterexample_is_first_pair() {
        let b = BlockMultiset::from_blocks(4, 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        match t_design_check(&b, 2).unwrap() {
            TDesignVerdict::Counterexample { first, second, .. } => {
                assert_eq!(first, vec![1, 2]);
                assert_eq!(second, vec![1, 3]);
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
    }

    #[test]
    fn block_validation() {
        assert!(BlockMultiset::from_blocks(4, 2, &[vec![1, 5]]).is_err());
        assert!(BlockMultiset::from_blocks(4, 2, &[vec![1]]).is_err());
    }

    #[test]
    fn huge_ground_set_is_refused() {
        let b = BlockMultiset::from_blocks(100, 12, &[(1..=12).collect()]).unwrap();
        assert!(matches!(t_design_check(&b, 12), Err(Error::Budget { .. })));
    }

    #[test]
    fn even_weight_strength() {
        let s = scheme(4, 2);
        let even: Vec<Vertex> =
            s.vertices().unwrap().into_iter().filter(|v| v.bits().count_ones() % 2 == 0).collect();
        let chi = CodeVector::from_subset(s.clone(), even);
        assert_eq!(oa_strength(&chi, &Budget::default()).unwrap(), 3);
    }

    #[test]
    fn repetition_strength() {
        for d in 2..=8 {
            let s = scheme(d, 2);
            let chi = subset(&s, &[&"0".repeat(d), &"1".repeat(d)]);
            assert_eq!(oa_strength(&chi, &Budget::default()).unwrap(), 1);
        }
    }

    #[test]
    fn semilattice_witness() {
        let s = scheme(3, 2);
        let chi = subset(&s, &["000", "110"]);
        match semilattice_design_check(&chi, s.origin(), 1, &Budget::default()).unwrap() {
            SemilatticeVerdict::Witness { meet_rank, second, .. } => {
                assert_eq!(meet_rank, 0);
                assert_eq!(second, "..1");
            }
            SemilatticeVerdict::Holds => panic!("should fail"),
        }
    }

    #[test]
    fn semilattice_all_ones() {
        let s = scheme(3, 3);
        let chi = CodeVector::all_ones(s.clone()).unwrap();
        for t in 0..=3 {
            assert!(semilattice_design_check(&chi, s.origin(), t, &Budget::default()).unwrap().holds());
        }
        let j = Arc::new(Scheme::johnson(7, 3).unwrap());
        let chi = CodeVector::all_ones(j.clone()).unwrap();
        for t in 0..=3 {
            assert!(semilattice_design_check(&chi, j.origin(), t, &Budget::default()).unwrap().holds());
        }
    }

    #[test]
    fn hamming_extraction_needs_zero_base() {
        let s = scheme(3, 2);
        let chi = subset(&s, &["000", "110", "011"]);
        assert!(shell_design_extract(&chi, s.parse_vertex("100").unwrap(), 2).is_err());
        let b = shell_design_extract(&chi, s.origin(), 2).unwrap();
        assert_eq!(b.total(), int(2));
        assert_eq!(b.k, 2);
    }

    #[test]
    fn johnson_extraction_shell_zero() {
        let j = Arc::new(Scheme::johnson(8, 3).unwrap());
        let x = j.parse_vertex("2,5,7").unwrap();
        let chi = CodeVector::from_subset(j.clone(), [x, j.parse_vertex("1,2,3").unwrap()]);
        let b = shell_design_extract(&chi, x, 0).unwrap();
        assert_eq!(b.blocks.len(), 1);
        assert_eq!(b.k, 3);
        let b2 = shell_design_extract(&chi, x, 2).unwrap();
        // {1,2,3} ∩ {2,5,7} = {2}, the first element of x
        assert_eq!(b2.blocks.keys().copied().collect::<Vec<_>>(), vec![1u128]);
    }

    #[test]
    fn product_scan_on_point_mass() {
        let s = scheme(4, 2);
        let x = s.origin();
        let chi = CodeVector::point(s.clone(), x);
        let scan = product_codesign_scan(&chi, x, 4, &Budget::default()).unwrap();
        assert_eq!(scan.level_all, 4);
        assert_eq!(scan.level_all_split, 4);
    }
}
