//! Distance distributions, dual norms and the code parameters of a vector
//! supported on a scheme, computed without forming any `|X|`-sized matrix.
//!
//! For `χ ∈ V` the inner distribution is `a_i = <χ, A_i χ>` and the dual
//! norms are `b_j = <χ, E_j χ> = |X|^{-1} Σ_i Q[j][i] a_i`. Per base vertex
//! `x` the shell profile is `c_i = Σ_{y ∈ R_i(x)} χ(y)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::design;
use crate::error::{Error, Result};
use crate::rational::{serde_rat, Rational};
use crate::scheme::{Scheme, Vertex};

/// A rational-valued vector on the vertex set, stored sparsely.
#[derive(Debug, Clone)]
pub struct CodeVector {
    scheme: Arc<Scheme>,
    entries: BTreeMap<Vertex, Rational>,
}

impl PartialEq for CodeVector {
    fn eq(&self, other: &Self) -> bool {
        self.scheme.spec() == other.scheme.spec() && self.entries == other.entries
    }
}

impl Eq for CodeVector {}

impl CodeVector {
    pub fn from_weights(
        scheme: Arc<Scheme>,
        weights: impl IntoIterator<Item = (Vertex, Rational)>,
    ) -> Self {
        let mut entries: BTreeMap<Vertex, Rational> = BTreeMap::new();
        for (v, w) in weights {
            *entries.entry(v).or_insert_with(Rational::zero) += w;
        }
        entries.retain(|_, w| !w.is_zero());
        Self { scheme, entries }
    }

    /// Characteristic vector of a vertex set (duplicates collapse).
    pub fn from_subset(scheme: Arc<Scheme>, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let entries = vertices.into_iter().map(|v| (v, Rational::one())).collect();
        Self { scheme, entries }
    }

    /// The point mass `x̂`.
    pub fn point(scheme: Arc<Scheme>, x: Vertex) -> Self {
        Self::from_subset(scheme, [x])
    }

    pub fn all_ones(scheme: Arc<Scheme>) -> Result<Self> {
        let all = scheme.vertices()?;
        Ok(Self::from_subset(scheme, all))
    }

    pub fn scheme(&self) -> &Arc<Scheme> {
        &self.scheme
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Rational {
        self.entries.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.entries.contains_key(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &Rational)> + '_ {
        self.entries.iter().map(|(v, w)| (*v, w))
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.entries.keys().copied()
    }

    /// True when every nonzero entry equals one.
    pub fn is_subset(&self) -> bool {
        self.entries.values().all(|w| w.is_one())
    }

    pub fn norm_sq(&self) -> Rational {
        self.entries.values().map(|w| w * w).sum()
    }

    pub fn dot(&self, other: &CodeVector) -> Rational {
        let (small, large) = if self.support_len() <= other.support_len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(v, w)| large.entries.get(v).map(|u| w * u))
            .sum()
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self::from_weights(self.scheme.clone(), self.iter().map(|(v, w)| (v, w * s)))
    }

    /// `E_k^*(x) χ`: the restriction of `χ` to the sphere `R_k(x)`.
    pub fn restrict_to_shell(&self, x: Vertex, k: usize) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(v, _)| self.scheme.distance(x, **v) == k)
            .map(|(v, w)| (*v, w.clone()))
            .collect();
        Self { scheme: self.scheme.clone(), entries }
    }

    /// Rejects vectors that are not codes: zero, a point mass, or a constant vector.
    pub fn check_code(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::NotACode("the zero vector is not a code".into()));
        }
        if self.support_len() == 1 {
            let z = self.scheme.format_vertex(*self.entries.keys().next().unwrap());
            return Err(Error::NotACode(format!(
                "χ lies in E_0^*(z)V for z = {z} (point mass)"
            )));
        }
        let full = self.scheme.vertex_count_u128() == Some(self.support_len() as u128);
        if full {
            let first = self.entries.values().next().unwrap();
            if self.entries.values().all(|w| w == first) {
                return Err(Error::NotACode("χ lies in E_0V (constant vector)".into()));
            }
        }
        Ok(())
    }

    /// Integer rescaling `χ = n / L` when all scaled numerators stay below 2^31.
    fn small_integer_form(&self) -> Option<(Vec<(Vertex, i64)>, BigInt)> {
        let lcm = self
            .entries
            .values()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let bound = BigInt::from(1i64 << 31);
        let mut out = Vec::with_capacity(self.entries.len());
        for (v, w) in &self.entries {
            let n = w.numer() * (&lcm / w.denom());
            if n.abs() >= bound {
                return None;
            }
            out.push((*v, n.to_i64()?));
        }
        Some((out, lcm))
    }
}

/// Inner distribution and dual norms of a code vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceDistribution {
    #[serde(with = "serde_rat::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_rat::vec")]
    pub b: Vec<Rational>,
}

impl DistanceDistribution {
    pub fn compute(chi: &CodeVector) -> Self {
        let a = inner_distribution(chi);
        let b = dual_norms(chi.scheme(), &a);
        Self { a, b }
    }
}

/// `a_i = Σ χ(y) χ(z)` over ordered support pairs at distance `i`.
pub fn inner_distribution(chi: &CodeVector) -> Vec<Rational> {
    let scheme = chi.scheme();
    let d = scheme.classes();
    if chi.is_subset() {
        let pts: Vec<Vertex> = chi.support().collect();
        let counts = pts
            .par_iter()
            .enumerate()
            .fold(
                || vec![0u64; d + 1],
                |mut acc, (i, &y)| {
                    acc[0] += 1;
                    for &z in &pts[i + 1..] {
                        acc[scheme.distance(y, z)] += 2;
                    }
                    acc
                },
            )
            .reduce(|| vec![0u64; d + 1], add_vecs);
        return counts.into_iter().map(|c| Rational::from_integer(c.into())).collect();
    }
    if let Some((pts, lcm)) = chi.small_integer_form() {
        let sums = pts
            .par_iter()
            .enumerate()
            .fold(
                || vec![0i128; d + 1],
                |mut acc, (i, &(y, wy))| {
                    acc[0] += (wy as i128) * (wy as i128);
                    for &(z, wz) in &pts[i + 1..] {
                        acc[scheme.distance(y, z)] += 2 * (wy as i128) * (wz as i128);
                    }
                    acc
                },
            )
            .reduce(|| vec![0i128; d + 1], add_vecs);
        let l2 = Rational::from_integer(&lcm * &lcm);
        return sums.into_iter().map(|s| Rational::from_integer(s.into()) / &l2).collect();
    }
    let pts: Vec<(Vertex, &Rational)> = chi.iter().collect();
    let mut acc = vec![Rational::zero(); d + 1];
    for (i, (y, wy)) in pts.iter().enumerate() {
        acc[0] += *wy * *wy;
        for (z, wz) in &pts[i + 1..] {
            let t = *wy * *wz;
            acc[scheme.distance(*y, *z)] += &t + &t;
        }
    }
    acc
}

fn add_vecs<T: std::ops::AddAssign + Copy>(mut a: Vec<T>, b: Vec<T>) -> Vec<T> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `b_j = ‖E_j χ‖² = |X|^{-1} Σ_i Q[j][i] a_i`.
pub fn dual_norms(scheme: &Scheme, a: &[Rational]) -> Vec<Rational> {
    let n = scheme.vertex_count_rational();
    (0..=scheme.classes())
        .map(|j| {
            let row = scheme.idempotent_coefficients(j);
            row.iter().zip(a).map(|(q, ai)| q * ai).sum::<Rational>() / &n
        })
        .collect()
}

/// Per-shell data of `χ` around a base vertex.
#[derive(Debug, Clone, Serialize)]
pub struct BaseProfile {
    /// `c_i = Σ_{y ∈ R_i(x)} χ(y)`.
    #[serde(with = "serde_rat::vec")]
    pub c: Vec<Rational>,
    /// `e_i = [E_i^*(x) χ ≠ 0]`.
    pub e: Vec<bool>,
    /// Support size of `χ` on each shell.
    pub support_counts: Vec<u64>,
    /// `‖E_i^*(x) χ‖²`.
    #[serde(with = "serde_rat::vec")]
    pub shell_norms: Vec<Rational>,
}

pub fn base_profile(chi: &CodeVector, x: Vertex) -> BaseProfile {
    let scheme = chi.scheme();
    let d = scheme.classes();
    let mut c = vec![Rational::zero(); d + 1];
    let mut shell_norms = vec![Rational::zero(); d + 1];
    let mut support_counts = vec![0u64; d + 1];
    for (y, w) in chi.iter() {
        let i = scheme.distance(x, y);
        c[i] += w;
        shell_norms[i] += w * w;
        support_counts[i] += 1;
    }
    let e = support_counts.iter().map(|&n| n > 0).collect();
    BaseProfile { c, e, support_counts, shell_norms }
}

/// The parameter bundle of a code relative to a base vertex.
///
/// `delta`, `degree` and `delta_down` read the inner distribution and are
/// only defined for subset codes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub delta: Option<usize>,
    pub degree: Option<usize>,
    pub dual_distance: usize,
    pub dual_degree: usize,
    pub delta_x: usize,
    pub s_x: usize,
    pub delta_down: Option<usize>,
    pub dual_delta_down: Option<usize>,
    pub refined_s_x: usize,
    pub refined_dual_degree: usize,
}

pub fn parameters(chi: &CodeVector, x: Vertex) -> Result<CodeParameters> {
    chi.check_code()?;
    let dist = DistanceDistribution::compute(chi);
    parameters_with(chi, &dist, x)
}

/// Same as [`parameters`] with a precomputed distribution.
pub fn parameters_with(
    chi: &CodeVector,
    dist: &DistanceDistribution,
    x: Vertex,
) -> Result<CodeParameters> {
    chi.check_code()?;
    let scheme = chi.scheme();
    let d = scheme.classes();
    let profile = base_profile(chi, x);
    let nonzero_a: Vec<usize> = (1..=d).filter(|&i| !dist.a[i].is_zero()).collect();
    let nonzero_b: Vec<usize> = (1..=d).filter(|&j| !dist.b[j].is_zero()).collect();
    let shells: Vec<usize> = (1..=d).filter(|&i| profile.e[i]).collect();

    let subset = chi.is_subset();
    let delta = if subset {
        let v = nonzero_a.first().copied();
        assert!(v.is_some(), "a subset code has two members at some nonzero distance");
        v
    } else {
        None
    };
    let degree = subset.then_some(nonzero_a.len());
    let delta_down = if subset { (1..=d).find(|&i| !dist.a[d - i].is_zero()) } else { None };
    let dual_delta_down = (1..=d).find(|&j| !dist.b[d - j].is_zero());

    let dual_distance = *nonzero_b
        .first()
        .ok_or_else(|| Error::NotACode("χ lies in E_0V".into()))?;
    let delta_x = *shells
        .first()
        .ok_or_else(|| Error::NotACode("χ lies in E_0^*(x)V".into()))?;

    let codesign = design::codesign_residuals(scheme, &profile);
    let refined_s_x = (1..=d).filter(|&i| !codesign[i].is_zero()).count();
    let dual = design::design_residuals(scheme, &dist.b, &profile.c);
    let refined_dual_degree = (1..=d).filter(|&j| !dual[j].is_zero()).count();

    Ok(CodeParameters {
        delta,
        degree,
        dual_distance,
        dual_degree: nonzero_b.len(),
        delta_x,
        s_x: shells.len(),
        delta_down,
        dual_delta_down,
        refined_s_x,
        refined_dual_degree,
    })
}

/// `|Y ∩ R_ℓ(z)|` for every `ℓ`, by scanning the support.
pub fn distance_profile(chi: &CodeVector, z: Vertex) -> Vec<Rational> {
    base_profile(chi, z).c
}
