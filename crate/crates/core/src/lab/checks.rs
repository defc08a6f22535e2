use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::modules::{eigen_projectors, generate, restricted_generators, Decomposition};
use super::ops::{column_basis, complement, hstack, intersection_dim, rank, DenseOperatorSet, TAU};
use crate::error::Result;

/// Tridiagonal action of `A_1` on the `E_i^*W` and of `A_1^*` on the `E_jW`.
#[derive(Debug, Clone, Serialize)]
pub struct TridiagonalVerdict {
    /// Largest `‖E_k^* A E_i^* W‖` with `|k - i| > 1`, over all modules.
    pub max_residual: f64,
    /// Largest `‖E_k A^* E_j W‖` with `|k - j| > 1`.
    pub max_dual_residual: f64,
    /// Smallest `‖E_{i±1}^* A E_i^* W‖` inside a support.
    pub min_adjacent: f64,
    pub min_dual_adjacent: f64,
    pub supports_are_intervals: bool,
    pub passes: bool,
}

pub fn verify_tridiagonal(ops: &DenseOperatorSet, dec: &Decomposition) -> TridiagonalVerdict {
    let mut max_residual: f64 = 0.0;
    let mut max_dual_residual: f64 = 0.0;
    let mut min_adjacent = f64::INFINITY;
    let mut min_dual_adjacent = f64::INFINITY;
    let mut intervals = true;
    let scale = ops.theta()[0].abs().max(1.0);
    for m in &dec.modules {
        let gens = restricted_generators(ops, &m.basis);
        let a = &gens[0];
        let shells = &gens[1..];
        let proj = eigen_projectors(ops, &m.basis);
        let a_star = a_star_restricted(ops, &m.basis);
        let support = m.signature.support();
        let dual_support = m.signature.dual_support();
        intervals &= is_interval(&support) && is_interval(&dual_support);
        for i in 0..shells.len() {
            for k in 0..shells.len() {
                let block = (&shells[k] * a * &shells[i]).norm() / scale;
                if k.abs_diff(i) > 1 {
                    max_residual = max_residual.max(block);
                } else if k != i && support.contains(&i) && support.contains(&k) {
                    min_adjacent = min_adjacent.min(block);
                }
                let dual_block = (&proj[k] * &a_star * &proj[i]).norm() / scale;
                if k.abs_diff(i) > 1 {
                    max_dual_residual = max_dual_residual.max(dual_block);
                } else if k != i && dual_support.contains(&i) && dual_support.contains(&k) {
                    min_dual_adjacent = min_dual_adjacent.min(dual_block);
                }
            }
        }
    }
    let passes = max_residual <= TAU
        && max_dual_residual <= TAU
        && intervals
        && (min_adjacent.is_infinite() || min_adjacent > TAU)
        && (min_dual_adjacent.is_infinite() || min_dual_adjacent > TAU);
    TridiagonalVerdict {
        max_residual,
        max_dual_residual,
        min_adjacent,
        min_dual_adjacent,
        supports_are_intervals: intervals,
        passes,
    }
}

fn is_interval(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[1] == w[0] + 1)
}

fn a_star_restricted(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> DMatrix<f64> {
    let mut scaled = basis.clone();
    for y in 0..ops.len() {
        scaled.row_mut(y).scale_mut(ops.dual_theta()[ops.shell_of(y)]);
    }
    basis.transpose() * scaled
}

/// Ranks of the blocks `W_ij` and `W_ij^*` for every module.
#[derive(Debug, Clone, Serialize)]
pub struct IttVerdict {
    /// Largest `dim W_ij` or `dim W_ij^*` with `i < j`; zero when the lemma holds.
    pub max_rank_below: usize,
    /// `dim W_ii` summed over modules (recorded, not asserted).
    pub diagonal_total: usize,
    pub modules_checked: usize,
    pub passes: bool,
}

pub fn verify_itt(ops: &DenseOperatorSet, dec: &Decomposition) -> IttVerdict {
    let mut max_rank_below = 0;
    let mut diagonal_total = 0;
    for m in &dec.modules {
        let gens = restricted_generators(ops, &m.basis);
        let shells = &gens[1..];
        let proj = eigen_projectors(ops, &m.basis);
        let sig = &m.signature;
        let d = sig.diameter;
        let (r, rs) = (sig.endpoint, sig.dual_endpoint);
        let range = |parts: &[&DMatrix<f64>]| {
            let dim = m.basis.ncols();
            let sum = parts.iter().fold(DMatrix::zeros(dim, dim), |acc, p| acc + *p);
            column_basis(&sum, 1.0)
        };
        let star_up_to = |i: usize| range(&shells[r..=r + i].iter().collect::<Vec<_>>());
        let star_from = |j: usize| range(&shells[r + j..=r + d].iter().collect::<Vec<_>>());
        let eig_up_to = |i: usize| range(&proj[rs..=(rs + i).min(proj.len() - 1)].iter().collect::<Vec<_>>());
        let eig_from = |j: usize| range(&proj[rs + j..=(rs + d).min(proj.len() - 1)].iter().collect::<Vec<_>>());
        for i in 0..=d {
            for j in 0..=d {
                let w = intersection_dim(&star_up_to(i), &eig_from(j));
                let w_star = intersection_dim(&eig_up_to(i), &star_from(j));
                if i < j {
                    max_rank_below = max_rank_below.max(w).max(w_star);
                } else if i == j {
                    diagonal_total += w;
                }
            }
        }
    }
    IttVerdict {
        max_rank_below,
        diagonal_total,
        modules_checked: dec.modules.len(),
        passes: max_rank_below == 0,
    }
}

/// Dimensions of the split decomposition and the checks tying it to the
/// displacement decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct SplitReport {
    /// `dim V_ij`.
    pub v_dims: Vec<Vec<usize>>,
    /// `dim Ṽ_ij`.
    pub tilde_dims: Vec<Vec<usize>>,
    /// `dim V_η` from the module decomposition, `η = 0..=D`.
    pub displacement_dims: Vec<usize>,
    /// Largest `dim Ṽ_ij` with `i + j < D`.
    pub max_below_antidiagonal: usize,
    /// Largest distance between `V_η` and `Σ_{i+j=D+η} Ṽ_ij` (projector norm).
    pub reconstruction_residual: f64,
    /// Largest residual among the partial-sum identities for `V_0`.
    pub partial_sum_residual: f64,
    pub passes: bool,
}

/// Subspace data for `V_ij`, computed once per operator set.
pub struct SplitSpaces {
    /// Orthonormal basis of `V_ij`, indexed `[i][j]`.
    pub v: Vec<Vec<DMatrix<f64>>>,
    pub tilde: Vec<Vec<DMatrix<f64>>>,
}

pub fn split_spaces(ops: &DenseOperatorSet) -> Result<SplitSpaces> {
    let d = ops.classes();
    let n = ops.len();
    let eigen = ops.eigenspaces()?;
    let mut v = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let outside: Vec<usize> = (0..n).filter(|&y| ops.shell_of(y) > i).collect();
        let mut row = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let u = hstack(&eigen[..=j].iter().collect::<Vec<_>>(), n);
            let basis = if outside.is_empty() {
                u
            } else {
                let null = super::ops::null_space(&u.select_rows(&outside), 1.0);
                column_basis(&(&u * null), 1.0)
            };
            row.push(basis);
        }
        v.push(row);
    }
    let empty = DMatrix::<f64>::zeros(n, 0);
    let mut tilde = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut row = Vec::with_capacity(d + 1);
        for j in 0..=d {
            let left = if j > 0 { &v[i][j - 1] } else { &empty };
            let up = if i > 0 { &v[i - 1][j] } else { &empty };
            let sum = column_basis(&hstack(&[left, up], n), 1.0);
            let proj_out = &v[i][j] - &sum * (sum.transpose() * &v[i][j]);
            row.push(column_basis(&proj_out, 1.0));
        }
        tilde.push(row);
    }
    Ok(SplitSpaces { v, tilde })
}

fn projector(basis: &DMatrix<f64>) -> DMatrix<f64> {
    basis * basis.transpose()
}

fn same_space(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (projector(a) - projector(b)).norm()
}

pub fn split_decomposition(ops: &DenseOperatorSet, dec: &Decomposition) -> Result<SplitReport> {
    let d = ops.classes();
    let n = ops.len();
    let spaces = split_spaces(ops)?;
    let v_dims = spaces.v.iter().map(|r| r.iter().map(|m| m.ncols()).collect()).collect();
    let tilde_dims: Vec<Vec<usize>> =
        spaces.tilde.iter().map(|r| r.iter().map(|m| m.ncols()).collect()).collect();
    let mut max_below = 0;
    for i in 0..=d {
        for j in 0..=d {
            if i + j < d {
                max_below = max_below.max(tilde_dims[i][j]);
            }
        }
    }
    let mut displacement_dims = vec![0; d + 1];
    let mut residual: f64 = 0.0;
    for eta in 0..=d {
        let v_eta = dec.span(n, |s| s.displacement == eta as isize);
        displacement_dims[eta] = v_eta.ncols();
        let parts: Vec<&DMatrix<f64>> = (0..=d)
            .flat_map(|i| (0..=d).map(move |j| (i, j)))
            .filter(|&(i, j)| i + j == d + eta)
            .map(|(i, j)| &spaces.tilde[i][j])
            .collect();
        let sum = column_basis(&hstack(&parts, n), 1.0);
        residual = residual.max(same_space(&v_eta, &sum));
    }

    // V_0 = Σ V_{i,D-i}, with the E^* and E partial sums.
    let v0 = dec.span(n, |s| s.displacement == 0);
    let mut partial: f64 = 0.0;
    let anti: Vec<&DMatrix<f64>> = (0..=d).map(|i| &spaces.v[i][d - i]).collect();
    partial = partial.max(same_space(&v0, &column_basis(&hstack(&anti, n), 1.0)));
    let eigen = ops.eigenspaces()?;
    for i in 0..=d {
        let lhs = column_basis(&hstack(&anti[..=i], n), 1.0);
        let mut masked = v0.clone();
        for y in 0..n {
            if ops.shell_of(y) > i {
                masked.row_mut(y).fill(0.0);
            }
        }
        partial = partial.max(same_space(&lhs, &column_basis(&masked, 1.0)));
    }
    for j in 0..=d {
        let parts: Vec<&DMatrix<f64>> = (0..=j).map(|l| &spaces.v[d - l][l]).collect();
        let lhs = column_basis(&hstack(&parts, n), 1.0);
        let u = hstack(&eigen[..=j].iter().collect::<Vec<_>>(), n);
        let rhs = column_basis(&(&u * (u.transpose() * &v0)), 1.0);
        partial = partial.max(same_space(&lhs, &rhs));
    }
    let total: usize = tilde_dims.iter().flatten().sum();
    let passes = max_below == 0 && residual <= TAU && partial <= TAU && total == n;
    Ok(SplitReport {
        v_dims,
        tilde_dims,
        displacement_dims,
        max_below_antidiagonal: max_below,
        reconstruction_residual: residual,
        partial_sum_residual: partial,
        passes,
    })
}

/// Which characterization lemma to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Orthogonality to small-endpoint modules vs. codesigns.
    P,
    /// Orthogonality to small-dual-endpoint modules vs. designs.
    Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityRow {
    pub t: usize,
    /// χ is orthogonal to every module with `1 <= endpoint <= t`.
    pub orthogonal: bool,
    /// Every vector of `Tχ` is a relative `t`-(co)design.
    pub all_of_t: bool,
    /// The `A_ℓχ` (side P) or `E_k^*χ` (side Q) alone.
    pub generators_only: bool,
    /// Whether all modules with endpoint `<= t` are thin (resp. dual thin).
    pub thin_below: bool,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrthogonalityReport {
    pub side: Side,
    pub rows: Vec<OrthogonalityRow>,
    /// `dim Tχ`.
    pub cyclic_dim: usize,
    pub discrepancies: usize,
}

/// Tests both directions of the characterization lemmas at every `t`.
///
/// A row is consistent when `orthogonal == all_of_t`, and, if the small
/// modules are thin, also `generators_only == orthogonal`.
pub fn module_orthogonality_test(
    ops: &DenseOperatorSet,
    dec: &Decomposition,
    chi: &DVector<f64>,
    side: Side,
) -> OrthogonalityReport {
    let d = ops.classes();
    let n = ops.len();
    let norm = chi.norm().max(1e-300);
    let chi = chi / norm;
    let cyclic = generate(ops, &chi);
    let module_norms: Vec<(usize, bool, f64)> = dec
        .modules
        .iter()
        .map(|m| {
            let end = match side {
                Side::P => m.signature.endpoint,
                Side::Q => m.signature.dual_endpoint,
            };
            let thin = match side {
                Side::P => m.signature.thin,
                Side::Q => m.signature.dual_thin,
            };
            (end, thin, (m.basis.transpose() * &chi).norm())
        })
        .collect();
    let x = ops.scheme().index(ops.base()) as usize;
    let generators: Vec<DVector<f64>> = match side {
        Side::P => ops.class_sums(&chi),
        Side::Q => (0..=d).map(|k| ops.apply_e_star(k, &chi)).collect(),
    };
    let point = DVector::from_fn(n, |y, _| if y == x { 1.0 } else { 0.0 });
    let point_parts = ops.idempotent_parts(&point);
    let level = |v: &DVector<f64>| -> usize {
        match side {
            Side::P => codesign_level(ops, v),
            Side::Q => design_level(ops, v, &point_parts),
        }
    };
    let cyclic_levels: Vec<usize> = cyclic.column_iter().map(|c| level(&c.into_owned())).collect();
    let gen_levels: Vec<usize> = generators.iter().map(level).collect();
    let mut rows = Vec::with_capacity(d);
    let mut discrepancies = 0;
    for t in 1..=d {
        let orthogonal = module_norms
            .iter()
            .filter(|(e, _, _)| (1..=t).contains(e))
            .all(|&(_, _, nrm)| nrm <= 1e-7);
        let thin_below = module_norms.iter().filter(|(e, _, _)| *e <= t).all(|&(_, th, _)| th);
        let all_of_t = cyclic_levels.iter().all(|&l| l >= t);
        let generators_only = gen_levels.iter().all(|&l| l >= t);
        let mut consistent = orthogonal == all_of_t && (!all_of_t || generators_only);
        if thin_below {
            consistent &= generators_only == orthogonal;
        }
        if !consistent {
            discrepancies += 1;
        }
        rows.push(OrthogonalityRow { t, orthogonal, all_of_t, generators_only, thin_below, consistent });
    }
    OrthogonalityReport { side, rows, cyclic_dim: cyclic.ncols(), discrepancies }
}

/// Largest `t` with `v` constant on each sphere `R_1(x)..R_t(x)`.
fn codesign_level(ops: &DenseOperatorSet, v: &DVector<f64>) -> usize {
    let d = ops.classes();
    let scale = v.amax().max(1e-300);
    let mut lo = vec![f64::INFINITY; d + 1];
    let mut hi = vec![f64::NEG_INFINITY; d + 1];
    for y in 0..ops.len() {
        let s = ops.shell_of(y);
        lo[s] = lo[s].min(v[y]);
        hi[s] = hi[s].max(v[y]);
    }
    (1..=d).take_while(|&i| hi[i] - lo[i] <= 1e-7 * scale).count()
}

/// Largest `t` with `E_j v ∥ E_j x̂` for `1 <= j <= t`.
fn design_level(ops: &DenseOperatorSet, v: &DVector<f64>, point_parts: &[DVector<f64>]) -> usize {
    let parts = ops.idempotent_parts(v);
    let scale = v.norm().max(1e-300);
    (1..parts.len())
        .take_while(|&j| {
            let u = &parts[j];
            let p = &point_parts[j];
            let coef = u.dot(p) / p.norm_squared();
            (u - p * coef).norm() <= 1e-7 * scale
        })
        .count()
}

/// `Fχ ⊥ V_{i,D-i} ∩ (Mx̂)^⊥` for all `i <= t` and `F` over a basis of `Tχ`,
/// plus the dual statement with `V_{D-j,j}`.
#[derive(Debug, Clone, Serialize)]
pub struct SplitOrthogonality {
    pub t: usize,
    pub max_inner: f64,
    pub max_inner_dual: f64,
    pub passes: bool,
}

pub fn split_orthogonality(
    ops: &DenseOperatorSet,
    spaces: &SplitSpaces,
    chi: &DVector<f64>,
    t: usize,
) -> SplitOrthogonality {
    let d = ops.classes();
    let primary = ops.primary_basis();
    let cyclic = generate(ops, &(chi / chi.norm().max(1e-300)));
    let off_primary = |b: &DMatrix<f64>| column_basis(&(b - &primary * (primary.transpose() * b)), 1.0);
    let mut max_inner: f64 = 0.0;
    let mut max_inner_dual: f64 = 0.0;
    for i in 1..=t.min(d) {
        let s = off_primary(&spaces.v[i][d - i]);
        max_inner = max_inner.max((s.transpose() * &cyclic).amax());
        let s = off_primary(&spaces.v[d - i][i]);
        max_inner_dual = max_inner_dual.max((s.transpose() * &cyclic).amax());
    }
    SplitOrthogonality {
        t,
        max_inner,
        max_inner_dual,
        passes: max_inner <= 1e-7 && max_inner_dual <= 1e-7,
    }
}

/// Orthogonal complement helper re-exported for callers assembling spaces.
pub fn orthogonal_complement(basis: &DMatrix<f64>) -> DMatrix<f64> {
    complement(basis)
}

/// Numerical rank at the lab tolerance.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    rank(m, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::lab::modules::decompose_modules;
    use crate::scheme::Scheme;
    use std::sync::Arc;

    fn setup(spec: &str) -> (DenseOperatorSet, Decomposition) {
        let s = Arc::new(Scheme::build(spec.parse().unwrap()).unwrap());
        let base = s.origin();
        let ops = DenseOperatorSet::build(s, base, &Budget::default()).unwrap();
        let dec = decompose_modules(&ops, 3).unwrap();
        (ops, dec)
    }

    #[test]
    fn tridiagonal_and_itt_on_small_schemes() {
        for spec in ["H(3,2)", "H(3,3)", "J(6,3)"] {
            let (ops, dec) = setup(spec);
            let tri = verify_tridiagonal(&ops, &dec);
            assert!(tri.passes, "{spec}: {tri:?}");
            let itt = verify_itt(&ops, &dec);
            assert!(itt.passes, "{spec}: {itt:?}");
        }
    }

    #[test]
    fn split_on_small_scheme() {
        let (ops, dec) = setup("H(4,2)");
        let rep = split_decomposition(&ops, &dec).unwrap();
        assert!(rep.passes, "{rep:?}");
        assert_eq!(rep.displacement_dims.iter().sum::<usize>(), 16);
        for j in 0..4 {
            assert_eq!(rep.tilde_dims[0][j], 0);
        }
    }

    #[test]
    fn primary_vectors_are_orthogonal_to_everything_else() {
        let (ops, dec) = setup("H(4,2)");
        let chi = ops.class_sums(&DVector::from_fn(ops.len(), |y, _| if y == 0 { 1.0 } else { 0.0 }))[2]
            .clone();
        for side in [Side::P, Side::Q] {
            let rep = module_orthogonality_test(&ops, &dec, &chi, side);
            assert_eq!(rep.discrepancies, 0);
            assert!(rep.rows.iter().all(|r| r.orthogonal && r.all_of_t));
        }
    }
}
