use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::ops::{column_basis, null_space, DenseOperatorSet, TAU};
use crate::error::{Error, Result};

/// One irreducible `T(x)`-module.
#[derive(Debug, Clone)]
pub struct IrreducibleModule {
    /// Orthonormal basis, `|X| × dim`.
    pub basis: DMatrix<f64>,
    pub signature: ModuleSignature,
    pub certificate: Certificate,
}

/// The data by which modules are classed: endpoints, diameters, thinness
/// and the per-index dimensions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ModuleSignature {
    pub endpoint: usize,
    pub dual_endpoint: usize,
    pub diameter: usize,
    pub dual_diameter: usize,
    pub displacement: isize,
    pub thin: bool,
    pub dual_thin: bool,
    /// `dim E_i^* W` for `i = 0..=D`.
    pub shell_dims: Vec<usize>,
    /// `dim E_j W` for `j = 0..=D`.
    pub eigen_dims: Vec<usize>,
}

impl ModuleSignature {
    pub fn dim(&self) -> usize {
        self.shell_dims.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.shell_dims.len()).filter(|&i| self.shell_dims[i] > 0).collect()
    }

    pub fn dual_support(&self) -> Vec<usize> {
        (0..self.eigen_dims.len()).filter(|&j| self.eigen_dims[j] > 0).collect()
    }
}

/// Irreducibility evidence for one module.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    /// `dim T w` for each basis vector `w`; all equal to `dim W` when irreducible.
    pub generated_dims: Vec<usize>,
    /// Dimension of the commutant of `T` restricted to `W`; 1 when irreducible.
    pub commutant_dim: usize,
}

impl Certificate {
    pub fn holds(&self, dim: usize) -> bool {
        self.commutant_dim == 1 && self.generated_dims.iter().all(|&g| g == dim)
    }
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub modules: Vec<IrreducibleModule>,
    pub seed: u64,
    /// Seeds tried before the accepted one.
    pub restarts: usize,
}

impl Decomposition {
    pub fn total_dim(&self) -> usize {
        self.modules.iter().map(|m| m.basis.ncols()).sum()
    }

    /// Signatures with multiplicity, sorted.
    pub fn signature_counts(&self) -> Vec<(ModuleSignature, usize)> {
        let mut map = std::collections::BTreeMap::new();
        for m in &self.modules {
            *map.entry(m.signature.clone()).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }

    /// Orthonormal basis of the span of all modules satisfying `keep`.
    pub fn span(&self, n: usize, keep: impl Fn(&ModuleSignature) -> bool) -> DMatrix<f64> {
        let chosen: Vec<&DMatrix<f64>> =
            self.modules.iter().filter(|m| keep(&m.signature)).map(|m| &m.basis).collect();
        super::ops::hstack(&chosen, n)
    }
}

const MAX_RESTARTS: usize = 8;
const GENERATION_TOL: f64 = 1e-6;

/// Splits `V` into pairwise orthogonal irreducible `T(x)`-modules.
///
/// Eigenvectors of a random symmetric element of `T` each generate an
/// irreducible module; a cluster that only partly overlaps what has been
/// found means the random element was not generic, and a fresh seed is used.
pub fn decompose_modules(ops: &DenseOperatorSet, seed: u64) -> Result<Decomposition> {
    let mut last_err = None;
    for attempt in 0..MAX_RESTARTS {
        let s = seed.wrapping_add(attempt as u64 * 0x9E37_79B9);
        match decompose_once(ops, s) {
            Ok(modules) => {
                return Ok(Decomposition { modules, seed: s, restarts: attempt })
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::Decomposition("no attempt made".into())))
}

fn random_element(ops: &DenseOperatorSet, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let n = ops.len();
    let d = ops.classes();
    let mut coef = || rng.gen_range(-1.0..1.0);
    let d0: Vec<f64> = (0..=d).map(|_| coef()).collect();
    let d1: Vec<f64> = (0..=d).map(|_| coef()).collect();
    let d2: Vec<f64> = (0..=d).map(|_| coef()).collect();
    let (beta, gamma, eps) = (coef(), coef(), coef());
    let a = ops.a_matrix(1);
    let diag = |c: &[f64]| DVector::from_fn(n, |y, _| c[ops.shell_of(y)]);
    let (v0, v1, v2) = (diag(&d0), diag(&d1), diag(&d2));
    let mut h = &a * beta;
    for y in 0..n {
        h[(y, y)] += v0[y];
    }
    let mut da = a.clone();
    for y in 0..n {
        da.row_mut(y).scale_mut(v1[y]);
    }
    h += (&da + da.transpose()) * gamma;
    let mut ad = a.clone();
    for z in 0..n {
        ad.column_mut(z).scale_mut(v2[z]);
    }
    h += (&ad * &a) * eps;
    (&h + h.transpose()) * 0.5
}

fn decompose_once(
    ops: &DenseOperatorSet,
    seed: u64,
) -> Result<Vec<IrreducibleModule>> {
    let n = ops.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_element(ops, &mut rng);
    let scale = h.amax().max(1.0);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[k] - eig.eigenvalues[*c.last().unwrap()]).abs() < 1e-7 * scale => {
                c.push(k)
            }
            _ => clusters.push(vec![k]),
        }
    }
    let mut found = DMatrix::<f64>::zeros(n, 0);
    let mut modules = Vec::new();
    for cluster in clusters {
        if found.ncols() == n {
            break;
        }
        let vecs = eig.eigenvectors.select_columns(&cluster);
        let overlap = (found.transpose() * &vecs).norm_squared() / cluster.len() as f64;
        if overlap > 1.0 - 1e-6 {
            continue;
        }
        if overlap > 1e-6 {
            return Err(Error::Decomposition(format!(
                "eigenspace of a random element overlaps found modules by {overlap:.3e} (seed {seed})"
            )));
        }
        for c in 0..vecs.ncols() {
            let v = vecs.column(c).into_owned();
            let basis = generate(ops, &v);
            if found.ncols() > 0 && (found.transpose() * &basis).amax() > 1e-6 {
                return Err(Error::Decomposition(format!(
                    "generated module is not orthogonal to earlier ones (seed {seed})"
                )));
            }
            let cert = certify(ops, &basis);
            if !cert.holds(basis.ncols()) {
                return Err(Error::Decomposition(format!(
                    "module of dimension {} failed the irreducibility certificate: {cert:?} (seed {seed})",
                    basis.ncols()
                )));
            }
            let signature = signature(ops, &basis)?;
            found = super::ops::hstack(&[&found, &basis], n);
            modules.push(IrreducibleModule { basis, signature, certificate: cert });
        }
    }
    if found.ncols() != n {
        return Err(Error::Decomposition(format!(
            "modules span dimension {} of {n} (seed {seed})",
            found.ncols()
        )));
    }
    modules.sort_by(|a, b| a.signature.cmp(&b.signature));
    Ok(modules)
}

/// Orthonormal basis of `T v`: closure of `v` under `A_1` and every `E_i^*`.
///
/// Candidates are taken largest residual first and never rescaled before
/// projection, so rounding noise in `v` is not amplified into spurious
/// directions. Genuine residuals are of order one; the cutoff sits well
/// above eigensolver noise on schemes within the dense cap.
pub fn generate(ops: &DenseOperatorSet, v: &DVector<f64>) -> DMatrix<f64> {
    let n = ops.len();
    let d = ops.classes();
    let threshold = GENERATION_TOL * ops.theta()[0].abs().max(1.0);
    let images = |w: &DVector<f64>| {
        let mut out: Vec<DVector<f64>> = (0..=d).map(|i| ops.apply_e_star(i, w)).collect();
        out.push(ops.apply_a1(w));
        out
    };
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut pool: Vec<DVector<f64>> = vec![v / v.norm().max(f64::MIN_POSITIVE)];
    while basis.len() < n {
        let Some((best, norm)) = pool
            .iter()
            .enumerate()
            .map(|(k, r)| (k, r.norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            break;
        };
        if norm <= threshold {
            break;
        }
        let mut w = pool.swap_remove(best);
        for b in &basis {
            let c = b.dot(&w);
            w.axpy(-c, b, 1.0);
        }
        w /= w.norm();
        for r in pool.iter_mut() {
            let c = w.dot(r);
            r.axpy(-c, &w, 1.0);
        }
        for mut img in images(&w) {
            for b in basis.iter().chain(std::iter::once(&w)) {
                let c = b.dot(&img);
                img.axpy(-c, b, 1.0);
            }
            pool.push(img);
        }
        basis.push(w);
    }
    let mut m = DMatrix::zeros(n, basis.len());
    for (c, b) in basis.iter().enumerate() {
        m.set_column(c, b);
    }
    m
}

/// Restrictions of `A_1` and each `E_i^*` to a module, in its own coordinates.
pub fn restricted_generators(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
    let d = ops.classes();
    let mut out = vec![basis.transpose() * ops.apply_a1_mat(basis)];
    for i in 0..=d {
        let mask = ops.e_star_mask(i);
        let mut masked = basis.clone();
        for (y, keep) in mask.iter().enumerate() {
            if !keep {
                masked.row_mut(y).fill(0.0);
            }
        }
        out.push(basis.transpose() * masked);
    }
    out
}

pub fn certify(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> Certificate {
    let generated_dims = basis.column_iter().map(|c| generate(ops, &c.into_owned()).ncols()).collect();
    let gens = restricted_generators(ops, basis);
    let m = basis.ncols();
    // C g - g C = 0 for every generator g, with C unknown (m×m, column-major).
    let mut rows = DMatrix::zeros(gens.len() * m * m, m * m);
    for (gi, g) in gens.iter().enumerate() {
        for a in 0..m {
            for b in 0..m {
                let row = gi * m * m + a * m + b;
                for k in 0..m {
                    // (C g)[a][b] = Σ_k C[a][k] g[k][b]
                    rows[(row, a + k * m)] += g[(k, b)];
                    // (g C)[a][b] = Σ_k g[a][k] C[k][b]
                    rows[(row, k + b * m)] -= g[(a, k)];
                }
            }
        }
    }
    let scale = gens.iter().map(|g| g.amax()).fold(1.0, f64::max);
    let commutant_dim = null_space(&rows, scale).ncols();
    Certificate { generated_dims, commutant_dim }
}

pub fn signature(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> Result<ModuleSignature> {
    let d = ops.classes();
    let shell_dims: Vec<usize> = (0..=d)
        .map(|i| {
            let rows: Vec<usize> = (0..ops.len()).filter(|&y| ops.shell_of(y) == i).collect();
            if rows.is_empty() {
                0
            } else {
                column_basis(&basis.select_rows(&rows).transpose(), 1.0).ncols()
            }
        })
        .collect();
    let eigen_dims = eigen_dims(ops, basis)?;
    let support: Vec<usize> = (0..=d).filter(|&i| shell_dims[i] > 0).collect();
    let dual_support: Vec<usize> = (0..=d).filter(|&j| eigen_dims[j] > 0).collect();
    let endpoint = support[0];
    let dual_endpoint = dual_support[0];
    let diameter = support.len() - 1;
    let dual_diameter = dual_support.len() - 1;
    Ok(ModuleSignature {
        endpoint,
        dual_endpoint,
        diameter,
        dual_diameter,
        displacement: (endpoint + dual_endpoint + diameter) as isize - d as isize,
        thin: shell_dims.iter().all(|&k| k <= 1),
        dual_thin: eigen_dims.iter().all(|&k| k <= 1),
        shell_dims,
        eigen_dims,
    })
}

/// `dim E_j W`, from the eigenvalues of `A_1` restricted to `W`.
fn eigen_dims(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> Result<Vec<usize>> {
    let theta = ops.theta();
    let restricted = basis.transpose() * ops.apply_a1_mat(basis);
    let eig = SymmetricEigen::new((&restricted + restricted.transpose()) * 0.5);
    let scale = theta[0].abs().max(1.0);
    let mut dims = vec![0; theta.len()];
    for &lambda in eig.eigenvalues.iter() {
        let j = (0..theta.len())
            .find(|&j| (lambda - theta[j]).abs() < 1e-6 * scale)
            .ok_or_else(|| {
                Error::Decomposition(format!("restricted eigenvalue {lambda} matches no θ_j"))
            })?;
        dims[j] += 1;
    }
    Ok(dims)
}

/// Projectors onto `E_j W` in module coordinates.
pub fn eigen_projectors(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> Vec<DMatrix<f64>> {
    let theta = ops.theta();
    let m = basis.ncols();
    let restricted = basis.transpose() * ops.apply_a1_mat(basis);
    let eig = SymmetricEigen::new((&restricted + restricted.transpose()) * 0.5);
    let scale = theta[0].abs().max(1.0);
    let mut out = vec![DMatrix::zeros(m, m); theta.len()];
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if let Some(j) = (0..theta.len()).find(|&j| (lambda - theta[j]).abs() < 1e-6 * scale) {
            let u = eig.eigenvectors.column(k);
            out[j] += u * u.transpose();
        }
    }
    out
}

/// Largest `‖(I - BBᵀ) G B‖` over `G ∈ {A_1, A_1^*}`: zero for a `T`-module.
pub fn invariance_residual(ops: &DenseOperatorSet, basis: &DMatrix<f64>) -> f64 {
    let a = ops.apply_a1_mat(basis);
    let mut a_star = basis.clone();
    for y in 0..ops.len() {
        a_star.row_mut(y).scale_mut(ops.dual_theta()[ops.shell_of(y)]);
    }
    let proj = |m: &DMatrix<f64>| (m - basis * (basis.transpose() * m)).norm();
    proj(&a).max(proj(&a_star)) / ops.theta()[0].abs().max(1.0)
}

pub const RANK_TOLERANCE: f64 = TAU;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::scheme::Scheme;
    use std::sync::Arc;

    fn ops(spec: &str) -> DenseOperatorSet {
        let s = Arc::new(Scheme::build(spec.parse().unwrap()).unwrap());
        let base = s.origin();
        DenseOperatorSet::build(s, base, &Budget::default()).unwrap()
    }

    #[test]
    fn primary_module_has_dimension_d_plus_one() {
        let o = ops("H(4,2)");
        let mut v = DVector::zeros(o.len());
        v[0] = 1.0;
        assert_eq!(generate(&o, &v).ncols(), 5);
    }

    #[test]
    fn binary_hamming_signatures() {
        let o = ops("H(6,2)");
        let dec = decompose_modules(&o, 7).unwrap();
        assert_eq!(dec.total_dim(), 64);
        for m in &dec.modules {
            let s = &m.signature;
            assert!(s.thin && s.dual_thin);
            assert_eq!(s.endpoint, s.dual_endpoint);
            assert_eq!(s.diameter, 6 - 2 * s.endpoint);
            assert!(invariance_residual(&o, &m.basis) < 1e-9);
        }
    }

    #[test]
    fn johnson_endpoint_order() {
        let o = ops("J(7,3)");
        let dec = decompose_modules(&o, 1).unwrap();
        assert_eq!(dec.total_dim(), 35);
        assert!(dec.modules.iter().all(|m| m.signature.endpoint <= m.signature.dual_endpoint));
    }

    #[test]
    fn larger_scheme_needs_no_restart() {
        // Eigenvector noise here used to leak into generated modules.
        let o = ops("H(6,3)");
        let dec = decompose_modules(&o, 1).unwrap();
        assert_eq!(dec.restarts, 0);
        assert_eq!(dec.total_dim(), 729);
        assert!(dec.modules.iter().all(|m| m.certificate.holds(m.basis.ncols())));
    }

    #[test]
    fn signature_counts_do_not_depend_on_seed() {
        let o = ops("H(3,3)");
        let a = decompose_modules(&o, 1).unwrap().signature_counts();
        let b = decompose_modules(&o, 99).unwrap().signature_counts();
        assert_eq!(a, b);
    }
}
