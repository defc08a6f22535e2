use std::sync::Arc;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::rational::to_f64;
use crate::scheme::{Scheme, Vertex};
use crate::spectra::CodeVector;

/// Rank and residual threshold, relative to the natural scale of the
/// quantity being tested.
pub const TAU: f64 = 1e-8;

/// The generators of `T(x)` on a scheme small enough to hold densely.
///
/// `A_i` and `E_j` are applied through the distance table rather than
/// stored; [`DenseOperatorSet::a_matrix`] and [`DenseOperatorSet::e_matrix`]
/// materialize them on request.
#[derive(Debug, Clone)]
pub struct DenseOperatorSet {
    scheme: Arc<Scheme>,
    base: Vertex,
    vertices: Vec<Vertex>,
    n: usize,
    dist: Vec<u8>,
    shell: Vec<usize>,
    neighbors: Vec<Vec<u32>>,
    theta: Vec<f64>,
    dual: Vec<f64>,
    q: Vec<Vec<f64>>,
}

impl DenseOperatorSet {
    pub fn build(scheme: Arc<Scheme>, base: Vertex, budget: &Budget) -> Result<Self> {
        let count = scheme.vertex_count_u128().unwrap_or(u128::MAX);
        if count > budget.dense_cap as u128 {
            return Err(Error::DenseCap { vertices: count, cap: budget.dense_cap });
        }
        let vertices = scheme.vertices()?;
        let n = vertices.len();
        let d = scheme.classes();
        let mut dist = vec![0u8; n * n];
        for a in 0..n {
            for b in a + 1..n {
                let v = scheme.distance(vertices[a], vertices[b]) as u8;
                dist[a * n + b] = v;
                dist[b * n + a] = v;
            }
        }
        let base_index = scheme.index(base) as usize;
        let shell: Vec<usize> = (0..n).map(|y| dist[base_index * n + y] as usize).collect();
        let neighbors = (0..n)
            .map(|a| (0..n as u32).filter(|&b| dist[a * n + b as usize] == 1).collect())
            .collect();
        let theta = (0..=d).map(|j| to_f64(scheme.theta(j))).collect();
        let dual = (0..=d).map(|i| to_f64(scheme.dual_theta(i))).collect();
        let q = (0..=d)
            .map(|j| scheme.idempotent_coefficients(j).iter().map(to_f64).collect())
            .collect();
        Ok(Self { scheme, base, vertices, n, dist, shell, neighbors, theta, dual, q })
    }

    pub fn scheme(&self) -> &Arc<Scheme> {
        &self.scheme
    }

    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn classes(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// `χ` as a dense vector in vertex order.
    pub fn dense_vector(&self, chi: &CodeVector) -> DVector<f64> {
        let mut v = DVector::zeros(self.n);
        for (y, w) in chi.iter() {
            v[self.scheme.index(y) as usize] = to_f64(w);
        }
        v
    }

    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.dist[a * self.n + b] as usize
    }

    /// `∂(x, y)` for the vertex at position `y`.
    pub fn shell_of(&self, y: usize) -> usize {
        self.shell[y]
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    /// Diagonal of `A_1^*(x)`: `Q[1][∂(x,y)]`.
    pub fn dual_theta(&self) -> &[f64] {
        &self.dual
    }

    pub fn apply_a1(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.n, |y, _| self.neighbors[y].iter().map(|&z| v[z as usize]).sum())
    }

    pub fn apply_a1_mat(&self, b: &DMatrix<f64>) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, b.ncols());
        for c in 0..b.ncols() {
            for y in 0..self.n {
                out[(y, c)] = self.neighbors[y].iter().map(|&z| b[(z as usize, c)]).sum();
            }
        }
        out
    }

    pub fn apply_a_star(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.n, |y, _| self.dual[self.shell[y]] * v[y])
    }

    pub fn apply_e_star(&self, i: usize, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_fn(self.n, |y, _| if self.shell[y] == i { v[y] } else { 0.0 })
    }

    /// `(A_0 v, …, A_D v)` in one pass over the distance table.
    pub fn class_sums(&self, v: &DVector<f64>) -> Vec<DVector<f64>> {
        let d = self.classes();
        let mut out = vec![DVector::zeros(self.n); d + 1];
        for y in 0..self.n {
            let row = &self.dist[y * self.n..(y + 1) * self.n];
            let mut acc = vec![0.0; d + 1];
            for (z, &k) in row.iter().enumerate() {
                acc[k as usize] += v[z];
            }
            for (i, a) in acc.into_iter().enumerate() {
                out[i][y] = a;
            }
        }
        out
    }

    /// `(E_0 v, …, E_D v)`.
    pub fn idempotent_parts(&self, v: &DVector<f64>) -> Vec<DVector<f64>> {
        let sums = self.class_sums(v);
        let n = self.n as f64;
        self.q
            .iter()
            .map(|row| {
                let mut acc = DVector::zeros(self.n);
                for (coef, s) in row.iter().zip(&sums) {
                    acc.axpy(*coef / n, s, 1.0);
                }
                acc
            })
            .collect()
    }

    pub fn a_matrix(&self, i: usize) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |a, b| if self.distance(a, b) == i { 1.0 } else { 0.0 })
    }

    pub fn e_matrix(&self, j: usize) -> DMatrix<f64> {
        let n = self.n as f64;
        DMatrix::from_fn(self.n, self.n, |a, b| self.q[j][self.distance(a, b)] / n)
    }

    pub fn e_star_mask(&self, i: usize) -> Vec<bool> {
        self.shell.iter().map(|&s| s == i).collect()
    }

    /// `A_k x̂` for every `k`, normalized: an orthonormal basis of `M x̂`.
    pub fn primary_basis(&self) -> DMatrix<f64> {
        let d = self.classes();
        let mut b = DMatrix::zeros(self.n, d + 1);
        for y in 0..self.n {
            b[(y, self.shell[y])] = 1.0;
        }
        for mut col in b.column_iter_mut() {
            let norm = col.norm();
            col /= norm;
        }
        b
    }

    /// Largest deviation among `Σ A_i = J`, `Σ E_j = I`, `E_j E_ℓ = δ E_j`
    /// and the `A_1^*` / `E_1` diagonal relation.
    pub fn invariant_residual(&self) -> f64 {
        let d = self.classes();
        let n = self.n;
        let mut worst: f64 = 0.0;
        let ones = DMatrix::from_element(n, n, 1.0);
        let sum_a = (0..=d).fold(DMatrix::zeros(n, n), |acc, i| acc + self.a_matrix(i));
        worst = worst.max((sum_a - ones).amax());
        let es: Vec<DMatrix<f64>> = (0..=d).map(|j| self.e_matrix(j)).collect();
        let sum_e = es.iter().fold(DMatrix::zeros(n, n), |acc, e| acc + e);
        worst = worst.max((sum_e - DMatrix::identity(n, n)).amax());
        for j in 0..=d {
            for l in 0..=d {
                let prod = &es[j] * &es[l];
                let target = if j == l { es[j].clone() } else { DMatrix::zeros(n, n) };
                worst = worst.max((prod - target).amax());
            }
        }
        let x = self.scheme.index(self.base) as usize;
        for y in 0..n {
            worst = worst.max((self.dual[self.shell[y]] - n as f64 * es[1][(x, y)]).abs());
        }
        worst
    }

    /// Orthonormal eigenbasis of `A_1`, grouped by `θ_j`.
    pub fn eigenspaces(&self) -> Result<Vec<DMatrix<f64>>> {
        let eig = SymmetricEigen::new(self.a_matrix(1));
        let d = self.classes();
        let scale = self.theta[0].abs().max(1.0);
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            let j = (0..=d)
                .find(|&j| (lambda - self.theta[j]).abs() < 1e-6 * scale)
                .ok_or_else(|| {
                    Error::Decomposition(format!("A_1 eigenvalue {lambda} matches no θ_j"))
                })?;
            groups[j].push(k);
        }
        let mult = self.scheme.multiplicities();
        for (j, g) in groups.iter().enumerate() {
            if num_bigint::BigInt::from(g.len()) != mult[j] {
                return Err(Error::Decomposition(format!(
                    "θ_{j} has multiplicity {} but m_{j} = {}",
                    g.len(),
                    mult[j]
                )));
            }
        }
        Ok(groups.into_iter().map(|g| eig.eigenvectors.select_columns(&g)).collect())
    }
}

/// Numerical rank: the number of pivots [`column_basis`] keeps.
pub fn rank(m: &DMatrix<f64>, scale: f64) -> usize {
    column_basis(m, scale).ncols()
}

/// Orthonormal basis of the column space of `m`, by Gram-Schmidt with
/// column pivoting and reorthogonalization. A column is dropped once its
/// residual falls to `TAU * scale`.
pub fn column_basis(m: &DMatrix<f64>, scale: f64) -> DMatrix<f64> {
    let rows = m.nrows();
    let mut residual: Vec<DVector<f64>> = m.column_iter().map(|c| c.into_owned()).collect();
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let threshold = TAU * scale;
    while basis.len() < rows {
        let (best, norm) = residual
            .iter()
            .enumerate()
            .map(|(k, r)| (k, r.norm()))
            .fold((usize::MAX, 0.0), |acc, (k, n)| if n > acc.1 { (k, n) } else { acc });
        if best == usize::MAX || norm <= threshold {
            break;
        }
        let mut q = residual.swap_remove(best);
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&q);
                q.axpy(-c, b, 1.0);
            }
        }
        let qn = q.norm();
        if qn <= threshold {
            continue;
        }
        q /= qn;
        for r in residual.iter_mut() {
            let c = q.dot(r);
            r.axpy(-c, &q, 1.0);
        }
        basis.push(q);
    }
    let mut out = DMatrix::zeros(rows, basis.len());
    for (c, b) in basis.iter().enumerate() {
        out.set_column(c, b);
    }
    out
}

/// Orthonormal basis of `{c : m c = 0}`.
pub fn null_space(m: &DMatrix<f64>, scale: f64) -> DMatrix<f64> {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return DMatrix::identity(cols, cols);
    }
    let row_space = column_basis(&m.transpose(), scale);
    complement(&row_space)
}

/// Orthonormal basis of the orthogonal complement of an orthonormal basis.
pub fn complement(basis: &DMatrix<f64>) -> DMatrix<f64> {
    let n = basis.nrows();
    let proj = DMatrix::identity(n, n) - basis * basis.transpose();
    let eig = SymmetricEigen::new(proj);
    let keep: Vec<usize> = (0..n).filter(|&k| eig.eigenvalues[k] > 0.5).collect();
    eig.eigenvectors.select_columns(&keep)
}

/// `dim(S ∩ T)` for orthonormal bases `s`, `t`.
pub fn intersection_dim(s: &DMatrix<f64>, t: &DMatrix<f64>) -> usize {
    if s.ncols() == 0 || t.ncols() == 0 {
        return 0;
    }
    let joined = DMatrix::from_fn(s.nrows(), s.ncols() + t.ncols(), |r, c| {
        if c < s.ncols() {
            s[(r, c)]
        } else {
            t[(r, c - s.ncols())]
        }
    });
    s.ncols() + t.ncols() - rank(&joined, 1.0)
}

/// Orthonormal basis of `S ∩ T`.
pub fn intersection(s: &DMatrix<f64>, t: &DMatrix<f64>) -> DMatrix<f64> {
    if s.ncols() == 0 || t.ncols() == 0 {
        return DMatrix::zeros(s.nrows(), 0);
    }
    // c ∈ null([S, -T]) gives S c_s = T c_t.
    let joined = DMatrix::from_fn(s.nrows(), s.ncols() + t.ncols(), |r, c| {
        if c < s.ncols() {
            s[(r, c)]
        } else {
            -t[(r, c - s.ncols())]
        }
    });
    let null = null_space(&joined, 1.0);
    let top = null.rows(0, s.ncols()).into_owned();
    column_basis(&(s * top), 1.0)
}

pub fn hstack(parts: &[&DMatrix<f64>], rows: usize) -> DMatrix<f64> {
    let cols: usize = parts.iter().map(|p| p.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for p in parts {
        out.columns_mut(at, p.ncols()).copy_from(p);
        at += p.ncols();
    }
    out
}
