//! Small dense real linear algebra.
//!
//! Matrices are stored row-major: entry `(i, j)` of an `n × n` matrix lives at
//! flat index `i·n + j`. The same flattening identifies `M_n(ℝ)` with `ℝ^{n²}`
//! everywhere in this crate.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use thiserror::Error;

/// Pivots smaller than this in magnitude are treated as exact zeros.
pub const PIVOT_THRESHOLD: f64 = 1e-300;
/// Sweep budget for [`jacobi_eigh`].
pub const MAX_JACOBI_SWEEPS: usize = 100;
/// Default absolute tolerance for [`cluster_multiplicities`].
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("matrix is singular (pivot {pivot:e} in column {column})")]
    Singular { column: usize, pivot: f64 },
    #[error("cannot build a complement basis of a zero vector")]
    ZeroVector,
    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix must have dimension at least 1")]
    Empty,
}

/// A dense `dim × dim` real matrix.
#[derive(Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds a matrix from row-major entries; the length must be a perfect square.
    pub fn from_entries(entries: Vec<f64>) -> Result<Self, LinalgError> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "from_rows: matrix must be square");
            entries.extend_from_slice(row);
        }
        Self { dim, entries }
    }

    /// `E_ij`: one in entry `(i, j)`, zero elsewhere.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = 1.0;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major flattening.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| dot(self.row(i), v)).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// `(A + Aᵀ)/2`.
    pub fn symmetrized(&self) -> SquareMatrix {
        (self + &self.transpose()).scaled(0.5)
    }

    /// `‖A − Aᵀ‖_F`.
    pub fn asymmetry(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = self[(i, j)] - self[(j, i)];
                s += d * d;
            }
        }
        s.sqrt()
    }
}

impl Index<(usize, usize)> for SquareMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.dim && j < self.dim);
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for SquareMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.dim && j < self.dim);
        &mut self.entries[i * self.dim + j]
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[f64]> = (0..self.dim).map(|i| self.row(i)).collect();
        f.debug_struct("SquareMatrix").field("rows", &rows).finish()
    }
}

impl Add for &SquareMatrix {
    type Output = SquareMatrix;

    fn add(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim);
        SquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &SquareMatrix {
    type Output = SquareMatrix;

    fn sub(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim);
        SquareMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &SquareMatrix {
    type Output = SquareMatrix;

    fn mul(self, rhs: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// A dense `rows × cols` matrix, row-major. Used for tangent bases.
#[derive(Debug, Clone, PartialEq)]
pub struct RectMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// `M·v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    /// `Mᵀ·v`.
    pub fn transpose_mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (i, &vi) in v.iter().enumerate() {
            for (j, o) in out.iter_mut().enumerate() {
                *o += self[(i, j)] * vi;
            }
        }
        out
    }

    /// `M·Q` for a square `Q` of size `cols`.
    pub fn mul_square(&self, q: &SquareMatrix) -> RectMatrix {
        assert_eq!(q.dim(), self.cols);
        let mut out = RectMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..self.cols {
                    out[(i, j)] += a * q[(k, j)];
                }
            }
        }
        out
    }

    /// `Mᵀ·M`.
    pub fn gram(&self) -> SquareMatrix {
        let mut g = SquareMatrix::zeros(self.cols);
        for a in 0..self.cols {
            for b in 0..self.cols {
                g[(a, b)] = (0..self.rows).map(|i| self[(i, a)] * self[(i, b)]).sum();
            }
        }
        g
    }

    /// `Mᵀ·A·M` for a square `A` of size `rows`.
    pub fn congruence(&self, a: &SquareMatrix) -> SquareMatrix {
        assert_eq!(a.dim(), self.rows);
        // A·M column by column, then Mᵀ·(A·M)
        let mut am = RectMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for k in 0..self.rows {
                let aik = a[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..self.cols {
                    am[(i, j)] += aik * self[(k, j)];
                }
            }
        }
        let mut out = SquareMatrix::zeros(self.cols);
        for p in 0..self.cols {
            for q in 0..self.cols {
                out[(p, q)] = (0..self.rows).map(|i| self[(i, p)] * am[(i, q)]).sum();
            }
        }
        out
    }
}

impl Index<(usize, usize)> for RectMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RectMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Euclidean norm of the flattened entries.
pub fn frobenius_norm(a: &SquareMatrix) -> f64 {
    norm2(a.entries())
}

/// Determinant and inverse by LU factorization with partial pivoting.
pub fn det_inverse(a: &SquareMatrix) -> Result<(f64, SquareMatrix), LinalgError> {
    let n = a.dim();
    if n == 0 {
        return Err(LinalgError::Empty);
    }
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = 1.0;

    for col in 0..n {
        let (pivot_row, pivot_abs) =
            (col..n)
                .map(|r| (r, lu[(r, col)].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs < PIVOT_THRESHOLD {
            return Err(LinalgError::Singular {
                column: col,
                pivot: pivot_abs,
            });
        }
        if pivot_row != col {
            for j in 0..n {
                lu.entries.swap(col * n + j, pivot_row * n + j);
            }
            perm.swap(col, pivot_row);
            det = -det;
        }
        let pivot = lu[(col, col)];
        det *= pivot;
        for r in col + 1..n {
            let factor = lu[(r, col)] / pivot;
            lu[(r, col)] = factor;
            for j in col + 1..n {
                lu[(r, j)] -= factor * lu[(col, j)];
            }
        }
    }

    // Solve L·U·x = P·e_k for every unit vector.
    let mut inv = SquareMatrix::zeros(n);
    let mut x = vec![0.0; n];
    for k in 0..n {
        for i in 0..n {
            let mut s = if perm[i] == k { 1.0 } else { 0.0 };
            for j in 0..i {
                s -= lu[(i, j)] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s -= lu[(i, j)] * x[j];
            }
            x[i] = s / lu[(i, i)];
        }
        for i in 0..n {
            inv[(i, k)] = x[i];
        }
    }
    Ok((det, inv))
}

/// Determinant by LU; exactly singular inputs give `0.0`.
pub fn determinant(a: &SquareMatrix) -> f64 {
    match det_inverse(a) {
        Ok((det, _)) => det,
        Err(_) => 0.0,
    }
}

/// Orthonormal basis of the orthogonal complement of `g`, as the columns of an
/// `N × (N−1)` matrix.
///
/// The basis is the Householder reflector sending `g/‖g‖` to `∓e₀`, with its
/// first column dropped.
pub fn complement_basis(g: &[f64]) -> Result<RectMatrix, LinalgError> {
    let norm = norm2(g);
    if !(norm > 1e-12) {
        return Err(LinalgError::ZeroVector);
    }
    let n = g.len();
    let mut v: Vec<f64> = g.iter().map(|x| x / norm).collect();
    // v = u + sign(u₀)·e₀ keeps ‖v‖² = 2(1 + |u₀|) ≥ 2.
    v[0] += if v[0] >= 0.0 { 1.0 } else { -1.0 };
    let vv = dot(&v, &v);

    let mut basis = RectMatrix::zeros(n, n - 1);
    for j in 1..n {
        for i in 0..n {
            let delta = if i == j { 1.0 } else { 0.0 };
            basis[(i, j - 1)] = delta - 2.0 * v[i] * v[j] / vv;
        }
    }
    Ok(basis)
}

/// Symmetric eigendecomposition; values sorted descending, eigenvectors in
/// the columns of `vectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpectrum {
    pub values: Vec<f64>,
    pub vectors: SquareMatrix,
}

impl EigenSpectrum {
    /// `V·diag(λ)·Vᵀ`.
    pub fn reconstruct(&self) -> SquareMatrix {
        let n = self.values.len();
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| self.vectors[(i, k)] * self.values[k] * self.vectors[(j, k)])
                    .sum();
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &SquareMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigensolver for symmetric matrices.
///
/// Sweeps the strict upper triangle in row order, annihilating each entry with
/// a plane rotation, until the off-diagonal Frobenius mass is at most
/// `tol·‖A‖_F`.
pub fn jacobi_eigh(a: &SquareMatrix, tol: f64) -> Result<EigenSpectrum, LinalgError> {
    let n = a.dim();
    let scale = a.frobenius_norm();
    let asymmetry = a.asymmetry();
    if asymmetry > 1e-8 * (1.0 + scale) {
        return Err(LinalgError::NotSymmetric { asymmetry });
    }

    let mut m = a.clone();
    let mut v = SquareMatrix::identity(n);
    let target = tol * scale;
    let mut converged = off_diagonal_norm(&m) <= target;
    let mut sweeps = 0;

    while !converged {
        if sweeps == MAX_JACOBI_SWEEPS {
            return Err(LinalgError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                m[(p, q)] = 0.0;
                m[(q, p)] = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        converged = off_diagonal_norm(&m) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].total_cmp(&m[(i, i)]));
    let values = order.iter().map(|&i| m[(i, i)]).collect();
    let mut vectors = SquareMatrix::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, dst)] = v[(k, src)];
        }
    }
    Ok(EigenSpectrum { values, vectors })
}

/// A distinct eigenvalue together with how many times it occurs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

/// Greedy left-to-right grouping of descending values. A value joins the
/// current cluster iff it lies within `cluster_tol` of the cluster's first
/// member; each cluster reports its mean.
pub fn cluster_multiplicities(values: &[f64], cluster_tol: f64) -> Vec<Cluster> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < values.len() {
        let head = values[start];
        let mut end = start + 1;
        while end < values.len() && (values[end] - head).abs() <= cluster_tol {
            end += 1;
        }
        let members = &values[start..end];
        out.push(Cluster {
            value: members.iter().sum::<f64>() / members.len() as f64,
            multiplicity: members.len(),
        });
        start = end;
    }
    out
}

/// Householder QR. Returns `(Q, R)` with `A = Q·R`, `Q` orthogonal and `R`
/// upper triangular.
pub fn householder_qr(a: &SquareMatrix) -> (SquareMatrix, SquareMatrix) {
    let n = a.dim();
    let mut r = a.clone();
    let mut q = SquareMatrix::identity(n);
    for col in 0..n.saturating_sub(1) {
        let x: Vec<f64> = (col..n).map(|i| r[(i, col)]).collect();
        let alpha = norm2(&x);
        if alpha == 0.0 {
            continue;
        }
        let mut v = x;
        v[0] += if v[0] >= 0.0 { alpha } else { -alpha };
        let vv = dot(&v, &v);
        // R ← (I − 2vvᵀ/vᵀv)·R on rows col..n
        for j in 0..n {
            let s: f64 = (col..n).map(|i| v[i - col] * r[(i, j)]).sum();
            let f = 2.0 * s / vv;
            for i in col..n {
                r[(i, j)] -= f * v[i - col];
            }
        }
        // Q ← Q·(I − 2vvᵀ/vᵀv) on columns col..n
        for i in 0..n {
            let s: f64 = (col..n).map(|k| q[(i, k)] * v[k - col]).sum();
            let f = 2.0 * s / vv;
            for k in col..n {
                q[(i, k)] -= f * v[k - col];
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            r[(i, j)] = 0.0;
        }
    }
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn det_inverse_of_diagonal() {
        let (det, inv) = det_inverse(&SquareMatrix::diagonal(&[2.0, 0.5])).unwrap();
        assert_eq!(det, 1.0);
        assert_eq!(inv, SquareMatrix::diagonal(&[0.5, 2.0]));
    }

    #[test]
    fn det_inverse_of_unipotent() {
        let a = SquareMatrix::from_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        let (det, inv) = det_inverse(&a).unwrap();
        assert_eq!(det, 1.0);
        assert_eq!(inv, SquareMatrix::from_rows(&[[1.0, -1.0], [0.0, 1.0]]));
    }

    #[test]
    fn det_inverse_with_row_swap() {
        let a = SquareMatrix::from_rows(&[[0.0, 2.0], [3.0, 1.0]]);
        let (det, inv) = det_inverse(&a).unwrap();
        assert!(close(det, -6.0, 1e-15));
        let prod = &a * &inv;
        assert!((&prod - &SquareMatrix::identity(2)).frobenius_norm() < 1e-15);
    }

    #[test]
    fn det_inverse_rejects_singular_and_empty() {
        let a = SquareMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        assert!(matches!(
            det_inverse(&a),
            Err(LinalgError::Singular { column: 1, .. })
        ));
        assert_eq!(
            det_inverse(&SquareMatrix::zeros(0)),
            Err(LinalgError::Empty)
        );
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_norm(&SquareMatrix::identity(2)), 2f64.sqrt());
        assert!(close(
            frobenius_norm(&SquareMatrix::diagonal(&[0.5, 2.0])),
            17f64.sqrt() / 2.0,
            1e-15
        ));
        assert_eq!(frobenius_norm(&SquareMatrix::zeros(3)), 0.0);
    }

    #[test]
    fn complement_of_axis_is_exact() {
        let t = complement_basis(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(t.rows(), 3);
        assert_eq!(t.cols(), 2);
        assert_eq!(t.transpose_mul_vec(&[1.0, 0.0, 0.0]), vec![0.0, 0.0]);
        assert_eq!(t.gram(), SquareMatrix::identity(2));
        assert_eq!(t.column(0), vec![0.0, 1.0, 0.0]);
        assert_eq!(t.column(1), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn complement_of_flattened_identity() {
        let g = [1.0, 0.0, 0.0, 1.0];
        let t = complement_basis(&g).unwrap();
        let gram_err = (&t.gram() - &SquareMatrix::identity(3)).max_abs();
        assert!(gram_err <= 1e-14, "{gram_err}");
        assert!(t.transpose_mul_vec(&g).iter().all(|x| x.abs() <= 1e-14));
    }

    #[test]
    fn complement_handles_negative_leading_entry() {
        let g = [-3.0, 4.0, 0.0];
        let t = complement_basis(&g).unwrap();
        assert!((&t.gram() - &SquareMatrix::identity(2)).max_abs() <= 1e-15);
        assert!(t.transpose_mul_vec(&g).iter().all(|x| x.abs() <= 1e-14));
    }

    #[test]
    fn complement_rejects_zero() {
        assert_eq!(complement_basis(&[0.0, 0.0]), Err(LinalgError::ZeroVector));
        assert_eq!(
            complement_basis(&[1e-13, 0.0]),
            Err(LinalgError::ZeroVector)
        );
    }

    #[test]
    fn jacobi_small_examples() {
        let s = jacobi_eigh(&SquareMatrix::diagonal(&[1.0, 2.0]), 1e-14).unwrap();
        assert_eq!(s.values, vec![2.0, 1.0]);
        let s = jacobi_eigh(&SquareMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]), 1e-14).unwrap();
        assert!(close(s.values[0], 1.0, 1e-15));
        assert!(close(s.values[1], -1.0, 1e-15));
        let vtv = &s.vectors.transpose() * &s.vectors;
        assert!((&vtv - &SquareMatrix::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn jacobi_zero_matrix() {
        let s = jacobi_eigh(&SquareMatrix::zeros(3), 1e-14).unwrap();
        assert_eq!(s.values, vec![0.0; 3]);
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let a = SquareMatrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(matches!(
            jacobi_eigh(&a, 1e-12),
            Err(LinalgError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn jacobi_reports_non_convergence_on_nan() {
        let mut a = SquareMatrix::identity(3);
        a[(0, 1)] = f64::NAN;
        a[(1, 0)] = f64::NAN;
        assert_eq!(
            jacobi_eigh(&a, 1e-12),
            Err(LinalgError::NoConvergence {
                sweeps: MAX_JACOBI_SWEEPS
            })
        );
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn clustering_examples() {
        let r = 0.7071;
        assert_eq!(
            cluster_multiplicities(&[r, r, -r], 1e-6),
            vec![
                Cluster {
                    value: r,
                    multiplicity: 2
                },
                Cluster {
                    value: -r,
                    multiplicity: 1
                }
            ]
        );
        assert_eq!(
            cluster_multiplicities(&[5.0, 5.0, 5.0], 1e-6),
            vec![Cluster {
                value: 5.0,
                multiplicity: 3
            }]
        );
        let c = cluster_multiplicities(&[1.0, 0.9999999, 0.0], 1e-6);
        assert_eq!(c.len(), 2);
        assert!(close(c[0].value, 0.99999995, 1e-15));
        assert_eq!(c[0].multiplicity, 2);
        assert_eq!(
            c[1],
            Cluster {
                value: 0.0,
                multiplicity: 1
            }
        );
        assert!(cluster_multiplicities(&[], 1e-6).is_empty());
    }

    #[test]
    fn clustering_is_anchored_at_first_member() {
        // 1.0 → 0.9999993 → 0.9999986: the third is 1.4e-6 from the head.
        let c = cluster_multiplicities(&[1.0, 0.9999993, 0.9999986], 1e-6);
        assert_eq!(
            c.iter().map(|c| c.multiplicity).collect::<Vec<_>>(),
            vec![2, 1]
        );
    }

    #[test]
    fn qr_reconstructs() {
        let a = SquareMatrix::from_rows(&[[2.0, -1.0, 0.5], [0.3, 4.0, 1.0], [-1.0, 0.2, 3.0]]);
        let (q, r) = householder_qr(&a);
        assert!((&(&q * &r) - &a).max_abs() < 1e-14);
        assert!((&(&q.transpose() * &q) - &SquareMatrix::identity(3)).max_abs() < 1e-15);
        assert_eq!(r[(1, 0)], 0.0);
    }
}
