//! Small dense matrices and the eigensolvers the crate needs.
//!
//! Everything here targets the modest sizes that truncated operator algebra
//! produces (at most a few hundred rows); the symmetric tridiagonal solver
//! additionally scales to the ~1e5-node finite-difference grids of the
//! radial problems. No external linear-algebra backend is required.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64 as C64;
// Inherent f64 methods shadow this in std builds; no_std resolves through it.
#[allow(unused_imports)]
use num_traits::Float;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> C64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = CMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += *b;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= *b;
        }
        out
    }

    pub fn scale(&self, s: C64) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude of self - other.
    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (*a - *b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entry magnitude of self - other over index pairs whose row and
    /// column both avoid `excluded`.
    pub fn max_abs_diff_excluding(&self, other: &CMat, excluded: &[usize]) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            if excluded.contains(&i) {
                continue;
            }
            for j in 0..self.cols {
                if excluded.contains(&j) {
                    continue;
                }
                worst = worst.max((self[(i, j)] - other[(i, j)]).norm());
            }
        }
        worst
    }

    /// Deviation from the identity over index pairs avoiding `excluded`.
    pub fn max_identity_dev_excluding(&self, excluded: &[usize]) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            if excluded.contains(&i) {
                continue;
            }
            for j in 0..self.cols {
                if excluded.contains(&j) {
                    continue;
                }
                let target = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                worst = worst.max((self[(i, j)] - target).norm());
            }
        }
        worst
    }

    /// Rank-one update: self += w * v v^dagger.
    pub fn add_outer(&mut self, v: &[C64], w: f64) {
        assert_eq!(self.rows, v.len());
        assert_eq!(self.cols, v.len());
        for i in 0..self.rows {
            let vi = v[i];
            if vi.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                self[(i, j)] += vi * v[j].conj() * w;
            }
        }
    }

    /// Real parts as an `RMat`; panics if any imaginary part exceeds `tol`.
    pub fn to_real(&self, tol: f64) -> RMat {
        let mut out = RMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let c = self[(i, j)];
                assert!(
                    c.im.abs() <= tol,
                    "entry ({i}, {j}) has imaginary part {} above {tol}",
                    c.im
                );
                out[(i, j)] = c.re;
            }
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RMat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> f64>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut m = RMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// transpose(self) * v.
    pub fn apply_transpose(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![0.0; self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            if vi == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] += self[(i, j)] * vi;
            }
        }
        out
    }
}

impl core::ops::Index<(usize, usize)> for RMat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned in ascending order.
pub fn jacobi_eigenvalues(m: &RMat) -> Vec<f64> {
    assert_eq!(m.rows, m.cols, "jacobi needs a square matrix");
    let n = m.rows;
    let mut a = m.clone();
    for sweep in 0..64 {
        let mut off = 0.0f64;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        let scale: f64 = (0..n).map(|i| a[(i, i)].abs()).fold(1e-300, f64::max);
        if off.sqrt() <= 1e-15 * scale.max(off.sqrt() * 1e-2) || off == 0.0 {
            break;
        }
        let _ = sweep;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    vals.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalue NaN"));
    vals
}

/// Number of eigenvalues of the symmetric tridiagonal matrix (diag, off)
/// strictly below `x`, by the Sturm sign-count recursion.
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0usize;
    let mut d = diag[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        // Pivot floor relative to |off| keeps off^2/d large but finite when a
        // leading minor is singular; an absolute floor overflows the quotient
        // to inf and stalls the recurrence on constant-diagonal matrices.
        let floor = off[i - 1].abs() * 1e-150 + 1e-300;
        let denom = if d.abs() < floor {
            if d < 0.0 {
                -floor
            } else {
                floor
            }
        } else {
            d
        };
        d = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues of a symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off` (len n-1), by Sturm bisection.
pub fn tridiag_lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    assert!(n >= 1 && off.len() + 1 == n && k >= 1 && k <= n);
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = (if i > 0 { off[i - 1].abs() } else { 0.0 })
            + (if i + 1 < n { off[i].abs() } else { 0.0 });
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (0..k)
        .map(|j| {
            let mut a = lo;
            let mut b = hi;
            // Bisect to floating-point resolution (midpoint stops moving).
            for _ in 0..140 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(diag, off, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Solves (T - shift I) x = rhs for symmetric tridiagonal T by banded LU
/// with partial pivoting (stable near-singular, as inverse iteration needs).
///
/// Band storage per row i: main[i] (col i), up1[i] (col i+1), up2[i]
/// (col i+2; fill-in created only by row swaps). low[i] is the entry of row
/// i+1 in column i prior to elimination step i.
fn tridiag_shifted_solve(diag: &[f64], off: &[f64], shift: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut main: Vec<f64> = diag.iter().map(|d| d - shift).collect();
    let mut up1: Vec<f64> = {
        let mut v = off.to_vec();
        v.push(0.0);
        v
    };
    let mut up2: Vec<f64> = vec![0.0; n];
    let mut low: Vec<f64> = off.to_vec();
    let mut x: Vec<f64> = rhs.to_vec();
    for i in 0..n - 1 {
        if low[i].abs() > main[i].abs() {
            // Full swap of rows i and i+1. Before the swap:
            //   row i   = [main[i], up1[i], up2[i]]        at cols i, i+1, i+2
            //   row i+1 = [low[i], main[i+1], up1[i+1]]    at cols i, i+1, i+2
            let (ri_a, ri_b, ri_c) = (main[i], up1[i], up2[i]);
            main[i] = low[i];
            up1[i] = main[i + 1];
            up2[i] = up1[i + 1];
            low[i] = ri_a;
            main[i + 1] = ri_b;
            up1[i + 1] = ri_c;
            x.swap(i, i + 1);
        }
        if main[i].abs() < 1e-300 {
            main[i] = 1e-300;
        }
        let m = low[i] / main[i];
        main[i + 1] -= m * up1[i];
        up1[i + 1] -= m * up2[i];
        x[i + 1] -= m * x[i];
    }
    if main[n - 1].abs() < 1e-300 {
        main[n - 1] = 1e-300;
    }
    x[n - 1] /= main[n - 1];
    if n >= 2 {
        let i = n - 2;
        if main[i].abs() < 1e-300 {
            main[i] = 1e-300;
        }
        x[i] = (x[i] - up1[i] * x[i + 1]) / main[i];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        if main[i].abs() < 1e-300 {
            main[i] = 1e-300;
        }
        x[i] = (x[i] - up1[i] * x[i + 1] - up2[i] * x[i + 2]) / main[i];
    }
    x
}

/// Unit eigenvector for an eigenvalue estimate of a symmetric tridiagonal
/// matrix, by inverse iteration with a deterministic start vector.
pub fn tridiag_eigenvector(diag: &[f64], off: &[f64], eigenvalue: f64) -> Vec<f64> {
    let n = diag.len();
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.5 * ((i % 7) as f64) / 7.0)
        .collect();
    normalize(&mut v);
    for _ in 0..4 {
        let mut w = tridiag_shifted_solve(diag, off, eigenvalue, &v);
        normalize(&mut w);
        v = w;
    }
    // Fix sign deterministically: first entry of largest magnitude positive.
    let mut idx = 0usize;
    for i in 0..n {
        if v[i].abs() > v[idx].abs() {
            idx = i;
        }
    }
    if v[idx] < 0.0 {
        for a in v.iter_mut() {
            *a = -*a;
        }
    }
    v
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        for a in v.iter_mut() {
            *a /= norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn cmat_product_and_adjoint() {
        let a = CMat::from_fn(2, 2, |i, j| C64::new((i + 1) as f64, j as f64));
        let id = CMat::identity(2);
        assert_eq!(a.mul(&id), a);
        let aa = a.adjoint().adjoint();
        assert!(aa.max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn jacobi_on_known_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let m = RMat::from_fn(2, 2, |i, j| if i == j { 2.0 } else { 1.0 });
        let vals = jacobi_eigenvalues(&m);
        assert_relative_eq!(vals[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(vals[1], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn sturm_counts_toy_matrix() {
        // diag(1,2,3) with zero off-diagonal.
        let diag = [1.0, 2.0, 3.0];
        let off = [0.0, 0.0];
        assert_eq!(sturm_count(&diag, &off, 0.5), 0);
        assert_eq!(sturm_count(&diag, &off, 2.5), 2);
        assert_eq!(sturm_count(&diag, &off, 3.5), 3);
    }

    #[test]
    fn tridiag_eigen_discrete_laplacian() {
        // -u'' on (0, pi) with Dirichlet ends, n interior nodes:
        // eigenvalues 2/h^2 sin^2(k h / 2) -> k^2.
        let n = 2000usize;
        let h = core::f64::consts::PI / (n + 1) as f64;
        let diag = vec![2.0 / (h * h); n];
        let off = vec![-1.0 / (h * h); n - 1];
        let vals = tridiag_lowest_eigenvalues(&diag, &off, 3);
        for (k, v) in vals.iter().enumerate() {
            let kk = (k + 1) as f64;
            let exact = (2.0 / (h * h)) * (kk * h / 2.0).sin().powi(2) * 2.0;
            // Known closed form of the discrete spectrum.
            let discrete = 2.0 * (1.0 - (kk * h).cos()) / (h * h);
            assert_relative_eq!(*v, discrete, max_relative = 1e-10);
            let _ = exact;
            assert_relative_eq!(*v, kk * kk, max_relative = 1e-5);
        }
        let v0 = tridiag_eigenvector(&diag, &off, vals[0]);
        // Residual ||T v - lambda v||.
        let mut worst = 0.0f64;
        for i in 0..n {
            let mut r = diag[i] * v0[i] - vals[0] * v0[i];
            if i > 0 {
                r += off[i - 1] * v0[i - 1];
            }
            if i + 1 < n {
                r += off[i] * v0[i + 1];
            }
            worst = worst.max(r.abs());
        }
        assert!(worst < 1e-6 / (h * h) * 1e-6, "residual {worst}");
        // Ground mode should look like sin(x): positive everywhere.
        assert!(v0.iter().all(|&x| x > -1e-9));
    }
}
