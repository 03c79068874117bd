//! Small dense matrices and the handful of kernels the crate needs:
//! matrix exponentials (scaling and squaring), a Jacobi eigensolver for
//! symmetric matrices, rank/nullspace with tolerances, spectral norms and
//! Gauss-Legendre nodes. Everything is `Vec`-backed and desk-scale.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::math;

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RMat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = diag[i];
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &RMat) -> RMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![0.0; self.rows];
        for i in 0..self.rows {
            let mut acc = 0.0;
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> RMat {
        let mut out = RMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn scale(&self, a: f64) -> RMat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= a;
        }
        out
    }

    pub fn add(&self, other: &RMat) -> RMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += *w;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| math::max(m, math::abs(v)))
    }

    /// One-norm (max column sum), used to pick the expm scaling.
    fn norm_one(&self) -> f64 {
        let mut best = 0.0;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += math::abs(self.get(i, j));
            }
            best = math::max(best, s);
        }
        best
    }

    /// Matrix exponential by scaling and squaring with a Taylor kernel.
    pub fn expm(&self) -> RMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let norm = self.norm_one();
        let mut squarings = 0u32;
        let mut scaled = self.clone();
        if norm > 0.5 {
            squarings = (math::ln(norm / 0.5) / core::f64::consts::LN_2) as u32 + 1;
            scaled = self.scale(1.0 / math::powf(2.0, squarings as f64));
        }
        let mut result = RMat::identity(n);
        let mut term = RMat::identity(n);
        for k in 1..=24 {
            term = term.mul(&scaled).scale(1.0 / k as f64);
            result = result.add(&term);
            if term.max_abs() < 1e-300 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, a: Complex64) -> CMat {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= a;
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v += *w;
        }
        out
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (v, w) in out.data.iter_mut().zip(&other.data) {
            *v -= *w;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| math::max(m, v.norm()))
    }

    fn norm_one(&self) -> f64 {
        let mut best = 0.0;
        for j in 0..self.cols {
            let mut s = 0.0;
            for i in 0..self.rows {
                s += self.get(i, j).norm();
            }
            best = math::max(best, s);
        }
        best
    }

    pub fn expm(&self) -> CMat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let norm = self.norm_one();
        let mut squarings = 0u32;
        let mut scaled = self.clone();
        if norm > 0.5 {
            squarings = (math::ln(norm / 0.5) / core::f64::consts::LN_2) as u32 + 1;
            scaled = self.scale(Complex64::new(1.0 / math::powf(2.0, squarings as f64), 0.0));
        }
        let mut result = CMat::identity(n);
        let mut term = CMat::identity(n);
        for k in 1..=24 {
            term = term.mul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
            result = result.add(&term);
            if term.max_abs() < 1e-300 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.mul(&result);
        }
        result
    }

    /// Spectral norm via power iteration on `A* A` with a deterministic start.
    pub fn operator_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        let gram = self.adjoint().mul(self);
        let n = gram.rows;
        let mut v = vec![Complex64::new(1.0, 0.0); n];
        // Mildly uneven start so an eigenvector orthogonal to ones is not missed.
        for (k, x) in v.iter_mut().enumerate() {
            *x += Complex64::new(0.0, 1e-3 * (k + 1) as f64);
        }
        let mut lambda = 0.0;
        for _ in 0..200 {
            let mut w = vec![Complex64::new(0.0, 0.0); n];
            for i in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    acc += gram.get(i, j) * v[j];
                }
                w[i] = acc;
            }
            let norm = math::sqrt(w.iter().map(|x| x.norm_sqr()).sum::<f64>());
            if norm == 0.0 {
                return 0.0;
            }
            for x in &mut w {
                *x /= norm;
            }
            lambda = norm;
            v = w;
        }
        math::sqrt(lambda)
    }
}

/// Rank of the row span of `rows` with an absolute pivot tolerance.
pub fn rank(rows: &[Vec<f64>], tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut work: Vec<Vec<f64>> = rows.iter().cloned().collect();
    let mut r = 0;
    for col in 0..ncols {
        // find pivot
        let mut best = r;
        let mut best_abs = 0.0;
        for i in r..work.len() {
            let a = math::abs(work[i][col]);
            if a > best_abs {
                best_abs = a;
                best = i;
            }
        }
        if best_abs <= tol {
            continue;
        }
        work.swap(r, best);
        let pivot = work[r][col];
        for i in 0..work.len() {
            if i == r {
                continue;
            }
            let factor = work[i][col] / pivot;
            if factor != 0.0 {
                for j in col..ncols {
                    let sub = factor * work[r][j];
                    work[i][j] -= sub;
                }
            }
        }
        r += 1;
        if r == work.len() {
            break;
        }
    }
    r
}

/// Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors as columns.
pub fn jacobi_eigh(mat: &RMat) -> (Vec<f64>, RMat) {
    assert_eq!(mat.rows, mat.cols);
    let n = mat.rows;
    let mut a = mat.clone();
    let mut v = RMat::identity(n);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a.get(i, j) * a.get(i, j);
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if math::abs(apq) < 1e-300 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + math::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let eig = (0..n).map(|i| a.get(i, i)).collect();
    (eig, v)
}

/// Nullspace basis of a real matrix via the spectral decomposition of `A^T A`.
/// Columns of the result span `{x : ||Ax|| <= tol * scale}`.
pub fn nullspace(mat: &RMat, tol: f64) -> Vec<Vec<f64>> {
    let gram = mat.transpose().mul(mat);
    let (eig, vecs) = jacobi_eigh(&gram);
    let scale = math::max(1.0, mat.max_abs());
    let mut out = Vec::new();
    for (k, &lam) in eig.iter().enumerate() {
        let sv = math::sqrt(math::max(lam, 0.0));
        if sv <= tol * scale {
            let col: Vec<f64> = (0..gram.rows).map(|i| vecs.get(i, k)).collect();
            out.push(col);
        }
    }
    out
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, refined by Newton on P_n.
        let mut x = math::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if math::abs(dx) < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Legendre polynomial `P_n(x)` and its derivative by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
