//! Finite-dimensional real Lie algebras given by structure constants.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg;
use crate::math;

/// Default tolerance for the Jacobi residual at construction.
pub const JACOBI_TOL: f64 = 1e-12;
/// Default tolerance for subspace membership checks.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

/// Element of a Lie algebra, as coefficients in the algebra basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    pub coeffs: Vec<f64>,
}

impl Vector {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Vector { coeffs }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector { coeffs: vec![0.0; dim] }
    }

    /// `i`-th basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Vector::zeros(dim);
        v.coeffs[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, &v| math::max(m, math::abs(v)))
    }

    pub fn norm2(&self) -> f64 {
        math::sqrt(self.coeffs.iter().map(|v| v * v).sum())
    }

    pub fn scaled(&self, a: f64) -> Vector {
        Vector::new(self.coeffs.iter().map(|v| a * v).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }
}

/// A real Lie algebra of dimension `n`, stored as the rank-3 tensor
/// `c[i][j][k]` = coefficient of `e_k` in `[e_i, e_j]`.
///
/// Antisymmetry and the Jacobi identity are checked at construction; every
/// value of this type is a valid Lie algebra up to the stored tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    dim: usize,
    basis_names: Vec<String>,
    c: Vec<f64>,
    jacobi_tol: f64,
}

impl LieAlgebra {
    /// Builds an algebra from the full structure-constant tensor (flattened
    /// `i * n * n + j * n + k`). Rejects antisymmetry violations, Jacobi
    /// failures and `n = 0`.
    pub fn new(dim: usize, basis_names: Vec<String>, c: Vec<f64>, jacobi_tol: f64) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".to_string()));
        }
        if basis_names.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: basis_names.len() });
        }
        if c.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: c.len() });
        }
        let mut max_violation = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let v = c[i * dim * dim + j * dim + k] + c[j * dim * dim + i * dim + k];
                    max_violation = math::max(max_violation, math::abs(v));
                }
            }
        }
        if max_violation > 1e-12 {
            return Err(Error::NotAntisymmetric { max_violation });
        }
        let alg = LieAlgebra { dim, basis_names, c, jacobi_tol };
        let residual = alg.jacobi_residual();
        if residual > jacobi_tol {
            return Err(Error::JacobiFailure { residual, tolerance: jacobi_tol });
        }
        Ok(alg)
    }

    /// Builds from sparse `i < j` entries `(i, j, k, value)`; the
    /// antisymmetric partners are filled in automatically.
    pub fn from_brackets(
        dim: usize,
        basis_names: Vec<String>,
        entries: &[(usize, usize, usize, f64)],
        jacobi_tol: f64,
    ) -> Result<Self, Error> {
        let mut c = vec![0.0; dim * dim * dim];
        for &(i, j, k, v) in entries {
            for &idx in &[i, j, k] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            c[i * dim * dim + j * dim + k] += v;
            c[j * dim * dim + i * dim + k] -= v;
        }
        LieAlgebra::new(dim, basis_names, c, jacobi_tol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn jacobi_tolerance(&self) -> f64 {
        self.jacobi_tol
    }

    /// Structure constant `c[i][j][k]`.
    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[i * self.dim * self.dim + j * self.dim + k]
    }

    /// The raw tensor, flattened.
    pub fn tensor(&self) -> &[f64] {
        &self.c
    }

    /// `[e_i, e_j]` as a vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vector {
        Vector::new((0..self.dim).map(|k| self.c(i, j, k)).collect())
    }

    /// `[x, y]` from the structure constants.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector, Error> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.dim() });
        }
        if y.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: y.dim() });
        }
        let n = self.dim;
        let mut out = vec![0.0; n];
        for i in 0..n {
            let xi = x.coeffs[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..n {
                let yj = y.coeffs[j];
                if yj == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += xi * yj * self.c(i, j, k);
                }
            }
        }
        Ok(Vector::new(out))
    }

    /// Max over basis triples of the infinity-norm of the Jacobi cyclic sum
    /// `[e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]`.
    pub fn jacobi_residual(&self) -> f64 {
        jacobi_residual_of(self.dim, &self.c)
    }

    /// Dimensions of the lower central series `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …`
    /// until stabilization, plus the nilpotency verdict.
    pub fn lower_central_series(&self) -> (Vec<usize>, bool) {
        let n = self.dim;
        let mut dims = vec![n];
        // spanning set of the current term
        let mut span: Vec<Vec<f64>> = (0..n)
            .map(|i| Vector::basis(n, i).coeffs)
            .collect();
        loop {
            let mut next: Vec<Vec<f64>> = Vec::new();
            for i in 0..n {
                let ei = Vector::basis(n, i);
                for v in &span {
                    let b = self.bracket(&ei, &Vector::new(v.clone())).unwrap();
                    if b.norm_inf() > 0.0 {
                        next.push(b.coeffs);
                    }
                }
            }
            let d = linalg::rank(&next, MEMBERSHIP_TOL);
            dims.push(d);
            let len = dims.len();
            if d == 0 || dims[len - 1] == dims[len - 2] {
                break;
            }
            span = next;
        }
        let nilpotent = *dims.last().unwrap() == 0;
        (dims, nilpotent)
    }

    /// True iff brackets of the selected basis vectors stay (within `tol`)
    /// inside their coordinate span.
    pub fn is_subalgebra(&self, idx: &[usize], tol: f64) -> Result<bool, Error> {
        let n = self.dim;
        for &i in idx {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, dim: n });
            }
        }
        let in_set = |k: usize| idx.contains(&k);
        for &i in idx {
            for &j in idx {
                let b = self.bracket_basis(i, j);
                for k in 0..n {
                    if !in_set(k) && math::abs(b.coeffs[k]) > tol {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Max-abs difference of structure-constant tensors.
    pub fn tensor_distance(&self, other: &LieAlgebra) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.c
            .iter()
            .zip(&other.c)
            .fold(0.0, |m, (a, b)| math::max(m, math::abs(a - b)))
    }
}

/// Jacobi residual of a raw tensor, by brute-force evaluation of the cyclic
/// sum over all basis triples. Usable on tensors that are not valid algebras.
pub fn jacobi_residual_of(dim: usize, c: &[f64]) -> f64 {
    let n = dim;
    let get = |i: usize, j: usize, k: usize| c[i * n * n + j * n + k];
    let bracket_basis = |i: usize, j: usize| -> Vec<f64> { (0..n).map(|k| get(i, j, k)).collect() };
    let bracket_with = |i: usize, v: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (j, &vj) in v.iter().enumerate() {
            if vj == 0.0 {
                continue;
            }
            for k in 0..n {
                out[k] += vj * get(i, j, k);
            }
        }
        out
    };
    let mut worst = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let t1 = bracket_with(i, &bracket_basis(j, k));
                let t2 = bracket_with(j, &bracket_basis(k, i));
                let t3 = bracket_with(k, &bracket_basis(i, j));
                for m in 0..n {
                    worst = math::max(worst, math::abs(t1[m] + t2[m] + t3[m]));
                }
            }
        }
    }
    worst
}

/// Names accepted by [`catalog`]. `abelian_n` stands for any `abelian_<k>`.
pub const CATALOG_NAMES: [&str; 5] = ["su2", "heisenberg3", "euclid2", "sl2r", "abelian_n"];

/// Builtin algebras with fixed basis conventions:
/// su2: `[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2`;
/// heisenberg3: `[e1,e2]=e3`, `e3` central;
/// euclid2: `[e3,e1]=e2, [e2,e3]=e1` (`e3` generates the rotation);
/// sl2r: `[e1,e2]=2e2, [e1,e3]=-2e3, [e2,e3]=e1`;
/// abelian_<k>: all brackets zero.
pub fn catalog(name: &str) -> Result<LieAlgebra, Error> {
    let names3 = || vec!["e1".to_string(), "e2".to_string(), "e3".to_string()];
    match name {
        "su2" => LieAlgebra::from_brackets(
            3,
            names3(),
            &[(0, 1, 2, 1.0), (1, 2, 0, 1.0), (2, 0, 1, 1.0)],
            JACOBI_TOL,
        ),
        "heisenberg3" => LieAlgebra::from_brackets(3, names3(), &[(0, 1, 2, 1.0)], JACOBI_TOL),
        "euclid2" => LieAlgebra::from_brackets(
            3,
            names3(),
            &[(2, 0, 1, 1.0), (1, 2, 0, 1.0)],
            JACOBI_TOL,
        ),
        "sl2r" => LieAlgebra::from_brackets(
            3,
            names3(),
            &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)],
            JACOBI_TOL,
        ),
        _ => {
            if let Some(suffix) = name.strip_prefix("abelian_") {
                if let Ok(n) = suffix.parse::<usize>() {
                    if n == 0 {
                        return Err(Error::InvalidParameter("abelian_0 is not allowed".to_string()));
                    }
                    let names = (1..=n).map(|i| format!("e{i}")).collect();
                    return LieAlgebra::new(n, names, vec![0.0; n * n * n], JACOBI_TOL);
                }
            }
            Err(Error::UnknownCatalog(name.to_string()))
        }
    }
}
