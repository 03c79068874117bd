//! On-disk formats: the algebra JSON schema and flow files.

use std::collections::BTreeMap;

use lie_contract_core::algebra::LieAlgebra;
use serde::{Deserialize, Serialize};

/// Sparse structure-constant file: only `i < j` entries are stored and the
/// antisymmetric partners are filled in on load.
#[derive(Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    /// basis index (as a string key, JSON maps) -> coefficient
    pub out: BTreeMap<String, f64>,
}

impl AlgebraFile {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let n = alg.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut out = BTreeMap::new();
                for k in 0..n {
                    let v = alg.c(i, j, k);
                    if v != 0.0 {
                        out.insert(k.to_string(), v);
                    }
                }
                if !out.is_empty() {
                    brackets.push(BracketEntry { i, j, out });
                }
            }
        }
        AlgebraFile { dim: n, basis: alg.basis_names().to_vec(), brackets }
    }

    /// Dense antisymmetrized tensor; validates indices and the `i < j`
    /// storage convention but not the Jacobi identity.
    pub fn dense_tensor(&self) -> Result<Vec<f64>, String> {
        let n = self.dim;
        if n == 0 {
            return Err("dim must be positive".into());
        }
        if self.basis.len() != n {
            return Err(format!("{} basis names for dim {n}", self.basis.len()));
        }
        let mut c = vec![0.0; n * n * n];
        for entry in &self.brackets {
            if entry.i >= entry.j {
                return Err(format!(
                    "bracket entry ({}, {}) violates the i < j storage convention",
                    entry.i, entry.j
                ));
            }
            if entry.j >= n {
                return Err(format!("basis index {} out of range for dim {n}", entry.j));
            }
            for (key, &v) in &entry.out {
                let k: usize = key
                    .parse()
                    .map_err(|_| format!("bad basis index key {key:?}"))?;
                if k >= n {
                    return Err(format!("basis index {k} out of range for dim {n}"));
                }
                c[entry.i * n * n + entry.j * n + k] += v;
                c[entry.j * n * n + entry.i * n + k] -= v;
            }
        }
        Ok(c)
    }

    pub fn into_algebra(&self, jacobi_tol: f64) -> Result<LieAlgebra, String> {
        let c = self.dense_tensor()?;
        LieAlgebra::new(self.dim, self.basis.clone(), c, jacobi_tol).map_err(|e| e.to_string())
    }
}

/// One entry of a flows.json sampling file.
#[derive(Debug, Serialize, Deserialize)]
pub struct FlowEntry {
    #[serde(rename = "X")]
    pub x: Vec<f64>,
    pub t: f64,
}

/// Fixed CSV float format: 12 significant fractional digits, scientific.
pub fn sci(x: f64) -> String {
    format!("{x:.12e}")
}
