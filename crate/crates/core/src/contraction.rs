//! Diagonal Lie algebra contractions through the IW-tensor criterion.
//!
//! The obstruction tensor
//! `T[u](x, y) = u^2 [x,y] - u([ux,y] + [x,uy]) + [ux,uy]`
//! decides which of the two diagonal contraction families is valid:
//! `T` valued in `V_R` validates `U = eps*Id + (1-eps)*u` with the limit
//! bracket `[x,y]' + u^{-1} T[u](x,y)`, and `T` valued in `V_N` validates
//! `U = eps^2*Id + eps*(1-eps)*u` with the limit bracket `T[u](x,y)` itself.
//! `numeric_limit` evaluates `U^-1 [U e_i, U e_j]` along an eps schedule as
//! an independent brute-force check of those closed forms.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{LieAlgebra, Vector};
use crate::error::Error;
use crate::math;

/// Tolerance for V_N / V_R membership of IW-tensor entries.
pub const CLASSIFY_TOL: f64 = 1e-10;
/// Jacobi tolerance required of contracted outputs.
pub const CONTRACTED_JACOBI_TOL: f64 = 1e-10;
/// A numeric limit counts as converged below this final error.
pub const CONVERGED_TOL: f64 = 1e-6;

/// Which eps-family the diagonal matrix `u` is plugged into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContractionVariant {
    /// `U = eps*Id + (1-eps)*u`
    Iw,
    /// `U = eps^2*Id + eps*(1-eps)*u`
    AntiIw,
    /// `U = diag(eps^{a_i})` for user-supplied exponents.
    Powers,
}

/// Diagonal contraction candidate: the matrix `u` plus the eps-family.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionSpec {
    u: Vec<f64>,
    variant: ContractionVariant,
    powers: Option<Vec<f64>>,
}

impl ContractionSpec {
    /// IW or anti-IW spec from the diagonal of `u`. Entries must be finite
    /// and non-negative.
    pub fn diagonal(u: Vec<f64>, variant: ContractionVariant) -> Result<Self, Error> {
        if variant == ContractionVariant::Powers {
            return Err(Error::InvalidParameter(
                "POWERS variant requires exponents; use ContractionSpec::powers".to_string(),
            ));
        }
        for &v in &u {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "diagonal entries of u must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(ContractionSpec { u, variant, powers: None })
    }

    /// Raw-powers spec `U = diag(eps^{a_i})`.
    pub fn powers(exponents: Vec<f64>) -> Result<Self, Error> {
        for &a in &exponents {
            if !a.is_finite() {
                return Err(Error::InvalidParameter(format!("exponent {a} is not finite")));
            }
        }
        let u = vec![1.0; exponents.len()];
        Ok(ContractionSpec { u, variant: ContractionVariant::Powers, powers: Some(exponents) })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn variant(&self) -> ContractionVariant {
        self.variant
    }

    pub fn exponents(&self) -> Option<&[f64]> {
        self.powers.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// Indices with `u_i = 0` (the kernel subspace V_N).
    pub fn v_n(&self) -> Vec<usize> {
        self.u.iter().enumerate().filter(|(_, &v)| v == 0.0).map(|(i, _)| i).collect()
    }

    /// Indices with `u_i != 0` (the range subspace V_R).
    pub fn v_r(&self) -> Vec<usize> {
        self.u.iter().enumerate().filter(|(_, &v)| v != 0.0).map(|(i, _)| i).collect()
    }

    fn check_dim(&self, alg: &LieAlgebra) -> Result<(), Error> {
        if self.u.len() != alg.dim() {
            return Err(Error::DimensionMismatch { expected: alg.dim(), got: self.u.len() });
        }
        Ok(())
    }
}

/// `u` applied componentwise (diagonal action).
fn apply_u(u: &[f64], v: &Vector) -> Vector {
    Vector::new(v.coeffs.iter().zip(u).map(|(x, d)| x * d).collect())
}

/// `T[u](x, y)` evaluated from the bracket, for arbitrary vectors.
pub fn iw_tensor_vec(alg: &LieAlgebra, u: &[f64], x: &Vector, y: &Vector) -> Result<Vector, Error> {
    if u.len() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: u.len() });
    }
    let ux = apply_u(u, x);
    let uy = apply_u(u, y);
    let b = alg.bracket(x, y)?;
    let u2b = apply_u(u, &apply_u(u, &b));
    let mixed = apply_u(u, &alg.bracket(&ux, y)?.add(&alg.bracket(x, &uy)?));
    let top = alg.bracket(&ux, &uy)?;
    Ok(u2b.sub(&mixed).add(&top))
}

/// One IW-tensor entry `T[u](e_i, e_j)` with its projection norms.
#[derive(Debug, Clone)]
pub struct IwTensorEntry {
    pub i: usize,
    pub j: usize,
    pub value: Vector,
    /// Infinity norm of the component supported on V_N.
    pub norm_vn: f64,
    /// Infinity norm of the component supported on V_R.
    pub norm_vr: f64,
}

/// All `T[u](e_i, e_j)` for `i < j`; the `j < i` entries follow by
/// antisymmetry.
#[derive(Debug, Clone)]
pub struct IwTensorTable {
    pub dim: usize,
    pub entries: Vec<IwTensorEntry>,
}

impl IwTensorTable {
    /// `T[u](e_i, e_j)` for any ordered pair.
    pub fn get(&self, i: usize, j: usize) -> Vector {
        if i == j {
            return Vector::zeros(self.dim);
        }
        let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
        let entry = self.entries.iter().find(|e| e.i == a && e.j == b).unwrap();
        entry.value.scaled(sign)
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| math::max(m, e.value.norm_inf()))
    }

    pub fn max_vn(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| math::max(m, e.norm_vn))
    }

    pub fn max_vr(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| math::max(m, e.norm_vr))
    }
}

/// Evaluates the IW-tensor on all basis pairs.
pub fn iw_tensor(alg: &LieAlgebra, spec: &ContractionSpec) -> Result<IwTensorTable, Error> {
    spec.check_dim(alg)?;
    let n = alg.dim();
    let u = spec.u();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let value = iw_tensor_vec(alg, u, &Vector::basis(n, i), &Vector::basis(n, j))?;
            let mut norm_vn = 0.0;
            let mut norm_vr = 0.0;
            for (k, &v) in value.coeffs.iter().enumerate() {
                if u[k] == 0.0 {
                    norm_vn = math::max(norm_vn, math::abs(v));
                } else {
                    norm_vr = math::max(norm_vr, math::abs(v));
                }
            }
            entries.push(IwTensorEntry { i, j, value, norm_vn, norm_vr });
        }
    }
    Ok(IwTensorTable { dim: n, entries })
}

/// Outcome of the two theorem conditions on `T[u]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    /// `T` valued in V_R: the IW family contracts.
    IwValid,
    /// `T` valued in V_N: the anti-IW family contracts.
    AntiIwValid,
    /// Both memberships hold with `T` not identically zero.
    Both,
    /// Neither membership holds.
    Neither,
    /// `T` vanishes identically; `u` is bracket-compatible.
    Isomorphic,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::IwValid => "IW_VALID",
            Classification::AntiIwValid => "ANTI_IW_VALID",
            Classification::Both => "BOTH",
            Classification::Neither => "NEITHER",
            Classification::Isomorphic => "ISOMORPHIC",
        }
    }
}

/// Tests both theorem conditions on the IW-tensor, regardless of the spec's
/// variant.
pub fn classify(alg: &LieAlgebra, spec: &ContractionSpec) -> Result<Classification, Error> {
    let table = iw_tensor(alg, spec)?;
    Ok(classify_table(&table))
}

pub fn classify_table(table: &IwTensorTable) -> Classification {
    if table.max_norm() <= CLASSIFY_TOL {
        return Classification::Isomorphic;
    }
    let in_vr = table.max_vn() <= CLASSIFY_TOL;
    let in_vn = table.max_vr() <= CLASSIFY_TOL;
    match (in_vr, in_vn) {
        (true, true) => Classification::Both,
        (true, false) => Classification::IwValid,
        (false, true) => Classification::AntiIwValid,
        (false, false) => Classification::Neither,
    }
}

/// `[x,y]' = [ux,y] + [x,uy] - u[x,y]`, the order-one part of the IW limit.
pub fn bracket_prime(alg: &LieAlgebra, u: &[f64], x: &Vector, y: &Vector) -> Result<Vector, Error> {
    let ux = apply_u(u, x);
    let uy = apply_u(u, y);
    let s = alg.bracket(&ux, y)?.add(&alg.bracket(x, &uy)?);
    Ok(s.sub(&apply_u(u, &alg.bracket(x, y)?)))
}

/// Closed-form IW-contracted algebra `[x,y]_0 = [x,y]' + u^{-1} T[u](x,y)`.
///
/// Refuses when classification is `Neither`/`AntiIwValid`, and when any `T`
/// entry leaks into V_N beyond tolerance (the componentwise `u^{-1}` is only
/// defined on V_R; leakage is an error, not a silent projection).
pub fn contracted_bracket_iw(alg: &LieAlgebra, spec: &ContractionSpec) -> Result<LieAlgebra, Error> {
    spec.check_dim(alg)?;
    let table = iw_tensor(alg, spec)?;
    let class = classify_table(&table);
    if !matches!(class, Classification::IwValid | Classification::Both | Classification::Isomorphic) {
        let bad = table
            .entries
            .iter()
            .max_by(|a, b| a.norm_vn.partial_cmp(&b.norm_vn).unwrap())
            .unwrap();
        return Err(Error::InvalidContraction(format!(
            "classification {} forbids the IW limit: T(e{},e{}) has V_N component of norm {:e}",
            class.as_str(),
            bad.i + 1,
            bad.j + 1,
            bad.norm_vn
        )));
    }
    let n = alg.dim();
    let u = spec.u();
    let mut c = vec![0.0; n * n * n];
    for entry in &table.entries {
        let (i, j) = (entry.i, entry.j);
        if entry.norm_vn > CLASSIFY_TOL {
            return Err(Error::InvalidContraction(format!(
                "T(e{},e{}) has V_N component of norm {:e} > {CLASSIFY_TOL:e}",
                i + 1,
                j + 1,
                entry.norm_vn
            )));
        }
        let prime = bracket_prime(alg, u, &Vector::basis(n, i), &Vector::basis(n, j))?;
        for k in 0..n {
            let t_k = if u[k] != 0.0 { entry.value.coeffs[k] / u[k] } else { 0.0 };
            let v = prime.coeffs[k] + t_k;
            c[i * n * n + j * n + k] = v;
            c[j * n * n + i * n + k] = -v;
        }
    }
    LieAlgebra::new(n, alg.basis_names().to_vec(), c, CONTRACTED_JACOBI_TOL)
}

/// Closed-form anti-IW-contracted algebra `[x,y]_0 = T[u](x,y)`.
pub fn contracted_bracket_anti(alg: &LieAlgebra, spec: &ContractionSpec) -> Result<LieAlgebra, Error> {
    spec.check_dim(alg)?;
    let table = iw_tensor(alg, spec)?;
    let class = classify_table(&table);
    if !matches!(
        class,
        Classification::AntiIwValid | Classification::Both | Classification::Isomorphic
    ) {
        return Err(Error::InvalidContraction(format!(
            "classification {} forbids the anti-IW limit",
            class.as_str()
        )));
    }
    let n = alg.dim();
    let mut c = vec![0.0; n * n * n];
    for entry in &table.entries {
        let (i, j) = (entry.i, entry.j);
        for k in 0..n {
            let v = entry.value.coeffs[k];
            c[i * n * n + j * n + k] = v;
            c[j * n * n + i * n + k] = -v;
        }
    }
    LieAlgebra::new(n, alg.basis_names().to_vec(), c, CONTRACTED_JACOBI_TOL)
}

/// Diagonal of `U_eps` for the spec's variant. Requires `0 < eps < 1`.
pub fn build_u(spec: &ContractionSpec, eps: f64) -> Result<Vec<f64>, Error> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps must lie in (0, 1), got {eps}")));
    }
    let diag = match spec.variant() {
        ContractionVariant::Iw => spec.u().iter().map(|&ui| eps + (1.0 - eps) * ui).collect(),
        ContractionVariant::AntiIw => {
            spec.u().iter().map(|&ui| eps * eps + eps * (1.0 - eps) * ui).collect()
        }
        ContractionVariant::Powers => {
            let exps = spec.exponents().expect("POWERS spec carries exponents");
            exps.iter().map(|&a| math::powf(eps, a)).collect()
        }
    };
    Ok(diag)
}

/// How a numeric limit sweep ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Converged,
    Diverged(String),
    Inconclusive,
}

/// eps-indexed error series from the brute-force limit evaluation.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub eps_values: Vec<f64>,
    /// Max over basis pairs of the infinity-norm deviation at each eps.
    pub errors: Vec<f64>,
    /// Per-pair deviations at each eps (row-major over the schedule).
    pub pairwise_errors: Vec<Vec<f64>>,
    /// Least-squares slope of log error vs log eps.
    pub fitted_rate: f64,
    pub verdict: Verdict,
    /// Structure-constant tensor of the limit (closed form when available,
    /// otherwise the evaluation at the smallest eps).
    pub limit_estimate: Vec<f64>,
}

impl ConvergenceReport {
    pub fn converged(&self) -> bool {
        self.verdict == Verdict::Converged
    }

    /// Limit tensor packaged as an algebra; fails if the estimate does not
    /// satisfy the Jacobi identity.
    pub fn limit_algebra(&self, names: Vec<String>, jacobi_tol: f64) -> Result<LieAlgebra, Error> {
        let n = self.pairwise_dim();
        LieAlgebra::new(n, names, self.limit_estimate.clone(), jacobi_tol)
    }

    fn pairwise_dim(&self) -> usize {
        let mut n = 1;
        while n * n * n < self.limit_estimate.len() {
            n += 1;
        }
        n
    }
}

/// Evaluates `U_eps^{-1} [U_eps e_i, U_eps e_j]` over the schedule and
/// compares against the closed-form contracted bracket (IW/anti-IW) or, for
/// the POWERS variant, against the evaluation at the smallest eps.
///
/// This is the independent oracle for the closed forms: it only uses
/// `build_u` and the original bracket.
pub fn numeric_limit(
    alg: &LieAlgebra,
    spec: &ContractionSpec,
    schedule: &[f64],
) -> Result<ConvergenceReport, Error> {
    spec.check_dim(alg)?;
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("empty eps schedule".to_string()));
    }
    for w in schedule.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::InvalidParameter("schedule must be strictly decreasing".to_string()));
        }
    }
    let n = alg.dim();

    // conjugated tensor at every eps
    let mut tensors: Vec<Vec<f64>> = Vec::with_capacity(schedule.len());
    for &eps in schedule {
        let diag = build_u(spec, eps)?;
        let mut c = vec![0.0; n * n * n];
        let mut finite = true;
        for i in 0..n {
            for j in (i + 1)..n {
                let b = alg.bracket_basis(i, j);
                for k in 0..n {
                    let v = diag[i] * diag[j] * b.coeffs[k] / diag[k];
                    if !v.is_finite() {
                        finite = false;
                    }
                    c[i * n * n + j * n + k] = v;
                    c[j * n * n + i * n + k] = -v;
                }
            }
        }
        if !finite {
            return Ok(ConvergenceReport {
                eps_values: schedule.to_vec(),
                errors: vec![f64::INFINITY; schedule.len()],
                pairwise_errors: vec![],
                fitted_rate: 0.0,
                verdict: Verdict::Diverged(format!(
                    "U_eps^-1 overflows at eps = {eps:e}; eps too small for the exponents"
                )),
                limit_estimate: vec![0.0; n * n * n],
            });
        }
        tensors.push(c);
    }

    // reference tensor: closed form when the variant has one
    let closed_form = match spec.variant() {
        ContractionVariant::Iw => contracted_bracket_iw(alg, spec).ok(),
        ContractionVariant::AntiIw => contracted_bracket_anti(alg, spec).ok(),
        ContractionVariant::Powers => None,
    };
    let (target, from_closed_form): (Vec<f64>, bool) = match &closed_form {
        Some(algebra) => (algebra.tensor().to_vec(), true),
        None => (tensors.last().unwrap().clone(), false),
    };

    let pair_count = n * (n - 1) / 2;
    let mut errors = Vec::with_capacity(schedule.len());
    let mut pairwise_errors = Vec::with_capacity(schedule.len());
    for c in &tensors {
        let mut row = Vec::with_capacity(pair_count);
        let mut worst = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let mut e = 0.0;
                for k in 0..n {
                    let idx = i * n * n + j * n + k;
                    e = math::max(e, math::abs(c[idx] - target[idx]));
                }
                worst = math::max(worst, e);
                row.push(e);
            }
        }
        errors.push(worst);
        pairwise_errors.push(row);
    }

    // For the self-referential target the final error is identically zero;
    // judge convergence on the points before it.
    let judged: &[f64] = if from_closed_form { &errors } else { &errors[..errors.len() - 1] };
    let fitted_rate = loglog_slope(schedule, judged);
    let final_error = judged.last().copied().unwrap_or(0.0);
    let verdict = if final_error < 1e-15 {
        Verdict::Converged
    } else if final_error < CONVERGED_TOL && fitted_rate > 0.0 {
        Verdict::Converged
    } else {
        Verdict::Inconclusive
    };

    Ok(ConvergenceReport {
        eps_values: schedule.to_vec(),
        errors,
        pairwise_errors,
        fitted_rate,
        verdict,
        limit_estimate: target,
    })
}

fn loglog_slope(eps: &[f64], errors: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(errors)
        .filter(|(_, &e)| e > 1e-300)
        .map(|(&x, &e)| (math::ln(x), math::ln(e)))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// One line of a structural report.
#[derive(Debug, Clone)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Structure theorems checked on a contracted output.
#[derive(Debug, Clone)]
pub struct StructuralReport {
    pub items: Vec<CheckItem>,
}

impl StructuralReport {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&CheckItem> {
        self.items.iter().filter(|i| !i.passed).collect()
    }
}

/// Verifies, as applicable: nilpotency of anti-IW outputs when V_N is a
/// subalgebra, the semidirect inclusions of IW outputs when V_R is a
/// subalgebra, and the homomorphism identity when `T` vanishes.
pub fn structural_checks(
    original: &LieAlgebra,
    contracted: &LieAlgebra,
    spec: &ContractionSpec,
) -> Result<StructuralReport, Error> {
    spec.check_dim(original)?;
    let n = original.dim();
    let u = spec.u();
    let vn = spec.v_n();
    let vr = spec.v_r();
    let mut items = Vec::new();

    let table = iw_tensor(original, spec)?;

    if spec.variant() == ContractionVariant::AntiIw
        && original.is_subalgebra(&vn, CLASSIFY_TOL)?
    {
        let (dims, nilpotent) = contracted.lower_central_series();
        items.push(CheckItem {
            name: "anti-IW with V_N a subalgebra implies nilpotent".to_string(),
            passed: nilpotent,
            detail: format!("lower central series {dims:?}"),
        });
    }

    if spec.variant() == ContractionVariant::Iw && original.is_subalgebra(&vr, CLASSIFY_TOL)? {
        let max_outside = |i: usize, j: usize, allowed: &[usize]| -> f64 {
            let b = contracted.bracket_basis(i, j);
            b.coeffs
                .iter()
                .enumerate()
                .filter(|(k, _)| !allowed.contains(k))
                .fold(0.0, |m, (_, &v)| math::max(m, math::abs(v)))
        };
        let mut nn = 0.0;
        for &i in &vn {
            for &j in &vn {
                nn = math::max(nn, contracted.bracket_basis(i, j).norm_inf());
            }
        }
        items.push(CheckItem {
            name: "[V_N, V_N]_0 = 0".to_string(),
            passed: nn <= CLASSIFY_TOL,
            detail: format!("max norm {nn:e}"),
        });
        let mut rr = 0.0;
        for &i in &vr {
            for &j in &vr {
                rr = math::max(rr, max_outside(i, j, &vr));
            }
        }
        items.push(CheckItem {
            name: "[V_R, V_R]_0 in V_R".to_string(),
            passed: rr <= CLASSIFY_TOL,
            detail: format!("max leakage {rr:e}"),
        });
        let mut rn = 0.0;
        for &i in &vr {
            for &j in &vn {
                rn = math::max(rn, max_outside(i, j, &vn));
            }
        }
        items.push(CheckItem {
            name: "[V_R, V_N]_0 in V_N".to_string(),
            passed: rn <= CLASSIFY_TOL,
            detail: format!("max leakage {rn:e}"),
        });
    }

    if table.max_norm() <= CLASSIFY_TOL {
        let mut worst = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let x = Vector::basis(n, i);
                let y = Vector::basis(n, j);
                let lhs = original.bracket(&apply_u(u, &x), &apply_u(u, &y))?;
                let rhs = apply_u(u, &bracket_prime(original, u, &x, &y)?);
                worst = math::max(worst, lhs.sub(&rhs).norm_inf());
            }
        }
        items.push(CheckItem {
            name: "T = 0 implies u maps [.,.]' to [u., u.]".to_string(),
            passed: worst <= CLASSIFY_TOL,
            detail: format!("max residual {worst:e}"),
        });
    }

    Ok(StructuralReport { items })
}
