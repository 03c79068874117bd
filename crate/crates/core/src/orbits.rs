//! Coadjoint actions, their contraction, and quantization checks.
//!
//! Sign convention, fixed throughout: `<ad*_xi mu, eta> = -<mu, [xi, eta]>`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::algebra::{catalog, LieAlgebra, Vector};
use crate::contraction::{build_u, ContractionSpec};
use crate::error::Error;
use crate::linalg::{self, RMat};
use crate::math;

/// Tolerance for stabilizer nullspace singular values.
pub const STABILIZER_TOL: f64 = 1e-10;

/// Element of the dual space, coefficients in the dual basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DualVector {
    pub coeffs: Vec<f64>,
}

impl DualVector {
    pub fn new(coeffs: Vec<f64>) -> Self {
        DualVector { coeffs }
    }

    pub fn zeros(dim: usize) -> Self {
        DualVector { coeffs: vec![0.0; dim] }
    }

    /// `i`-th dual basis covector.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = DualVector::zeros(dim);
        v.coeffs[i] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn norm2(&self) -> f64 {
        math::sqrt(self.coeffs.iter().map(|v| v * v).sum())
    }

    /// Dual pairing `<mu, x>`.
    pub fn pair(&self, x: &Vector) -> f64 {
        self.coeffs.iter().zip(&x.coeffs).map(|(a, b)| a * b).sum()
    }
}

/// Planck-constant configuration for the quantization checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantConfig {
    pub hbar: f64,
}

impl Default for QuantConfig {
    fn default() -> Self {
        QuantConfig { hbar: 1.0 }
    }
}

impl QuantConfig {
    pub fn new(hbar: f64) -> Result<Self, Error> {
        if !(hbar > 0.0) {
            return Err(Error::InvalidParameter(format!("hbar must be positive, got {hbar}")));
        }
        Ok(QuantConfig { hbar })
    }
}

fn check_dual_dim(alg: &LieAlgebra, mu: &DualVector) -> Result<(), Error> {
    if mu.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: mu.dim() });
    }
    Ok(())
}

/// `ad*_xi mu`, defined by `<ad*_xi mu, eta> = -<mu, [xi, eta]>`.
pub fn ad_star(alg: &LieAlgebra, xi: &Vector, mu: &DualVector) -> Result<DualVector, Error> {
    check_dual_dim(alg, mu)?;
    if xi.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: xi.dim() });
    }
    let n = alg.dim();
    let mut out = vec![0.0; n];
    for k in 0..n {
        let b = alg.bracket(xi, &Vector::basis(n, k))?;
        out[k] = -mu.pair(&b);
    }
    Ok(DualVector::new(out))
}

/// Matrix of `mu -> ad*_X mu` in the dual basis.
pub fn ad_star_matrix(alg: &LieAlgebra, x: &Vector) -> Result<RMat, Error> {
    if x.dim() != alg.dim() {
        return Err(Error::DimensionMismatch { expected: alg.dim(), got: x.dim() });
    }
    let n = alg.dim();
    let mut m = RMat::zeros(n, n);
    for k in 0..n {
        let b = alg.bracket(x, &Vector::basis(n, k))?;
        for idx in 0..n {
            m.set(k, idx, -b.coeffs[idx]);
        }
    }
    Ok(m)
}

/// Nullspace of `xi -> ad*_xi mu`: spanning vectors and its dimension.
pub fn stabilizer_subalgebra(
    alg: &LieAlgebra,
    mu: &DualVector,
) -> Result<(Vec<Vector>, usize), Error> {
    check_dual_dim(alg, mu)?;
    let n = alg.dim();
    // column i = ad*_{e_i} mu
    let mut m = RMat::zeros(n, n);
    for i in 0..n {
        let col = ad_star(alg, &Vector::basis(n, i), mu)?;
        for k in 0..n {
            m.set(k, i, col.coeffs[k]);
        }
    }
    let basis: Vec<Vector> = linalg::nullspace(&m, STABILIZER_TOL)
        .into_iter()
        .map(Vector::new)
        .collect();
    let dim = basis.len();
    Ok((basis, dim))
}

/// Kirillov-Kostant-Souriau pairing `omega_mu(xi, eta) = <mu, [xi, eta]>`.
pub fn symplectic_form(
    alg: &LieAlgebra,
    mu: &DualVector,
    xi: &Vector,
    eta: &Vector,
) -> Result<f64, Error> {
    check_dual_dim(alg, mu)?;
    Ok(mu.pair(&alg.bracket(xi, eta)?))
}

/// `exp(t ad*_X) mu`, one step of the coadjoint flow.
pub fn coadjoint_flow(
    alg: &LieAlgebra,
    x: &Vector,
    mu: &DualVector,
    t: f64,
) -> Result<DualVector, Error> {
    check_dual_dim(alg, mu)?;
    let m = ad_star_matrix(alg, x)?;
    let flow = m.scale(t).expm();
    Ok(DualVector::new(flow.mul_vec(&mu.coeffs)))
}

/// Deformed orbit sample produced by the transport / flow / translate-back
/// pipeline.
#[derive(Debug, Clone)]
pub struct OrbitSample {
    pub base: DualVector,
    pub points: Vec<DualVector>,
    pub generators: Vec<(Vector, f64)>,
    /// Max-min spread of the Casimir `||.||_2` over the intermediate
    /// (un-rescaled) orbit points.
    pub casimir_spread: f64,
}

/// Deforms a coadjoint orbit of the contracted group: transport `mu` by
/// `(U*_eps)^{-1}`, flow under the `alg1` coadjoint action along the
/// generator/time pairs (composed cumulatively), translate each point back
/// by `U*_eps`. `U*_eps` is diagonal, so equal to `U_eps`.
pub fn orbit_deform(
    alg0: &LieAlgebra,
    alg1: &LieAlgebra,
    spec: &ContractionSpec,
    mu: &DualVector,
    eps: f64,
    sampling: &[(Vector, f64)],
) -> Result<OrbitSample, Error> {
    check_dual_dim(alg0, mu)?;
    if alg0.dim() != alg1.dim() {
        return Err(Error::DimensionMismatch { expected: alg0.dim(), got: alg1.dim() });
    }
    let diag = build_u(spec, eps)?;
    let mut transported = vec![0.0; mu.dim()];
    for (k, &d) in diag.iter().enumerate() {
        let v = mu.coeffs[k] / d;
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "(U*_eps)^-1 overflows on coordinate {k} at eps = {eps:e}"
            )));
        }
        transported[k] = v;
    }
    let mut current = DualVector::new(transported);
    let mut points = Vec::with_capacity(sampling.len());
    let mut generators = Vec::with_capacity(sampling.len());
    let mut cas_min = current.norm2();
    let mut cas_max = cas_min;
    for (x, t) in sampling {
        current = coadjoint_flow(alg1, x, &current, *t)?;
        let cas = current.norm2();
        cas_min = if cas < cas_min { cas } else { cas_min };
        cas_max = math::max(cas_max, cas);
        let back = DualVector::new(
            current.coeffs.iter().zip(&diag).map(|(v, d)| v * d).collect(),
        );
        points.push(back);
        generators.push((x.clone(), *t));
    }
    Ok(OrbitSample {
        base: mu.clone(),
        points,
        generators,
        casimir_spread: cas_max - cas_min,
    })
}

/// eps-indexed character values `exp(i <U*_eps mu, X>)` with a Cauchy
/// convergence verdict.
#[derive(Debug, Clone)]
pub struct CharacterSeries {
    pub eps_values: Vec<f64>,
    pub exponents: Vec<f64>,
    pub values: Vec<Complex64>,
    pub converged: bool,
    pub diverged: bool,
    pub limit: Option<Complex64>,
}

/// Character of the contracted group along the schedule:
/// `chi(e^X) = lim exp(i <U*_eps mu, X>)`.
pub fn character_limit(
    alg0: &LieAlgebra,
    spec: &ContractionSpec,
    mu: &DualVector,
    x: &Vector,
    schedule: &[f64],
) -> Result<CharacterSeries, Error> {
    check_dual_dim(alg0, mu)?;
    if schedule.windows(2).any(|w| w[1] >= w[0]) || schedule.is_empty() {
        return Err(Error::InvalidParameter("schedule must be non-empty and strictly decreasing".to_string()));
    }
    let mut exponents = Vec::with_capacity(schedule.len());
    let mut values = Vec::with_capacity(schedule.len());
    let mut diverged = false;
    for &eps in schedule {
        let diag = build_u(spec, eps)?;
        let theta: f64 = diag
            .iter()
            .zip(&mu.coeffs)
            .zip(&x.coeffs)
            .map(|((d, m), xi)| d * m * xi)
            .sum();
        if !theta.is_finite() {
            diverged = true;
        }
        exponents.push(theta);
        values.push(Complex64::new(math::cos(theta), math::sin(theta)));
    }
    let converged = if diverged || values.len() < 2 {
        false
    } else {
        let last = values[values.len() - 1];
        let prev = values[values.len() - 2];
        (last - prev).norm() < 1e-6
    };
    let limit = if converged { values.last().copied() } else { None };
    Ok(CharacterSeries { eps_values: schedule.to_vec(), exponents, values, converged, diverged, limit })
}

/// `(1 / 2 pi hbar) * integral of the KKS form over the radius-s sphere`.
///
/// The orbit is embedded as `mu(theta, phi) = s (sin cos, sin sin, cos)` in
/// the su2 dual; tangent vectors are mapped back to algebra generators by
/// solving `ad*_xi mu = v` (for su2, `xi = mu x v / s^2`) and the form is
/// evaluated through [`symplectic_form`]. Quadrature is Gauss-Legendre in
/// theta and trapezoid in phi.
pub fn sphere_integrality(
    s: f64,
    grid: (usize, usize),
    cfg: &QuantConfig,
) -> Result<f64, Error> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("sphere radius must be positive, got {s}")));
    }
    let (ntheta, nphi) = grid;
    if ntheta < 32 || nphi < 64 {
        return Err(Error::InvalidParameter(format!(
            "grid must be at least 32x64, got {ntheta}x{nphi}"
        )));
    }
    let su2 = catalog("su2").expect("builtin catalog");
    let (nodes, weights) = linalg::gauss_legendre(ntheta);
    let mut integral = 0.0;
    let dphi = 2.0 * core::f64::consts::PI / nphi as f64;
    for (node, w) in nodes.iter().zip(&weights) {
        // map [-1,1] -> [0,pi]
        let theta = (node + 1.0) * core::f64::consts::PI / 2.0;
        let jac = core::f64::consts::PI / 2.0;
        let (st, ct) = (math::sin(theta), math::cos(theta));
        for p in 0..nphi {
            let phi = p as f64 * dphi;
            let (sp, cp) = (math::sin(phi), math::cos(phi));
            let mu = DualVector::new(vec![s * st * cp, s * st * sp, s * ct]);
            let dtheta = vec![s * ct * cp, s * ct * sp, -s * st];
            let dphi_vec = vec![-s * st * sp, s * st * cp, 0.0];
            let xi1 = tangent_generator(&mu, &dtheta, s);
            let xi2 = tangent_generator(&mu, &dphi_vec, s);
            let omega = symplectic_form(&su2, &mu, &xi1, &xi2)?;
            integral += w * jac * dphi * omega;
        }
    }
    Ok(integral / (2.0 * core::f64::consts::PI * cfg.hbar))
}

/// For su2, `ad*_xi mu = xi x mu`; the generator producing tangent `v` at
/// `mu` on the radius-s sphere is `(mu x v) / s^2`.
fn tangent_generator(mu: &DualVector, v: &[f64], s: f64) -> Vector {
    let m = &mu.coeffs;
    let cx = m[1] * v[2] - m[2] * v[1];
    let cy = m[2] * v[0] - m[0] * v[2];
    let cz = m[0] * v[1] - m[1] * v[0];
    Vector::new(vec![cx / (s * s), cy / (s * s), cz / (s * s)])
}

/// Cocycle phase `psi(m, exp X) = exp((i/hbar) * integral_0^1 (1/2) <mu_t, X> dt)`
/// along the coadjoint flow path `mu_t = flow(X, m, t)`, by composite
/// midpoint quadrature. `mu` labels the orbit; the Lagrangian is evaluated
/// along the path from `m`.
pub fn cocycle_phase(
    alg: &LieAlgebra,
    mu: &DualVector,
    m: &DualVector,
    x: &Vector,
    cfg: &QuantConfig,
    steps: usize,
) -> Result<Complex64, Error> {
    check_dual_dim(alg, mu)?;
    check_dual_dim(alg, m)?;
    if steps < 16 {
        return Err(Error::InvalidParameter(format!("steps must be >= 16, got {steps}")));
    }
    let gen = ad_star_matrix(alg, x)?;
    let h = 1.0 / steps as f64;
    // midpoint propagation: one expm of the half/full step reused across the path
    let half = gen.scale(h / 2.0).expm();
    let full = gen.scale(h).expm();
    let mut current = m.coeffs.clone();
    let mut integral = 0.0;
    for _ in 0..steps {
        let mid = half.mul_vec(&current);
        let l = 0.5 * DualVector::new(mid).pair(x);
        integral += l * h;
        current = full.mul_vec(&current);
    }
    let theta = integral / cfg.hbar;
    Ok(Complex64::new(math::cos(theta), math::sin(theta)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contraction::ContractionVariant;

    fn su2() -> LieAlgebra {
        catalog("su2").unwrap()
    }

    #[test]
    fn ad_star_su2_pairing() {
        // <ad*_{e3} e1*, e2> = -<e1*, [e3, e2]> = -<e1*, -e1> = 1
        let res = ad_star(&su2(), &Vector::basis(3, 2), &DualVector::basis(3, 0)).unwrap();
        assert!((res.coeffs[1] - 1.0).abs() < 1e-15);
        assert!(res.coeffs[0].abs() < 1e-15);
        assert!(res.coeffs[2].abs() < 1e-15);
    }

    #[test]
    fn ad_star_zero_generator() {
        let res = ad_star(&su2(), &Vector::zeros(3), &DualVector::new(vec![0.3, -1.0, 2.0])).unwrap();
        assert!(res.norm2() < 1e-15);
    }

    #[test]
    fn ad_star_h3_pairing() {
        // component on e2: -<e3*, [e1, e2]> = -1
        let h3 = catalog("heisenberg3").unwrap();
        let res = ad_star(&h3, &Vector::basis(3, 0), &DualVector::basis(3, 2)).unwrap();
        assert!((res.coeffs[1] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn stabilizer_dimensions() {
        let (basis, dim) =
            stabilizer_subalgebra(&su2(), &DualVector::new(vec![0.0, 0.0, 2.5])).unwrap();
        assert_eq!(dim, 1);
        // stabilizer is the mu axis
        assert!(basis[0].coeffs[0].abs() < 1e-10);
        assert!(basis[0].coeffs[1].abs() < 1e-10);

        let (_, dim) = stabilizer_subalgebra(&su2(), &DualVector::zeros(3)).unwrap();
        assert_eq!(dim, 3);

        let h3 = catalog("heisenberg3").unwrap();
        let (_, dim) =
            stabilizer_subalgebra(&h3, &DualVector::new(vec![0.0, 0.0, 0.7])).unwrap();
        assert_eq!(dim, 1);
    }

    #[test]
    fn symplectic_form_values() {
        let mu = DualVector::new(vec![0.0, 0.0, 1.7]);
        let val = symplectic_form(&su2(), &mu, &Vector::basis(3, 0), &Vector::basis(3, 1)).unwrap();
        assert!((val - 1.7).abs() < 1e-15);

        let x = Vector::new(vec![0.2, 0.5, -0.1]);
        assert!(symplectic_form(&su2(), &mu, &x, &x).unwrap().abs() < 1e-15);

        let h3 = catalog("heisenberg3").unwrap();
        let mu = DualVector::new(vec![0.0, 0.0, -0.4]);
        let val = symplectic_form(&h3, &mu, &Vector::basis(3, 0), &Vector::basis(3, 1)).unwrap();
        assert!((val + 0.4).abs() < 1e-15);
    }

    #[test]
    fn coadjoint_flow_preserves_su2_norm() {
        let mu = DualVector::basis(3, 0);
        let out = coadjoint_flow(&su2(), &Vector::basis(3, 2), &mu, core::f64::consts::FRAC_PI_2)
            .unwrap();
        assert!((out.norm2() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coadjoint_flow_identity_at_t0() {
        let mu = DualVector::new(vec![0.4, -0.3, 1.1]);
        let out = coadjoint_flow(&su2(), &Vector::new(vec![1.0, 2.0, 3.0]), &mu, 0.0).unwrap();
        for (a, b) in out.coeffs.iter().zip(&mu.coeffs) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn central_flow_fixes_everything() {
        let h3 = catalog("heisenberg3").unwrap();
        let mu = DualVector::new(vec![0.2, 0.9, -0.5]);
        let out = coadjoint_flow(&h3, &Vector::basis(3, 2), &mu, 3.7).unwrap();
        for (a, b) in out.coeffs.iter().zip(&mu.coeffs) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn orbit_deform_su2_to_h3_plane() {
        let spec =
            ContractionSpec::diagonal(vec![1.0, 1.0, 0.0], ContractionVariant::AntiIw).unwrap();
        let mu = DualVector::basis(3, 2);
        let flows = vec![
            (Vector::basis(3, 0), 0.05),
            (Vector::basis(3, 1), 0.08),
            (Vector::basis(3, 0), -0.03),
        ];
        let sample =
            orbit_deform(&catalog("heisenberg3").unwrap(), &su2(), &spec, &mu, 1e-3, &flows)
                .unwrap();
        for p in &sample.points {
            assert!((p.coeffs[2] - 1.0).abs() < 1e-2, "third coordinate {}", p.coeffs[2]);
        }
        assert!(sample.casimir_spread < 1e-6);
    }

    #[test]
    fn orbit_deform_zero_base_stays_zero() {
        let spec =
            ContractionSpec::diagonal(vec![1.0, 1.0, 0.0], ContractionVariant::AntiIw).unwrap();
        let flows = vec![(Vector::basis(3, 0), 0.3)];
        let sample = orbit_deform(
            &catalog("heisenberg3").unwrap(),
            &su2(),
            &spec,
            &DualVector::zeros(3),
            1e-2,
            &flows,
        )
        .unwrap();
        assert!(sample.points[0].norm2() < 1e-12);
    }

    #[test]
    fn character_limit_trivial_and_central() {
        let spec =
            ContractionSpec::diagonal(vec![1.0, 1.0, 0.0], ContractionVariant::AntiIw).unwrap();
        let schedule: Vec<f64> = (1..=6).map(|k| math::powf(10.0, -(k as f64))).collect();
        let h3 = catalog("heisenberg3").unwrap();

        let series =
            character_limit(&h3, &spec, &DualVector::basis(3, 2), &Vector::zeros(3), &schedule)
                .unwrap();
        assert!(series.converged);
        assert!((series.limit.unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-12);

        // central direction: exponent lambda * eps^2 -> 0, limit 1
        let series = character_limit(
            &h3,
            &spec,
            &DualVector::new(vec![0.0, 0.0, 2.0]),
            &Vector::basis(3, 2),
            &schedule,
        )
        .unwrap();
        assert!(series.converged);
        assert!((series.limit.unwrap() - Complex64::new(1.0, 0.0)).norm() < 1e-7);
    }

    #[test]
    fn sphere_integrality_half_integers() {
        let cfg = QuantConfig::default();
        for (s, expected) in [(0.5, 1.0), (1.0, 2.0)] {
            let val = sphere_integrality(s, (64, 128), &cfg).unwrap();
            assert!((val - expected).abs() < 1e-6, "s={s}: {val}");
        }
        let val = sphere_integrality(0.3, (64, 128), &cfg).unwrap();
        assert!((val - 0.6).abs() < 1e-6);
        assert!(sphere_integrality(-1.0, (64, 128), &cfg).is_err());
        assert!(sphere_integrality(1.0, (16, 128), &cfg).is_err());
    }

    #[test]
    fn cocycle_phase_examples() {
        let cfg = QuantConfig::default();
        let h3 = catalog("heisenberg3").unwrap();
        let mu = DualVector::new(vec![0.0, 0.0, 1.3]);

        let psi = cocycle_phase(&h3, &mu, &mu, &Vector::zeros(3), &cfg, 32).unwrap();
        assert!((psi - Complex64::new(1.0, 0.0)).norm() < 1e-14);

        // central flow: constant integrand lambda, phase exp(i lambda / 2)
        let psi = cocycle_phase(&h3, &mu, &mu, &Vector::basis(3, 2), &cfg, 32).unwrap();
        let expected = Complex64::new(math::cos(0.65), math::sin(0.65));
        assert!((psi - expected).norm() < 1e-12);

        let psi = cocycle_phase(
            &su2(),
            &DualVector::new(vec![0.3, -0.2, 0.9]),
            &DualVector::new(vec![0.3, -0.2, 0.9]),
            &Vector::new(vec![1.0, 0.5, -0.2]),
            &cfg,
            64,
        )
        .unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
    }
}
