//! The SU(2) -> Heisenberg contraction, end to end: spin representations on
//! polynomial section spaces, the Bargmann-Fock representation, deformed
//! line-bundle transition functions, the unitary embeddings between the two
//! section spaces, and prequantum spin operators.
//!
//! Basis convention, used everywhere: the su2 catalog generators are
//! realized as `e_k = -(i/2) sigma_k` (Pauli matrices), so `[e1,e2] = e3`
//! holds and exponentials land in SU(2).

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::contraction::{build_u, ContractionSpec};
use crate::error::Error;
use crate::linalg::CMat;
use crate::math;
use crate::orbits::{sphere_integrality, QuantConfig};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Special-unitary 2x2 matrix `[[a, b], [-conj(b), conj(a)]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2 {
    pub a: Complex64,
    pub b: Complex64,
}

impl Su2 {
    pub fn identity() -> Self {
        Su2 { a: ONE, b: Complex64::new(0.0, 0.0) }
    }

    /// Validates `|a|^2 + |b|^2 = 1` to 1e-10.
    pub fn new(a: Complex64, b: Complex64) -> Result<Self, Error> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if math::abs(norm - 1.0) > 1e-10 {
            return Err(Error::InvalidParameter(format!(
                "matrix is not special-unitary: |a|^2+|b|^2 = {norm}"
            )));
        }
        Ok(Su2 { a, b })
    }

    /// From a full 2x2 matrix; rejects non-unitary, non-unimodular or
    /// wrongly-shaped input.
    pub fn from_matrix(m: [[Complex64; 2]; 2]) -> Result<Self, Error> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if (det - ONE).norm() > 1e-10 {
            return Err(Error::InvalidParameter(format!("det = {det} != 1")));
        }
        // unitarity: columns orthonormal
        let c0 = m[0][0].norm_sqr() + m[1][0].norm_sqr();
        let c1 = m[0][1].norm_sqr() + m[1][1].norm_sqr();
        let cross = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
        if math::abs(c0 - 1.0) > 1e-10 || math::abs(c1 - 1.0) > 1e-10 || cross.norm() > 1e-10 {
            return Err(Error::InvalidParameter("matrix is not unitary".to_string()));
        }
        Su2::new(m[0][0], m[0][1])
    }

    pub fn mul(&self, other: &Su2) -> Su2 {
        // [[a,b],[-b*,a*]] multiplication stays in the same form
        Su2 {
            a: self.a * other.a - self.b * other.b.conj(),
            b: self.a * other.b + self.b * other.a.conj(),
        }
    }

    /// `exp(v1 e1 + v2 e2 + v3 e3)` with `e_k = -(i/2) sigma_k`, in closed
    /// form: `cos(|v|/2) Id - i sin(|v|/2) (vhat . sigma)`.
    pub fn exp(v: [f64; 3]) -> Su2 {
        let norm = math::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        if norm == 0.0 {
            return Su2::identity();
        }
        let (vx, vy, vz) = (v[0] / norm, v[1] / norm, v[2] / norm);
        let half = norm / 2.0;
        let (c, s) = (math::cos(half), math::sin(half));
        Su2 {
            a: Complex64::new(c, -vz * s),
            b: Complex64::new(-vy * s, -vx * s),
        }
    }
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n + 1];
    for k in 1..=n {
        out[k] = out[k - 1] + math::ln(k as f64);
    }
    out
}

fn ln_binom(lnf: &[f64], n: usize, k: usize) -> f64 {
    lnf[n] - lnf[k] - lnf[n - k]
}

fn binom(lnf: &[f64], n: usize, k: usize) -> f64 {
    if k == 0 || k == n {
        1.0
    } else {
        math::exp(ln_binom(lnf, n, k))
    }
}

/// Squared norms of the monomials `z^j` in the invariant inner product
/// `<z^j, z^k> = delta_{jk} j! (2s-j)! / (2s+1)!`.
pub fn spin_gram_norms(two_s: usize) -> Vec<f64> {
    let lnf = ln_factorials(two_s + 1);
    (0..=two_s)
        .map(|j| math::exp(lnf[j] + lnf[two_s - j] - lnf[two_s + 1]))
        .collect()
}

/// Powers `base^0 .. base^n`.
fn power_table(base: Complex64, n: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = ONE;
    out.push(acc);
    for _ in 0..n {
        acc *= base;
        out.push(acc);
    }
    out
}

/// Matrix of the spin-s action on the monomial basis of degree <= 2s
/// polynomials:
/// `(pi_s(g) f)(z) = (bz + conj(a))^{2s} f((az - conj(b)) / (bz + conj(a)))`.
///
/// The formula is the standard principal-bundle action fixed by the
/// homomorphism and unitarity property tests; it is unitary with respect to
/// [`spin_gram_norms`].
pub fn spin_rep(two_s: usize, g: &Su2) -> Result<CMat, Error> {
    // revalidate: downstream formulas assume exact special-unitarity
    let g = Su2::new(g.a, g.b)?;
    let dim = two_s + 1;
    let lnf = ln_factorials(two_s.max(1));
    let pow_a = power_table(g.a, two_s);
    let pow_nbc = power_table(-g.b.conj(), two_s);
    let pow_b = power_table(g.b, two_s);
    let pow_ac = power_table(g.a.conj(), two_s);
    let mut mat = CMat::zeros(dim, dim);
    for k in 0..dim {
        // pi(g) z^k = (a z - conj(b))^k (b z + conj(a))^{2s-k}
        for j in 0..dim {
            let mut acc = Complex64::new(0.0, 0.0);
            let m_lo = j.saturating_sub(two_s - k);
            let m_hi = k.min(j);
            for m in m_lo..=m_hi {
                let coeff = binom(&lnf, k, m) * binom(&lnf, two_s - k, j - m);
                acc += coeff * pow_a[m] * pow_nbc[k - m] * pow_b[j - m] * pow_ac[two_s - k - (j - m)];
            }
            mat.set(j, k, acc);
        }
    }
    Ok(mat)
}

/// Leading `(nmax+1) x (nmax+1)` block of the spin-s action on the
/// *normalized* monomial basis. Usable at large spin, where only the
/// low-degree block is needed.
pub fn spin_rep_normalized_block(two_s: usize, g: &Su2, nmax: usize) -> Result<CMat, Error> {
    let g = Su2::new(g.a, g.b)?;
    if nmax > two_s {
        return Err(Error::InvalidParameter(format!(
            "block size {nmax} exceeds 2s = {two_s}"
        )));
    }
    let dim = nmax + 1;
    let lnf = ln_factorials(two_s.max(1));
    let pow_a = power_table(g.a, dim);
    let pow_nbc = power_table(-g.b.conj(), dim);
    let pow_b = power_table(g.b, dim);
    let pow_ac = power_table(g.a.conj(), two_s);
    let mut mat = CMat::zeros(dim, dim);
    for k in 0..dim {
        let ln_ck = ln_binom(&lnf, two_s, k);
        for j in 0..dim {
            let ln_cj = ln_binom(&lnf, two_s, j);
            let mut acc = Complex64::new(0.0, 0.0);
            let m_lo = j.saturating_sub(two_s - k);
            let m_hi = k.min(j);
            for m in m_lo..=m_hi {
                let ln_mag = ln_binom(&lnf, k, m)
                    + ln_binom(&lnf, two_s - k, j - m)
                    + 0.5 * (ln_ck - ln_cj);
                acc += math::exp(ln_mag)
                    * pow_a[m]
                    * pow_nbc[k - m]
                    * pow_b[j - m]
                    * pow_ac[two_s - k - (j - m)];
            }
            mat.set(j, k, acc);
        }
    }
    Ok(mat)
}

/// Matrix of the Bargmann-Fock representation of the Heisenberg element
/// `(x, y, t)` (exponential coordinates) on the normalized truncated Fock
/// basis `f_k = w^k lambda^{k/2} / sqrt(k!)`, `k <= cutoff`.
///
/// Generators: with `A f_k = sqrt(lambda k) f_{k-1}` (lowering) and its
/// adjoint `A*`,
/// `dsigma(e1) = -i (A + A*) / sqrt(2)`, `dsigma(e2) = (A - A*) / sqrt(2)`,
/// `dsigma(e3) = i lambda Id`, so `[dsigma(e1), dsigma(e2)] = dsigma(e3)`.
pub fn bargmann_rep(lambda: f64, x: f64, y: f64, t: f64, cutoff: usize) -> Result<CMat, Error> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    if cutoff < 1 {
        return Err(Error::InvalidParameter("cutoff must be >= 1".to_string()));
    }
    let n = cutoff + 1;
    let mut h = CMat::zeros(n, n);
    let inv_sqrt2 = 1.0 / math::sqrt(2.0);
    for k in 0..n {
        h.set(k, k, I * (lambda * t));
        if k + 1 < n {
            let amp = math::sqrt(lambda * (k + 1) as f64) * inv_sqrt2;
            // lowering entry (k, k+1), raising entry (k+1, k)
            h.set(k, k + 1, Complex64::new(0.0, -x * amp) + Complex64::new(y * amp, 0.0));
            h.set(k + 1, k, Complex64::new(0.0, -x * amp) + Complex64::new(-y * amp, 0.0));
        }
    }
    Ok(h.expm())
}

/// Line-bundle transition function on the chart overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransitionFn {
    /// `c_s(z) = z^{2s}` on the sphere orbit.
    Su2 { two_s: usize },
    /// `c^lambda(z) = exp(i lambda z)` on the Heisenberg plane orbit.
    Heis { lambda: f64 },
    /// `c^eps_s(z) = (1 + i eps z)^{2 s_eps}` with `s_eps = floor(lambda/eps)`.
    Deformed { lambda: f64, eps: f64 },
}

impl TransitionFn {
    /// `s_eps` for the deformed family; errors if it would be zero.
    pub fn s_eps(lambda: f64, eps: f64) -> Result<usize, Error> {
        if !(eps > 0.0) {
            return Err(Error::InvalidParameter(format!("eps must be positive, got {eps}")));
        }
        let s_eps = math::floor(lambda / eps);
        if s_eps < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "s_eps = floor({lambda}/{eps}) < 1 leaves the deformed family undefined"
            )));
        }
        Ok(s_eps as usize)
    }
}

/// Evaluates a transition function at `z`. Integer powers are exact
/// (binary exponentiation), so the principal branch never matters.
pub fn transition_eval(f: &TransitionFn, z: Complex64) -> Result<Complex64, Error> {
    match *f {
        TransitionFn::Su2 { two_s } => Ok(z.powu(two_s as u32)),
        TransitionFn::Heis { lambda } => Ok((I * lambda * z).exp()),
        TransitionFn::Deformed { lambda, eps } => {
            let s_eps = TransitionFn::s_eps(lambda, eps)?;
            Ok((ONE + I * eps * z).powu(2 * s_eps as u32))
        }
    }
}

/// Sup-error series of the deformed family against `exp(i c lambda z)` for
/// both candidate constants `c in {1, 2}` over a compact disk.
#[derive(Debug, Clone)]
pub struct TransitionReport {
    pub eps_values: Vec<f64>,
    pub sup_err_c1: Vec<f64>,
    pub sup_err_c2: Vec<f64>,
    /// The candidate (1 or 2) whose series decreases monotonically to below
    /// 0.01, when exactly one does.
    pub winner: Option<u8>,
}

/// Measures which constant the deformed transition functions converge to,
/// uniformly on the disk `|z| <= radius` sampled on an
/// `(n_radii x n_angles)` polar grid.
pub fn transition_convergence(
    lambda: f64,
    schedule: &[f64],
    radius: f64,
    grid: (usize, usize),
) -> Result<TransitionReport, Error> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    if schedule.is_empty() || schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter(
            "schedule must be non-empty and strictly decreasing".to_string(),
        ));
    }
    let (nr, na) = grid;
    if nr < 2 || na < 4 {
        return Err(Error::InvalidParameter("grid too coarse".to_string()));
    }
    let mut points = vec![Complex64::new(0.0, 0.0)];
    for ir in 1..=nr {
        let r = radius * ir as f64 / nr as f64;
        for ia in 0..na {
            let phi = 2.0 * core::f64::consts::PI * ia as f64 / na as f64;
            points.push(Complex64::new(r * math::cos(phi), r * math::sin(phi)));
        }
    }
    let mut sup_c1 = Vec::with_capacity(schedule.len());
    let mut sup_c2 = Vec::with_capacity(schedule.len());
    for &eps in schedule {
        let f = TransitionFn::Deformed { lambda, eps };
        let mut worst1 = 0.0;
        let mut worst2 = 0.0;
        for &z in &points {
            let v = transition_eval(&f, z)?;
            worst1 = math::max(worst1, (v - (I * lambda * z).exp()).norm());
            worst2 = math::max(worst2, (v - (I * 2.0 * lambda * z).exp()).norm());
        }
        sup_c1.push(worst1);
        sup_c2.push(worst2);
    }
    let monotone_to_zero = |s: &[f64]| -> bool {
        s.windows(2).all(|w| w[1] < w[0]) && *s.last().unwrap() < 0.01
    };
    let w1 = monotone_to_zero(&sup_c1);
    let w2 = monotone_to_zero(&sup_c2);
    let winner = match (w1, w2) {
        (true, false) => Some(1),
        (false, true) => Some(2),
        _ => None,
    };
    Ok(TransitionReport { eps_values: schedule.to_vec(), sup_err_c1: sup_c1, sup_err_c2: sup_c2, winner })
}

/// Constant fixed by the transition-function oracle: the deformed family
/// with `s_eps = floor(lambda/eps)` converges to `exp(i * C * lambda * z)`.
/// Pinned by a regression test and propagated into the eps <-> s coupling.
pub const TRANSITION_LIMIT_CONSTANT: f64 = 2.0;

/// Group contraction `Phi_eps(x, y, t) = exp_SU2(U_eps (x e1 + y e2 + t e3))`.
pub fn phi_eps(spec: &ContractionSpec, eps: f64, x: f64, y: f64, t: f64) -> Result<Su2, Error> {
    if spec.dim() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, got: spec.dim() });
    }
    let diag = build_u(spec, eps)?;
    Ok(Su2::exp([diag[0] * x, diag[1] * y, diag[2] * t]))
}

/// Index-preserving isometry from the normalized spin-s monomial basis into
/// the normalized truncated Fock basis: basis vector `k` maps to basis
/// vector `k` on the overlap. (`lambda` fixes the target space; both bases
/// being orthonormal, the matrix itself is 0/1.)
pub fn embed_a(two_s: usize, lambda: f64, cutoff: usize) -> Result<CMat, Error> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    if cutoff < 1 {
        return Err(Error::InvalidParameter("cutoff must be >= 1".to_string()));
    }
    let mut a = CMat::zeros(cutoff + 1, two_s + 1);
    for k in 0..=cutoff.min(two_s) {
        a.set(k, k, ONE);
    }
    Ok(a)
}

/// The eps <-> s coupling used for the MN-contraction error: the group
/// parameter is `delta = sqrt(C * lambda / (C * s)) = sqrt(lambda / s)`,
/// plugged into the validated anti-IW matrix `diag(delta, delta, delta^2)`,
/// so the central generator scales by `delta^2 = lambda / s` and the spin-s
/// central character tends to the Bargmann one. The bundle-side deformation
/// parameter is `eps = lambda / (C * s)` with `C` the measured
/// [`TRANSITION_LIMIT_CONSTANT`].
pub fn mn_group_parameter(lambda: f64, two_s: usize) -> f64 {
    math::sqrt(2.0 * lambda / two_s as f64)
}

/// Operator-norm deviation
/// `|| A pi_s(Phi_eps(x,y,t)) A* - sigma_lambda(x,y,t) ||` on the leading
/// `K x K` block, with the truncation cutoff `N = 2K`.
pub fn mn_error(
    lambda: f64,
    x: f64,
    y: f64,
    t: f64,
    two_s: usize,
    block: usize,
) -> Result<f64, Error> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    if block < 1 {
        return Err(Error::InvalidParameter("block must be >= 1".to_string()));
    }
    let cutoff = 2 * block;
    if block > two_s.min(cutoff) + 1 {
        return Err(Error::InvalidParameter(format!(
            "block {block} exceeds min(2s, N) + 1 = {}",
            two_s.min(cutoff) + 1
        )));
    }
    if cutoff > two_s {
        return Err(Error::InvalidParameter(format!(
            "cutoff 2K = {cutoff} exceeds 2s = {two_s}; increase the spin"
        )));
    }
    let delta = mn_group_parameter(lambda, two_s);
    if delta >= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "spin {two_s}/2 too small for lambda = {lambda} (group parameter {delta} >= 1)"
        )));
    }
    let spec = ContractionSpec::diagonal(vec![1.0, 1.0, 0.0], crate::contraction::ContractionVariant::AntiIw)?;
    let g = phi_eps(&spec, delta, x, y, t)?;
    // A pi A* is exactly the leading block of pi in the normalized basis
    let pi_block = spin_rep_normalized_block(two_s, &g, cutoff)?;
    let sigma = bargmann_rep(lambda, x, y, t, cutoff)?;
    let mut diff = CMat::zeros(block, block);
    for i in 0..block {
        for j in 0..block {
            diff.set(i, j, pi_block.get(i, j) - sigma.get(i, j));
        }
    }
    Ok(diff.operator_norm())
}

/// Prequantum spin operators on the spin-s polynomial space:
/// `J3 = z d/dz - s`, `Jp = 2sz - z^2 d/dz`, `Jm = d/dz`,
/// `J1 = (Jp + Jm)/2`, `J2 = (Jp - Jm)/(2i)`, on the monomial basis.
/// They satisfy `[J1, J2] = i J3` (cyclic) and Casimir `s(s+1) Id`.
pub fn prequantum_spin_ops(two_s: usize, _cfg: &QuantConfig) -> (CMat, CMat, CMat) {
    let dim = two_s + 1;
    let s = two_s as f64 / 2.0;
    let mut jp = CMat::zeros(dim, dim);
    let mut jm = CMat::zeros(dim, dim);
    let mut j3 = CMat::zeros(dim, dim);
    for k in 0..dim {
        j3.set(k, k, Complex64::new(k as f64 - s, 0.0));
        if k + 1 < dim {
            // Jp: z^k -> (2s - k) z^{k+1}
            jp.set(k + 1, k, Complex64::new(two_s as f64 - k as f64, 0.0));
            // Jm: z^{k+1} -> (k+1) z^k
            jm.set(k, k + 1, Complex64::new(k as f64 + 1.0, 0.0));
        }
    }
    let half = Complex64::new(0.5, 0.0);
    let j1 = jp.add(&jm).scale(half);
    let j2 = jp.sub(&jm).scale(half / I);
    (j1, j2, j3)
}

/// Representation dimension `2s + 1` against the symplectic volume
/// `(1/2 pi hbar) integral omega = 2s/hbar` of the orbit; the two differ by
/// one at `hbar = 1` and no reconciliation is attempted.
pub fn dim_vs_volume(
    two_s: usize,
    grid: (usize, usize),
    cfg: &QuantConfig,
) -> Result<(usize, f64), Error> {
    let s = two_s as f64 / 2.0;
    let vol = sphere_integrality(s, grid, cfg)?;
    Ok((two_s + 1, vol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su2_exp_is_special_unitary() {
        let g = Su2::exp([0.3, -1.2, 0.7]);
        assert!(math::abs(g.a.norm_sqr() + g.b.norm_sqr() - 1.0) < 1e-12);
    }

    #[test]
    fn su2_from_matrix_validates() {
        let good = [[ONE, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), ONE]];
        assert!(Su2::from_matrix(good).is_ok());
        let bad = [[ONE * 2.0, Complex64::new(0.0, 0.0)], [Complex64::new(0.0, 0.0), ONE]];
        assert!(Su2::from_matrix(bad).is_err());
    }

    #[test]
    fn spin_rep_identity() {
        let m = spin_rep(4, &Su2::identity()).unwrap();
        let id = CMat::identity(5);
        assert!(m.sub(&id).max_abs() < 1e-14);
    }

    #[test]
    fn spin_half_is_defining_rep() {
        // s = 1/2: the rep acts on span{1, z}; its eigenvalue content matches g.
        let g = Su2::exp([0.4, 0.1, -0.8]);
        let m = spin_rep(1, &g).unwrap();
        let tr = m.get(0, 0) + m.get(1, 1);
        let g_tr = g.a + g.a.conj();
        assert!((tr - g_tr).norm() < 1e-12);
        let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        assert!((det - ONE).norm() < 1e-12);
    }

    #[test]
    fn spin_one_diagonal_phases() {
        // g = exp(tau e3) acts on z^k by e^{i tau (s - k)}
        let tau = 0.9;
        let g = Su2::exp([0.0, 0.0, tau]);
        let m = spin_rep(2, &g).unwrap();
        for k in 0..3usize {
            let phase = tau * (1.0 - k as f64);
            let expected = Complex64::new(math::cos(phase), math::sin(phase));
            assert!((m.get(k, k) - expected).norm() < 1e-12, "k={k}");
            for j in 0..3usize {
                if j != k {
                    assert!(m.get(j, k).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn spin_rep_homomorphism_spot_check() {
        let g = Su2::exp([0.3, -0.4, 0.9]);
        let h = Su2::exp([-1.1, 0.2, 0.5]);
        let pg = spin_rep(5, &g).unwrap();
        let ph = spin_rep(5, &h).unwrap();
        let pgh = spin_rep(5, &g.mul(&h)).unwrap();
        assert!(pg.mul(&ph).sub(&pgh).max_abs() < 1e-12);
    }

    #[test]
    fn spin_rep_unitary_wrt_gram() {
        let g = Su2::exp([0.7, 1.3, -0.2]);
        let two_s = 6;
        let m = spin_rep(two_s, &g).unwrap();
        let gram = spin_gram_norms(two_s);
        let dim = two_s + 1;
        // (pi* G pi)_{jk} = sum_l conj(m_{lj}) gram_l m_{lk}
        for j in 0..dim {
            for k in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..dim {
                    acc += m.get(l, j).conj() * gram[l] * m.get(l, k);
                }
                let expected = if j == k { gram[j] } else { 0.0 };
                assert!((acc - expected).norm() < 1e-12, "({j},{k})");
            }
        }
    }

    #[test]
    fn normalized_block_agrees_with_full_rep() {
        let g = Su2::exp([0.2, -0.3, 0.5]);
        let two_s = 8;
        let full = spin_rep(two_s, &g).unwrap();
        let gram = spin_gram_norms(two_s);
        let block = spin_rep_normalized_block(two_s, &g, 4).unwrap();
        for j in 0..5 {
            for k in 0..5 {
                let normalized = full.get(j, k) * math::sqrt(gram[j] / gram[k]);
                assert!((block.get(j, k) - normalized).norm() < 1e-12, "({j},{k})");
            }
        }
    }

    #[test]
    fn bargmann_central_character() {
        let lambda = 1.7;
        let t = 0.9;
        let m = bargmann_rep(lambda, 0.0, 0.0, t, 6).unwrap();
        let phase = Complex64::new(math::cos(lambda * t), math::sin(lambda * t));
        let expected = CMat::identity(7).scale(phase);
        assert!(m.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn bargmann_identity_element() {
        let m = bargmann_rep(1.0, 0.0, 0.0, 0.0, 4).unwrap();
        assert!(m.sub(&CMat::identity(5)).max_abs() < 1e-14);
    }

    #[test]
    fn bargmann_generator_direction() {
        // || sigma(x,0,0) - Id || = O(x) on a low block
        let small = bargmann_rep(1.0, 1e-4, 0.0, 0.0, 10).unwrap();
        let dev = small.sub(&CMat::identity(11)).max_abs();
        assert!(dev < 1e-3 && dev > 1e-5, "dev = {dev}");
    }

    #[test]
    fn bargmann_group_law_on_low_block() {
        let lambda = 1.0;
        let n = 16;
        let s1 = bargmann_rep(lambda, 0.3, -0.2, 0.1, n).unwrap();
        let s2 = bargmann_rep(lambda, -0.1, 0.4, 0.2, n).unwrap();
        // Heisenberg product in exponential coordinates
        let (x, y, t) = (0.2, 0.2, 0.3 + 0.5 * (0.3 * 0.4 - (-0.2) * (-0.1)));
        let s12 = bargmann_rep(lambda, x, y, t, n).unwrap();
        let prod = s1.mul(&s2);
        let mut worst = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                worst = math::max(worst, (prod.get(i, j) - s12.get(i, j)).norm());
            }
        }
        assert!(worst < 1e-6, "group-law deviation {worst}");
    }

    #[test]
    fn transition_eval_examples() {
        let v = transition_eval(&TransitionFn::Su2 { two_s: 2 }, Complex64::new(2.0, 0.0)).unwrap();
        assert!((v - Complex64::new(4.0, 0.0)).norm() < 1e-14);

        let v = transition_eval(&TransitionFn::Heis { lambda: 1.0 }, Complex64::new(0.0, 0.0)).unwrap();
        assert!((v - ONE).norm() < 1e-14);

        // (1 + 0.01 i)^{200}, s_eps = 100
        let v = transition_eval(
            &TransitionFn::Deformed { lambda: 1.0, eps: 0.01 },
            Complex64::new(1.0, 0.0),
        )
        .unwrap();
        let direct = Complex64::new(1.0, 0.01).powu(200);
        assert!((v - direct).norm() < 1e-12);
        // close to e^{2i} for small eps
        let e2i = Complex64::new(math::cos(2.0), math::sin(2.0));
        assert!((v - e2i).norm() < 0.05);
    }

    #[test]
    fn transition_lambda_zero_rejected() {
        assert!(transition_eval(
            &TransitionFn::Deformed { lambda: 0.0, eps: 0.01 },
            Complex64::new(0.5, 0.0)
        )
        .is_err());
    }

    #[test]
    fn transition_convergence_picks_c2() {
        let schedule = [1e-1, 1e-2, 1e-3, 1e-4];
        let report = transition_convergence(1.0, &schedule, 1.0, (8, 16)).unwrap();
        assert_eq!(report.winner, Some(2));
        assert!(*report.sup_err_c2.last().unwrap() < 0.01);
        assert!(*report.sup_err_c1.last().unwrap() > 0.1);
    }

    #[test]
    fn phi_eps_identity_and_smallness() {
        let spec = ContractionSpec::diagonal(
            vec![1.0, 1.0, 0.0],
            crate::contraction::ContractionVariant::AntiIw,
        )
        .unwrap();
        let g = phi_eps(&spec, 0.3, 0.0, 0.0, 0.0).unwrap();
        assert!((g.a - ONE).norm() < 1e-14 && g.b.norm() < 1e-14);

        // rotation angle equals || U_eps(e1) || for a pure e1 direction
        let eps = 0.01;
        let g = phi_eps(&spec, eps, 1.0, 0.0, 0.0).unwrap();
        let angle = 2.0 * libm::acos(g.a.re.clamp(-1.0, 1.0));
        let diag = build_u(&spec, eps).unwrap();
        assert!(math::abs(angle - diag[0]) < 1e-10, "angle {angle} vs {}", diag[0]);
    }

    #[test]
    fn embed_a_is_isometry_on_overlap() {
        let a = embed_a(10, 1.0, 3).unwrap();
        assert_eq!((a.rows, a.cols), (4, 11));
        let ata = a.adjoint().mul(&a);
        // A*A = Id on the first 4 basis vectors, zero beyond
        for i in 0..11 {
            for j in 0..11 {
                let expected = if i == j && i < 4 { ONE } else { Complex64::new(0.0, 0.0) };
                assert_eq!(ata.get(i, j), expected);
            }
        }
    }

    #[test]
    fn mn_error_zero_at_identity() {
        let err = mn_error(1.0, 0.0, 0.0, 0.0, 40, 5).unwrap();
        assert!(err < 1e-10, "err = {err}");
    }

    #[test]
    fn mn_error_decreases_with_spin() {
        let e20 = mn_error(1.0, 0.0, 0.0, 1.0, 40, 5).unwrap();
        let e80 = mn_error(1.0, 0.0, 0.0, 1.0, 160, 5).unwrap();
        assert!(e80 < e20, "{e80} !< {e20}");
        let e20 = mn_error(1.0, 0.5, 0.0, 0.0, 40, 5).unwrap();
        let e80 = mn_error(1.0, 0.5, 0.0, 0.0, 160, 5).unwrap();
        assert!(e80 < e20, "{e80} !< {e20}");
    }

    #[test]
    fn mn_error_rejects_oversized_block() {
        assert!(mn_error(1.0, 0.0, 0.0, 0.0, 4, 5).is_err());
    }

    #[test]
    fn prequantum_ops_spin_half() {
        let (j1, j2, j3) = prequantum_spin_ops(1, &QuantConfig::default());
        // eigenvalues of each J_i are +-1/2; check via trace and det of J3
        assert!((j3.get(0, 0) + Complex64::new(0.5, 0.0)).norm() < 1e-14);
        assert!((j3.get(1, 1) - Complex64::new(0.5, 0.0)).norm() < 1e-14);
        // Casimir = s(s+1) = 3/4
        let cas = j1.mul(&j1).add(&j2.mul(&j2)).add(&j3.mul(&j3));
        let expected = CMat::identity(2).scale(Complex64::new(0.75, 0.0));
        assert!(cas.sub(&expected).max_abs() < 1e-12);
    }

    #[test]
    fn prequantum_commutators_and_casimir() {
        for two_s in [1usize, 2, 3, 5, 8] {
            let s = two_s as f64 / 2.0;
            let (j1, j2, j3) = prequantum_spin_ops(two_s, &QuantConfig::default());
            let comm = |a: &CMat, b: &CMat| a.mul(b).sub(&b.mul(a));
            assert!(comm(&j1, &j2).sub(&j3.scale(I)).max_abs() < 1e-10, "2s={two_s}");
            assert!(comm(&j2, &j3).sub(&j1.scale(I)).max_abs() < 1e-10);
            assert!(comm(&j3, &j1).sub(&j2.scale(I)).max_abs() < 1e-10);
            let cas = j1.mul(&j1).add(&j2.mul(&j2)).add(&j3.mul(&j3));
            let expected = CMat::identity(two_s + 1).scale(Complex64::new(s * (s + 1.0), 0.0));
            assert!(cas.sub(&expected).max_abs() < 1e-10);
        }
    }

    #[test]
    fn dim_vs_volume_examples() {
        let cfg = QuantConfig::default();
        for (two_s, dim, vol) in [(1usize, 2usize, 1.0), (2, 3, 2.0), (10, 11, 10.0)] {
            let (d, v) = dim_vs_volume(two_s, (64, 128), &cfg).unwrap();
            assert_eq!(d, dim);
            assert!(math::abs(v - vol) < 1e-6, "2s={two_s}: {v}");
        }
    }
}
