//! Randomized algebraic-identity checks across the crate.

use lie_contract_core::algebra::{catalog, LieAlgebra, Vector};
use lie_contract_core::contraction::{
    build_u, classify, contracted_bracket_anti, contracted_bracket_iw, iw_tensor_vec,
    numeric_limit, Classification, ContractionSpec, ContractionVariant,
};
use lie_contract_core::orbits::{
    ad_star, character_limit, coadjoint_flow, cocycle_phase, sphere_integrality, DualVector,
    QuantConfig,
};
use lie_contract_core::su2h::{bargmann_rep, embed_a, spin_gram_norms, spin_rep, Su2};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coeff() -> impl Strategy<Value = f64> {
    -3.0..3.0f64
}

fn vec3() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(coeff(), 3)
}

fn any_catalog3() -> impl Strategy<Value = LieAlgebra> {
    prop_oneof![
        Just(catalog("su2").unwrap()),
        Just(catalog("heisenberg3").unwrap()),
        Just(catalog("euclid2").unwrap()),
        Just(catalog("sl2r").unwrap()),
        Just(catalog("abelian_3").unwrap()),
    ]
}

proptest! {
    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        alg in any_catalog3(),
        x in vec3(),
        y in vec3(),
        z in vec3(),
        a in coeff(),
    ) {
        let (x, y, z) = (Vector::new(x), Vector::new(y), Vector::new(z));
        let xy = alg.bracket(&x, &y).unwrap();
        let yx = alg.bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).norm_inf() < 1e-9);

        let lin = alg.bracket(&x.scaled(a).add(&z), &y).unwrap();
        let expanded = xy.scaled(a).add(&alg.bracket(&z, &y).unwrap());
        prop_assert!(lin.sub(&expanded).norm_inf() < 1e-9);
    }

    #[test]
    fn jacobi_identity_on_random_vectors(
        alg in any_catalog3(),
        x in vec3(),
        y in vec3(),
        z in vec3(),
    ) {
        let (x, y, z) = (Vector::new(x), Vector::new(y), Vector::new(z));
        let cyc = alg.bracket(&x, &alg.bracket(&y, &z).unwrap()).unwrap()
            .add(&alg.bracket(&y, &alg.bracket(&z, &x).unwrap()).unwrap())
            .add(&alg.bracket(&z, &alg.bracket(&x, &y).unwrap()).unwrap());
        prop_assert!(cyc.norm_inf() < 1e-8);
    }

    #[test]
    fn iw_tensor_antisymmetric_and_diagonal_formula(
        alg in any_catalog3(),
        u in proptest::collection::vec(0.0..2.0f64, 3),
        x in vec3(),
        y in vec3(),
    ) {
        let (xv, yv) = (Vector::new(x), Vector::new(y));
        let txy = iw_tensor_vec(&alg, &u, &xv, &yv).unwrap();
        let tyx = iw_tensor_vec(&alg, &u, &yv, &xv).unwrap();
        prop_assert!(txy.add(&tyx).norm_inf() < 1e-8);

        // on basis pairs, component k is (u_k - u_i)(u_k - u_j) c_ijk
        for i in 0..3 {
            for j in 0..3 {
                let t = iw_tensor_vec(
                    &alg, &u, &Vector::basis(3, i), &Vector::basis(3, j),
                ).unwrap();
                for k in 0..3 {
                    let expected = (u[k] - u[i]) * (u[k] - u[j]) * alg.c(i, j, k);
                    prop_assert!((t.coeffs[k] - expected).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn iw_tensor_scales_quadratically_in_u(
        alg in any_catalog3(),
        u in proptest::collection::vec(0.0..2.0f64, 3),
        scale in 0.1..3.0f64,
        x in vec3(),
        y in vec3(),
    ) {
        let (x, y) = (Vector::new(x), Vector::new(y));
        let su: Vec<f64> = u.iter().map(|v| v * scale).collect();
        let t1 = iw_tensor_vec(&alg, &u, &x, &y).unwrap();
        let t2 = iw_tensor_vec(&alg, &su, &x, &y).unwrap();
        prop_assert!(t2.sub(&t1.scaled(scale * scale)).norm_inf() < 1e-6);
    }

    #[test]
    fn closed_forms_match_numeric_limit(
        alg in any_catalog3(),
        mask in proptest::collection::vec(prop_oneof![Just(0.0), Just(1.0)], 3),
    ) {
        for variant in [ContractionVariant::Iw, ContractionVariant::AntiIw] {
            let spec = ContractionSpec::diagonal(mask.clone(), variant).unwrap();
            let class = classify(&alg, &spec).unwrap();
            let closed = match (variant, class) {
                (ContractionVariant::Iw, Classification::IwValid | Classification::Isomorphic) => {
                    contracted_bracket_iw(&alg, &spec).ok()
                }
                (ContractionVariant::AntiIw, Classification::AntiIwValid) => {
                    contracted_bracket_anti(&alg, &spec).ok()
                }
                _ => None,
            };
            if let Some(closed) = closed {
                let report = numeric_limit(&alg, &spec, &[1e-2, 1e-3, 1e-4, 1e-5]).unwrap();
                let limit = report.limit_algebra(
                    alg.basis_names().to_vec(), 1e-8,
                ).unwrap();
                prop_assert!(closed.tensor_distance(&limit) < 1e-9);
            }
        }
    }

    #[test]
    fn build_u_matches_definitions(
        u in proptest::collection::vec(0.0..2.0f64, 3),
        eps in 1e-6..0.9f64,
    ) {
        let iw = ContractionSpec::diagonal(u.clone(), ContractionVariant::Iw).unwrap();
        let anti = ContractionSpec::diagonal(u.clone(), ContractionVariant::AntiIw).unwrap();
        let di = build_u(&iw, eps).unwrap();
        let da = build_u(&anti, eps).unwrap();
        for k in 0..3 {
            prop_assert!((di[k] - (eps + (1.0 - eps) * u[k])).abs() < 1e-12);
            prop_assert!((da[k] - (eps * eps + eps * (1.0 - eps) * u[k])).abs() < 1e-12);
        }
    }

    #[test]
    fn pairing_identity(
        alg in any_catalog3(),
        xi in vec3(),
        eta in vec3(),
        mu in vec3(),
    ) {
        let (xi, eta) = (Vector::new(xi), Vector::new(eta));
        let mu = DualVector::new(mu);
        let lhs = ad_star(&alg, &xi, &mu).unwrap().pair(&eta);
        let rhs = -mu.pair(&alg.bracket(&xi, &eta).unwrap());
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn coadjoint_flow_group_property(
        alg in any_catalog3(),
        x in vec3(),
        mu in vec3(),
        t1 in -1.0..1.0f64,
        t2 in -1.0..1.0f64,
    ) {
        let x = Vector::new(x);
        let mu = DualVector::new(mu);
        let once = coadjoint_flow(&alg, &x, &mu, t1 + t2).unwrap();
        let mid = coadjoint_flow(&alg, &x, &mu, t1).unwrap();
        let twice = coadjoint_flow(&alg, &x, &mid, t2).unwrap();
        let dev: f64 = once.coeffs.iter().zip(&twice.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prop_assert!(dev < 1e-8);
    }

    #[test]
    fn su2_flow_preserves_casimir(
        x in vec3(),
        mu in vec3(),
        t in -2.0..2.0f64,
    ) {
        let alg = catalog("su2").unwrap();
        let x = Vector::new(x);
        let mu = DualVector::new(mu);
        let moved = coadjoint_flow(&alg, &x, &mu, t).unwrap();
        prop_assert!((moved.norm2() - mu.norm2()).abs() < 1e-8);
    }

    #[test]
    fn cocycle_phase_is_unimodular_and_stable(
        mu in vec3(),
        x in vec3(),
    ) {
        let alg = catalog("heisenberg3").unwrap();
        let cfg = QuantConfig::default();
        let m = DualVector::new(mu.clone());
        let xv = Vector::new(x);
        let p64 = cocycle_phase(&alg, &m, &m, &xv, &cfg, 64).unwrap();
        let p128 = cocycle_phase(&alg, &m, &m, &xv, &cfg, 128).unwrap();
        prop_assert!((p64.norm() - 1.0).abs() < 1e-12);
        prop_assert!((p64 - p128).norm() < 1e-8);
    }

    #[test]
    fn character_values_are_unimodular(
        mu in vec3(),
        x in vec3(),
    ) {
        let alg = catalog("su2").unwrap();
        let spec = ContractionSpec::diagonal(
            vec![1.0, 1.0, 0.0], ContractionVariant::AntiIw,
        ).unwrap();
        let series = character_limit(
            &alg, &spec, &DualVector::new(mu), &Vector::new(x), &[1e-1, 1e-2, 1e-3],
        ).unwrap();
        for v in &series.values {
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_integrality_scales_linearly(s in 0.25..4.0f64) {
        let cfg = QuantConfig::default();
        let v = sphere_integrality(s, (64, 128), &cfg).unwrap();
        prop_assert!((v - 2.0 * s).abs() < 1e-6);
    }

    #[test]
    fn embed_is_partial_isometry(two_s in 2usize..20, cutoff in 1usize..8) {
        let a = embed_a(two_s, 1.0, cutoff).unwrap();
        let ata = a.adjoint().mul(&a);
        let overlap = cutoff.min(two_s) + 1;
        for i in 0..=two_s {
            for j in 0..=two_s {
                let expected = if i == j && i < overlap { 1.0 } else { 0.0 };
                prop_assert!((ata.get(i, j).re - expected).abs() < 1e-14);
                prop_assert!(ata.get(i, j).im.abs() < 1e-14);
            }
        }
    }
}

fn random_su2(rng: &mut ChaCha8Rng) -> Su2 {
    Su2::exp([
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
    ])
}

#[test]
fn spin_rep_homomorphism_and_unitarity_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for trial in 0..100 {
        let two_s = rng.gen_range(1usize..=20);
        let g = random_su2(&mut rng);
        let h = random_su2(&mut rng);
        let pg = spin_rep(two_s, &g).unwrap();
        let ph = spin_rep(two_s, &h).unwrap();
        let pgh = spin_rep(two_s, &g.mul(&h)).unwrap();
        let hom = pg.mul(&ph).sub(&pgh).max_abs();
        assert!(hom <= 1e-9, "trial {trial}: homomorphism residual {hom}");

        let gram = spin_gram_norms(two_s);
        let dim = two_s + 1;
        let mut worst = 0.0f64;
        for j in 0..dim {
            for k in 0..dim {
                let mut acc = num_complex::Complex64::new(0.0, 0.0);
                for l in 0..dim {
                    acc += pg.get(l, j).conj() * gram[l] * pg.get(l, k);
                }
                let expected = if j == k { gram[j] } else { 0.0 };
                worst = worst.max((acc - expected).norm());
            }
        }
        assert!(worst <= 1e-9, "trial {trial}: unitarity residual {worst}");
    }
}

#[test]
fn bargmann_rep_is_unitary_on_low_block() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let lambda = rng.gen_range(0.2..2.0);
        let x = rng.gen_range(-0.5..0.5);
        let y = rng.gen_range(-0.5..0.5);
        let t = rng.gen_range(-1.0..1.0);
        let sigma = bargmann_rep(lambda, x, y, t, 24).unwrap();
        let gram = sigma.adjoint().mul(&sigma);
        for i in 0..6 {
            for j in 0..6 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((gram.get(i, j).re - expected).abs() < 1e-8);
                assert!(gram.get(i, j).im.abs() < 1e-8);
            }
        }
    }
}

#[test]
fn transition_two_chart_identity() {
    // a section z^k on chart 1 corresponds to z^{2s-k} on chart 2:
    // s1(z) = c_s(z) * s2(1/z)
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let two_s = rng.gen_range(1usize..=10);
        let k = rng.gen_range(0..=two_s);
        let z = num_complex::Complex64::new(rng.gen_range(0.2..2.0), rng.gen_range(-1.0..1.0));
        let s1 = z.powu(k as u32);
        let s2 = (1.0 / z).powu((two_s - k) as u32);
        let c = lie_contract_core::su2h::transition_eval(
            &lie_contract_core::TransitionFn::Su2 { two_s },
            z,
        )
        .unwrap();
        assert!((s1 - c * s2).norm() < 1e-9 * s1.norm().max(1.0));
    }
}
