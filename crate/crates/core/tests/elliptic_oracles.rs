//! Quadrature cross-checks of the elliptic kernel against the defining
//! integrals, plus property tests of the functional identities.

mod common;

use common::{adaptive_simpson, incomplete_e_oracle, incomplete_f_oracle};
use dnls_waves::elliptic::{
    complete_e, complete_k, incomplete_e, incomplete_f, jacobi, Modulus,
};
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_2;

#[test]
fn complete_k_two_routes_agree() {
    // Log-spaced complementary moduli down to 1e-6: AGM vs the integral
    // definition evaluated by adaptive quadrature.
    for kp in [1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 0.9] {
        let m = Modulus::from_complementary(kp).unwrap();
        let agm = complete_k(m).unwrap();
        let k = m.k();
        let quad = adaptive_simpson(
            &|theta: f64| {
                let s = theta.sin();
                let c = theta.cos();
                // 1 - k^2 sin^2 written as cos^2 + (k' sin)^2 so the oracle
                // itself stays accurate at k' = 1e-6.
                1.0 / (c * c + (kp * s) * (kp * s)).sqrt()
            },
            0.0,
            FRAC_PI_2,
            1e-14 * agm,
        );
        let rel = ((agm - quad) / quad).abs();
        assert!(rel < 1e-12, "k' = {kp}: AGM {agm} vs quadrature {quad}");
    }
}

#[test]
fn complete_k_at_sqrt_half_matches_quadrature() {
    let m = Modulus::new(0.5f64.sqrt()).unwrap();
    let agm = complete_k(m).unwrap();
    let quad = incomplete_f_oracle(FRAC_PI_2, m.k(), 1e-14);
    assert!((agm - quad).abs() < 1e-12, "{agm} vs {quad}");
    // Frozen from the quadrature oracle (= scipy.special.ellipk(0.5)).
    assert!((agm - 1.8540746773013719).abs() < 1e-14);
}

#[test]
fn incomplete_f_matches_quadrature() {
    for k in [0.1, 0.5, 0.9, 0.99] {
        let m = Modulus::new(k).unwrap();
        for i in 1..=8 {
            let phi = FRAC_PI_2 * i as f64 / 8.0;
            let carlson = incomplete_f(phi, m).unwrap();
            let quad = incomplete_f_oracle(phi, k, 1e-14);
            assert!(
                (carlson - quad).abs() < 1e-12,
                "k={k}, phi={phi}: {carlson} vs {quad}"
            );
        }
    }
}

#[test]
fn incomplete_e_matches_quadrature() {
    for k in [0.1, 0.5, 0.9, 1.0] {
        let m = Modulus::new(k).unwrap();
        for i in 1..=8 {
            let phi = FRAC_PI_2 * i as f64 / 8.0;
            let carlson = incomplete_e(phi, m).unwrap();
            let quad = incomplete_e_oracle(phi, k, 1e-14);
            assert!(
                (carlson - quad).abs() < 1e-12,
                "k={k}, phi={phi}: {carlson} vs {quad}"
            );
        }
    }
}

#[test]
fn incomplete_first_second_kind_gap_is_order_kprime_squared() {
    // sup over phi of |E(phi, k') - F(phi, k')| <= C k'^2 with C ~ pi/4.
    for kp in [0.05, 0.01, 1e-3] {
        let m = Modulus::new(kp).unwrap();
        let mut sup = 0.0f64;
        for i in 0..=64 {
            let phi = FRAC_PI_2 * i as f64 / 64.0;
            let diff = (incomplete_e(phi, m).unwrap() - incomplete_f(phi, m).unwrap()).abs();
            sup = sup.max(diff);
        }
        assert!(sup <= 2.0 * kp * kp, "k'={kp}: sup {sup:e}");
        // and it is genuinely of that order, not accidentally zero
        assert!(sup >= 0.25 * kp * kp, "k'={kp}: sup {sup:e}");
    }
}

#[test]
fn complete_e_matches_quadrature() {
    for k in [0.2, 0.6, 0.95] {
        let m = Modulus::new(k).unwrap();
        let quad = incomplete_e_oracle(FRAC_PI_2, k, 1e-14);
        assert!((complete_e(m) - quad).abs() < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn jacobi_identities_hold_everywhere(u in -30.0f64..30.0, k in 0.01f64..0.99) {
        let m = Modulus::new(k).unwrap();
        let t = jacobi(u, m).unwrap();
        let r1 = t.sn * t.sn + t.cn * t.cn - 1.0;
        let r2 = t.dn * t.dn + m.m() * t.sn * t.sn - 1.0;
        prop_assert!(r1.abs() < 1e-13);
        prop_assert!(r2.abs() < 1e-13);
        prop_assert!(t.dn >= m.k_prime() - 1e-13 && t.dn <= 1.0 + 1e-13);
    }

    #[test]
    fn jacobi_periodicity(u in -8.0f64..8.0, k in 0.05f64..0.95) {
        let m = Modulus::new(k).unwrap();
        let big_k = complete_k(m).unwrap();
        let t0 = jacobi(u, m).unwrap();
        let t4 = jacobi(u + 4.0 * big_k, m).unwrap();
        prop_assert!((t0.sn - t4.sn).abs() < 1e-11);
        prop_assert!((t0.cn - t4.cn).abs() < 1e-11);
        let t2 = jacobi(u + 2.0 * big_k, m).unwrap();
        prop_assert!((t0.dn - t2.dn).abs() < 1e-11);
    }

    #[test]
    fn modulus_pythagoras(k in 0.0f64..=1.0) {
        let m = Modulus::new(k).unwrap();
        let res = m.m() + m.mc() - 1.0;
        prop_assert!(res.abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn incomplete_f_strictly_increasing(k in 0.05f64..0.95, phi in 0.05f64..1.5) {
        let m = Modulus::new(k).unwrap();
        let lo = incomplete_f(phi - 0.04, m).unwrap();
        let hi = incomplete_f(phi, m).unwrap();
        prop_assert!(hi > lo);
    }
}
