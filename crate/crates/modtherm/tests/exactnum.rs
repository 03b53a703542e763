use std::f64::consts::PI;

use modtherm::exactnum::*;
use modtherm::{Complex64, Error};
use num_bigint::BigInt;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

// zeta(3) = 5/2 sum (-1)^(n+1) / (n^3 C(2n, n)), an independent fast alternating series
fn apery_zeta3() -> f64 {
    let mut sum = 0.0;
    let mut central = 1.0;
    for n in 1..40u32 {
        let nf = n as f64;
        central *= (2.0 * nf - 1.0) * 2.0 / nf;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign / (nf * nf * nf * central);
    }
    2.5 * sum
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli(0), rat(1, 1));
    assert_eq!(bernoulli(4), rat(-1, 30));
    assert_eq!(bernoulli(3), rat(0, 1));
    assert_eq!(bernoulli(1), rat(-1, 2));
}

#[test]
fn even_zeta_exact() {
    assert_eq!(zeta_even_exact(2).unwrap(), SymScalar::monomial(rat(1, 6), 2, 0));
    assert_eq!(zeta_even_exact(4).unwrap(), SymScalar::monomial(rat(1, 90), 4, 0));
    assert!(matches!(zeta_even_exact(3), Err(Error::Domain(_))));
    assert!(zeta_even_exact(0).is_err());
}

#[test]
fn negative_zeta_exact() {
    assert_eq!(zeta_negative_exact(-3).unwrap(), rat(1, 120));
    assert_eq!(zeta_negative_exact(0).unwrap(), rat(-1, 2));
    assert_eq!(zeta_negative_exact(-5).unwrap(), rat(-1, 252));
    assert!(zeta_negative_exact(-2).is_err());
    assert!(zeta_negative_exact(3).is_err());
}

#[test]
fn zeta_numeric_examples() {
    let z2 = zeta_numeric(c(2.0)).unwrap();
    assert!((z2.re - PI * PI / 6.0).abs() < 1e-13 * z2.re);
    let zm3 = zeta_numeric(c(-3.0)).unwrap();
    assert!((zm3.re - 1.0 / 120.0).abs() < 1e-13 / 120.0);
    let z3 = zeta_numeric(c(3.0)).unwrap();
    assert!((z3.re - apery_zeta3()).abs() < 1e-12);
    assert!(matches!(zeta_numeric(c(1.0)), Err(Error::Singularity(_))));
}

#[test]
fn zeta_even_numeric_agree() {
    for k in (2..=40).step_by(2) {
        let exact = zeta_even_exact(k).unwrap().to_f64();
        let num = zeta_numeric(c(k as f64)).unwrap().re;
        assert!((exact - num).abs() < 1e-12 * exact, "k = {k}");
    }
}

#[test]
fn zeta_negative_numeric_agree() {
    for t in 1..=5 {
        let s = 1 - 2 * t;
        let exact = rat_to_f64(&zeta_negative_exact(s).unwrap());
        let num = zeta_numeric(c(s as f64)).unwrap().re;
        assert!((exact - num).abs() < 1e-13 * exact.abs(), "s = {s}");
    }
}

#[test]
fn first_critical_zero() {
    let z = zeta_numeric(Complex64::new(0.5, 14.134_725_141_734_693)).unwrap();
    assert!(z.norm() < 1e-12);
}

#[test]
fn zeta_at_large_height() {
    // functional equation across the strip at |Im s| = 45
    let s = Complex64::new(-3.5, 45.0);
    let lhs = zeta_numeric(s).unwrap();
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let rhs = (s * 2f64.ln()).exp()
        * ((s - 1.0) * PI.ln()).exp()
        * (s * PI / 2.0).sin()
        * gamma_numeric(one_minus).unwrap()
        * zeta_numeric(one_minus).unwrap();
    assert!((lhs - rhs).norm() < 1e-12 * lhs.norm());
}

#[test]
fn gamma_examples() {
    let g5 = gamma_numeric(c(5.0)).unwrap();
    assert!((g5.re - 24.0).abs() < 24.0 * 1e-13);
    let gh = gamma_numeric(c(0.5)).unwrap();
    assert!((gh.re - PI.sqrt()).abs() < 1e-13 * PI.sqrt());
    assert!(matches!(gamma_numeric(c(0.0)), Err(Error::Singularity(_))));
    assert!(gamma_numeric(c(-3.0)).is_err());
    let g = gamma_numeric(Complex64::new(1.0, 1.0)).unwrap();
    assert!((g - Complex64::new(0.498_015_668_118_356_04, -0.154_949_828_301_810_69)).norm() < 1e-14);
    assert!((gamma_real(-0.5) + 2.0 * PI.sqrt()).abs() < 1e-13);
}

#[test]
fn sigma_examples() {
    assert_eq!(divisor_sigma(3, 6).unwrap(), BigInt::from(252));
    assert_eq!(divisor_sigma(0, 12).unwrap(), BigInt::from(6));
    assert_eq!(divisor_sigma(1, 97).unwrap(), BigInt::from(98));
    assert!(divisor_sigma(1, 0).is_err());
    assert_eq!(divisor_sigma(2, 1).unwrap(), BigInt::from(1));
}

#[test]
fn sym_numeric_value() {
    let v = SymScalar::monomial(rat(7, 90), 4, 0) - SymScalar::monomial(rat(2, 1), 1, 3);
    let expect = 7.0 * PI.powi(4) / 90.0 - 2.0 * PI * apery_zeta3();
    assert!((v.to_f64() - expect).abs() < 1e-13);
}

#[test]
fn zeta_at_zero() {
    assert_eq!(modtherm::exactnum::zeta_real(0.0), -0.5);
    let z = modtherm::exactnum::zeta_numeric(modtherm::Complex64::new(0.0, 0.0)).unwrap();
    assert_eq!(z.re, -0.5);
}
