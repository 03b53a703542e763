use std::f64::consts::PI;

use num_integer::Integer;
use proptest::prelude::*;

use modtherm::dirichlet::{phi_direct, Coefficients, DirichletDatum, Series, Spectrum};
use modtherm::epstein::f_w;
use modtherm::exactnum::{divisor_sigma, gamma_numeric, gamma_real, zeta_numeric};
use modtherm::periodpoly::{cocycle_compose, CocycleGenerators, Generator};
use modtherm::qseries::{eps, HalfPlanePoint};
use modtherm::thermal::{mode_sum_thermal, SpectrumSpec};
use modtherm::Complex64;

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![Just(Generator::S), Just(Generator::T), Just(Generator::TInv)]
}

fn relator() -> impl Strategy<Value = Vec<Generator>> {
    use Generator::*;
    prop_oneof![
        Just(vec![S, S]),
        Just(vec![T, TInv]),
        Just(vec![TInv, T]),
        Just(vec![T, S, T, S, T, S]),
        Just(vec![S, T, S, T, S, T]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        let lhs = gamma_real(x + 1.0);
        let rhs = x * gamma_real(x);
        prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs());
    }

    #[test]
    fn gamma_reflection(x in 0.01f64..0.99, y in -3.0f64..3.0) {
        let s = Complex64::new(x, y);
        let lhs = gamma_numeric(s).unwrap() * gamma_numeric(1.0 - s).unwrap();
        let rhs = PI / (s * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn sigma_is_multiplicative(m in 1u64..2000, n in 1u64..2000, k in 0u32..6) {
        prop_assume!(m.gcd(&n) == 1);
        let lhs = divisor_sigma(k, m * n).unwrap();
        let rhs = divisor_sigma(k, m).unwrap() * divisor_sigma(k, n).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn zeta_functional_equation(x in -3.0f64..4.0, y in -8.0f64..8.0) {
        let s = Complex64::new(x, y);
        prop_assume!((s - 1.0).norm() > 0.1 && s.norm() > 0.1);
        prop_assume!(!(y.abs() < 0.05 && x > 0.0 && (x - x.round()).abs() < 0.05));
        let two = Complex64::new(2.0, 0.0);
        let pi = Complex64::new(PI, 0.0);
        let rhs = two.powc(s) * pi.powc(s - 1.0) * (s * PI / 2.0).sin()
            * gamma_numeric(1.0 - s).unwrap() * zeta_numeric(1.0 - s).unwrap();
        let lhs = zeta_numeric(s).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm().max(1.0));
    }

    #[test]
    fn eisenstein_inversion(re in 0.5f64..2.0, im in -1.0f64..1.0, t in 2u32..=5) {
        let b = Complex64::new(re, im);
        let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = eps(t, &HalfPlanePoint::new(1.0 / b).unwrap()).unwrap().value;
        let rhs = sign * b.powi(2 * t as i32) * eps(t, &HalfPlanePoint::new(b).unwrap()).unwrap().value;
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn completed_zeta_symmetry(w in -2.0f64..2.0, s in -2.0f64..3.0) {
        for x in [s + w, s - w] {
            prop_assume!(x.abs() > 0.05 && (x - 1.0).abs() > 0.05);
        }
        let a = f_w(w, s).unwrap();
        let b = f_w(w, 1.0 - s).unwrap();
        prop_assert!((a - b).abs() <= 1e-11 * a.abs().max(1e-3));
    }

    #[test]
    fn divisor_dirichlet_series(w in 0.0f64..1.5, gap in 4.0f64..6.0, im in -5.0f64..5.0) {
        // sum sigma_2w(n) n^-(s+w) = zeta(s+w) zeta(s-w) with s - w = gap + i im
        let s = Complex64::new(w + gap, im);
        let series = Series {
            coefficients: Coefficients::Sigma { k: 2.0 * w, power: 0.0, scale: 1.0 },
            spectrum: Spectrum::Linear { scale: 1.0 },
        };
        let d = DirichletDatum {
            phi: series.clone(),
            psi: series,
            delta: 0.0,
            residues: vec![],
            zero_modes: (0.0, 0.0),
            sigma0: 2.0 * w + 1.0,
            koshliakov: None,
        };
        let got = phi_direct(&d, s + w).unwrap();
        let want = zeta_numeric(s + w).unwrap() * zeta_numeric(s - w).unwrap();
        prop_assert!((got - want).norm() <= 1e-10 * want.norm());
    }

    #[test]
    fn thermal_part_is_negative_and_increasing(
        coeffs in proptest::collection::vec(0.0f64..3.0, 1..5),
        lead in 0.1f64..3.0,
        beta in 0.2f64..8.0,
        step in 0.01f64..2.0,
    ) {
        let mut c = coeffs;
        c.push(lead);
        let spec = SpectrumSpec::polynomial("random", c).unwrap();
        let a = mode_sum_thermal(&spec, beta).unwrap();
        let b = mode_sum_thermal(&spec, beta + step).unwrap();
        prop_assert!(a < 0.0 && b < 0.0);
        prop_assert!(a < b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cocycle_relators_vanish(
        t in 2u32..=6,
        head in proptest::collection::vec(generator(), 0..4),
        tail in proptest::collection::vec(generator(), 0..4),
        rel in relator(),
    ) {
        let gens = CocycleGenerators::eisenstein(t).unwrap();
        let plain: Vec<_> = head.iter().chain(&tail).copied().collect();
        let padded: Vec<_> = head.iter().chain(&rel).chain(&tail).copied().collect();
        let a = cocycle_compose(&gens, &plain);
        let b = cocycle_compose(&gens, &padded);
        prop_assert!(a.identical(&b, 3 * t as usize));
    }

    #[test]
    fn cocycle_composition(
        t in 2u32..=6,
        first in proptest::collection::vec(generator(), 1..4),
        second in proptest::collection::vec(generator(), 1..4),
    ) {
        let gens = CocycleGenerators::eisenstein(t).unwrap();
        let whole: Vec<_> = first.iter().chain(&second).copied().collect();
        let g2 = modtherm::periodpoly::word_matrix(&second);
        let split = cocycle_compose(&gens, &first).stroke(&g2).add(&cocycle_compose(&gens, &second));
        prop_assert!(cocycle_compose(&gens, &whole).identical(&split, 3 * t as usize));
    }
}
