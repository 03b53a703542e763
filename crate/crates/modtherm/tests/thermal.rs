use std::f64::consts::PI;

use modtherm::thermal::*;
use modtherm::Error;

fn pt(xi: f64) -> ThermalPoint {
    ThermalPoint::new(xi).unwrap()
}

// -B_2t / 4t for t = 2, 3, 4
fn casimir(t: u32) -> f64 {
    match t {
        2 => 1.0 / 240.0,
        3 => -1.0 / 504.0,
        4 => 1.0 / 480.0,
        _ => unreachable!(),
    }
}

// sum_n n^(2t-2) sum_m q^(2mn) m^-k, summed as a plain double series
fn double_sum(t: u32, xi: f64, k: i32) -> f64 {
    let beta = 2.0 * PI / xi;
    let mut acc = 0.0;
    for n in 1..2000 {
        let nf = n as f64;
        for m in 1..2000 {
            let term = nf.powi(2 * t as i32 - 2) * (-(m as f64) * nf * beta).exp() * (m as f64).powi(-k);
            acc += term;
            if term < 1e-20 {
                break;
            }
        }
        if nf.powi(2 * t as i32) * (-nf * beta).exp() < 1e-20 {
            break;
        }
    }
    acc
}

// sum_n n^k sum_m q^(2mn)
fn double_sum_power(k: i32, xi: f64) -> f64 {
    let beta = 2.0 * PI / xi;
    let mut acc = 0.0;
    for n in 1..2000 {
        let nf = n as f64;
        let x = (-nf * beta).exp();
        acc += nf.powi(k) * x / (1.0 - x);
        if nf.powi(k) * x < 1e-20 {
            break;
        }
    }
    acc
}

#[test]
fn thermal_point() {
    let p = pt(2.0);
    assert_eq!(p.beta_scaled(), PI);
    assert_eq!(p.q(), (-PI / 2.0).exp());
    assert_eq!(p.q_prime(), (-2.0 * PI).exp());
    assert!(matches!(ThermalPoint::new(0.0), Err(Error::Domain(_))));
    assert!(matches!(ThermalPoint::new(-1.0), Err(Error::Domain(_))));
}

#[test]
fn partial_free_energy_is_the_mode_sum() {
    for t in 2..=4 {
        for xi in [0.4, 1.0, 2.5] {
            let beta = 2.0 * PI / xi;
            let mut logs = 0.0;
            for n in 1..400 {
                let nf = n as f64;
                logs += nf.powi(2 * t as i32 - 2) * (-(-nf * beta).exp()).ln_1p();
            }
            let want = casimir(t) + logs / beta;
            let got = free_energy_partial(t, &pt(xi)).unwrap();
            assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "t={t} xi={xi}");
        }
    }
}

#[test]
fn zero_temperature_limits() {
    assert!((free_energy_partial(2, &pt(0.05)).unwrap() - 1.0 / 240.0).abs() < 1e-15);
    assert!(entropy_partial(2, &pt(0.05)).unwrap().abs() < 1e-15);
    assert!(entropy_partial(3, &pt(0.05)).unwrap().abs() < 1e-15);
    assert!((f3_mode_sum(&pt(0.05)).unwrap() - 1.0 / 240.0).abs() < 1e-15);
}

#[test]
fn entropy_is_the_xi_derivative() {
    let h = 1e-5;
    for t in [2, 3] {
        for xi in [0.7, 1.4, 2.0] {
            let fd = (free_energy_partial(t, &pt(xi + h)).unwrap() - free_energy_partial(t, &pt(xi - h)).unwrap()) / (2.0 * h);
            let s = entropy_partial(t, &pt(xi)).unwrap();
            assert!((fd - s).abs() < 1e-7 * s.abs().max(1.0), "t={t} xi={xi}: {fd} vs {s}");
        }
    }
}

#[test]
fn entropy_matches_double_sum() {
    let xi = 1.5;
    let g = double_sum(2, xi, 1);
    // D acts on q^(2mn) as mn, which cancels the 1/m
    let dg = double_sum_power(3, xi);
    let want = -(g + 2.0 * PI / xi * dg) / (2.0 * PI);
    let got = entropy_partial(2, &pt(xi)).unwrap();
    assert!((got - want).abs() < 1e-10 * want.abs());
}

#[test]
fn three_sphere_routes_agree() {
    for xi in [0.3, 0.5, 0.8, 1.0, 1.7, 3.0, 5.0] {
        let a = f3_epstein(&pt(xi)).unwrap();
        let b = f3_mode_sum(&pt(xi)).unwrap();
        assert!((a - b).abs() < 1e-10 * b.abs().max(1.0), "xi={xi}: {a} vs {b}");
    }
}

#[test]
fn three_sphere_limits() {
    assert!((f3_epstein(&pt(0.2)).unwrap() - 1.0 / 240.0).abs() < 1e-12);
    let xi: f64 = 50.0;
    let lead = -xi.powi(4) / 720.0;
    let f = f3_epstein(&pt(xi)).unwrap();
    assert!(((f - lead) / lead).abs() < 0.01);
}

#[test]
fn three_sphere_matches_spectrum() {
    let s3 = SpectrumSpec::s3();
    for xi in [0.4, 1.0, 2.0, 4.0] {
        let a = mode_sum_free_energy(&s3, 2.0 * PI / xi).unwrap();
        let b = f3_mode_sum(&pt(xi)).unwrap();
        assert!((a - b).abs() < 1e-10 * b.abs().max(1.0));
        assert_eq!(free_energy_partial(2, &pt(xi)).unwrap(), b);
    }
}

#[test]
fn casimir_energies() {
    assert_eq!(SpectrumSpec::s3().zeta_m_at_minus_half().unwrap(), 1.0 / 120.0);
    let ones = SpectrumSpec::polynomial("ones", vec![1.0]).unwrap();
    assert!((ones.zeta_m_at_minus_half().unwrap() + 1.0 / 12.0).abs() < 1e-16);
    let linear = SpectrumSpec::polynomial("linear", vec![0.0, 1.0]).unwrap();
    assert_eq!(linear.zeta_m_at_minus_half().unwrap(), 0.0);
    let single = SpectrumSpec::modes("single", vec![1.0]).unwrap();
    assert_eq!(single.zeta_m_at_minus_half().unwrap(), 1.0);
}

#[test]
fn single_oscillator() {
    let single = SpectrumSpec::modes("single", vec![1.0]).unwrap();
    for beta in [0.5f64, 3.0, 10.0] {
        let want = 0.5 + (1.0 - (-beta).exp()).ln() / beta;
        assert!((mode_sum_free_energy(&single, beta).unwrap() - want).abs() < 1e-15);
    }
}

#[test]
fn thermal_zeta_route() {
    let single = SpectrumSpec::modes("single", vec![1.0]).unwrap();
    let a = thermal_zeta_free_energy(&single, 3.0).unwrap();
    let b = mode_sum_free_energy(&single, 3.0).unwrap();
    assert!((a - b).abs() < 1e-8);

    let s3 = SpectrumSpec::s3();
    for beta in [2.0 * PI, 0.7, 4.0] {
        let a = thermal_zeta_free_energy(&s3, beta).unwrap();
        let b = mode_sum_free_energy(&s3, beta).unwrap();
        assert!((a - b).abs() < 1e-8 * b.abs().max(1.0), "beta={beta}");
    }
    assert!((thermal_zeta_free_energy(&s3, 200.0).unwrap() - 1.0 / 240.0).abs() < 1e-15);

    let other = SpectrumSpec::polynomial("mixed", vec![2.0, 1.0, 0.0, 3.0]).unwrap();
    let a = thermal_zeta_free_energy(&other, 1.3).unwrap();
    let b = mode_sum_free_energy(&other, 1.3).unwrap();
    assert!((a - b).abs() < 1e-8 * b.abs().max(1.0));
}

#[test]
fn spectrum_validation() {
    assert!(matches!(SpectrumSpec::polynomial("bad", vec![-5.0, 0.0, 1.0]), Err(Error::Domain(_))));
    assert!(matches!(SpectrumSpec::polynomial("bad", vec![0.0, 0.0, -1.0]), Err(Error::Domain(_))));
    assert!(matches!(SpectrumSpec::polynomial("deep", vec![1.0; 8]), Err(Error::Domain(_))));
    assert!(matches!(SpectrumSpec::modes("bad", vec![1.0, -1.0]), Err(Error::Domain(_))));
    // positive at every integer though negative in between
    assert!(SpectrumSpec::polynomial("ok", vec![2.25, -3.0, 1.0]).is_ok());
    let s3 = SpectrumSpec::s3();
    assert!(matches!(mode_sum_free_energy(&s3, 0.0), Err(Error::Domain(_))));
    assert!(matches!(thermal_zeta_free_energy(&s3, -1.0), Err(Error::Domain(_))));
}

#[test]
fn spectrum_json() {
    let s = SpectrumSpec::from_json(r#"{"label": "S3", "omega": "n", "degeneracy_coeffs": [0, 0, 1]}"#).unwrap();
    assert_eq!(s.degeneracy(3), 9.0);
    assert_eq!(s.zeta_m_at_minus_half().unwrap(), 1.0 / 120.0);
    let s = SpectrumSpec::from_json(r#"{"label": "two", "degeneracies": [1, 2]}"#).unwrap();
    assert_eq!((s.degeneracy(2), s.degeneracy(3)), (2.0, 0.0));
    assert!(matches!(
        SpectrumSpec::from_json(r#"{"label": "x", "omega": "n^2", "degeneracy_coeffs": [1]}"#),
        Err(Error::Unsupported(_))
    ));
    assert!(matches!(SpectrumSpec::from_json("{"), Err(Error::Parse(_))));
    let back = serde_json::to_string(&SpectrumSpec::s3()).unwrap();
    assert_eq!(SpectrumSpec::from_json(&back).unwrap(), SpectrumSpec::s3());
}
