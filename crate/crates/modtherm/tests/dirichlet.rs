use std::f64::consts::PI;

use modtherm::dirichlet::*;
use modtherm::exactnum::{hurwitz_zeta, zeta_numeric, zeta_real};
use modtherm::{Complex64, Error};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn real(s: f64) -> Complex64 {
    Complex64::new(s, 0.0)
}

fn sigma_datum(k: f64) -> DirichletDatum {
    let series = Series {
        coefficients: Coefficients::Sigma {
            k,
            power: 0.0,
            scale: 1.0,
        },
        spectrum: Spectrum::Linear { scale: 1.0 },
    };
    DirichletDatum {
        phi: series.clone(),
        psi: series,
        delta: 0.0,
        residues: vec![],
        zero_modes: (0.0, 0.0),
        sigma0: k + 1.0,
        koshliakov: None,
    }
}

fn dirichlet_beta(s: f64) -> f64 {
    4f64.powf(-s) * (hurwitz_zeta(s, 0.25) - hurwitz_zeta(s, 0.75))
}

// sum_n c(s + k) (n + w^2)^-s expanded in powers of w^2 / n, given the
// Dirichlet series c(s) = sum a_n n^-s; valid for w < 1
fn binomial_oracle(c: impl Fn(f64) -> f64, s: f64, w: f64) -> f64 {
    let mut coef = 1.0;
    let mut acc = 0.0;
    for k in 0..400 {
        let term = coef * w.powi(2 * k) * c(s + k as f64);
        acc += term;
        coef *= (-s - k as f64) / (k as f64 + 1.0);
    }
    acc
}

// tau(n) for n = 1..=n from q prod (1 - q^m)^24
fn ramanujan_tau(n: usize) -> Vec<f64> {
    let mut poly = vec![0.0; n];
    poly[0] = 1.0;
    for m in 1..n {
        for _ in 0..24 {
            for i in (m..n).rev() {
                poly[i] -= poly[i - m];
            }
        }
    }
    poly
}

#[test]
fn phi_direct_divisor_series() {
    let d = DirichletDatum::eisenstein(2).unwrap();
    let v = phi_direct(&d, real(6.0)).unwrap();
    assert!(rel(v.re, zeta_real(6.0) * zeta_real(3.0)) < 1e-11);
    assert_eq!(v.im, 0.0);

    let v = phi_direct(&sigma_datum(2.0), real(4.0)).unwrap();
    assert!(rel(v.re, PI.powi(4) / 90.0 * PI * PI / 6.0) < 1e-11);

    let s = Complex64::new(7.5, 2.0);
    let v = phi_direct(&sigma_datum(3.0), s).unwrap();
    let want = zeta_numeric(s).unwrap() * zeta_numeric(s - 3.0).unwrap();
    assert!((v - want).norm() / want.norm() < 1e-11);
}

#[test]
fn phi_direct_single_term() {
    let mut d = sigma_datum(1.0);
    d.sigma0 = f64::NEG_INFINITY;
    d.phi = Series {
        coefficients: Coefficients::Table {
            values: vec![1.0, 0.0, 0.0],
        },
        spectrum: Spectrum::Table {
            values: vec![2.5, 3.0, 4.0],
        },
    };
    let s = Complex64::new(1.5, -0.5);
    assert_eq!(phi_direct(&d, s).unwrap(), (-s * 2.5f64.ln()).exp());
}

#[test]
fn phi_direct_domain() {
    let d = DirichletDatum::eisenstein(2).unwrap();
    assert!(matches!(phi_direct(&d, real(3.5)), Err(Error::Domain(_))));
}

#[test]
fn residual_function() {
    let mut d = DirichletDatum::theta();
    assert_eq!(residual_b(&d, 3.0), Complex64::new(0.0, 0.0));
    d.residues.push(Residue {
        at: real(1.0),
        residue: real(2.0),
    });
    assert_eq!(residual_b(&d, 2.0), real(1.0));
}

#[test]
fn eisenstein_modular_relation() {
    for t in 2..=5 {
        let d = DirichletDatum::eisenstein(t).unwrap();
        for beta in [1.0, 2.0 * PI, 0.8, 3.0, 12.0] {
            // t >= 4 kernels reach 1e6 at beta < 1
            let scale = if t <= 3 { 1.0 } else { d.heat_kernels().phi(beta).unwrap().abs().max(1.0) };
            assert!(modular_relation_gap(&d, beta).unwrap() < 1e-10 * scale, "t={t} beta={beta}");
        }
        assert!(koshliakov_gap(&d, 1.0).unwrap() < 1e-10);
        assert!(koshliakov_gap(&d, 0.6).unwrap() < 1e-10);
    }
}

#[test]
fn weight_six_vanishes_at_self_dual_point() {
    let d = DirichletDatum::eisenstein(3).unwrap();
    assert!(d.heat_kernels().phi(2.0 * PI).unwrap().abs() < 1e-10);
    // and not at a generic point
    assert!(d.heat_kernels().phi(5.0).unwrap().abs() > 1e-4);
}

#[test]
fn theta_inversion() {
    let d = DirichletDatum::theta();
    let beta = 0.7;
    let theta: f64 = (-40i32..=40).map(|n| (-PI * (n * n) as f64 * beta).exp()).sum();
    assert!(rel(d.heat_kernels().phi(beta).unwrap(), theta / 2.0) < 1e-14);
    assert!(modular_relation_gap(&d, beta).unwrap() < 1e-10);
    assert!(modular_relation_gap(&d, 0.05).unwrap() < 1e-10);
}

#[test]
fn diagonal_epstein_inversion() {
    for p in 1..=4 {
        let d = DirichletDatum::diagonal_epstein(p).unwrap();
        for beta in [0.3, 1.0, PI, 7.0] {
            assert!(modular_relation_gap(&d, beta).unwrap() < 1e-10, "p={p} beta={beta}");
        }
    }
}

#[test]
fn broken_relation_is_detected() {
    let mut d = DirichletDatum::theta();
    d.zero_modes.1 = 0.3;
    assert!(modular_relation_gap(&d, 0.7).unwrap() > 0.1);
}

#[test]
fn swap_reciprocity() {
    let mut d = DirichletDatum::theta();
    d.zero_modes = (0.5, 0.3);
    d.residues.push(Residue {
        at: real(0.25),
        residue: real(0.1),
    });
    let e = DirichletDatum::eisenstein(2).unwrap();
    for d in [d, e] {
        let swapped = d.swap();
        for beta in [0.4, 1.0, 2.5] {
            let lhs = modular_relation_residual(&swapped, 1.0 / beta).unwrap();
            let rhs = -beta.powf(d.delta) * modular_relation_residual(&d, beta).unwrap();
            assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
        }
        assert!(
            (modular_relation_gap(&swapped, 0.9).unwrap() - 0.9f64.powf(-d.delta) * modular_relation_gap(&d, 1.0 / 0.9).unwrap())
                .abs()
                < 1e-10
        );
    }
}

#[test]
fn berndt_one_dimensional() {
    let d = DirichletDatum::diagonal_epstein(1).unwrap();
    let v = berndt_phi(&d, 1.0, 1.0).unwrap();
    assert!(rel(v, PI / PI.tanh() - 1.0) < 1e-10);
}

#[test]
fn berndt_matches_binomial_oracles() {
    let z2 = |s: f64| 2.0 * zeta_real(2.0 * s);
    let r2 = |s: f64| 4.0 * zeta_real(s) * dirichlet_beta(s);
    let s3 = |s: f64| zeta_real(s) * zeta_real(s - 3.0);
    let cases: [(DirichletDatum, &dyn Fn(f64) -> f64, [(f64, f64); 3]); 3] = [
        (
            DirichletDatum::diagonal_epstein(1).unwrap(),
            &z2,
            [(1.0, 0.5), (1.5, 0.3), (2.5, 0.7)],
        ),
        (
            DirichletDatum::diagonal_epstein(2).unwrap(),
            &r2,
            [(1.5, 0.5), (2.0, 0.3), (3.25, 0.8)],
        ),
        (
            DirichletDatum::eisenstein(2).unwrap(),
            &s3,
            [(5.0, 0.5), (5.5, 0.3), (6.0, 0.7)],
        ),
    ];
    for (d, c, points) in cases {
        for (s, w) in points {
            // the lattice data count (m^2 + w^2), i.e. n + w^2 with n = |m|^2
            let want = binomial_oracle(c, s, w);
            let got = berndt_phi(&d, s, w).unwrap();
            assert!(rel(got, want) < 1e-9, "s={s} w={w}: {got} vs {want}");
        }
    }
}

#[test]
fn berndt_large_mass() {
    for d in [
        DirichletDatum::diagonal_epstein(1).unwrap(),
        DirichletDatum::diagonal_epstein(3).unwrap(),
        DirichletDatum::eisenstein(2).unwrap(),
    ] {
        let (s, w) = (d.delta + 1.3, 20.0);
        let r = residual_r(&d, s, w).unwrap() / modtherm::exactnum::gamma_real(s);
        let v = berndt_phi(&d, s, w).unwrap();
        assert!(rel(v, r) < 1e-10);
        assert!((v - r).abs() < 1e-12);
    }
}

#[test]
fn berndt_pole_at_delta() {
    let d = DirichletDatum::diagonal_epstein(2).unwrap();
    for h in [1e-3, 1e-5, 1e-7] {
        let v = h * berndt_phi(&d, 1.0 + h, 0.8).unwrap();
        assert!(v.abs() < 4.0);
        if h <= 1e-7 {
            assert!((v - PI).abs() < 1e-6);
        }
    }
    assert!(matches!(berndt_phi(&d, 1.0, 0.8), Err(Error::Singularity(_))));
    assert!(matches!(berndt_phi(&d, 0.0, 0.8), Err(Error::Singularity(_))));
}

#[test]
fn continuation_matches_zeta_product() {
    let d = DirichletDatum::eisenstein(2).unwrap();
    let direct = phi_direct(&d, real(6.0)).unwrap().re;
    assert!(rel(phi_continued(&d, real(6.0)).unwrap().re, direct) < 1e-11);
    for s in [2.5, 0.5, -1.5] {
        let want = zeta_real(s) * zeta_real(s - 3.0);
        assert!(rel(phi_continued(&d, real(s)).unwrap().re, want) < 1e-10, "s={s}");
    }
    let s = Complex64::new(2.0, 1.0);
    let want = zeta_numeric(s).unwrap() * zeta_numeric(s - 3.0).unwrap();
    assert!((phi_continued(&d, s).unwrap() - want).norm() / want.norm() < 1e-10);
}

#[test]
fn pole_residues() {
    let r = pole_residue(&DirichletDatum::eisenstein(2).unwrap()).unwrap();
    assert_eq!(r.location, 4.0);
    assert!(rel(r.numeric, PI.powi(4) / 90.0) < 1e-8);
    assert!(rel(r.closed_form, PI.powi(4) / 90.0) < 1e-12);

    let r = pole_residue(&DirichletDatum::eisenstein(3).unwrap()).unwrap();
    assert!(rel(r.numeric, PI.powi(6) / 945.0) < 1e-8);
    assert!(rel(r.closed_form, PI.powi(6) / 945.0) < 1e-12);
}

#[test]
fn cusp_form_has_no_pole() {
    let tau = ramanujan_tau(80);
    assert_eq!(&tau[..6], &[1.0, -24.0, 252.0, -1472.0, 4830.0, -6048.0]);
    let coefficients = Coefficients::Table { values: tau };
    let k = Koshliakov {
        a: 1.0,
        b: 2.0 * PI,
        nu: 12.0,
        psi0: 0.0,
    };
    let d = DirichletDatum::from_koshliakov(coefficients.clone(), coefficients, k, 0.0, 6.5).unwrap();
    assert!(koshliakov_gap(&d, 1.0).unwrap() < 1e-12);
    let r = pole_residue(&d).unwrap();
    assert_eq!(r.closed_form, 0.0);
    assert!(r.numeric.abs() < 1e-8);
}

#[test]
fn pole_residue_needs_constants() {
    assert!(matches!(pole_residue(&DirichletDatum::theta()), Err(Error::Domain(_))));
}

#[test]
fn json_loading() {
    let d = DirichletDatum::from_json(r#"{"kind": "eisenstein", "t": 2}"#).unwrap();
    assert_eq!(d, DirichletDatum::eisenstein(2).unwrap());
    let d = DirichletDatum::from_json(r#"{"kind": "diagonal_epstein", "p": 3}"#).unwrap();
    assert_eq!(d.delta, 1.5);
    assert_eq!(DirichletDatum::from_json(r#"{"kind": "theta"}"#).unwrap(), DirichletDatum::theta());

    let custom = r#"{
        "kind": "custom",
        "phi": {"coefficients": {"type": "table", "values": [1, 2]},
                "spectrum": {"type": "table", "values": [1, 3]}},
        "psi": {"coefficients": {"type": "constant", "value": 1},
                "spectrum": {"type": "squares", "scale": 3.14}},
        "delta": 0.5,
        "zero_modes": [0.5, 0.5],
        "residues": [{"at": [1, 0], "residue": [2, 0]}]
    }"#;
    let d = DirichletDatum::from_json(custom).unwrap();
    assert_eq!(residual_b(&d, 2.0), real(1.0));
    let v = phi_direct(&d, real(2.0)).unwrap().re;
    assert!(rel(v, 1.0 + 2.0 / 9.0) < 1e-15);

    let bad = custom.replace("[1, 3]", "[3, 1]");
    assert!(matches!(DirichletDatum::from_json(&bad), Err(Error::Domain(_))));
    assert!(matches!(DirichletDatum::from_json("{\"kind\": \"nope\"}"), Err(Error::Parse(_))));
}

#[test]
fn berndt_matches_brute_force() {
    let (s, w2) = (5.0, 0.25);
    let n = 200_000;
    let sigma = modtherm::exactnum::sigma_table(3.0, n);
    let head: f64 = (1..=n).rev().map(|m| sigma[m] * (m as f64 + w2).powf(-s)).sum();
    // sigma_3 has mean order zeta(4) n^3
    let tail = zeta_real(4.0) * (n as f64).powf(4.0 - s) / (s - 4.0);
    let d = DirichletDatum::eisenstein(2).unwrap();
    assert!(rel(berndt_phi(&d, s, w2.sqrt()).unwrap(), head + tail) < 1e-10);
}
