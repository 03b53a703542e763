//! `modtherm verify <suite>`: the module invariants as pass/fail checks.

use std::f64::consts::PI;

use modtherm::dirichlet::{koshliakov_gap, modular_relation_gap, pole_residue, DirichletDatum};
use modtherm::epstein::{
    divisor_bessel_sum, functional_equation_residual, guinand_gap, guinand_gap_derivative, derivative_form_sum, z2_direct, z2_kober, z2_quartic,
    z2_quartic_forms, zp_massive, BinaryForm, LatticeSumConfig,
};
use modtherm::exactnum::{gamma_real, rat, rat_to_f64, zeta_even_exact, zeta_odd_constant};
use modtherm::periodpoly::{
    bol_check, cocycle_compose, eichler_shimura_report, monomial_tau, p_s, p_t, pbar, rbar, word_matrix, CSym,
    CocycleGenerators, Generator, GroupElement, RationalPeriodFunction,
};
use modtherm::qseries::{eps, eps_sub, lambert_s, mellin_eps_sub, moment, phi_bar, psi_bar, HalfPlanePoint};
use modtherm::quad::{integrate, integrate_to_inf};
use modtherm::thermal::{
    entropy_partial, f3_epstein, f3_mode_sum, free_energy_partial, mode_sum_free_energy, thermal_zeta_free_energy,
    SpectrumSpec, ThermalPoint,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::{lerch_exact, odd_moment_exact};
use crate::output::{Node, Obj};
use crate::{CliError, CliResult};

pub const SUITES: &[&str] = &[
    "inversion",
    "cocycle",
    "eichler-shimura",
    "bol",
    "moments",
    "kober",
    "massive",
    "guinand",
    "dirichlet",
    "thermal",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub check: String,
    /// `None` when the computation itself failed.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub error: Option<String>,
}

impl Check {
    pub fn to_node(&self) -> Node {
        Obj::new()
            .with("suite", self.suite)
            .with("check", self.check.as_str())
            .with("residual", self.residual)
            .with("tolerance", self.tolerance)
            .with("pass", self.pass)
            .with("error", self.error.clone())
            .into()
    }
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checks: Vec::new() }
    }

    /// Record `|residual| <= tol`.
    fn numeric(&mut self, check: impl Into<String>, tol: f64, residual: modtherm::Result<f64>) {
        let (residual, error) = match residual {
            Ok(r) => (Some(r.abs()), None),
            Err(e) => (None, Some(e.to_string())),
        };
        self.checks.push(Check {
            suite: self.name,
            check: check.into(),
            pass: residual.is_some_and(|r| r <= tol),
            residual,
            tolerance: tol,
            error,
        });
    }

    /// Record an exact identity; the residual is 0 or 1.
    fn exact(&mut self, check: impl Into<String>, holds: modtherm::Result<bool>) {
        self.numeric(check, 0.0, holds.map(|h| if h { 0.0 } else { 1.0 }));
    }
}

fn real_pt(b: f64) -> modtherm::Result<HalfPlanePoint> {
    HalfPlanePoint::real(b)
}

fn sign(k: u32) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn inversion() -> Suite {
    let mut s = Suite::new("inversion");
    let points = [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.3, 0.0),
        Complex64::new(0.8, 0.45),
        Complex64::new(1.1, -0.6),
    ];
    for t in 2..=5u32 {
        for b in points {
            s.numeric(format!("eps_t(1/b) = (-1)^t b^2t eps_t(b), t={t} b={b}"), 1e-10, (|| {
                let lhs = eps(t, &HalfPlanePoint::new(1.0 / b)?)?.value;
                let rhs = sign(t) * b.powi(2 * t as i32) * eps(t, &HalfPlanePoint::new(b)?)?.value;
                Ok((lhs - rhs).norm() / rhs.norm().max(1.0))
            })());
        }
        for b in [0.3, 0.7, 1.9] {
            s.numeric(format!("eps_sub inversion, t={t} b={b}"), 1e-10, (|| {
                let lhs = eps_sub(t, &real_pt(1.0 / b)?)?.value.re;
                let rhs = sign(t) * b.powi(2 * t as i32) * eps_sub(t, &real_pt(b)?)?.value.re;
                Ok(lhs - rhs)
            })());
        }
    }
    let (p, shifted) = (Complex64::new(0.6, 0.2), Complex64::new(0.6, -0.8));
    for t in 2..=4u32 {
        s.numeric(format!("eps_t(b - i) = eps_t(b), t={t}"), 1e-10, (|| {
            Ok((eps(t, &HalfPlanePoint::new(shifted)?)?.value - eps(t, &HalfPlanePoint::new(p)?)?.value).norm())
        })());
    }

    // phi(tau) = -i phi_bar(-i tau)
    let phi = |t: u32, tau: Complex64| -> modtherm::Result<Complex64> {
        Ok(-Complex64::i() * phi_bar(t, &HalfPlanePoint::new(-Complex64::i() * tau)?)?.value)
    };
    for t in 2..=4u32 {
        let tau = Complex64::new(0.3, 0.8);
        s.numeric(format!("phi(tau + 1) - phi(tau) = P(T), t={t}"), 1e-10, (|| {
            Ok((phi(t, tau + 1.0)? - phi(t, tau)? - p_t(t)?.eval(tau)).norm())
        })());
        let tau = Complex64::new(0.2, 1.1);
        s.numeric(format!("tau^(2t-2) phi(-1/tau) - phi(tau) = P(S), t={t}"), 1e-10, (|| {
            Ok((tau.powi(2 * t as i32 - 2) * phi(t, -1.0 / tau)? - phi(t, tau)? - p_s(t)?.eval(tau)).norm())
        })());
    }
    for (t, x) in [(2u32, 0.9), (3, 1.2), (4, 0.7), (5, 1.5)] {
        s.numeric(format!("phi_bar inversion gap = Pbar_t(x), t={t} x={x}"), 1e-10, (|| {
            let st = -sign(t);
            let gap = phi_bar(t, &real_pt(x)?)?.value.re
                - st * x.powi(2 * t as i32 - 2) * phi_bar(t, &real_pt(1.0 / x)?)?.value.re;
            Ok(gap - pbar(t)?.eval(x))
        })());
    }
    for (t, x) in [(2u32, 1.3), (3, 1.4), (4, 0.8), (5, 0.6)] {
        s.numeric(format!("psi_bar inversion gap = Rbar_t(x), t={t} x={x}"), 1e-10, (|| {
            let gap = psi_bar(t, &real_pt(x)?)?.value.re
                - sign(t - 1) * x.powi(2 * t as i32 - 2) * psi_bar(t, &real_pt(1.0 / x)?)?.value.re;
            Ok(gap - rbar(t)?.eval(x))
        })());
    }

    s.numeric("psi_bar_2(1) = 7 pi^4/90 - 2 pi zeta(3)", 1e-11, (|| {
        Ok(psi_bar(2, &real_pt(1.0)?)?.value.re - (7.0 * PI.powi(4) / 90.0 - 2.0 * PI * zeta_odd_constant(3)))
    })());
    for t in [2u32, 4] {
        s.numeric(format!("Lerch value of S_t(i), t={t}"), 1e-10, (|| {
            let exact = lerch_exact(t).map_err(|e| modtherm::Error::Domain(e.to_string()))?;
            Ok(lambert_s(t, &real_pt(1.0)?)?.value.re - exact.to_f64())
        })());
    }

    for t in 2..=4u32 {
        for b in [0.5, 0.8, 1.0, 1.5, 2.0] {
            s.numeric(format!("eps_sub = contour integral, t={t} b={b}"), 1e-8, (|| {
                Ok(eps_sub(t, &real_pt(b)?)?.value.re - mellin_eps_sub(t, b)?.value.re)
            })());
        }
    }
    s
}

fn generator_word(rng: &mut ChaCha8Rng) -> Vec<Generator> {
    let len = rng.gen_range(1..5);
    (0..len)
        .map(|_| match rng.gen_range(0..3) {
            0 => Generator::S,
            1 => Generator::T,
            _ => Generator::TInv,
        })
        .collect()
}

fn cocycle() -> Suite {
    let mut s = Suite::new("cocycle");
    for t in 2..=8u32 {
        s.exact(format!("Pbar_t + Pbar_t|S = 0, t={t}"), (|| {
            let p = pbar(t)?;
            Ok(p.add(&p.invert()).is_zero())
        })());
    }
    for t in 2..=6u32 {
        s.exact(format!("P(S)|S = -P(S), t={t}"), (|| {
            let p = p_s(t)?;
            Ok(p.stroke(&GroupElement::s()) == p.neg())
        })());
        s.exact(format!("Rbar_t|(1 + S) = 0, t={t}"), (|| {
            let r = rbar(t)?.to_tau();
            Ok(r.add(&r.stroke(&GroupElement::s())).is_zero())
        })());
        s.exact(format!("cocycle law on 50 random words, t={t}"), (|| {
            let gens = CocycleGenerators::eisenstein(t)?;
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + t as u64);
            for _ in 0..50 {
                let first = generator_word(&mut rng);
                let second = generator_word(&mut rng);
                let whole: Vec<_> = first.iter().chain(&second).copied().collect();
                let split = cocycle_compose(&gens, &first)
                    .stroke(&word_matrix(&second))
                    .add(&cocycle_compose(&gens, &second));
                if !cocycle_compose(&gens, &whole).identical(&split, 3 * t as usize) {
                    return Ok(false);
                }
            }
            Ok(true)
        })());
        s.exact(format!("P(TS) = 2 zeta(2t) tau^2t/(1 - tau) + P(S), t={t}"), (|| {
            let gens = CocycleGenerators::eisenstein(t)?;
            let two_z = CSym::real(zeta_even_exact(2 * t)?.scale(&rat(2, 1)));
            let mut num = vec![CSym::zero(); 2 * t as usize + 1];
            num[2 * t as usize] = -&two_z;
            let want = RationalPeriodFunction::from_factors(num, &[(1, -1, 1)], (2 * t - 2) as i64).add(&gens.s);
            Ok(cocycle_compose(&gens, &[Generator::T, Generator::S]).identical(&want, 3 * t as usize))
        })());
        s.exact(format!("P(ST) = P(T) + P(S)|T, t={t}"), (|| {
            let gens = CocycleGenerators::eisenstein(t)?;
            let want = gens.t.add(&gens.s.stroke(&GroupElement::t()));
            Ok(cocycle_compose(&gens, &[Generator::S, Generator::T]).identical(&want, 3 * t as usize))
        })());
        s.exact(format!("P(g g^-1) = 0, t={t}"), (|| {
            let gens = CocycleGenerators::eisenstein(t)?;
            Ok([Generator::S, Generator::T, Generator::TInv]
                .iter()
                .all(|g| cocycle_compose(&gens, &[*g, g.inverse()]).is_zero()))
        })());
    }
    s
}

fn eichler_shimura() -> Suite {
    let mut s = Suite::new("eichler-shimura");
    for t in 2..=6u32 {
        s.exact(format!("both relations with the Eisenstein P(T), t={t}"), (|| {
            Ok(eichler_shimura_report(&p_s(t)?, false)?.holds())
        })());
        s.exact(format!("P(T) = 0 keeps P(S)|(1 + S) = 0 but breaks the order-3 relation, t={t}"), (|| {
            let r = eichler_shimura_report(&p_s(t)?, true)?;
            Ok(r.inversion && !r.order_three)
        })());
    }
    s
}

fn bol() -> Suite {
    let mut s = Suite::new("bol");
    let ts = &GroupElement::t() * &GroupElement::s();
    for r in [0u32, 1, 2, 4, 6] {
        for (name, g) in [("S", GroupElement::s()), ("T", GroupElement::t()), ("TS", ts.clone())] {
            s.exact(format!("Bol identity for tau^k, k <= r + 4, r={r} g={name}"), Ok((0..=(r + 4) as usize)
                .all(|k| bol_check(&monomial_tau(k), &g, r))));
        }
    }
    s
}

fn moments() -> Suite {
    let mut s = Suite::new("moments");
    s.numeric("zeta(3) = -(2 pi)^3 int b^2 eps_2^sub db", 1e-9, (|| {
        Ok(-(2.0 * PI).powi(3) * moment(2, 2)? - zeta_odd_constant(3))
    })());
    for t in 2..=6u32 {
        for j in 1..t {
            s.numeric(format!("odd moment k={}, t={t}", 2 * j - 1), 1e-9, (|| {
                Ok(moment(t, 2 * j - 1)? - rat_to_f64(&odd_moment_exact(t, j)))
            })());
        }
        s.numeric(format!("moment symmetry k <-> 2t-2-k, t={t}"), 1e-12, (|| {
            Ok(moment(t, 2 * t - 2)? - sign(t) * moment(t, 0)?)
        })());
    }
    s
}

fn form(a: f64, b: f64, c: f64) -> BinaryForm {
    BinaryForm::new(a, b, c).expect("positive definite")
}

fn kober() -> Suite {
    let mut s = Suite::new("kober");
    let cfg = LatticeSumConfig::default();
    let forms = [form(1.0, 0.0, 1.0), form(2.0, 1.0, 3.0), form(1.0, 0.3, 0.7)];
    for (f, w) in forms.iter().zip([1.0, 1.25, 0.8]) {
        s.numeric(format!("Kober expansion = lattice sum, form ({},{},{}) w={w}", f.a, f.b, f.c), 1e-9, (|| {
            Ok(z2_kober(f, w, 1e-13)? - z2_direct(f, w + 0.5, &cfg)?)
        })());
    }
    for f in &forms {
        for sv in [0.75, 1.6] {
            s.numeric(format!("functional equation, form ({},{},{}) s={sv}", f.a, f.b, f.c), 1e-9, functional_equation_residual(f, sv, 1e-12));
        }
    }
    for xi in [0.3, 0.9, 2.0, 4.5] {
        s.numeric(format!("quartic q and q' expansions agree, xi={xi}"), 1e-11, (|| {
            let f = z2_quartic_forms(xi)?;
            Ok(rel(f.high, f.low))
        })());
        s.numeric(format!("quartic expansion = lattice sum, xi={xi}"), 1e-10, (|| {
            Ok(rel(z2_quartic(xi)?, z2_direct(&form(1.0, 0.0, xi * xi), 2.0, &cfg)?))
        })());
    }
    s
}

/// `sum'_{m in Z^p} (|m|^2 + w^2)^-s` from the heat kernel of the `p`-torus.
fn massive_heat_kernel(p: i32, s: f64, w: f64) -> modtherm::Result<f64> {
    let theta = |t: f64| -> f64 {
        let mut acc = 1.0;
        if t < 1.0 {
            for n in 1..30 {
                acc += 2.0 * (-PI * PI * (n * n) as f64 / t).exp();
            }
            (PI / t).sqrt() * acc
        } else {
            for n in 1..30 {
                acc += 2.0 * (-((n * n) as f64) * t).exp();
            }
            acc
        }
    };
    let f = |t: f64| t.powf(s - 1.0) * (-w * w * t).exp() * (theta(t).powi(p) - 1.0);
    let head = integrate(f, 0.0, 1.0, 0.0, 1e-14)?.value;
    let tail = integrate_to_inf(f, 1.0, 0.0, 1e-14)?.value;
    Ok((head + tail) / gamma_real(s))
}

fn massive() -> Suite {
    let mut s = Suite::new("massive");
    s.numeric("p=1 s=1 w=1 equals pi coth pi - 1", 1e-11, (|| {
        Ok(rel(zp_massive(1, 1.0, 1.0, 1e-14)?, PI / PI.tanh() - 1.0))
    })());
    let w = 0.37;
    s.numeric(format!("p=1 s=1 equals (pi/w) coth(pi w) - 1/w^2, w={w}"), 1e-11, (|| {
        Ok(rel(zp_massive(1, 1.0, w, 1e-14)?, PI / w / (PI * w).tanh() - 1.0 / (w * w)))
    })());
    for (p, sv, w) in [(1, 1.3, 0.6), (2, 2.0, 0.8), (3, 2.5, 0.7), (3, 3.0, 1.2)] {
        s.numeric(format!("Bessel route = heat-kernel sum, p={p} s={sv} w={w}"), 1e-9, (|| {
            Ok(zp_massive(p as u32, sv, w, 1e-14)? - massive_heat_kernel(p, sv, w)?)
        })());
    }
    s
}

fn guinand() -> Suite {
    let mut s = Suite::new("guinand");
    for (w, u) in [(1.3, 1.0), (1.5, 2.0), (0.3, 0.7), (1.1, 1.4), (2.5, 0.6)] {
        s.numeric(format!("Guinand relation residual, w={w} u={u}"), 1e-10, guinand_gap(w, u));
    }
    for t in 1..=4u32 {
        for u in [0.6, 1.5] {
            s.numeric(format!("derivative form = Bessel form, t={t} u={u}"), 1e-9, (|| {
                let direct = divisor_bessel_sum(t as f64 - 0.5, u, 0.0, 1e-16)?.value;
                Ok(rel(derivative_form_sum(t, u)?, direct))
            })());
        }
    }
    for (t, u) in [(2u32, 1.5), (3, 0.8)] {
        s.numeric(format!("Guinand relation through the derivative form, t={t} u={u}"), 1e-9, guinand_gap_derivative(t, u));
    }
    s
}

fn dirichlet() -> Suite {
    let mut s = Suite::new("dirichlet");
    for t in [2u32, 3] {
        for beta in [1.0, 2.0 * PI, 0.8, 3.0, 12.0] {
            s.numeric(format!("modular relation, Eisenstein t={t} beta={beta}"), 1e-10, (|| {
                modular_relation_gap(&DirichletDatum::eisenstein(t)?, beta)
            })());
        }
        for rho in [1.0, 0.6] {
            s.numeric(format!("Koshliakov form, Eisenstein t={t} rho={rho}"), 1e-10, (|| {
                koshliakov_gap(&DirichletDatum::eisenstein(t)?, rho)
            })());
        }
    }
    for beta in [0.05, 0.7, 1.0, 2.5] {
        s.numeric(format!("modular relation, theta beta={beta}"), 1e-10, modular_relation_gap(&DirichletDatum::theta(), beta));
    }
    for p in 1..=3u32 {
        s.numeric(format!("modular relation, diagonal Epstein p={p} beta=0.9"), 1e-10, (|| {
            modular_relation_gap(&DirichletDatum::diagonal_epstein(p)?, 0.9)
        })());
    }
    s.numeric("weight 6 kernel vanishes at the self-dual point", 1e-10, (|| {
        DirichletDatum::eisenstein(3)?.heat_kernels().phi(2.0 * PI)
    })());
    for (t, want) in [(2u32, PI.powi(4) / 90.0), (3, PI.powi(6) / 945.0)] {
        s.numeric(format!("pole residue numeric = closed form, t={t}"), 1e-8, (|| {
            let r = pole_residue(&DirichletDatum::eisenstein(t)?)?;
            Ok(rel(r.numeric, r.closed_form))
        })());
        s.numeric(format!("pole residue = zeta(2t), t={t}"), 1e-12, (|| {
            Ok(rel(pole_residue(&DirichletDatum::eisenstein(t)?)?.closed_form, want))
        })());
    }
    s
}

fn thermal() -> Suite {
    let mut s = Suite::new("thermal");
    let pt = ThermalPoint::new;
    for xi in [0.3, 0.5, 0.8, 1.0, 1.7, 3.0, 5.0] {
        s.numeric(format!("f3 Epstein route = mode-sum route, xi={xi}"), 1e-10, (|| {
            Ok(f3_epstein(&pt(xi)?)? - f3_mode_sum(&pt(xi)?)?)
        })());
    }
    s.numeric("f3 -> 1/240 as xi -> 0", 1e-10, (|| Ok(f3_epstein(&pt(0.2)?)? - 1.0 / 240.0))());
    s.numeric("f3 ~ -xi^4/720 at xi = 50 (relative)", 1e-2, (|| {
        let xi: f64 = 50.0;
        Ok(rel(f3_epstein(&pt(xi)?)?, -xi.powi(4) / 720.0))
    })());
    for t in [2u32, 3] {
        for xi in [0.7, 1.4] {
            s.numeric(format!("s_t = df_t/dxi by central differences, t={t} xi={xi}"), 1e-7, (|| {
                let h = 1e-5;
                let fd = (free_energy_partial(t, &pt(xi + h)?)? - free_energy_partial(t, &pt(xi - h)?)?) / (2.0 * h);
                let e = entropy_partial(t, &pt(xi)?)?;
                Ok((fd - e) / e.abs().max(1.0))
            })());
        }
    }
    let s3 = SpectrumSpec::s3();
    for xi in [0.4, 1.0, 2.0, 4.0] {
        s.numeric(format!("S3 mode sum at beta = 2 pi/xi = f3, xi={xi}"), 1e-10, (|| {
            Ok(mode_sum_free_energy(&s3, 2.0 * PI / xi)? - f3_mode_sum(&pt(xi)?)?)
        })());
    }
    let single = SpectrumSpec::modes("single", vec![1.0]);
    let mixed = SpectrumSpec::polynomial("mixed", vec![2.0, 1.0, 0.0, 3.0]);
    let cases: Vec<(&str, modtherm::Result<SpectrumSpec>, f64)> = vec![
        ("S3", Ok(s3.clone()), 2.0 * PI),
        ("S3", Ok(s3.clone()), 0.7),
        ("S3", Ok(s3.clone()), 4.0),
        ("single", single.clone(), 3.0),
        ("mixed", mixed, 1.3),
    ];
    for (label, spec, beta) in cases {
        s.numeric(format!("thermal zeta route = mode sum, {label} beta={beta}"), 1e-8, (|| {
            let spec = spec?;
            let b = mode_sum_free_energy(&spec, beta)?;
            Ok((thermal_zeta_free_energy(&spec, beta)? - b) / b.abs().max(1.0))
        })());
    }
    for beta in [0.5f64, 3.0, 10.0] {
        s.numeric(format!("single oscillator closed form, beta={beta}"), 1e-12, (|| {
            let want = 0.5 + (1.0 - (-beta).exp()).ln() / beta;
            Ok(mode_sum_free_energy(&single.clone()?, beta)? - want)
        })());
    }
    s
}

/// Run one suite, or all of them in a fixed order.
pub fn run(name: &str) -> CliResult<Vec<Check>> {
    let names: Vec<&str> = if name == "all" { SUITES.to_vec() } else { vec![name] };
    let mut out = Vec::new();
    for n in names {
        let suite = match n {
            "inversion" => inversion(),
            "cocycle" => cocycle(),
            "eichler-shimura" => eichler_shimura(),
            "bol" => bol(),
            "moments" => moments(),
            "kober" => kober(),
            "massive" => massive(),
            "guinand" => guinand(),
            "dirichlet" => dirichlet(),
            "thermal" => thermal(),
            other => {
                return Err(CliError::Usage(format!(
                    "unknown suite {other:?}; known: {}, all",
                    SUITES.join(", ")
                )))
            }
        };
        out.extend(suite.checks);
    }
    Ok(out)
}
