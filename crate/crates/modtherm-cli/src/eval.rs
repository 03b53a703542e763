//! `modtherm eval <quantity>`.

use modtherm::epstein::{
    guinand_gap, z2_direct_report, z2_kober_report, z2_quartic_forms, zp_massive_report, BinaryForm,
    LatticeSumConfig,
};
use modtherm::exactnum::{bernoulli, rat, Rational, SymScalar};
use modtherm::periodpoly::{pbar, rbar};
use modtherm::qseries::{self, HalfPlanePoint, QValue};
use modtherm::thermal::{self, SpectrumSpec, ThermalPoint};
use num_complex::Complex64;

use crate::output::{Node, Obj};
use crate::{CliError, CliResult, Params};

pub const QUANTITIES: &[&str] = &[
    "eps",
    "eps_sub",
    "mellin_eps_sub",
    "S",
    "psi_bar",
    "phi_bar",
    "pbar",
    "rbar",
    "moment",
    "z2",
    "z2_kober",
    "z2_quartic",
    "zp_massive",
    "guinand",
    "f3",
    "f_partial",
    "s_partial",
    "mode_sum_F",
    "thermal_zeta_F",
];

// relative accuracy of a result whose own truncation error is below rounding
const ROUNDING: f64 = 8.0 * f64::EPSILON;
// requested accuracy of the quadrature behind `moment`
const MOMENT_QUAD_TOL: f64 = 1e-14;

enum Value {
    Numeric(Complex64),
    Exact(String),
    Both(Complex64, String),
}

struct Outcome {
    value: Value,
    est_error: f64,
    truncation: Obj,
}

impl Outcome {
    fn numeric(value: Complex64, tail_bound: f64, truncation: Obj) -> Self {
        Outcome {
            value: Value::Numeric(value),
            est_error: tail_bound + ROUNDING * value.norm().max(1.0),
            truncation,
        }
    }

    fn real(value: f64, tail_bound: f64, truncation: Obj) -> Self {
        Self::numeric(Complex64::new(value, 0.0), tail_bound, truncation)
    }

    fn from_q(v: QValue) -> Self {
        let trunc = Obj::new()
            .with("terms", v.truncation.max_terms)
            .with("tail_bound", v.truncation.tail_bound);
        Self::numeric(v.value, v.truncation.tail_bound, trunc)
    }
}

fn need<T: Copy>(v: Option<T>, flag: &str, quantity: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Usage(format!("{quantity} needs --{flag}")))
}

/// `--b`, or a real `--x`.
fn half_plane_point(p: &Params, quantity: &str) -> CliResult<HalfPlanePoint> {
    let b = match (p.b, p.x) {
        (Some(b), _) => b,
        (None, Some(x)) => Complex64::new(x, 0.0),
        (None, None) => return Err(CliError::Usage(format!("{quantity} needs --b or --x"))),
    };
    Ok(HalfPlanePoint::new(b)?)
}

fn real_point(p: &Params, quantity: &str) -> CliResult<f64> {
    let b = half_plane_point(p, quantity)?.b();
    if b.im != 0.0 {
        return Err(CliError::Usage(format!("{quantity} needs a real point")));
    }
    Ok(b.re)
}

fn form_of(p: &Params) -> CliResult<BinaryForm> {
    let [a, b, c] = p.form.unwrap_or([1.0, 0.0, 1.0]);
    Ok(BinaryForm::new(a, b, c)?)
}

fn spectrum_of(p: &Params) -> CliResult<SpectrumSpec> {
    match &p.spectrum {
        None => Ok(SpectrumSpec::s3()),
        Some(path) => Ok(SpectrumSpec::from_json(&std::fs::read_to_string(path)?)?),
    }
}

fn params_node(p: &Params) -> Node {
    let mut o = Obj::new();
    if let Some(t) = p.t {
        o.push("t", t);
    }
    if let Some(b) = p.b {
        o.push("b", Obj::new().with("re", b.re).with("im", b.im));
    }
    for (name, v) in [("x", p.x), ("xi", p.xi), ("s", p.s), ("w", p.w), ("u", p.u)] {
        if let Some(v) = v {
            o.push(name, v);
        }
    }
    if let Some(v) = p.p {
        o.push("p", v);
    }
    if let Some(v) = p.k {
        o.push("k", v);
    }
    if let Some([a, b, c]) = p.form {
        o.push("form", Obj::new().with("a", a).with("b", b).with("c", c));
    }
    if let Some(v) = p.tol {
        o.push("tol", v);
    }
    if let Some(v) = p.beta {
        o.push("beta", v);
    }
    if let Some(path) = &p.spectrum {
        o.push("spectrum", path.display().to_string());
    }
    o.into()
}

/// `c_0 + c_1 x + ...` with each coefficient in parentheses.
fn polynomial_string<'a>(terms: impl Iterator<Item = (i64, &'a SymScalar)>) -> String {
    let parts: Vec<String> = terms
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| match k {
            0 => format!("({c})"),
            1 => format!("({c}) x"),
            k => format!("({c}) x^{k}"),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `(-1)^j B_2j B_(2t-2j) / (8 j (t-j))` for the odd moment `k = 2j - 1`.
pub fn odd_moment_exact(t: u32, j: u32) -> Rational {
    let sign = if j % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
    sign * bernoulli(2 * j) * bernoulli(2 * t - 2 * j) / rat((8 * j * (t - j)) as i64, 1)
}

fn compute(quantity: &str, p: &Params) -> CliResult<Outcome> {
    let q = quantity;
    Ok(match q {
        "eps" => Outcome::from_q(qseries::eps(need(p.t, "t", q)?, &half_plane_point(p, q)?)?),
        "eps_sub" => Outcome::from_q(qseries::eps_sub(need(p.t, "t", q)?, &half_plane_point(p, q)?)?),
        "S" => Outcome::from_q(qseries::lambert_s(need(p.t, "t", q)?, &half_plane_point(p, q)?)?),
        "psi_bar" => Outcome::from_q(qseries::psi_bar(need(p.t, "t", q)?, &half_plane_point(p, q)?)?),
        "phi_bar" => Outcome::from_q(qseries::phi_bar(need(p.t, "t", q)?, &half_plane_point(p, q)?)?),
        "mellin_eps_sub" => {
            let v = qseries::mellin_eps_sub(need(p.t, "t", q)?, real_point(p, q)?)?;
            let trunc = Obj::new()
                .with("terms", v.truncation.max_terms)
                .with("tail_bound", v.truncation.tail_bound);
            Outcome::numeric(v.value, v.truncation.tail_bound, trunc)
        }
        "pbar" | "rbar" => {
            let t = need(p.t, "t", q)?;
            let terms: Vec<(i64, SymScalar)> = if q == "pbar" {
                pbar(t)?.coeffs.into_iter().enumerate().map(|(k, c)| (k as i64, c)).collect()
            } else {
                rbar(t)?.terms
            };
            let exact = polynomial_string(terms.iter().map(|(k, c)| (*k, c)));
            let trunc = Obj::new().with("terms", terms.len()).with("tail_bound", 0.0);
            match p.x {
                None => Outcome {
                    value: Value::Exact(exact),
                    est_error: 0.0,
                    truncation: trunc,
                },
                Some(x) => {
                    let parts: Vec<f64> = terms.iter().map(|(k, c)| c.to_f64() * x.powi(*k as i32)).collect();
                    let v: f64 = parts.iter().sum();
                    let scale: f64 = parts.iter().map(|c| c.abs()).sum();
                    Outcome {
                        value: Value::Both(Complex64::new(v, 0.0), exact),
                        est_error: ROUNDING * (terms.len() as f64) * scale.max(1.0),
                        truncation: trunc,
                    }
                }
            }
        }
        "moment" => {
            let t = need(p.t, "t", q)?;
            let k = need(p.k, "k", q)?;
            let v = qseries::moment(t, k)?;
            let mut o = Outcome::real(v, MOMENT_QUAD_TOL, Obj::new().with("tail_bound", MOMENT_QUAD_TOL));
            if k % 2 == 1 {
                o.value = Value::Both(Complex64::new(v, 0.0), odd_moment_exact(t, (k + 1) / 2).to_string());
            }
            o
        }
        "z2" => {
            let cfg = LatticeSumConfig {
                tail_bound: p.tol.unwrap_or(1e-12),
                ..LatticeSumConfig::default()
            };
            let r = z2_direct_report(&form_of(p)?, need(p.s, "s", q)?, &cfg)?;
            let trunc = Obj::new()
                .with("radius", r.radius)
                .with("points", r.points)
                .with("tail_estimate", r.tail_estimate)
                .with("tail_bound", r.tail_bound);
            let mut o = Outcome::real(r.value, r.tail_bound, trunc);
            // rounding accumulated over the box grows like sqrt(points)
            o.est_error += ROUNDING * r.value.abs() * (r.points as f64).sqrt();
            o
        }
        "z2_kober" => {
            let w = match (p.s, p.w) {
                (Some(s), _) => s - 0.5,
                (None, Some(w)) => w,
                (None, None) => return Err(CliError::Usage("z2_kober needs --s or --w".into())),
            };
            let r = z2_kober_report(&form_of(p)?, w, p.tol.unwrap_or(1e-14))?;
            Outcome::real(r.value, r.tail_bound, Obj::new().with("terms", r.terms).with("tail_bound", r.tail_bound))
        }
        "z2_quartic" => {
            let f = z2_quartic_forms(need(p.xi, "xi", q)?)?;
            let gap = (f.high - f.low).abs();
            let v = if need(p.xi, "xi", q)? >= 1.0 { f.high } else { f.low };
            Outcome::real(v, gap, Obj::new().with("tail_bound", gap))
        }
        "zp_massive" => {
            let r = zp_massive_report(need(p.p, "p", q)?, need(p.s, "s", q)?, need(p.w, "w", q)?, p.tol.unwrap_or(1e-14))?;
            Outcome::real(r.value, r.tail_bound, Obj::new().with("terms", r.terms).with("tail_bound", r.tail_bound))
        }
        "guinand" => {
            let u = need(p.u, "u", q)?;
            Outcome::real(guinand_gap(need(p.w, "w", q)?, u)?, 0.0, Obj::new().with("tail_bound", 0.0))
        }
        "f3" => {
            let pt = ThermalPoint::new(need(p.xi, "xi", q)?)?;
            let a = thermal::f3_epstein(&pt)?;
            let b = thermal::f3_mode_sum(&pt)?;
            let gap = (a - b).abs();
            Outcome::real(a, gap, Obj::new().with("tail_bound", gap))
        }
        "f_partial" | "s_partial" => {
            let t = need(p.t, "t", q)?;
            let pt = ThermalPoint::new(need(p.xi, "xi", q)?)?;
            let v = if q == "f_partial" {
                thermal::free_energy_partial(t, &pt)?
            } else {
                thermal::entropy_partial(t, &pt)?
            };
            Outcome::real(v, 0.0, Obj::new().with("tail_bound", 0.0))
        }
        "mode_sum_F" | "thermal_zeta_F" => {
            let spec = spectrum_of(p)?;
            let beta = need(p.beta, "beta", q)?;
            let (v, bound) = if q == "mode_sum_F" {
                (thermal::mode_sum_free_energy(&spec, beta)?, 0.0)
            } else {
                // the Bessel route is accurate to about 1e-10 of the mode sum
                (thermal::thermal_zeta_free_energy(&spec, beta)?, 1e-10)
            };
            Outcome::real(v, bound, Obj::new().with("tail_bound", bound))
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown quantity {other:?}; known: {}",
                QUANTITIES.join(", ")
            )))
        }
    })
}

/// Evaluate `quantity` and build the output record.
pub fn evaluate(quantity: &str, p: &Params) -> CliResult<Node> {
    let o = compute(quantity, p)?;
    let mut rec = Obj::new().with("quantity", quantity).with("params", params_node(p));
    let complex = |z: Complex64| Obj::new().with("re", z.re).with("im", z.im);
    match o.value {
        Value::Numeric(z) => rec.push("value", complex(z)),
        Value::Exact(s) => rec.push("exact", s),
        Value::Both(z, s) => {
            rec.push("value", complex(z));
            rec.push("exact", s);
        }
    }
    rec.push("est_error", o.est_error);
    rec.push("truncation", o.truncation);
    Ok(rec.into())
}

/// `S_t(i)` for even `t` from Lerch's formula, as an exact `zeta`/`pi` expression.
pub fn lerch_exact(t: u32) -> CliResult<SymScalar> {
    if t < 2 || t % 2 == 1 {
        return Err(CliError::Usage(format!("Lerch's formula needs even t >= 2, got {t}")));
    }
    let n = t - 1;
    let mut sum = rat(0, 1);
    for j in 0..=n + 1 {
        let sign = if j % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let denom = Rational::from_integer(modtherm::exactnum::factorial(2 * j))
            * Rational::from_integer(modtherm::exactnum::factorial(2 * n + 2 - 2 * j));
        sum += sign * bernoulli(2 * j) * bernoulli(2 * n + 2 - 2 * j) / denom;
    }
    let scale = -rat(1i64 << (2 * n - 1), 1) * sum;
    let zeta_part = SymScalar::monomial(rat(-1, 2), 0, 2 * t - 1);
    Ok(&zeta_part + &SymScalar::monomial(scale, 2 * n + 1, 0))
}
