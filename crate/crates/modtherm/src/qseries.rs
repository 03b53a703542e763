//! Eisenstein-type q-series in the variable `b`, with `q = exp(-pi b)`.
//!
//! Every series here is `c_0 + sum_{m >= 1} c_m q^(2m)`. The log-derivative
//! `D` acts as `D q^(2m) = m q^(2m)`, which is `(1/2) q d/dq`.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli, gamma_numeric, gamma_real, rat_to_f64, sigma_real, zeta_numeric, zeta_real};
use crate::quad;

const MAX_TERMS: usize = 200_000;
const MELLIN_HEIGHT: f64 = 40.0;

/// A point `b` with `Re b > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlanePoint {
    b: Complex64,
}

impl HalfPlanePoint {
    pub fn new(b: Complex64) -> Result<Self> {
        if !(b.re > 0.0) || !b.im.is_finite() || !b.re.is_finite() {
            return Err(Error::domain(format!("need Re b > 0, got b = {b}")));
        }
        Ok(HalfPlanePoint { b })
    }

    pub fn real(b: f64) -> Result<Self> {
        Self::new(Complex64::new(b, 0.0))
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn q(&self) -> Complex64 {
        (-PI * self.b).exp()
    }

    pub fn tau(&self) -> Complex64 {
        Complex64::i() * self.b
    }

    pub fn xi(&self) -> Complex64 {
        1.0 / self.b
    }

    /// `|q^2|`
    fn ratio(&self) -> f64 {
        (-2.0 * PI * self.b.re).exp()
    }

    fn q2_pow(&self, m: u64) -> Complex64 {
        (-2.0 * PI * m as f64 * self.b).exp()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Truncation {
    pub max_terms: usize,
    pub tail_bound: f64,
}

/// A value together with the truncation that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QValue {
    pub value: Complex64,
    pub truncation: Truncation,
}

/// A q-series `c_0 + sum c_m q^(2m)` with coefficient access.
pub trait QExpansion {
    fn constant(&self) -> f64 {
        0.0
    }

    /// `c_m` for `m >= 1`, or `None` if the series only knows its values.
    fn coefficient(&self, m: u64) -> Option<f64>;

    /// `(C, d)` such that `|c_m| <= C m^d` for all `m >= 1`.
    fn growth(&self) -> (f64, f64);
}

/// `eps_t = -B_2t/4t + sum sigma_{2t-1}(m) q^(2m)`.
#[derive(Clone, Copy, Debug)]
pub struct Eisenstein {
    pub t: u32,
}

impl QExpansion for Eisenstein {
    fn constant(&self) -> f64 {
        casimir_constant(self.t)
    }

    fn coefficient(&self, m: u64) -> Option<f64> {
        Some(sigma_real((2 * self.t - 1) as f64, m))
    }

    fn growth(&self) -> (f64, f64) {
        let k = (2 * self.t - 1) as f64;
        if self.t >= 2 {
            (zeta_real(k), k)
        } else {
            (2.0, 1.5)
        }
    }
}

/// `S_t = sum sigma_{2t-1}(m) m^(1-2t) q^(2m)`.
#[derive(Clone, Copy, Debug)]
pub struct LambertS {
    pub t: u32,
}

impl QExpansion for LambertS {
    fn coefficient(&self, m: u64) -> Option<f64> {
        let k = (2 * self.t - 1) as f64;
        Some(sigma_real(-k, m))
    }

    fn growth(&self) -> (f64, f64) {
        if self.t >= 2 {
            (zeta_real((2 * self.t - 1) as f64), 0.0)
        } else {
            (2.0, 0.5)
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Constant(pub f64);

impl QExpansion for Constant {
    fn constant(&self) -> f64 {
        self.0
    }

    fn coefficient(&self, _m: u64) -> Option<f64> {
        Some(0.0)
    }

    fn growth(&self) -> (f64, f64) {
        (0.0, 0.0)
    }
}

/// A series known only through point values; `D` cannot act on it.
pub struct Opaque<F: Fn(&HalfPlanePoint) -> Complex64>(pub F);

impl<F: Fn(&HalfPlanePoint) -> Complex64> QExpansion for Opaque<F> {
    fn coefficient(&self, _m: u64) -> Option<f64> {
        None
    }

    fn growth(&self) -> (f64, f64) {
        (f64::INFINITY, 0.0)
    }
}

/// `1/2 zeta(1 - 2t) = -B_2t / 4t`.
pub fn casimir_constant(t: u32) -> f64 {
    -rat_to_f64(&bernoulli(2 * t)) / (4 * t) as f64
}

fn check_t(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::domain("weight index t must be >= 1"));
    }
    Ok(())
}

/// Bound on `sum_{m > n} C m^d r^m`.
fn geometric_tail(c: f64, d: f64, r: f64, n: u64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let m1 = (n + 1) as f64;
    let rho = r * ((m1 + 1.0) / m1).powf(d.max(0.0));
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    (c.ln() + d * m1.ln() + m1 * r.ln() - (1.0 - rho).ln()).exp()
}

fn target_for(partial: f64) -> f64 {
    1e-16 * partial.max(1.0)
}

/// `sum_{m >= 1} m^k c_m q^(2m)` with a certified majorant tail.
fn sum_series(f: &dyn QExpansion, k: u32, p: &HalfPlanePoint) -> Result<QValue> {
    let (c, d) = f.growth();
    let d = d + k as f64;
    let r = p.ratio();
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 1..=MAX_TERMS as u64 {
        let cm = f
            .coefficient(m)
            .ok_or_else(|| Error::Unsupported("series has no coefficient access".into()))?;
        if cm != 0.0 {
            sum += p.q2_pow(m) * (cm * (m as f64).powi(k as i32));
        }
        let tail = geometric_tail(c, d, r, m);
        if tail <= target_for(sum.norm()) {
            return Ok(QValue {
                value: sum,
                truncation: Truncation {
                    max_terms: m as usize,
                    tail_bound: tail,
                },
            });
        }
    }
    Err(Error::convergence(
        "q-series",
        format!("tail above target after {MAX_TERMS} terms at b = {}", p.b()),
    ))
}

/// Evaluate a q-expansion at `p`.
pub fn evaluate(f: &dyn QExpansion, p: &HalfPlanePoint) -> Result<QValue> {
    let mut v = sum_series(f, 0, p)?;
    v.value += f.constant();
    Ok(v)
}

/// `D^k f` applied termwise, with `D q^(2m) = m q^(2m)`.
pub fn log_deriv_d(f: &dyn QExpansion, k: u32, p: &HalfPlanePoint) -> Result<QValue> {
    if k == 0 {
        return evaluate(f, p);
    }
    sum_series(f, k, p)
}

pub fn eps(t: u32, p: &HalfPlanePoint) -> Result<QValue> {
    check_t(t)?;
    evaluate(&Eisenstein { t }, p)
}

/// `eps_t` with the Casimir constant and the Planck term removed.
pub fn eps_sub(t: u32, p: &HalfPlanePoint) -> Result<QValue> {
    check_t(t)?;
    let mut v = sum_series(&Eisenstein { t }, 0, p)?;
    v.value -= planck_term(t, p.b());
    Ok(v)
}

/// `1/2 zeta(1-2t) (i b)^(-2t)`.
fn planck_term(t: u32, b: Complex64) -> Complex64 {
    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
    sign * casimir_constant(t) * b.powi(-2 * t as i32)
}

/// The exponential part `sum sigma_{2t-1}(m) e^(-2 pi m b)` on the real axis.
fn eisenstein_tail_real(t: u32, b: f64) -> Result<f64> {
    Ok(sum_series(&Eisenstein { t }, 0, &HalfPlanePoint::real(b)?)?.value.re)
}

/// Line integral of `Gamma(s) zeta(s) zeta(s-2t+1) (2 pi b)^-s` at `Re s = 2t - 1/2`.
///
/// The pole at `s = 2t` sits to the right of the line, so this is `eps_sub`
/// computed without the q-expansion.
pub fn mellin_eps_sub(t: u32, b: f64) -> Result<QValue> {
    check_t(t)?;
    if !(b > 0.0) {
        return Err(Error::domain("mellin_eps_sub needs real b > 0"));
    }
    let c = 2.0 * t as f64 - 0.5;
    let ln_2pib = (2.0 * PI * b).ln();
    let shift = 2.0 * t as f64 - 1.0;
    let integrand = |y: f64| -> f64 {
        let s = Complex64::new(c, y);
        let g = gamma_numeric(s).unwrap_or_default();
        let z1 = zeta_numeric(s).unwrap_or_default();
        let z2 = zeta_numeric(s - shift).unwrap_or_default();
        (g * z1 * z2 * (-s * ln_2pib).exp()).re
    };
    let r = quad::integrate(integrand, 0.0, MELLIN_HEIGHT, 1e-14, 1e-13)?;
    let value = r.value / PI;
    // |Gamma(c+iy)| <= sqrt(2 pi) y^(c-1/2) e^(-pi y/2) (1 + 1/y), |zeta(1/2+iy)| <= 3 y^(1/2)
    let h = MELLIN_HEIGHT;
    let tail = (2.0 * PI).sqrt() * 1.1 * 3.0 * zeta_real(c) * h.powf(c) * (-PI * h / 2.0).exp() * (-c * ln_2pib).exp()
        / (PI * PI / 2.0);
    Ok(QValue {
        value: Complex64::new(value, 0.0),
        truncation: Truncation {
            max_terms: r.evals,
            tail_bound: tail + r.error / PI,
        },
    })
}

/// `S_t` in Lambert form; the divisor form is summed alongside as a check.
pub fn lambert_s(t: u32, p: &HalfPlanePoint) -> Result<QValue> {
    check_t(t)?;
    let divisor = sum_series(&LambertS { t }, 0, p)?;
    let r = p.ratio();
    let expo = 1.0 - 2.0 * t as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut out = None;
    for m in 1..=MAX_TERMS as u64 {
        let q2m = p.q2_pow(m);
        sum += q2m / (1.0 - q2m) * (m as f64).powf(expo);
        let tail = geometric_tail(1.0 / (1.0 - r), expo, r, m);
        if tail <= target_for(sum.norm()) {
            out = Some(QValue {
                value: sum,
                truncation: Truncation {
                    max_terms: m as usize,
                    tail_bound: tail.max(divisor.truncation.tail_bound),
                },
            });
            break;
        }
    }
    let out = out.ok_or_else(|| Error::convergence("Lambert series", format!("b = {}", p.b())))?;
    let gap = (out.value - divisor.value).norm();
    if gap > 1e-12 * out.value.norm().max(1.0) {
        return Err(Error::Inconsistency(format!(
            "Lambert and divisor forms of S_{t} differ by {gap:.3e}"
        )));
    }
    Ok(out)
}

/// `psi_bar_2t = 4 pi S_t`, periodic under `b -> b - i`.
pub fn psi_bar(t: u32, p: &HalfPlanePoint) -> Result<QValue> {
    let mut v = lambert_s(t, p)?;
    v.value *= 4.0 * PI;
    v.truncation.tail_bound *= 4.0 * PI;
    Ok(v)
}

/// `phi_bar_2t(b) = psi_bar_2t(b) - 2 zeta(2t) / b`.
pub fn phi_bar(t: u32, p: &HalfPlanePoint) -> Result<QValue> {
    let mut v = psi_bar(t, p)?;
    v.value -= 2.0 * zeta_real(2.0 * t as f64) / p.b();
    Ok(v)
}

/// Unwraps inside a quadrature integrand, parking the first error.
pub(crate) fn capture(v: Result<f64>, slot: &RefCell<Option<Error>>) -> f64 {
    match v {
        Ok(x) => x,
        Err(e) => {
            slot.borrow_mut().get_or_insert(e);
            0.0
        }
    }
}

/// `(1/Gamma(h)) int_x^inf (y - x)^(h-1) f(y) dy` by quadrature.
pub fn weyl_integral_fn<F: Fn(f64) -> f64>(f: F, x: f64, h: u32, abs_tol: f64) -> Result<f64> {
    if h == 0 {
        return Ok(f(x));
    }
    let hm1 = (h - 1) as i32;
    let r = quad::integrate_to_inf(|y| (y - x).powi(hm1) * f(y), x, abs_tol, 1e-12)?;
    Ok(r.value / gamma_real(h as f64))
}

/// Weyl fractional integral of `eps_sub` of integer order `h <= 2t - 1`.
///
/// The exponential part is integrated numerically, the Planck part in closed form.
pub fn weyl_integral(t: u32, x: f64, h: u32) -> Result<f64> {
    check_t(t)?;
    if !(x > 0.0) {
        return Err(Error::domain("weyl_integral needs x > 0"));
    }
    if h == 0 || h > 2 * t - 1 {
        return Err(Error::domain(format!("Weyl order h must be in 1..={}", 2 * t - 1)));
    }
    let err = RefCell::new(None);
    let expo = weyl_integral_fn(|y| capture(eisenstein_tail_real(t, y), &err), x, h, 1e-15);
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
    // (1/Gamma(h)) int_x^inf (y-x)^(h-1) y^(-2t) dy = x^(h-2t) Gamma(2t-h) / Gamma(2t)
    let planck = sign
        * casimir_constant(t)
        * x.powi(h as i32 - 2 * t as i32)
        * gamma_real((2 * t - h) as f64)
        / gamma_real(2.0 * t as f64);
    Ok(expo? - planck)
}

/// `int_0^inf b^k eps_sub(b) db` for `0 <= k <= 2t - 2`.
///
/// The piece over `[0, 1]` is folded onto `[1, inf)` with the inversion law.
pub fn moment(t: u32, k: u32) -> Result<f64> {
    if t < 2 {
        return Err(Error::domain("moments need t >= 2"));
    }
    if k > 2 * t - 2 {
        return Err(Error::domain(format!("moment order k must be <= {}", 2 * t - 2)));
    }
    let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
    let mirrored = 2 * t - 2 - k;
    let err = RefCell::new(None);
    let r = quad::integrate_to_inf(
        |u| (u.powi(k as i32) + sign * u.powi(mirrored as i32)) * capture(eisenstein_tail_real(t, u), &err),
        1.0,
        1e-16,
        1e-14,
    )?;
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    let planck = -casimir_constant(t)
        * sign
        * (1.0 / (2 * t - 1 - k) as f64 + sign / (k + 1) as f64);
    Ok(r.value + planck)
}
