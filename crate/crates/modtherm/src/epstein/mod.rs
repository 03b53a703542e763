//! Epstein zeta functions: binary forms through the Bessel (Fourier) expansion,
//! diagonal lattices with a mass term, and the reciprocal Bessel-sum relation.

mod bessel;
mod lattice;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

pub use bessel::{bessel_k, BesselOrder};
pub use lattice::{
    box_radius_for, box_sum, representation_counts, shell_sum, square_shell_tail, z2_direct, z2_direct_report,
    BinaryForm, LatticeSum, LatticeSumConfig,
};

use crate::error::{Error, Result};
use crate::exactnum::{gamma_real, sigma_real, zeta_real};
use crate::qseries::{lambert_s, log_deriv_d, HalfPlanePoint, LambertS};
use crate::tail::{bessel_envelope, geometric_tail, sigma_bound};

const MAX_BESSEL_TERMS: u64 = 200_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma_real(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselSum {
    pub value: f64,
    pub terms: u64,
    pub tail_bound: f64,
}

/// `sum_n sigma_2w(n) n^-w cos(2 pi v n) K_w(2 pi u n)` to absolute accuracy `tol`.
pub fn divisor_bessel_sum(w: f64, u: f64, v: f64, tol: f64) -> Result<BesselSum> {
    if !(u > 0.0) {
        return Err(Error::domain("Bessel sum needs u > 0"));
    }
    let beta = 2.0 * PI * u;
    let (a_sig, alpha) = sigma_bound(2.0 * w);
    let c = bessel_envelope(w, beta)?;
    let b = a_sig * c / beta.sqrt();
    let gamma = alpha - w - 0.5;
    let mut total = 0.0;
    let mut n = 0u64;
    loop {
        n += 1;
        let nf = n as f64;
        let k = bessel_k(w, beta * nf)?;
        let term = sigma_real(2.0 * w, n) * nf.powf(-w) * k;
        total += if v == 0.0 { term } else { (2.0 * PI * v * nf).cos() * term };
        if let Some(tail) = geometric_tail(b, gamma, beta, nf + 1.0) {
            if tail <= tol {
                return Ok(BesselSum {
                    value: total,
                    terms: n,
                    tail_bound: tail,
                });
            }
        }
        if n >= MAX_BESSEL_TERMS {
            return Err(Error::convergence(
                "Bessel series",
                format!("u = {u} needs more than {MAX_BESSEL_TERMS} terms"),
            ));
        }
    }
}

/// `sum' Q(m, n)^-s` continued to all real `s != 1, 1/2`, from the Bessel expansion
/// at `w = s - 1/2`.
pub fn z2_continued_report(form: &BinaryForm, s: f64, tol: f64) -> Result<BesselSum> {
    let w = s - 0.5;
    if s == 1.0 || w == 0.0 {
        return Err(Error::Singularity(format!("binary Epstein function at s = {s}")));
    }
    let (a, u, v) = (form.a, form.u(), form.v());
    let rg = rgamma(s);
    let a_s = a.powf(-s);
    let zeta_part = 2.0 * a_s * zeta_real(2.0 * s);
    if rg == 0.0 {
        return Ok(BesselSum {
            value: zeta_part,
            terms: 0,
            tail_bound: 0.0,
        });
    }
    let gamma_w = gamma_real(w);
    if !gamma_w.is_finite() {
        return Err(Error::Singularity(format!("Gamma(s - 1/2) at s = {s}")));
    }
    let second = 2.0 * a_s * PI.sqrt() * gamma_w * rg * u.powf(-2.0 * w) * zeta_real(2.0 * w);
    let pre = 8.0 * PI.powf(s) * a_s * rg * u.powf(-w);
    let scale = (zeta_part + second).abs().max(1.0);
    let sum = divisor_bessel_sum(w, u, v, tol * scale / pre.abs())?;
    Ok(BesselSum {
        value: zeta_part + second + pre * sum.value,
        terms: sum.terms,
        tail_bound: pre.abs() * sum.tail_bound,
    })
}

pub fn z2_continued(form: &BinaryForm, s: f64, tol: f64) -> Result<f64> {
    Ok(z2_continued_report(form, s, tol)?.value)
}

/// `Z_2(a, b, c; w + 1/2)` from the Bessel expansion, for `w > 1/2`.
pub fn z2_kober(form: &BinaryForm, w: f64, target_tol: f64) -> Result<f64> {
    Ok(z2_kober_report(form, w, target_tol)?.value)
}

pub fn z2_kober_report(form: &BinaryForm, w: f64, target_tol: f64) -> Result<BesselSum> {
    if !(w > 0.5) {
        return Err(Error::domain(format!("z2_kober needs w > 1/2, got {w}")));
    }
    z2_continued_report(form, w + 0.5, target_tol)
}

/// `Z(s, A) - pi^(2s-1) det(A)^-1/2 Gamma(1-s)/Gamma(s) Z(1-s, A^-1)` with both
/// sides continued.
pub fn functional_equation_residual(form: &BinaryForm, s: f64, tol: f64) -> Result<f64> {
    let lhs = z2_continued(form, s, tol)?;
    let dual = z2_continued(&form.inverse(), 1.0 - s, tol)?;
    let rhs = PI.powf(2.0 * s - 1.0) / form.delta().sqrt() * gamma_real(1.0 - s) * rgamma(s) * dual;
    Ok(lhs - rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuarticForms {
    /// Expansion in `q' = e^(-pi xi)`.
    pub high: f64,
    /// Expansion in `q = e^(-pi / xi)`.
    pub low: f64,
}

/// Both q-expansions of `sum' (m^2 + xi^2 n^2)^-2`.
pub fn z2_quartic_forms(xi: f64) -> Result<QuarticForms> {
    if !(xi > 0.0) {
        return Err(Error::domain("z2_quartic needs xi > 0"));
    }
    let z3 = zeta_real(3.0);
    let lead = PI.powi(4) / 45.0;
    let chi = |b: f64| -> Result<(f64, f64)> {
        let p = HalfPlanePoint::real(b)?;
        let s = lambert_s(2, &p)?.value.re;
        let ds = log_deriv_d(&LambertS { t: 2 }, 1, &p)?.value.re;
        Ok((s, ds))
    };
    let (c1, d1) = chi(xi)?;
    let high = lead + PI * z3 / xi.powi(3) + 2.0 * PI * c1 / xi.powi(3) + 4.0 * PI * PI * d1 / (xi * xi);
    let (c2, d2) = chi(1.0 / xi)?;
    let low = lead / xi.powi(4) + PI * z3 / xi + 2.0 * PI * c2 / xi + 4.0 * PI * PI * d2 / (xi * xi);
    Ok(QuarticForms { high, low })
}

/// `sum' (m^2 + xi^2 n^2)^-2`; the two q-expansions must agree.
pub fn z2_quartic(xi: f64) -> Result<f64> {
    let f = z2_quartic_forms(xi)?;
    if (f.high - f.low).abs() > 1e-11 * f.low.abs().max(1.0) {
        return Err(Error::Inconsistency(format!(
            "quartic Epstein forms disagree at xi = {xi}: {} vs {}",
            f.high, f.low
        )));
    }
    Ok(f.low)
}

/// `sum'_{m in Z^p} (m.m + w^2)^-s` through the Bessel representation.
pub fn zp_massive(p: u32, s: f64, w: f64, target_tol: f64) -> Result<f64> {
    Ok(zp_massive_report(p, s, w, target_tol)?.value)
}

/// As [`zp_massive`], with `terms` the number of distinct Bessel evaluations.
pub fn zp_massive_report(p: u32, s: f64, w: f64, target_tol: f64) -> Result<BesselSum> {
    if !(1..=4).contains(&p) {
        return Err(Error::domain(format!("zp_massive supports 1 <= p <= 4, got {p}")));
    }
    if !(w > 0.0) {
        return Err(Error::domain("zp_massive needs w > 0"));
    }
    let half_p = p as f64 / 2.0;
    let nu = s - half_p;
    if is_nonpositive_integer(s) || is_nonpositive_integer(nu) {
        return Err(Error::Singularity(format!("Gamma pole at s = {s}, p = {p}")));
    }
    let rg = 1.0 / gamma_real(s);
    let smooth = -w.powf(-2.0 * s) + PI.powf(half_p) * gamma_real(nu) * rg * w.powf(p as f64 - 2.0 * s);
    let pre = 2.0 * PI.powf(s) * rg;

    // shells k <= |m| < k + 1 hold at most (2k + 3)^p <= (5k)^p points
    let beta = 2.0 * PI * w;
    let c = bessel_envelope(nu, beta)?;
    let b = c * 5f64.powi(p as i32) * 2f64.powf(nu.max(0.0)) * w.powf(-nu) / beta.sqrt();
    let gamma = p as f64 + nu - 0.5;
    let tol = target_tol * smooth.abs().max(1.0) / pre.abs();
    let mut k = 1.0;
    let tail = loop {
        if let Some(tail) = geometric_tail(b, gamma, beta, k) {
            if tail <= tol {
                break tail;
            }
        }
        k += 1.0;
        if k > 1e4 {
            return Err(Error::convergence("zp_massive", format!("w = {w} is too small for the Bessel series")));
        }
    };
    let n_max = (k * k) as usize - 1;
    let r = representation_counts(p, n_max);
    let mut sum = 0.0;
    let mut terms = 0;
    for (n, &count) in r.iter().enumerate().skip(1) {
        if count == 0 {
            continue;
        }
        let root = (n as f64).sqrt();
        sum += count as f64 * (root / w).powf(nu) * bessel_k(nu, beta * root)?;
        terms += 1;
    }
    Ok(BesselSum {
        value: smooth + pre * sum,
        terms,
        tail_bound: pre.abs() * tail,
    })
}

/// `xi(x) = 1/2 pi^(-x/2) Gamma(x/2) zeta(x)`, symmetric under `x -> 1 - x`.
pub fn xi_riemann(x: f64) -> Result<f64> {
    if x == 0.0 || x == 1.0 {
        return Err(Error::Singularity(format!("xi has a pole at {x}")));
    }
    let y = if x < 0.5 { 1.0 - x } else { x };
    Ok(0.5 * PI.powf(-0.5 * y) * gamma_real(0.5 * y) * zeta_real(y))
}

/// `f_w(s) = xi(s + w) xi(s - w)`.
pub fn f_w(w: f64, s: f64) -> Result<f64> {
    Ok(xi_riemann(s + w)? * xi_riemann(s - w)?)
}

fn guinand_rhs(w: f64, u: f64) -> Result<f64> {
    Ok(0.5 * xi_riemann(2.0 * w)? * (u.powf(w - 1.0) - u.powf(-w))
        + 0.5 * xi_riemann(-2.0 * w)? * (u.powf(-w - 1.0) - u.powf(w)))
}

const GUINAND_TOL: f64 = 1e-15;

/// Residual of the `u <-> 1/u` relation for the divisor Bessel sum.
pub fn guinand_gap(w: f64, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::domain("guinand_gap needs u > 0"));
    }
    if u == 1.0 {
        return Ok(0.0);
    }
    let direct = divisor_bessel_sum(w, u, 0.0, GUINAND_TOL)?.value;
    let flipped = divisor_bessel_sum(w, 1.0 / u, 0.0, GUINAND_TOL)?.value;
    Ok(direct - flipped / u - guinand_rhs(w, u)?)
}

/// `sum sigma_{2t-1}(n) n^(1/2-t) K_{t-1/2}(2 pi n u)` rewritten as
/// `1/2 (-1)^(t-1) pi^(1-t) u^(t-1/2) (d/du^2)^(t-1) [S_t(u) / u]`,
/// each derivative landing on `S_t` as a power of `D`.
pub fn derivative_form_sum(t: u32, u: f64) -> Result<f64> {
    if t == 0 {
        return Err(Error::domain("derivative_form_sum needs t >= 1"));
    }
    // terms c a^k u^-j e^(-a u) with a = 2 pi n
    let mut terms: BTreeMap<(i32, u32), f64> = BTreeMap::new();
    terms.insert((1, 0), 1.0);
    for _ in 1..t {
        let mut next: BTreeMap<(i32, u32), f64> = BTreeMap::new();
        for (&(j, k), &c) in &terms {
            *next.entry((j + 1, k + 1)).or_default() -= 0.5 * c;
            *next.entry((j + 2, k)).or_default() -= 0.5 * j as f64 * c;
        }
        terms = next;
    }
    let p = HalfPlanePoint::real(u)?;
    let s = LambertS { t };
    let mut total = 0.0;
    for (&(j, k), &c) in &terms {
        let dk = log_deriv_d(&s, k, &p)?.value.re;
        total += c * (2.0 * PI).powi(k as i32) * u.powi(-j) * dk;
    }
    let sign = if t % 2 == 1 { 1.0 } else { -1.0 };
    Ok(0.5 * sign * PI.powi(1 - t as i32) * u.powf(t as f64 - 0.5) * total)
}

/// `guinand_gap` at `w = t - 1/2` with both Bessel sums taken from `S_t`.
pub fn guinand_gap_derivative(t: u32, u: f64) -> Result<f64> {
    if !(u > 0.0) {
        return Err(Error::domain("guinand_gap needs u > 0"));
    }
    let w = t as f64 - 0.5;
    Ok(derivative_form_sum(t, u)? - derivative_form_sum(t, 1.0 / u)? / u - guinand_rhs(w, u)?)
}
