//! Modified Bessel function of the second kind for real order.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exactnum::gamma_real;
use crate::quad::integrate;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SMALL_X: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    pub nu: f64,
    pub half_integer: bool,
}

impl BesselOrder {
    pub fn new(nu: f64) -> Self {
        let twice = 2.0 * nu;
        let half_integer = twice == twice.round() && (twice.round() as i64) % 2 != 0;
        BesselOrder { nu, half_integer }
    }
}

impl From<f64> for BesselOrder {
    fn from(nu: f64) -> Self {
        BesselOrder::new(nu)
    }
}

/// `K_nu(x)` for `x > 0`.
pub fn bessel_k(order: impl Into<BesselOrder>, x: f64) -> Result<f64> {
    let order = order.into();
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("bessel_k needs x > 0, got {x}")));
    }
    let nu = order.nu.abs();
    if x > 800.0 && nu * nu < x {
        // below the smallest subnormal
        return Ok(0.0);
    }
    if order.half_integer {
        return Ok(half_integer(nu, x));
    }
    if x < SMALL_X {
        let n = nu.round();
        if nu == n {
            return Ok(small_integer(n as u32, x));
        }
        if (nu - n).abs() > 1e-3 {
            return Ok(small_fractional(nu, x));
        }
    }
    integral(nu, x)
}

/// `sqrt(pi/2x) e^-x sum_k (n+k)! / (k! (n-k)!) (2x)^-k` for `nu = n + 1/2`.
pub(crate) fn half_integer(nu: f64, x: f64) -> f64 {
    let n = (nu - 0.5).round() as u32;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let kf = k as f64;
        let nf = n as f64;
        term *= (nf + kf + 1.0) * (nf - kf) / ((kf + 1.0) * 2.0 * x);
        sum += term;
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() * sum
}

/// `int_0^inf e^(-x cosh t) cosh(nu t) dt`, scaled by `e^x` inside the integral.
fn integral(nu: f64, x: f64) -> Result<f64> {
    // cosh t - 1 without cancellation
    let cm1 = |t: f64| 2.0 * (0.5 * t).sinh().powi(2);
    let log_f = |t: f64| nu * t - x * cm1(t);
    let peak = (nu / x).asinh();
    let top = log_f(peak);
    let width = x.recip().sqrt().min(1.0);
    let mut hi = peak + width;
    while log_f(hi) > top - 48.0 {
        hi += width;
    }
    let f = |t: f64| {
        let a = -x * cm1(t);
        0.5 * ((a + nu * t - top).exp() + (a - nu * t - top).exp())
    };
    let abs_tol = 1e-15 * (PI / (2.0 * x)).sqrt().min(1.0);
    let mut total = 0.0;
    let pieces = if peak > 0.0 { vec![0.0, peak, hi] } else { vec![0.0, hi] };
    for w in pieces.windows(2) {
        total += integrate(f, w[0], w[1], abs_tol, 1e-14)?.value;
    }
    Ok(total * (top - x).exp())
}

fn bessel_i_series(nu: f64, x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = (0.5 * x).powf(nu) / gamma_real(nu + 1.0);
    let mut sum = term;
    for k in 1..60 {
        let kf = k as f64;
        term *= y / (kf * (kf + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn small_fractional(nu: f64, x: f64) -> f64 {
    0.5 * PI * (bessel_i_series(-nu, x) - bessel_i_series(nu, x)) / (nu * PI).sin()
}

fn small_integer(n: u32, x: f64) -> f64 {
    let y = 0.25 * x * x;
    let half = 0.5 * x;
    let nf = n as f64;
    let mut first = 0.0;
    if n > 0 {
        // (n-k-1)!/k! (-y)^k for k < n
        let mut term = gamma_real(nf);
        for k in 0..n {
            first += term;
            let kf = k as f64;
            if k + 1 < n {
                term *= -y / ((kf + 1.0) * (nf - kf - 1.0));
            }
        }
        first *= 0.5 * half.powf(-nf);
    }
    let i_n = bessel_i_series(nf, x);
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut psi_k = -EULER_GAMMA;
    let mut psi_nk = -EULER_GAMMA + (1..=n).map(|j| 1.0 / j as f64).sum::<f64>();
    let mut term = 1.0 / gamma_real(nf + 1.0);
    let mut last = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        last += (psi_k + psi_nk) * term;
        psi_k += 1.0 / (kf + 1.0);
        psi_nk += 1.0 / (nf + kf + 1.0);
        term *= y / ((kf + 1.0) * (nf + kf + 1.0));
        if term < 1e-18 {
            break;
        }
    }
    first - sign * half.ln() * i_n + sign * 0.5 * half.powf(nf) * last
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree_near_the_switch() {
        for nu in [0.0, 1.0, 2.0, 0.3, 1.7] {
            let x = 0.049;
            let series = if nu == f64::round(nu) {
                small_integer(nu as u32, x)
            } else {
                small_fractional(nu, x)
            };
            let quad = integral(nu, x).unwrap();
            assert!((series - quad).abs() < 1e-11 * quad, "nu = {nu}");
        }
    }

    #[test]
    fn half_integer_matches_integral() {
        for nu in [0.5, 1.5, 3.5] {
            for x in [0.1, 1.0, 7.0] {
                let a = half_integer(nu, x);
                let b = integral(nu, x).unwrap();
                assert!((a - b).abs() < 1e-12 * a);
            }
        }
    }
}
