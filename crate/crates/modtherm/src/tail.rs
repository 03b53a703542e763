//! Majorants for truncated series.

use std::f64::consts::PI;

use crate::epstein::bessel_k;
use crate::error::Result;
use crate::exactnum::zeta_real;

/// `(A, alpha)` with `sigma_k(n) <= A n^alpha`.
pub(crate) fn sigma_bound(k: f64) -> (f64, f64) {
    if k > 1.0 {
        (zeta_real(k), k)
    } else if k < -1.0 {
        (zeta_real(-k), 0.0)
    } else {
        // d(n) <= 2 sqrt(n)
        (2.0, k.max(0.0) + 0.5)
    }
}

/// Constant `C` with `K_nu(x) <= C x^-1/2 e^-x` for all `x >= x0`.
///
/// `sqrt(x) e^x K_nu(x)` decreases for `|nu| >= 1/2` and increases to
/// `sqrt(pi/2)` otherwise.
pub(crate) fn bessel_envelope(nu: f64, x0: f64) -> Result<f64> {
    let at = x0.sqrt() * x0.exp() * bessel_k(nu, x0)?;
    let limit = (0.5 * PI).sqrt();
    Ok(if at.is_finite() { at.max(limit) } else { limit })
}

/// Bound on `sum_{n >= n0} B n^gamma e^(-beta n)` from the ratio of consecutive terms.
pub(crate) fn geometric_tail(b: f64, gamma: f64, beta: f64, n0: f64) -> Option<f64> {
    let rho = ((n0 + 1.0) / n0).powf(gamma.max(0.0)) * (-beta).exp();
    if rho >= 1.0 {
        return None;
    }
    Some(b * n0.powf(gamma) * (-beta * n0).exp() / (1.0 - rho))
}

/// Bound on `int_y^inf x^m e^(-c x) dx`, or `None` while the integrand still grows at `y`.
pub(crate) fn gamma_tail(m: f64, c: f64, y: f64) -> Option<f64> {
    let slope = c - m.max(0.0) / y;
    if slope <= 0.0 {
        return None;
    }
    Some(y.powf(m) * (-c * y).exp() / slope)
}
