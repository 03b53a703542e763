use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::rational::{bernoulli, factorial, rat_to_f64};
use crate::error::{Error, Result};

const EM_DIRECT: usize = 40;
const EM_CORRECTIONS: usize = 20;
const BORWEIN_N: usize = 24;

/// `B_{2j} / (2j)!` for `j = 0..=30`.
fn bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (0..=30u32)
            .map(|j| {
                let r = bernoulli(2 * j) / num_rational::BigRational::from_integer(factorial(2 * j));
                rat_to_f64(&r)
            })
            .collect()
    })
}

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Euler-Maclaurin tail for `sum_{n >= 0} (n + x)^-s` started at `x`.
fn em_tail(s: Complex64, x: f64, corrections: usize) -> Complex64 {
    let ln_x = x.ln();
    let x_pow = (-s * ln_x).exp();
    let mut sum = x_pow * x / (s - 1.0) + x_pow * 0.5;
    let bf = bernoulli_over_factorial();
    // s (s+1) ... (s+2j-2) x^(-s-2j+1)
    let mut rising = s * x_pow / x;
    for j in 1..=corrections {
        let term = rising * bf[j];
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
        let k = 2.0 * j as f64;
        rising = rising * (s + (k - 1.0)) * (s + k) / (x * x);
    }
    sum
}

fn zeta_em(s: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1..EM_DIRECT).rev() {
        sum += (-s * (n as f64).ln()).exp();
    }
    sum + em_tail(s, EM_DIRECT as f64, EM_CORRECTIONS)
}

fn zeta_unchecked(s: Complex64) -> Complex64 {
    if s.re >= 0.5 {
        return zeta_em(s);
    }
    if s == Complex64::new(0.0, 0.0) {
        // the reflection formula reads 0 * zeta(1) here
        return Complex64::new(-0.5, 0.0);
    }
    // zeta(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let one_minus = Complex64::new(1.0, 0.0) - s;
    let two_s = (s * 2f64.ln()).exp();
    let pi_s = ((s - 1.0) * PI.ln()).exp();
    two_s * pi_s * (s * (PI / 2.0)).sin() * gamma_unchecked(one_minus) * zeta_em(one_minus)
}

/// Riemann zeta for complex argument.
pub fn zeta_numeric(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Singularity("zeta has a pole at s = 1".into()));
    }
    let v = zeta_unchecked(s);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::convergence("zeta", format!("non-finite value at s = {s}")));
    }
    Ok(v)
}

/// Real zeta; `inf` at the pole.
pub fn zeta_real(s: f64) -> f64 {
    if s == 1.0 {
        return f64::INFINITY;
    }
    if s >= 3.0 && s <= 39.0 && s == s.round() && (s as u32) % 2 == 1 {
        return zeta_odd_constant(s as u32);
    }
    zeta_unchecked(Complex64::new(s, 0.0)).re
}

fn ln_gamma_stirling(w: Complex64) -> Complex64 {
    let bf = bernoulli_over_factorial();
    let mut series = Complex64::new(0.0, 0.0);
    let w2 = w * w;
    let mut wp = w;
    for j in 1..=12usize {
        // B_2j / (2j (2j-1) w^(2j-1)) = (B_2j/(2j)!) (2j-2)! / w^(2j-1)
        let k = 2 * j;
        let coef = bf[j] * rat_to_f64(&num_rational::BigRational::from_integer(factorial(k as u32 - 2)));
        series += coef / wp;
        wp *= w2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series
}

fn gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one_minus = Complex64::new(1.0, 0.0) - z;
        return PI / ((z * PI).sin() * gamma_unchecked(one_minus));
    }
    let shift = (15.0 - z.re).ceil().max(0.0) as usize;
    let w = z + shift as f64;
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..shift {
        prod *= z + i as f64;
    }
    ln_gamma_stirling(w).exp() / prod
}

/// Gamma function for complex argument.
pub fn gamma_numeric(s: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(s) {
        return Err(Error::Singularity(format!("Gamma has a pole at s = {}", s.re)));
    }
    let v = gamma_unchecked(s);
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::convergence("gamma", format!("overflow at s = {s}")));
    }
    Ok(v)
}

/// Real Gamma; `nan` at the poles.
pub fn gamma_real(x: f64) -> f64 {
    if is_nonpositive_integer(Complex64::new(x, 0.0)) {
        return f64::NAN;
    }
    if x > 0.0 && x == x.round() && x <= 30.0 {
        return (1..x as u64).fold(1.0, |acc, k| acc * k as f64);
    }
    gamma_unchecked(Complex64::new(x, 0.0)).re
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma_real needs x > 0");
    let shift = (15.0 - x).ceil().max(0.0) as usize;
    let w = x + shift as f64;
    let mut log_prod = 0.0;
    for i in 0..shift {
        log_prod += (x + i as f64).ln();
    }
    ln_gamma_stirling(Complex64::new(w, 0.0)).re - log_prod
}

/// Hurwitz zeta `sum_{n >= 0} (n + a)^-s` for real `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    hurwitz_zeta_complex(Complex64::new(s, 0.0), a).re
}

pub(crate) fn hurwitz_zeta_complex(s: Complex64, a: f64) -> Complex64 {
    debug_assert!(a > 0.0);
    let direct = (20.0 - a).ceil().max(0.0) as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (0..direct).rev() {
        sum += (-s * (n as f64 + a).ln()).exp();
    }
    sum + em_tail(s, a + direct as f64, 25)
}

fn borwein_zeta(s: f64) -> f64 {
    let n = BORWEIN_N;
    let mut d = Vec::with_capacity(n + 1);
    let mut term = 1.0;
    let mut acc = 0.0;
    for i in 0..=n {
        acc += term;
        d.push(acc);
        let fi = i as f64;
        let nf = n as f64;
        term *= 4.0 * (nf + fi) * (nf - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
    }
    let dn = d[n];
    let mut sum = 0.0;
    for k in (0..n).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - dn) / ((k + 1) as f64).powf(s);
    }
    let eta = -sum / dn;
    eta / (1.0 - 2f64.powf(1.0 - s))
}

/// `zeta(m)` for odd `m >= 3`, cached for `m <= 39`.
pub fn zeta_odd_constant(m: u32) -> f64 {
    static CACHE: OnceLock<Vec<f64>> = OnceLock::new();
    assert!(m >= 3 && m % 2 == 1, "odd zeta constant needs odd m >= 3");
    let cache = CACHE.get_or_init(|| (0..19).map(|i| borwein_zeta((2 * i + 3) as f64)).collect());
    if m <= 39 {
        cache[((m - 3) / 2) as usize]
    } else {
        borwein_zeta(m as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_near_pole_is_finite() {
        let z = zeta_real(1.0 + 1e-8);
        assert!((z - 1e8).abs() / 1e8 < 1e-6);
    }

    #[test]
    fn hurwitz_at_one_is_zeta() {
        for s in [1.5, 2.0, 4.5, 11.0] {
            assert!((hurwitz_zeta(s, 1.0) - zeta_real(s)).abs() < 1e-14 * zeta_real(s));
        }
        // zeta_H(2, 1/2) = 3 zeta(2)
        assert!((hurwitz_zeta(2.0, 0.5) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for x in [0.3, 2.5, 7.25, 18.0] {
            assert!((ln_gamma_real(x) - gamma_real(x).ln()).abs() < 1e-13);
        }
    }

    #[test]
    fn borwein_constants() {
        assert!((zeta_odd_constant(3) - 1.202_056_903_159_594_3).abs() < 1e-15);
        assert!((zeta_odd_constant(5) - 1.036_927_755_143_37).abs() < 1e-14);
    }
}
