//! Brute-force lattice sums for binary forms and diagonal lattices.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{hurwitz_zeta, zeta_real};
use crate::quad::integrate;

/// The positive definite form `a m^2 + 2 b m n + c n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinaryForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl BinaryForm {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0) || !(a * c - b * b > 0.0) {
            return Err(Error::domain(format!("form ({a}, {b}, {c}) is not positive definite")));
        }
        Ok(BinaryForm { a, b, c })
    }

    pub fn delta(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    /// `sqrt(delta) / a`
    pub fn u(&self) -> f64 {
        self.delta().sqrt() / self.a
    }

    /// `b / a`
    pub fn v(&self) -> f64 {
        self.b / self.a
    }

    /// The form of the inverse matrix.
    pub fn inverse(&self) -> Self {
        let d = self.delta();
        BinaryForm {
            a: self.c / d,
            b: -self.b / d,
            c: self.a / d,
        }
    }

    /// `(c, b, a)`: the same lattice with `m` and `n` exchanged.
    pub fn swapped(&self) -> Self {
        BinaryForm {
            a: self.c,
            b: self.b,
            c: self.a,
        }
    }

    pub fn eval(&self, m: f64, n: f64) -> f64 {
        self.a * m * m + 2.0 * self.b * m * n + self.c * n * n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSumConfig {
    pub radius: u32,
    /// Largest acceptable bound on what the truncation leaves out.
    pub tail_bound: f64,
}

impl Default for LatticeSumConfig {
    fn default() -> Self {
        LatticeSumConfig {
            radius: 40,
            tail_bound: 1e-12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LatticeSum {
    pub value: f64,
    /// Sum over `max(|m|, |n|) <= radius` only.
    pub box_sum: f64,
    /// Asymptotic estimate of the shells beyond the box.
    pub tail_estimate: f64,
    /// Bound on the error left after adding the estimate.
    pub tail_bound: f64,
    pub radius: u32,
    pub points: u64,
}

/// Sum of `Q(m, n)^-s` over the square shell `max(|m|, |n|) = k`.
pub fn shell_sum(form: &BinaryForm, s: f64, k: i64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let kf = k as f64;
    let mut acc = 0.0;
    for j in -k..=k {
        let jf = j as f64;
        acc += form.eval(kf, jf).powf(-s) + form.eval(-kf, jf).powf(-s);
    }
    for j in (-k + 1)..k {
        let jf = j as f64;
        acc += form.eval(jf, kf).powf(-s) + form.eval(jf, -kf).powf(-s);
    }
    acc
}

/// Box sum over `0 < max(|m|, |n|) <= radius`, inner shells first.
pub fn box_sum(form: &BinaryForm, s: f64, radius: u32) -> f64 {
    (1..=radius as i64).map(|k| shell_sum(form, s, k)).sum()
}

/// Taylor coefficients of `(p0 + p1 h + p2 h^2)^-s` up to `h^n`.
fn taylor_power(p0: f64, p1: f64, p2: f64, s: f64, n: usize) -> Vec<f64> {
    let mut e = vec![0.0; n + 1];
    e[0] = p0.powf(-s);
    for k in 0..n {
        let kf = k as f64;
        let prev = if k > 0 { e[k - 1] } else { 0.0 };
        e[k + 1] = (-(s + kf) * p1 * e[k] - (2.0 * s + kf - 1.0) * p2 * prev) / (p0 * (kf + 1.0));
    }
    e
}

/// One edge of a shell: `g(y) = (alpha + 2 beta y + gamma y^2)^-s` on `[-1, 1]`.
struct Edge {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl Edge {
    fn derivatives(&self, y: f64, s: f64, n: usize) -> Vec<f64> {
        let p0 = self.alpha + 2.0 * self.beta * y + self.gamma * y * y;
        let p1 = 2.0 * self.beta + 2.0 * self.gamma * y;
        let mut e = taylor_power(p0, p1, self.gamma, s, n);
        let mut fact = 1.0;
        for (k, c) in e.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            *c *= fact;
        }
        e
    }
}

/// Euler-Maclaurin estimate of `sum_{k > radius}` of the shell sums, with a
/// bound on the remainder after `terms` correction orders.
///
/// Each shell is four edges; on an edge `Q(k, j)^-s = k^-2s g(j/k)`, and the
/// trapezoid corners of the four edges cancel.
pub fn square_shell_tail(form: &BinaryForm, s: f64, radius: u32, terms: usize) -> Result<(f64, f64)> {
    if !(s > 1.0) {
        return Err(Error::domain("shell tail needs s > 1"));
    }
    if radius == 0 || terms == 0 {
        return Err(Error::domain("shell tail needs radius >= 1 and terms >= 1"));
    }
    let edges = [
        Edge {
            alpha: form.a,
            beta: form.b,
            gamma: form.c,
        },
        Edge {
            alpha: form.c,
            beta: form.b,
            gamma: form.a,
        },
    ];
    let order = 2 * terms;
    let a0 = radius as f64 + 1.0;
    let mut estimate = 0.0;
    let mut abs_deriv = 0.0;
    for edge in &edges {
        let area = integrate(|y| edge.derivatives(y, s, 0)[0], -1.0, 1.0, 0.0, 1e-15)?.value;
        estimate += 2.0 * area * hurwitz_zeta(2.0 * s - 1.0, a0);
        let top = edge.derivatives(1.0, s, order);
        let bottom = edge.derivatives(-1.0, s, order);
        let mut fact = 1.0;
        for i in 1..=terms {
            let i2 = 2 * i;
            fact *= ((i2 - 1) * i2) as f64;
            let b2i = bernoulli_even(i2);
            let jump = top[i2 - 1] - bottom[i2 - 1];
            estimate += 2.0 * b2i / fact * jump * hurwitz_zeta(2.0 * s + i2 as f64 - 1.0, a0);
        }
        abs_deriv += integrate(|y| edge.derivatives(y, s, order)[order].abs(), -1.0, 1.0, 0.0, 1e-6)?.value;
    }
    let rem = 2.0 * 2.0 * zeta_real(order as f64) / (2.0 * PI).powi(order as i32);
    let bound = rem * abs_deriv * hurwitz_zeta(2.0 * s + order as f64 - 1.0, a0);
    Ok((estimate, bound * 1.01))
}

fn bernoulli_even(n: usize) -> f64 {
    crate::exactnum::rat_to_f64(&crate::exactnum::bernoulli(n as u32))
}

const SHELL_TERMS: usize = 6;

/// `sum' Q(m, n)^-s` for `s > 1`: box sum plus the shell tail estimate.
pub fn z2_direct_report(form: &BinaryForm, s: f64, cfg: &LatticeSumConfig) -> Result<LatticeSum> {
    if !(s > 1.0) {
        return Err(Error::domain(format!("direct lattice sum needs s > 1, got {s}")));
    }
    if cfg.radius == 0 {
        return Err(Error::domain("radius must be positive"));
    }
    let boxed = box_sum(form, s, cfg.radius);
    let (tail, bound) = square_shell_tail(form, s, cfg.radius, SHELL_TERMS)?;
    if bound > cfg.tail_bound {
        let decay = 2.0 * s + 2.0 * SHELL_TERMS as f64 - 2.0;
        let grow = (bound / cfg.tail_bound).powf(1.0 / decay);
        let suggested = (cfg.radius as f64 * grow * 1.1).ceil();
        return Err(Error::convergence(
            "z2_direct",
            format!("tail bound {bound:.3e} exceeds {:.3e}; try radius {suggested}", cfg.tail_bound),
        ));
    }
    let side = 2 * cfg.radius as u64 + 1;
    Ok(LatticeSum {
        value: boxed + tail,
        box_sum: boxed,
        tail_estimate: tail,
        tail_bound: bound,
        radius: cfg.radius,
        points: side * side - 1,
    })
}

pub fn z2_direct(form: &BinaryForm, s: f64, cfg: &LatticeSumConfig) -> Result<f64> {
    Ok(z2_direct_report(form, s, cfg)?.value)
}

/// Radius at which the plain box sum (no tail estimate) is within `tol`,
/// from the leading term `2 A zeta(2s - 1, R + 1) ~ 2 A R^(2-2s) / (2s - 2)`.
pub fn box_radius_for(form: &BinaryForm, s: f64, tol: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::domain("box radius needs s > 1"));
    }
    let mut area = 0.0;
    for (alpha, gamma) in [(form.a, form.c), (form.c, form.a)] {
        let g = |y: f64| (alpha + 2.0 * form.b * y + gamma * y * y).powf(-s);
        area += integrate(g, -1.0, 1.0, 0.0, 1e-12)?.value;
    }
    let c = 2.0 * area / (2.0 * s - 2.0);
    Ok((c / tol).powf(1.0 / (2.0 * s - 2.0)))
}

/// `r_p(n)`, the number of `m` in `Z^p` with `|m|^2 = n`, for `n <= n_max`.
pub fn representation_counts(p: u32, n_max: usize) -> Vec<u64> {
    let mut r = vec![0u64; n_max + 1];
    r[0] = 1;
    for _ in 0..p {
        let mut next = vec![0u64; n_max + 1];
        for (n, &count) in r.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let mut k = 0usize;
            while n + k * k <= n_max {
                next[n + k * k] += if k == 0 { count } else { 2 * count };
                k += 1;
            }
        }
        r = next;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_matches_power() {
        let e = taylor_power(2.0, 0.6, 1.5, 1.3, 14);
        let h: f64 = 0.05;
        let direct = (2.0 + 0.6 * h + 1.5 * h * h).powf(-1.3);
        let series: f64 = e.iter().enumerate().map(|(k, c)| c * h.powi(k as i32)).sum();
        assert!((direct - series).abs() < 1e-12);
    }

    #[test]
    fn tail_matches_extra_shells() {
        let f = BinaryForm::new(2.0, 1.0, 3.0).unwrap();
        let s = 1.75;
        let (t20, _) = square_shell_tail(&f, s, 20, 6).unwrap();
        let (t60, b60) = square_shell_tail(&f, s, 60, 6).unwrap();
        let shells: f64 = (21..=60).map(|k| shell_sum(&f, s, k)).sum();
        assert!((t20 - t60 - shells).abs() < 1e-13 + b60);
    }
}
