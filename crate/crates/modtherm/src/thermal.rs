//! Free energies of a conformal scalar on odd spheres and of general
//! `omega_n = n` spectra, each by two independent routes.
//!
//! The temperature enters through `xi = 1/b = 2 pi / beta`; the low-temperature
//! series run over `q^(2m) = e^(-m beta)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::epstein::{bessel_k, z2_quartic, z2_quartic_forms};
use crate::error::{Error, Result};
use crate::exactnum::{rat_to_f64, zeta_negative_exact, zeta_real};
use crate::qseries::{casimir_constant, lambert_s, log_deriv_d, HalfPlanePoint, LambertS};
use crate::tail::geometric_tail;

const MAX_MODES: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalPoint {
    xi: f64,
}

impl ThermalPoint {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi > 0.0) || !xi.is_finite() {
            return Err(Error::domain(format!("xi must be positive and finite, got {xi}")));
        }
        Ok(ThermalPoint { xi })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    /// `2 pi / xi`
    pub fn beta_scaled(&self) -> f64 {
        2.0 * PI / self.xi
    }

    pub fn q(&self) -> f64 {
        (-PI / self.xi).exp()
    }

    pub fn q_prime(&self) -> f64 {
        (-PI * self.xi).exp()
    }

    /// The point `b = 1/xi` of the low-temperature series.
    fn low(&self) -> Result<HalfPlanePoint> {
        HalfPlanePoint::real(1.0 / self.xi)
    }
}

fn check_t(t: u32) -> Result<()> {
    if t < 2 {
        return Err(Error::domain("thermal weight index needs t >= 2"));
    }
    Ok(())
}

/// `D^k S_t` at `b = 1/xi`.
fn lambert_derivative(t: u32, k: u32, pt: &ThermalPoint) -> Result<f64> {
    let p = pt.low()?;
    if k == 0 {
        return Ok(lambert_s(t, &p)?.value.re);
    }
    Ok(log_deriv_d(&LambertS { t }, k, &p)?.value.re)
}

/// `f_t = eps_{t,0} + (1/beta) sum n^(2t-2) log(1 - q^(2n))`, resummed as
/// `eps_{t,0} - (xi / 2 pi) D^(2t-2) S_t`.
pub fn free_energy_partial(t: u32, pt: &ThermalPoint) -> Result<f64> {
    check_t(t)?;
    let g = lambert_derivative(t, 2 * t - 2, pt)?;
    Ok(casimir_constant(t) - pt.xi / (2.0 * PI) * g)
}

/// `s_t = d f_t / d xi = -(1/2 pi) (1 + (2 pi / xi) D) D^(2t-2) S_t`.
pub fn entropy_partial(t: u32, pt: &ThermalPoint) -> Result<f64> {
    check_t(t)?;
    let g = lambert_derivative(t, 2 * t - 2, pt)?;
    let dg = lambert_derivative(t, 2 * t - 1, pt)?;
    Ok(-(g + 2.0 * PI / pt.xi * dg) / (2.0 * PI))
}

/// The three-sphere free energy from the ground-state energy route,
/// `1/240 - (xi / 2 pi) D^2 chi` with `chi = S_2`.
pub fn f3_mode_sum(pt: &ThermalPoint) -> Result<f64> {
    Ok(1.0 / 240.0 - pt.xi / (2.0 * PI) * lambert_derivative(2, 2, pt)?)
}

/// `(1, D, D^2)` applied to `S_2` at `b`.
fn chi_jet(b: f64) -> Result<[f64; 3]> {
    let p = HalfPlanePoint::real(b)?;
    let s = lambert_s(2, &p)?.value.re;
    let d1 = log_deriv_d(&LambertS { t: 2 }, 1, &p)?.value.re;
    let d2 = log_deriv_d(&LambertS { t: 2 }, 2, &p)?.value.re;
    Ok([s, d1, d2])
}

/// `d/dxi sum' (m^2 + xi^2 n^2)^-2`, differentiating the `q'` expansion termwise.
fn z2_quartic_derivative_high(xi: f64) -> Result<f64> {
    let [c, d1, d2] = chi_jet(xi)?;
    let z3 = zeta_real(3.0);
    Ok(-3.0 * PI * (z3 + 2.0 * c) / xi.powi(4) - 12.0 * PI * PI * d1 / xi.powi(3) - 8.0 * PI.powi(3) * d2 / (xi * xi))
}

/// The same derivative from the `q` expansion.
fn z2_quartic_derivative_low(xi: f64) -> Result<f64> {
    let [c, d1, d2] = chi_jet(1.0 / xi)?;
    let z3 = zeta_real(3.0);
    Ok(-4.0 * PI.powi(4) / 45.0 / xi.powi(5) - PI * (z3 + 2.0 * c) / (xi * xi) - 4.0 * PI * PI * d1 / xi.powi(3)
        + 8.0 * PI.powi(3) * d2 / xi.powi(4))
}

/// The three-sphere free energy from the quartic Epstein function,
/// `-(xi^4 / 16 pi^4) d/dxi (xi Z(xi))` with `Z(xi) = sum' (m^2 + xi^2 n^2)^-2`.
pub fn f3_epstein(pt: &ThermalPoint) -> Result<f64> {
    let xi = pt.xi;
    // checks the two expansions of Z against each other
    z2_quartic(xi)?;
    let forms = z2_quartic_forms(xi)?;
    let f = |z: f64, dz: f64| -xi.powi(4) / (16.0 * PI.powi(4)) * (z + xi * dz);
    let high = f(forms.high, z2_quartic_derivative_high(xi)?);
    let low = f(forms.low, z2_quartic_derivative_low(xi)?);
    if (high - low).abs() > 1e-10 * low.abs().max(1.0) {
        return Err(Error::Inconsistency(format!(
            "free energy from the two quartic expansions differs at xi = {xi}: {high} vs {low}"
        )));
    }
    // the expansion in the smaller nome is the accurate one
    Ok(if xi >= 1.0 { high } else { low })
}

/// Degeneracies `d_n` of a spectrum with `omega_n = n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degeneracy {
    /// `d_n = sum c_k n^k`
    Polynomial { degeneracy_coeffs: Vec<f64> },
    /// `d_1, ..., d_N`, zero beyond.
    Modes { degeneracies: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSpec {
    pub label: String,
    #[serde(default = "default_omega")]
    pub omega: String,
    #[serde(flatten)]
    pub degeneracy: Degeneracy,
}

fn default_omega() -> String {
    "n".into()
}

impl SpectrumSpec {
    pub fn polynomial(label: &str, coeffs: Vec<f64>) -> Result<Self> {
        let s = SpectrumSpec {
            label: label.into(),
            omega: default_omega(),
            degeneracy: Degeneracy::Polynomial { degeneracy_coeffs: coeffs },
        };
        s.validate()?;
        Ok(s)
    }

    pub fn modes(label: &str, degeneracies: Vec<f64>) -> Result<Self> {
        let s = SpectrumSpec {
            label: label.into(),
            omega: default_omega(),
            degeneracy: Degeneracy::Modes { degeneracies },
        };
        s.validate()?;
        Ok(s)
    }

    /// Conformal scalar on the three-sphere, `d_n = n^2`.
    pub fn s3() -> Self {
        Self::polynomial("S3 conformal scalar", vec![0.0, 0.0, 1.0]).expect("n^2 is a valid degeneracy")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: SpectrumSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.omega != "n" {
            return Err(Error::Unsupported(format!("frequencies {:?}; only omega_n = n", self.omega)));
        }
        match &self.degeneracy {
            Degeneracy::Polynomial { degeneracy_coeffs: c } => {
                if c.len() > 7 {
                    return Err(Error::domain("degeneracy polynomial degree must be <= 6"));
                }
                let c = trimmed(c);
                if c.iter().any(|x| !x.is_finite()) {
                    return Err(Error::domain("degeneracy coefficients must be finite"));
                }
                let Some(&lead) = c.last() else {
                    return Err(Error::domain("degeneracy polynomial is zero"));
                };
                if lead < 0.0 {
                    return Err(Error::domain("degeneracies must be non-negative"));
                }
                // every real root lies below the Cauchy bound
                let bound = 1.0 + c.iter().map(|x| (x / lead).abs()).fold(0.0, f64::max);
                let mut n = 1.0;
                while n <= bound + 1.0 {
                    if eval_poly(c, n) < 0.0 {
                        return Err(Error::domain(format!("degeneracy d_{n} is negative")));
                    }
                    n += 1.0;
                }
            }
            Degeneracy::Modes { degeneracies: d } => {
                if d.iter().any(|x| !(*x >= 0.0) || !x.is_finite()) {
                    return Err(Error::domain("degeneracies must be non-negative and finite"));
                }
            }
        }
        Ok(())
    }

    pub fn degeneracy(&self, n: usize) -> f64 {
        match &self.degeneracy {
            Degeneracy::Polynomial { degeneracy_coeffs: c } => eval_poly(c, n as f64),
            Degeneracy::Modes { degeneracies: d } => d.get(n.wrapping_sub(1)).copied().unwrap_or(0.0),
        }
    }

    /// `(C, k)` with `d_n <= C n^k`, or the number of modes for a finite list.
    fn growth(&self) -> std::result::Result<(f64, f64), usize> {
        match &self.degeneracy {
            Degeneracy::Polynomial { degeneracy_coeffs: c } => {
                let c = trimmed(c);
                Ok((c.iter().map(|x| x.abs()).sum(), c.len().saturating_sub(1) as f64))
            }
            Degeneracy::Modes { degeneracies: d } => Err(d.len()),
        }
    }

    /// `zeta_M(-1/2) = sum d_n omega_n`, regularized as `sum c_k zeta(-1-k)`.
    pub fn zeta_m_at_minus_half(&self) -> Result<f64> {
        match &self.degeneracy {
            Degeneracy::Polynomial { degeneracy_coeffs: c } => {
                let mut acc = 0.0;
                for (k, ck) in c.iter().enumerate() {
                    let arg = -1 - k as i64;
                    // zeta vanishes at negative even integers
                    if arg % 2 != 0 && *ck != 0.0 {
                        acc += ck * rat_to_f64(&zeta_negative_exact(arg)?);
                    }
                }
                Ok(acc)
            }
            Degeneracy::Modes { degeneracies: d } => Ok(d.iter().enumerate().map(|(i, x)| x * (i + 1) as f64).sum()),
        }
    }

    /// Number of modes to keep at inverse temperature `beta` for a tail below `tol`.
    fn cutoff(&self, beta: f64, tol: f64) -> Result<usize> {
        match self.growth() {
            Err(len) => Ok(len),
            Ok((c, k)) => {
                // |log(1 - x)| <= x / (1 - x)
                let scale = c / (1.0 - (-beta).exp());
                let mut n = 1usize;
                while !geometric_tail(scale, k, beta, (n + 1) as f64).is_some_and(|t| t <= tol) {
                    n = (n + 1).max(n + n / 8);
                    if n > MAX_MODES {
                        return Err(Error::convergence("mode sum", format!("more than {MAX_MODES} modes at beta = {beta}")));
                    }
                }
                Ok(n)
            }
        }
    }
}

fn trimmed(c: &[f64]) -> &[f64] {
    let len = c.iter().rposition(|x| *x != 0.0).map_or(0, |i| i + 1);
    &c[..len]
}

fn eval_poly(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, ck| acc * x + ck)
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain(format!("mode sums need finite beta > 0, got {beta}")));
    }
    Ok(())
}

/// `(1/beta) sum d_n log(1 - e^(-n beta))`.
pub fn mode_sum_thermal(spec: &SpectrumSpec, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let n = spec.cutoff(beta, 1e-17)?;
    let acc: f64 = (1..=n)
        .rev()
        .map(|m| spec.degeneracy(m) * (-(-(m as f64) * beta).exp()).ln_1p())
        .sum();
    Ok(acc / beta)
}

/// `F = (1/2) zeta_M(-1/2) + (1/beta) sum d_n log(1 - e^(-omega_n beta))`.
pub fn mode_sum_free_energy(spec: &SpectrumSpec, beta: f64) -> Result<f64> {
    Ok(0.5 * spec.zeta_m_at_minus_half()? + mode_sum_thermal(spec, beta)?)
}

/// `F = -(1/2 beta) zeta'(0)` for the thermal operator, with each mode's zeta
/// function written through the one-dimensional massive Epstein function at
/// `w_n = beta n / 2 pi`. At `s = 0` only the `K_{1/2}` terms survive:
/// `F = (1/2) zeta_M(-1/2) - (2/beta) sum_n d_n sqrt(w_n) sum_m m^(-1/2) K_{1/2}(2 pi m w_n)`.
pub fn thermal_zeta_free_energy(spec: &SpectrumSpec, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let n_max = spec.cutoff(beta, 1e-17)?;
    let mut acc = 0.0;
    for n in (1..=n_max).rev() {
        let d = spec.degeneracy(n);
        if d == 0.0 {
            continue;
        }
        let w = beta * n as f64 / (2.0 * PI);
        let x = 2.0 * PI * w;
        let mut inner = 0.0;
        let mut m = 1usize;
        loop {
            let mf = m as f64;
            inner += bessel_k(0.5, x * mf)? / mf.sqrt();
            // remaining terms are at most sqrt(pi/2x) e^(-m x) / (1 - e^-x), times m^-1
            let tail = (PI / (2.0 * x)).sqrt() * (-(mf + 1.0) * x).exp() / (1.0 - (-x).exp()) / (mf + 1.0);
            if tail <= 1e-18 * inner.abs() || m >= 1_000_000 {
                break;
            }
            m += 1;
        }
        acc += d * w.sqrt() * inner;
    }
    Ok(0.5 * spec.zeta_m_at_minus_half()? - 2.0 * acc / beta)
}
