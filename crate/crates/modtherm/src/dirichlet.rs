//! Paired Dirichlet series `phi(s) = sum a_n lambda_n^-s`, `psi(s) = sum b_n mu_n^-s`
//! tied by `Gamma(delta - s) psi(delta - s) = Gamma(s) phi(s)`.
//!
//! The poles of that common function at `s = 0` and `s = delta` are carried by
//! the zero modes `a_0 = -phi(0)` and `b_0 = -psi(0)`; `residues` lists any others.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::epstein::{bessel_k, representation_counts};
use crate::error::{Error, Result};
use crate::exactnum::special::hurwitz_zeta_complex;
use crate::exactnum::{gamma_numeric, gamma_real, sigma_table, zeta_real};
use crate::quad::integrate_to_inf;
use crate::tail::{bessel_envelope, gamma_tail, geometric_tail, sigma_bound};
use crate::Complex64;

const MAX_TERMS: usize = 5_000_000;
const EXACT_TAIL_FROM: usize = 400;

/// Coefficient sequence `n -> c_n`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Coefficients {
    /// `scale * sigma_k(n) * n^power`
    Sigma { k: f64, power: f64, scale: f64 },
    /// `scale * r_p(n)`
    Representations { p: u32, scale: f64 },
    Constant { value: f64 },
    Table { values: Vec<f64> },
}

/// Exponent sequence `n -> lambda_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Spectrum {
    /// `scale * n`
    Linear { scale: f64 },
    /// `scale * n^2`
    Squares { scale: f64 },
    Table { values: Vec<f64> },
}

impl Coefficients {
    /// `(C, d)` with `|c_n| <= C n^d`.
    fn bound(&self) -> Option<(f64, f64)> {
        match self {
            Coefficients::Sigma { k, power, scale } => {
                let (a, alpha) = sigma_bound(*k);
                Some((scale.abs() * a, alpha + power))
            }
            Coefficients::Representations { p, scale } => Some((scale.abs() * 3f64.powi(*p as i32), *p as f64 / 2.0)),
            Coefficients::Constant { value } => Some((value.abs(), 0.0)),
            Coefficients::Table { .. } => None,
        }
    }

    fn len(&self) -> Option<usize> {
        match self {
            Coefficients::Table { values } => Some(values.len()),
            _ => None,
        }
    }

    /// `c_1, ..., c_n`.
    fn values(&self, n: usize) -> Vec<f64> {
        match self {
            Coefficients::Sigma { k, power, scale } => {
                let table = sigma_table(*k, n);
                (1..=n).map(|m| scale * table[m] * (m as f64).powf(*power)).collect()
            }
            Coefficients::Representations { p, scale } => {
                let r = representation_counts(*p, n);
                r[1..].iter().map(|&c| scale * c as f64).collect()
            }
            Coefficients::Constant { value } => vec![*value; n],
            Coefficients::Table { values } => values.iter().take(n).copied().collect(),
        }
    }
}

impl Spectrum {
    /// `(kappa, e)` with `lambda_n = kappa n^e`.
    fn power_law(&self) -> Option<(f64, f64)> {
        match self {
            Spectrum::Linear { scale } => Some((*scale, 1.0)),
            Spectrum::Squares { scale } => Some((*scale, 2.0)),
            Spectrum::Table { .. } => None,
        }
    }

    fn len(&self) -> Option<usize> {
        match self {
            Spectrum::Table { values } => Some(values.len()),
            _ => None,
        }
    }

    fn values(&self, n: usize) -> Vec<f64> {
        match self {
            Spectrum::Linear { scale } => (1..=n).map(|m| scale * m as f64).collect(),
            Spectrum::Squares { scale } => (1..=n).map(|m| scale * (m * m) as f64).collect(),
            Spectrum::Table { values } => values.iter().take(n).copied().collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        let v = match self {
            Spectrum::Linear { scale } | Spectrum::Squares { scale } => vec![*scale],
            Spectrum::Table { values } => values.clone(),
        };
        if v.first().is_some_and(|x| !(*x > 0.0)) || v.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("spectrum must be positive and strictly increasing"));
        }
        Ok(())
    }
}

/// One Dirichlet series `sum c_n lambda_n^-s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub coefficients: Coefficients,
    pub spectrum: Spectrum,
}

struct Terms {
    c: Vec<f64>,
    lambda: Vec<f64>,
}

impl Series {
    fn finite_len(&self) -> Option<usize> {
        match (self.coefficients.len(), self.spectrum.len()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) | (None, Some(a)) => Some(a),
            (None, None) => None,
        }
    }

    /// `(C, d, kappa, e)` for infinite series.
    fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        if self.finite_len().is_some() {
            return None;
        }
        let (c, d) = self.coefficients.bound()?;
        let (kappa, e) = self.spectrum.power_law()?;
        Some((c, d, kappa, e))
    }

    fn terms(&self, n: usize) -> Terms {
        let n = self.finite_len().map_or(n, |len| len.min(n));
        Terms {
            c: self.coefficients.values(n),
            lambda: self.spectrum.values(n),
        }
    }

    /// Smallest `N` for which `tail(N)` (a bound on the terms beyond `N`) is at most `tol`.
    fn cutoff(&self, what: &'static str, tail: impl Fn(f64) -> Option<f64>, tol: f64) -> Result<usize> {
        if let Some(len) = self.finite_len() {
            return Ok(len);
        }
        let mut n = 1usize;
        while !tail(n as f64).is_some_and(|t| t <= tol) {
            n = (n + 1).max(n + n / 8);
            if n > MAX_TERMS {
                return Err(Error::convergence(what, format!("more than {MAX_TERMS} terms needed")));
            }
        }
        Ok(n)
    }

    /// `sum c_n e^(-lambda_n beta)` without the zero mode.
    pub fn heat_kernel(&self, beta: f64, tol: f64) -> Result<f64> {
        if !(beta > 0.0) {
            return Err(Error::domain("heat kernel needs beta > 0"));
        }
        let tail = |n: f64| {
            let (c, d, kappa, _) = self.bounds()?;
            // kappa n^e >= kappa n
            geometric_tail(c, d, kappa * beta, n + 1.0)
        };
        let n = self.cutoff("heat kernel", tail, tol)?;
        let t = self.terms(n);
        Ok(t.c.iter().zip(&t.lambda).rev().map(|(c, l)| c * (-l * beta).exp()).sum())
    }

    /// `sum c_n lambda_n^-s` for `Re s` beyond the abscissa of absolute convergence.
    pub fn dirichlet(&self, s: Complex64, tol: f64) -> Result<Complex64> {
        let sigma = s.re;
        if let Some((_, d, _, e)) = self.bounds() {
            if !(e * sigma > d + 1.0) {
                return Err(Error::domain(format!("Dirichlet series does not converge absolutely at s = {s}")));
            }
        }
        let (n, mut acc) = match self.exact_tail(s, EXACT_TAIL_FROM) {
            Some(tail) => (EXACT_TAIL_FROM, tail),
            None => {
                let tail = |n: f64| {
                    let (c, d, kappa, e) = self.bounds()?;
                    let ex = e * sigma - d - 1.0;
                    Some(c * kappa.powf(-sigma) * n.powf(-ex) / ex)
                };
                (self.cutoff("Dirichlet series", tail, tol)?, Complex64::new(0.0, 0.0))
            }
        };
        let t = self.terms(n);
        for (c, l) in t.c.iter().zip(&t.lambda).rev() {
            acc += c * (-s * l.ln()).exp();
        }
        Ok(acc)
    }

    /// `sum_{n > N} c_n lambda_n^-s` in closed form where the coefficients allow it.
    /// Divisor sums split along `n = d m` into Hurwitz zeta values.
    fn exact_tail(&self, s: Complex64, n: usize) -> Option<Complex64> {
        let h = |s: Complex64, a: f64| hurwitz_zeta_complex(s, a);
        let big_n = n as f64;
        match (&self.coefficients, &self.spectrum) {
            (&Coefficients::Sigma { k, power, scale }, &Spectrum::Linear { scale: kappa }) => {
                let u = s - power;
                if !(u.re > k + 1.0 && u.re > 1.0) {
                    return None;
                }
                let mut acc = h(u, 1.0) * h(u - k, big_n + 1.0);
                for d in (1..=n).rev() {
                    let df = d as f64;
                    acc += ((k - u) * df.ln()).exp() * h(u, (n / d) as f64 + 1.0);
                }
                Some(scale * (-s * kappa.ln()).exp() * acc)
            }
            (&Coefficients::Constant { value }, &Spectrum::Linear { scale: kappa }) if s.re > 1.0 => {
                Some(value * (-s * kappa.ln()).exp() * h(s, big_n + 1.0))
            }
            (&Coefficients::Constant { value }, &Spectrum::Squares { scale: kappa }) if s.re > 0.5 => {
                Some(value * (-s * kappa.ln()).exp() * h(2.0 * s, big_n + 1.0))
            }
            _ => None,
        }
    }

    /// `sum c_n (lambda_n / w^2)^(nu/2) K_nu(2 w sqrt(lambda_n))`.
    fn bessel(&self, nu: f64, w: f64, tol: f64) -> Result<f64> {
        let bounds = self.bounds();
        let tail = |n: f64| {
            let (c, d, kappa, e) = bounds?;
            let rate = 2.0 * w * kappa.sqrt();
            let env = bessel_envelope(nu, rate).ok()?;
            let b = c * env * (kappa / (w * w)).powf(nu / 2.0) / rate.sqrt();
            let alpha = d + e * nu / 2.0 - e / 4.0;
            // terms b n^alpha e^(-rate n^(e/2)) must already decrease at n
            if alpha / n - rate * (e / 2.0) * n.powf(e / 2.0 - 1.0) >= 0.0 {
                return None;
            }
            let m = 2.0 * alpha / e + 2.0 / e - 1.0;
            Some(b * 2.0 / e * gamma_tail(m, rate, n.powf(e / 2.0))?)
        };
        let n = self.cutoff("Bessel series", tail, tol)?;
        let t = self.terms(n);
        let mut acc = 0.0;
        for (c, l) in t.c.iter().zip(&t.lambda).rev() {
            acc += c * (l / (w * w)).powf(nu / 2.0) * bessel_k(nu, 2.0 * w * l.sqrt())?;
        }
        Ok(acc)
    }
}

/// The constants of `sum a_n e^(-n b rho) = a rho^-nu sum b_n e^(-n b / rho)`,
/// with `psi0` the value at zero of `sum b_n n^-s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Koshliakov {
    pub a: f64,
    pub b: f64,
    pub nu: f64,
    pub psi0: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residue {
    pub at: Complex64,
    pub residue: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletDatum {
    pub phi: Series,
    pub psi: Series,
    pub delta: f64,
    /// Poles of `Gamma(s) phi(s)` other than `s = 0` and `s = delta`.
    pub residues: Vec<Residue>,
    /// `(a_0, b_0) = (-phi(0), -psi(0))`
    pub zero_modes: (f64, f64),
    /// Abscissa of absolute convergence of `phi`.
    pub sigma0: f64,
    pub koshliakov: Option<Koshliakov>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum DatumSpec {
    Eisenstein {
        t: u32,
    },
    DiagonalEpstein {
        p: u32,
    },
    Theta,
    Custom {
        phi: Series,
        psi: Series,
        delta: f64,
        #[serde(default)]
        residues: Vec<Residue>,
        zero_modes: (f64, f64),
        #[serde(default)]
        sigma0: Option<f64>,
        #[serde(default)]
        koshliakov: Option<Koshliakov>,
    },
}

impl DirichletDatum {
    /// Koshliakov's data for a pair of ordinary Dirichlet series, rescaled to
    /// `lambda_n = n`, `mu_n = b^2 n`, `b_n -> a b^nu b_n`.
    pub fn from_koshliakov(
        a_n: Coefficients,
        b_n: Coefficients,
        k: Koshliakov,
        phi0: f64,
        sigma0: f64,
    ) -> Result<Self> {
        let scale = k.a * k.b.powf(k.nu);
        let b_scaled = match b_n {
            Coefficients::Sigma { k: kk, power, scale: s } => Coefficients::Sigma {
                k: kk,
                power,
                scale: s * scale,
            },
            Coefficients::Representations { p, scale: s } => Coefficients::Representations { p, scale: s * scale },
            Coefficients::Constant { value } => Coefficients::Constant { value: value * scale },
            Coefficients::Table { values } => Coefficients::Table {
                values: values.iter().map(|v| v * scale).collect(),
            },
        };
        let d = DirichletDatum {
            phi: Series {
                coefficients: a_n,
                spectrum: Spectrum::Linear { scale: 1.0 },
            },
            psi: Series {
                coefficients: b_scaled,
                spectrum: Spectrum::Linear { scale: k.b * k.b },
            },
            delta: k.nu,
            residues: Vec::new(),
            zero_modes: (-phi0, -scale * k.psi0),
            sigma0,
            koshliakov: Some(k),
        };
        d.validate()?;
        Ok(d)
    }

    /// `a_n = b_n = sigma_{2t-1}(n)`, `nu = 2t`, `a = (-1)^t`, `b = 2 pi`.
    pub fn eisenstein(t: u32) -> Result<Self> {
        if t < 2 {
            return Err(Error::domain("Eisenstein datum needs t >= 2"));
        }
        let k = (2 * t - 1) as f64;
        let sigma = Coefficients::Sigma {
            k,
            power: 0.0,
            scale: 1.0,
        };
        // phi(0) = zeta(0) zeta(1 - 2t)
        let phi0 = -0.5 * zeta_real(1.0 - 2.0 * t as f64);
        let kosh = Koshliakov {
            a: if t % 2 == 0 { 1.0 } else { -1.0 },
            b: 2.0 * PI,
            nu: 2.0 * t as f64,
            psi0: phi0,
        };
        Self::from_koshliakov(sigma.clone(), sigma, kosh, phi0, 2.0 * t as f64)
    }

    /// `phi = Z_p`, the Epstein function of `Z^p`, grouped by `r_p(n)`.
    pub fn diagonal_epstein(p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("diagonal Epstein datum needs p >= 1"));
        }
        let half = p as f64 / 2.0;
        let d = DirichletDatum {
            phi: Series {
                coefficients: Coefficients::Representations { p, scale: 1.0 },
                spectrum: Spectrum::Linear { scale: 1.0 },
            },
            psi: Series {
                coefficients: Coefficients::Representations {
                    p,
                    scale: PI.powf(half),
                },
                spectrum: Spectrum::Linear { scale: PI * PI },
            },
            delta: half,
            residues: Vec::new(),
            // Z_p(0) = -1
            zero_modes: (1.0, PI.powf(half)),
            sigma0: half,
            koshliakov: None,
        };
        Ok(d)
    }

    /// `a_n = b_n = 1`, `lambda_n = mu_n = pi n^2`: the Jacobi theta inversion.
    pub fn theta() -> Self {
        let s = Series {
            coefficients: Coefficients::Constant { value: 1.0 },
            spectrum: Spectrum::Squares { scale: PI },
        };
        DirichletDatum {
            phi: s.clone(),
            psi: s,
            delta: 0.5,
            residues: Vec::new(),
            zero_modes: (0.5, 0.5),
            sigma0: 0.5,
            koshliakov: None,
        }
    }

    /// Load `{"kind": "eisenstein" | "diagonal_epstein" | "theta" | "custom", ...}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: DatumSpec = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match spec {
            DatumSpec::Eisenstein { t } => Self::eisenstein(t),
            DatumSpec::DiagonalEpstein { p } => Self::diagonal_epstein(p),
            DatumSpec::Theta => Ok(Self::theta()),
            DatumSpec::Custom {
                phi,
                psi,
                delta,
                residues,
                zero_modes,
                sigma0,
                koshliakov,
            } => {
                let d = DirichletDatum {
                    phi,
                    psi,
                    delta,
                    residues,
                    zero_modes,
                    sigma0: sigma0.unwrap_or(f64::NEG_INFINITY),
                    koshliakov,
                };
                d.validate()?;
                Ok(d)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        self.phi.spectrum.validate()?;
        self.psi.spectrum.validate()
    }

    /// Exchange the roles of `phi` and `psi`.
    pub fn swap(&self) -> Self {
        DirichletDatum {
            phi: self.psi.clone(),
            psi: self.phi.clone(),
            delta: self.delta,
            residues: self
                .residues
                .iter()
                .map(|r| Residue {
                    at: Complex64::new(self.delta, 0.0) - r.at,
                    residue: -r.residue,
                })
                .collect(),
            zero_modes: (self.zero_modes.1, self.zero_modes.0),
            sigma0: f64::NEG_INFINITY,
            koshliakov: None,
        }
    }

    pub fn heat_kernels(&self) -> HeatKernelPair<'_> {
        HeatKernelPair { datum: self }
    }
}

const KERNEL_TOL: f64 = 1e-16;

/// `Phi` and `Psi` including their zero modes.
pub struct HeatKernelPair<'a> {
    datum: &'a DirichletDatum,
}

impl HeatKernelPair<'_> {
    pub fn phi(&self, beta: f64) -> Result<f64> {
        Ok(self.datum.zero_modes.0 + self.datum.phi.heat_kernel(beta, KERNEL_TOL)?)
    }

    pub fn psi(&self, beta: f64) -> Result<f64> {
        Ok(self.datum.zero_modes.1 + self.datum.psi.heat_kernel(beta, KERNEL_TOL)?)
    }
}

/// `phi(s)` by direct summation.
pub fn phi_direct(d: &DirichletDatum, s: Complex64) -> Result<Complex64> {
    if s.re <= d.sigma0 {
        return Err(Error::domain(format!(
            "phi_direct needs Re s > {}, got {}",
            d.sigma0, s.re
        )));
    }
    d.phi.dirichlet(s, 1e-13)
}

/// `B(beta) = sum beta^-s' Res`, over the listed residues.
pub fn residual_b(d: &DirichletDatum, beta: f64) -> Complex64 {
    d.residues
        .iter()
        .map(|r| r.residue * (-r.at * beta.ln()).exp())
        .sum()
}

/// `Phi(beta) - beta^-delta Psi(1/beta) - B(beta)`.
pub fn modular_relation_residual(d: &DirichletDatum, beta: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::domain("modular relation needs beta > 0"));
    }
    let k = d.heat_kernels();
    Ok(k.phi(beta)? - beta.powf(-d.delta) * k.psi(1.0 / beta)? - residual_b(d, beta).re)
}

pub fn modular_relation_gap(d: &DirichletDatum, beta: f64) -> Result<f64> {
    Ok(modular_relation_residual(d, beta)?.abs())
}

/// The modular relation in Koshliakov's variable, `beta = b rho`.
pub fn koshliakov_gap(d: &DirichletDatum, rho: f64) -> Result<f64> {
    let k = d
        .koshliakov
        .ok_or_else(|| Error::domain("datum carries no Koshliakov constants"))?;
    modular_relation_gap(d, k.b * rho)
}

fn rgamma_real(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / gamma_real(x)
    }
}

/// `phi(s, w) = sum a_n (lambda_n + w^2)^-s` from the Bessel representation
/// `Gamma(s) phi(s, w) = R(s, w) + 2 sum b_n (mu_n/w^2)^((s-delta)/2) K_{s-delta}(2 w sqrt(mu_n))`.
pub fn berndt_phi(d: &DirichletDatum, s: f64, w: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(Error::domain("berndt_phi needs w > 0"));
    }
    let r = residual_r(d, s, w)?;
    let rg = rgamma_real(s);
    if rg == 0.0 {
        return Err(Error::Singularity(format!("Gamma(s) has a pole at s = {s}")));
    }
    let scale = r.abs().max(1e-300);
    let bessel = d.psi.bessel(s - d.delta, w, 1e-16 * scale.max(1.0))?;
    Ok((r + 2.0 * bessel) * rg)
}

/// `R(s, w) = sum Gamma(s - s') w^(2s' - 2s) Res(s')` over all poles.
pub fn residual_r(d: &DirichletDatum, s: f64, w: f64) -> Result<f64> {
    let mut poles = vec![(0.0, -d.zero_modes.0), (d.delta, d.zero_modes.1)];
    for r in &d.residues {
        if r.at.im != 0.0 || r.residue.im != 0.0 {
            return Err(Error::Unsupported("complex residues in R(s, w)".into()));
        }
        poles.push((r.at.re, r.residue.re));
    }
    let mut acc = 0.0;
    for (at, res) in poles {
        if res == 0.0 {
            continue;
        }
        let x = s - at;
        if x <= 0.0 && x == x.round() {
            return Err(Error::Singularity(format!("Gamma(s - {at}) has a pole at s = {s}")));
        }
        acc += gamma_real(x) * w.powf(2.0 * at - 2.0 * s) * res;
    }
    Ok(acc)
}

/// `phi(s)` for any `s` away from its poles, from the split of the Mellin
/// integral at `beta = 1` and the modular relation.
pub fn phi_continued(d: &DirichletDatum, s: Complex64) -> Result<Complex64> {
    let tol = 1e-15;
    let mellin = |series: &Series, exponent: Complex64| -> Result<Complex64> {
        let err = std::cell::RefCell::new(None);
        let kernel = |beta: f64| crate::qseries::capture(series.heat_kernel(beta, 1e-17), &err);
        let re = integrate_to_inf(
            |b| kernel(b) * (exponent * b.ln()).exp().re / b,
            1.0,
            tol,
            tol,
        );
        let im = integrate_to_inf(
            |b| kernel(b) * (exponent * b.ln()).exp().im / b,
            1.0,
            tol,
            tol,
        );
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(Complex64::new(re?.value, im?.value))
    };
    let delta = Complex64::new(d.delta, 0.0);
    let mut chi = mellin(&d.phi, s)? + mellin(&d.psi, delta - s)?;
    chi += -d.zero_modes.0 / s + d.zero_modes.1 / (s - delta);
    for r in &d.residues {
        chi += r.residue / (s - r.at);
    }
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::Singularity(format!("s = {} is a pole of Gamma", s.re)));
    }
    Ok(chi / gamma_numeric(s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleResidue {
    pub location: f64,
    /// `lim (s - nu) phi(s)` by Richardson extrapolation.
    pub numeric: f64,
    /// `-psi(0) a b^nu / Gamma(nu)`
    pub closed_form: f64,
}

/// Residue of `phi` at `s = nu` for a datum carrying Koshliakov constants.
pub fn pole_residue(d: &DirichletDatum) -> Result<PoleResidue> {
    let k = d
        .koshliakov
        .ok_or_else(|| Error::domain("pole_residue needs Koshliakov constants"))?;
    let nu = k.nu;
    let levels = 7;
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(levels);
    for i in 0..levels {
        let h = 0.25 / 2f64.powi(i as i32);
        let f = h * phi_continued(d, Complex64::new(nu + h, 0.0))?.re;
        let mut row = vec![f];
        for j in 1..=i {
            let prev = row[j - 1];
            let up = table[i - 1][j - 1];
            row.push(prev + (prev - up) / (2f64.powi(j as i32) - 1.0));
        }
        table.push(row);
    }
    let best = table[levels - 1][levels - 1];
    let last = table[levels - 2][levels - 2];
    if (best - last).abs() > 1e-9 * best.abs().max(1e-3) {
        return Err(Error::convergence(
            "pole_residue",
            format!("Richardson table unsettled: {last} vs {best}"),
        ));
    }
    let closed = -k.psi0 * k.a * k.b.powf(nu) * rgamma_real(nu);
    Ok(PoleResidue {
        location: nu,
        numeric: best,
        closed_form: closed,
    })
}
