//! Exact period polynomials and the cocycle algebra of the weight `2t`
//! Eisenstein series.
//!
//! Polynomials in the real variable `x = -i tau` are [`PolynomialForm`]s with
//! real symbolic coefficients. Cocycles live in `tau` as
//! [`RationalPeriodFunction`]s, with `P(S, tau) = i Pbar_t(-i tau)` and
//! `P(T, tau) = 2 zeta(2t) / (tau (tau + 1))`.

mod group;
mod poly;

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

pub use group::{word_matrix, Generator, GroupElement};
pub use poly::{CSym, Lin, RationalPeriodFunction};

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli, factorial, rat, zeta_even_exact, Rational, SymScalar};
use crate::qseries::{self, casimir_constant, HalfPlanePoint, LambertS};

fn check_t(t: u32) -> Result<()> {
    if t < 2 {
        return Err(Error::domain(format!("period polynomials need t >= 2, got {t}")));
    }
    Ok(())
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `zeta(2j)` exactly, with `zeta(0) = -1/2`.
fn zeta_even_or_zero(j2: u32) -> SymScalar {
    if j2 == 0 {
        SymScalar::from_rational(rat(-1, 2))
    } else {
        zeta_even_exact(j2).expect("even argument")
    }
}

/// A polynomial in `x` with real symbolic coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialForm {
    pub weight_t: u32,
    pub coeffs: Vec<SymScalar>,
}

impl PolynomialForm {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn coefficient(&self, k: usize) -> SymScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval_exact(&self, x: &Rational) -> SymScalar {
        let mut acc = SymScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(x);
            acc += c;
        }
        acc
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    /// `(i x)^(2t-2) f(1/x)`, computed as `(-1)^(t-1) x^(2t-2) f(1/x)`.
    pub fn invert(&self) -> Self {
        let r = (2 * self.weight_t - 2) as usize;
        let s = Rational::from_integer(BigInt::from(sign(self.weight_t as i64 - 1)));
        let mut coeffs = vec![SymScalar::zero(); r + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            assert!(k <= r, "degree exceeds 2t - 2");
            coeffs[r - k] = c.scale(&s);
        }
        PolynomialForm {
            weight_t: self.weight_t,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolynomialForm {
            weight_t: self.weight_t,
            coeffs: (0..n).map(|k| &self.coefficient(k) + &other.coefficient(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The same polynomial as a function of `x` (weight `2t - 2`).
    pub fn to_rpf(&self) -> RationalPeriodFunction {
        RationalPeriodFunction::polynomial(
            self.coeffs.iter().cloned().map(CSym::real).collect(),
            (2 * self.weight_t - 2) as i64,
        )
    }

    /// `i f(-i tau)` as a cocycle in `tau`.
    pub fn to_tau(&self) -> RationalPeriodFunction {
        let terms: Vec<(i64, SymScalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c.clone()))
            .collect();
        laurent_x_to_tau(&terms, (2 * self.weight_t - 2) as i64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<(i64, SymScalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (k as i64, c.clone()))
            .collect();
        laurent_json(self.weight_t, &terms)
    }
}

/// `sum c_k x^k` mapped to `i sum c_k (-i tau)^k`.
fn laurent_x_to_tau(terms: &[(i64, SymScalar)], weight: i64) -> RationalPeriodFunction {
    let mapped: Vec<(i64, CSym)> = terms
        .iter()
        .map(|(k, c)| (*k, CSym::real(c.clone()).mul_i_pow(1 + 3 * k)))
        .collect();
    RationalPeriodFunction::laurent(&mapped, weight)
}

#[derive(Serialize)]
struct JsonTerm {
    x_power: i64,
    pi_power: u32,
    zeta_arg: u32,
    rational: String,
}

fn laurent_json(t: u32, terms: &[(i64, SymScalar)]) -> serde_json::Value {
    let mut out = Vec::new();
    for (k, c) in terms {
        for (m, v) in c.terms() {
            out.push(JsonTerm {
                x_power: *k,
                pi_power: m.pi_power,
                zeta_arg: m.zeta_arg,
                rational: v.to_string(),
            });
        }
    }
    serde_json::json!({ "weight_t": t, "terms": out })
}

/// Coefficient of `x^(2t-2j-1)` in the extended sum, `-4 (-1)^(t-j) zeta(2j) zeta(2t-2j)`.
fn product_term(t: u32, j: u32) -> SymScalar {
    let z = zeta_even_or_zero(2 * j)
        .try_mul(&zeta_even_or_zero(2 * t - 2 * j))
        .expect("even zeta values have no odd zeta factor");
    z.scale(&Rational::from_integer(BigInt::from(-4 * sign((t - j) as i64))))
}

/// The period polynomial `Pbar_t(x)` of degree `2t - 2`.
pub fn pbar(t: u32) -> Result<PolynomialForm> {
    check_t(t)?;
    let r = (2 * t - 2) as usize;
    let mut coeffs = vec![SymScalar::zero(); r + 1];
    let odd = SymScalar::monomial(rat(2, 1), 1, 2 * t - 1);
    coeffs[r] = odd.scale(&Rational::from_integer(BigInt::from(sign(t as i64 - 1))));
    coeffs[0] = -&odd;
    for j in 1..t {
        coeffs[(2 * t - 2 * j - 1) as usize] += &product_term(t, j);
    }
    Ok(PolynomialForm { weight_t: t, coeffs })
}

/// The extended period function `Rbar_t(x)`, `1/x` times a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedPeriod {
    pub weight_t: u32,
    /// `(power of x, coefficient)`, powers from `-1` to `2t - 1`.
    pub terms: Vec<(i64, SymScalar)>,
}

impl ExtendedPeriod {
    pub fn coefficient(&self, k: i64) -> SymScalar {
        self.terms
            .iter()
            .filter(|(p, _)| *p == k)
            .fold(SymScalar::zero(), |acc, (_, c)| &acc + c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms.iter().map(|(k, c)| c.to_f64() * x.powi(*k as i32)).sum()
    }

    /// As a rational function of `x`.
    pub fn to_rpf(&self) -> RationalPeriodFunction {
        let terms: Vec<(i64, CSym)> = self.terms.iter().map(|(k, c)| (*k, CSym::real(c.clone()))).collect();
        RationalPeriodFunction::laurent(&terms, (2 * self.weight_t - 2) as i64)
    }

    pub fn to_tau(&self) -> RationalPeriodFunction {
        laurent_x_to_tau(&self.terms, (2 * self.weight_t - 2) as i64)
    }

    pub fn to_json(&self) -> serde_json::Value {
        laurent_json(self.weight_t, &self.terms)
    }
}

/// `Pbar_t` extended by the `j = 0` and `j = t` end terms.
pub fn rbar(t: u32) -> Result<ExtendedPeriod> {
    let p = pbar(t)?;
    let mut terms: Vec<(i64, SymScalar)> = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k as i64, c.clone()))
        .collect();
    terms.push(((2 * t - 1) as i64, product_term(t, 0)));
    terms.push((-1, product_term(t, t)));
    terms.sort_by_key(|(k, _)| *k);
    Ok(ExtendedPeriod { weight_t: t, terms })
}

/// Zagier's Bernoulli-number form of the Eisenstein period function,
/// `r_G(x) = rational_factor * pi^(-inverse_pi_power) * body(x)`.
#[derive(Clone, Debug)]
pub struct ZagierPeriod {
    pub rational_factor: Rational,
    pub inverse_pi_power: u32,
    pub body: ExtendedPeriod,
}

pub fn zagier_period(t: u32) -> Result<ZagierPeriod> {
    check_t(t)?;
    let mut terms = Vec::new();
    let odd = SymScalar::monomial(rat(2, 1), 1, 2 * t - 1);
    terms.push(((2 * t - 2) as i64, odd.scale(&Rational::from_integer(BigInt::from(sign(t as i64 - 1))))));
    terms.push((0, -&odd));
    // -(2 pi)^(2t) sum_j (-1)^(t-j) B_2j B_(2t-2j) / ((2j)! (2t-2j)!) x^(2j-1)
    let two_pow = Rational::from_integer(BigInt::one() << (2 * t));
    for j in 0..=t {
        let b = bernoulli(2 * j) * bernoulli(2 * t - 2 * j)
            / Rational::from_integer(factorial(2 * j) * factorial(2 * t - 2 * j));
        let c = -b * &two_pow * Rational::from_integer(BigInt::from(sign((t - j) as i64)));
        terms.push(((2 * j) as i64 - 1, SymScalar::monomial(c, 2 * t, 0)));
    }
    terms.sort_by_key(|(k, _)| *k);
    Ok(ZagierPeriod {
        rational_factor: Rational::from_integer(factorial(2 * t - 2))
            / Rational::from_integer(BigInt::from(2) << (2 * t)),
        inverse_pi_power: 2 * t,
        body: ExtendedPeriod { weight_t: t, terms },
    })
}

/// `P(T, tau) = 2 zeta(2t) (1/tau - 1/(tau + 1))`.
pub fn p_t(t: u32) -> Result<RationalPeriodFunction> {
    check_t(t)?;
    let c = zeta_even_exact(2 * t)?.scale(&rat(2, 1));
    Ok(RationalPeriodFunction::from_factors(
        vec![CSym::real(c)],
        &[(1, 0, 1), (1, 1, 1)],
        (2 * t - 2) as i64,
    ))
}

/// `P(S, tau) = i Pbar_t(-i tau)`.
pub fn p_s(t: u32) -> Result<RationalPeriodFunction> {
    Ok(pbar(t)?.to_tau())
}

pub fn stroke(f: &RationalPeriodFunction, g: &GroupElement) -> RationalPeriodFunction {
    f.stroke(g)
}

/// Cocycle values on the generators.
#[derive(Clone, Debug)]
pub struct CocycleGenerators {
    pub s: RationalPeriodFunction,
    pub t: RationalPeriodFunction,
}

impl CocycleGenerators {
    /// The Eisenstein cocycle of weight `2t`.
    pub fn eisenstein(t: u32) -> Result<Self> {
        Ok(CocycleGenerators { s: p_s(t)?, t: p_t(t)? })
    }

    fn letter(&self, g: Generator) -> RationalPeriodFunction {
        match g {
            Generator::S => self.s.clone(),
            Generator::T => self.t.clone(),
            // P(T^-1) = -P(T)|T^-1
            Generator::TInv => self.t.stroke(&Generator::TInv.matrix()).neg(),
        }
    }
}

/// `P(g_1 ... g_n)` from `P(g_1 g_2) = P(g_1)|g_2 + P(g_2)`.
pub fn cocycle_compose(gens: &CocycleGenerators, word: &[Generator]) -> RationalPeriodFunction {
    let mut acc = RationalPeriodFunction::zero(gens.s.weight());
    for g in word {
        acc = acc.stroke(&g.matrix()).add(&gens.letter(*g));
    }
    acc
}

/// Outcome of the two Eichler-Shimura relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EichlerShimura {
    /// `P(S)|(1 + S) = 0`
    pub inversion: bool,
    /// `P(U)|(1 + U + U^2) = 0` with `U = TS`
    pub order_three: bool,
}

impl EichlerShimura {
    pub fn holds(&self) -> bool {
        self.inversion && self.order_three
    }
}

/// Check both relations for `P(S) = p_s`. With `with_pt_zero` the cusp
/// convention `P(T) = 0` is used, so `P(TS) = P(S)`; otherwise `P(T)` is the
/// Eisenstein value for the weight of `p_s`.
pub fn eichler_shimura_report(p_s: &RationalPeriodFunction, with_pt_zero: bool) -> Result<EichlerShimura> {
    let s = GroupElement::s();
    let points = (p_s.weight() + 5).max(1) as usize;
    let inversion = p_s.add(&p_s.stroke(&s)).identical(&RationalPeriodFunction::zero(p_s.weight()), points);
    let u = &GroupElement::t() * &s;
    let p_u = if with_pt_zero {
        p_s.clone()
    } else {
        if p_s.weight() < 2 || p_s.weight() % 2 != 0 {
            return Err(Error::domain("Eisenstein P(T) needs an even weight r >= 2"));
        }
        let t = (p_s.weight() / 2 + 1) as u32;
        p_t(t)?.stroke(&s).add(p_s)
    };
    let once = p_u.stroke(&u);
    let twice = once.stroke(&u);
    let order_three = p_u
        .add(&once)
        .add(&twice)
        .identical(&RationalPeriodFunction::zero(p_s.weight()), points);
    Ok(EichlerShimura { inversion, order_three })
}

pub fn eichler_shimura_check(p_s: &RationalPeriodFunction, with_pt_zero: bool) -> Result<bool> {
    Ok(eichler_shimura_report(p_s, with_pt_zero)?.holds())
}

/// Bol's identity `(D^(r+1) phi)(g tau) = (c tau + d)^(r+2) D^(r+1)((c tau + d)^r phi(g tau))`
/// for a polynomial `phi` in `tau`, with `D = d/dtau`.
pub fn bol_check(phi: &[CSym], g: &GroupElement, r: u32) -> bool {
    let f = RationalPeriodFunction::polynomial(phi.to_vec(), r as i64);
    let lhs = f.nth_derivative(r + 1).with_weight(0).stroke(g);
    let rhs = f
        .stroke(g)
        .nth_derivative(r + 1)
        .mul_linear_power(&g.c, &g.d, (r + 2) as i64);
    lhs.identical(&rhs, (r + 5) as usize)
}

/// The coboundary `E(T) = eps_sub|T - eps_sub = -(1/2) zeta(1-2t) ((tau+1)^(-2t) - tau^(-2t))`.
pub fn coboundary_e_t(t: u32, tau: Complex64) -> Complex64 {
    -casimir_constant(t) * ((tau + 1.0).powi(-2 * t as i32) - tau.powi(-2 * t as i32))
}

/// The constant `c(t)` in `D^(2t-1) phi = c(t) eps_sub`, `phi = -i phi_bar`,
/// `D = d/dtau`, measured on a grid and checked against `D^(2t-1) P(T) = c(t) E(T)`.
pub fn diff_relation_constant(t: u32) -> Result<Complex64> {
    check_t(t)?;
    let k = 2 * t - 1;
    let z2t = crate::exactnum::zeta_real(2.0 * t as f64);
    let fact = crate::exactnum::gamma_real(2.0 * t as f64);
    let grid = [
        Complex64::new(0.0, 0.6),
        Complex64::new(0.0, 0.9),
        Complex64::new(0.3, 1.1),
        Complex64::new(-0.4, 0.8),
        Complex64::new(0.1, 1.5),
        Complex64::new(0.5, 0.7),
    ];
    let mut ratios = Vec::with_capacity(grid.len());
    for tau in grid {
        let p = HalfPlanePoint::new(-Complex64::i() * tau)?;
        // phi = -i (4 pi sum c_m e^(2 pi i m tau)) - 2 zeta(2t) / tau; d/dtau e^(2 pi i m tau) = 2 pi i m (...)
        let dk = qseries::log_deriv_d(&LambertS { t }, k, &p)?.value;
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        let series = -Complex64::i() * 4.0 * PI * two_pi_i.powi(k as i32) * dk;
        let planck = 2.0 * z2t * fact * tau.powi(-2 * t as i32);
        let lhs = series + planck;
        let rhs = qseries::eps_sub(t, &p)?.value;
        ratios.push(lhs / rhs);
    }
    let c = ratios[0];
    for r in &ratios[1..] {
        if (r - c).norm() > 1e-8 * c.norm() {
            return Err(Error::Inconsistency(format!(
                "D^(2t-1) phi / eps_sub is not constant: {c} vs {r}"
            )));
        }
    }
    let tau0 = Complex64::new(1.0, 1.0);
    let dpt = p_t(t)?.nth_derivative(k).eval(tau0);
    let expect = c * coboundary_e_t(t, tau0);
    if (dpt - expect).norm() > 1e-8 * dpt.norm() {
        return Err(Error::Inconsistency(format!(
            "D^(2t-1) P(T) = {dpt} but c(t) E(T) = {expect}"
        )));
    }
    Ok(c)
}

/// `2 (-1)^(t+1) (2 pi)^(2t)`, the value `diff_relation_constant` measures.
pub fn diff_relation_closed_form(t: u32) -> f64 {
    2.0 * sign(t as i64 + 1) as f64 * (2.0 * PI).powi(2 * t as i32)
}

/// `x^power` as a polynomial form, handy for Bol checks.
pub fn monomial_tau(power: usize) -> Vec<CSym> {
    let mut v = vec![CSym::zero(); power + 1];
    v[power] = CSym::real(SymScalar::one());
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pbar_two_explicit() {
        let p = pbar(2).unwrap();
        assert_eq!(p.coefficient(0), SymScalar::monomial(rat(-2, 1), 1, 3));
        assert_eq!(p.coefficient(2), SymScalar::monomial(rat(-2, 1), 1, 3));
        assert_eq!(p.coefficient(1), SymScalar::monomial(rat(1, 9), 4, 0));
        assert!(!p.coefficient(1).is_zero());
        assert!(p.coefficient(3).is_zero());
    }
}
