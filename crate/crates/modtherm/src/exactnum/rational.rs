use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::sym::SymScalar;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for `p/q` as a big rational.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // huge numerator or denominator: shift both down before dividing
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 900).max(0) as usize;
    let shift_d = (db - 900).max(0) as usize;
    let n = (r.numer().abs() >> shift_n).to_f64().unwrap_or(f64::INFINITY);
    let d = (r.denom() >> shift_d).to_f64().unwrap_or(f64::INFINITY);
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]))
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: u32) -> Rational {
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        // sum_{k<=m} C(m+1, k) B_k = 0
        let mut acc = Rational::zero();
        for (k, bk) in cache.iter().enumerate() {
            if !bk.is_zero() {
                acc += Rational::from_integer(binomial(m + 1, k as u32)) * bk;
            }
        }
        let bm = -acc / Rational::from_integer(BigInt::from(m + 1));
        cache.push(bm);
    }
    cache[n as usize].clone()
}

/// `zeta(k)` for even `k >= 2` as a single `pi^k` monomial.
pub fn zeta_even_exact(k: u32) -> Result<SymScalar> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::domain(format!("zeta_even_exact needs an even k >= 2, got {k}")));
    }
    // (-1)^(k/2+1) B_k (2 pi)^k / (2 k!)
    let sign = if (k / 2) % 2 == 1 { 1 } else { -1 };
    let c = bernoulli(k) * Rational::from_integer(BigInt::from(sign) * (BigInt::one() << k))
        / Rational::from_integer(BigInt::from(2) * factorial(k));
    Ok(SymScalar::monomial(c, k, 0))
}

/// `zeta(s)` at `s = 0` or a negative odd integer.
pub fn zeta_negative_exact(s: i64) -> Result<Rational> {
    if s == 0 {
        return Ok(rat(-1, 2));
    }
    if s > 0 || s % 2 == 0 {
        return Err(Error::domain(format!(
            "zeta_negative_exact is defined at 0 and negative odd integers, got {s}"
        )));
    }
    let n = (1 - s) as u32;
    Ok(-bernoulli(n) / Rational::from_integer(BigInt::from(n)))
}
