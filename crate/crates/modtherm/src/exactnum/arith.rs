use num_bigint::BigInt;
use num_traits::{Pow, Zero};

use crate::error::{Error, Result};

/// `sigma_k(n) = sum_{d | n} d^k`, exactly.
pub fn divisor_sigma(k: u32, n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::domain("divisor_sigma needs n >= 1"));
    }
    let mut acc = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc += Pow::pow(BigInt::from(d), k);
            let e = n / d;
            if e != d {
                acc += Pow::pow(BigInt::from(e), k);
            }
        }
        d += 1;
    }
    Ok(acc)
}

/// Floating `sigma_k(n)` for real `k`.
pub fn sigma_real(k: f64, n: u64) -> f64 {
    let mut small = 0.0;
    let mut large = 0.0;
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small += (d as f64).powf(k);
            let e = n / d;
            if e != d {
                large += (e as f64).powf(k);
            }
        }
        d += 1;
    }
    small + large
}

/// `sigma_k(n)` for `n = 0..=n_max` (entry 0 is unused and zero) by a divisor sieve.
pub fn sigma_table(k: f64, n_max: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    for d in 1..=n_max {
        let dk = (d as f64).powf(k);
        let mut m = d;
        while m <= n_max {
            out[m] += dk;
            m += d;
        }
    }
    out
}
