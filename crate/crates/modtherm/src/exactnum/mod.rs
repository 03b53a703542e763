//! Exact rationals, Bernoulli numbers, symbolic `pi^k zeta(m)` scalars and
//! the double-precision special functions everything else leans on.

mod arith;
mod rational;
pub(crate) mod special;
mod sym;

pub use arith::{divisor_sigma, sigma_real, sigma_table};
pub use rational::{bernoulli, binomial, factorial, rat, rat_to_f64, zeta_even_exact, zeta_negative_exact, Rational};
pub use special::{
    gamma_numeric, gamma_real, hurwitz_zeta, ln_gamma_real, zeta_numeric, zeta_odd_constant, zeta_real,
};
pub use sym::{Monomial, SymScalar};
