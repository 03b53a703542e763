use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::rational::{rat_to_f64, Rational};
use super::special::zeta_odd_constant;
use crate::error::{Error, Result};

/// `pi^pi_power * zeta(zeta_arg)`, with `zeta_arg == 0` meaning no zeta factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Monomial {
    pub pi_power: u32,
    pub zeta_arg: u32,
}

impl Monomial {
    pub fn value(&self) -> f64 {
        let z = if self.zeta_arg == 0 {
            1.0
        } else {
            zeta_odd_constant(self.zeta_arg)
        };
        std::f64::consts::PI.powi(self.pi_power as i32) * z
    }
}

/// Exact linear combination of `pi^k` and `pi^k zeta(m)` (m odd >= 3)
/// with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::monomial(r, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `c * pi^pi_power * zeta(zeta_arg)`; panics on an even or too small zeta argument.
    pub fn monomial(c: Rational, pi_power: u32, zeta_arg: u32) -> Self {
        assert!(
            zeta_arg == 0 || (zeta_arg >= 3 && zeta_arg % 2 == 1),
            "zeta argument must be odd and >= 3"
        );
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial { pi_power, zeta_arg }, c);
        }
        SymScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, pi_power: u32, zeta_arg: u32) -> Rational {
        self.terms
            .get(&Monomial { pi_power, zeta_arg })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymScalar {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Product, refusing to build a `zeta(m) zeta(n)` monomial.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                if ka.zeta_arg != 0 && kb.zeta_arg != 0 {
                    return Err(Error::Unsupported(format!(
                        "product zeta({}) * zeta({}) leaves the monomial basis",
                        ka.zeta_arg, kb.zeta_arg
                    )));
                }
                let key = Monomial {
                    pi_power: ka.pi_power + kb.pi_power,
                    zeta_arg: ka.zeta_arg.max(kb.zeta_arg),
                };
                out.add_term(key, va * vb);
            }
        }
        Ok(out)
    }

    fn add_term(&mut self, key: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Numeric value using the cached odd zeta constants.
    pub fn to_f64(&self) -> f64 {
        // sum smallest terms first
        let mut parts: Vec<f64> = self.terms.iter().map(|(k, v)| rat_to_f64(v) * k.value()).collect();
        parts.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        parts.iter().sum()
    }
}

impl From<Rational> for SymScalar {
    fn from(r: Rational) -> Self {
        SymScalar::from_rational(r)
    }
}

impl AddAssign<&SymScalar> for SymScalar {
    fn add_assign(&mut self, rhs: &SymScalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v.clone());
        }
    }
}

impl SubAssign<&SymScalar> for SymScalar {
    fn sub_assign(&mut self, rhs: &SymScalar) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, -v.clone());
        }
    }
}

impl Add for &SymScalar {
    type Output = SymScalar;
    fn add(self, rhs: &SymScalar) -> SymScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for SymScalar {
    type Output = SymScalar;
    fn add(mut self, rhs: SymScalar) -> SymScalar {
        self += &rhs;
        self
    }
}

impl Sub for &SymScalar {
    type Output = SymScalar;
    fn sub(self, rhs: &SymScalar) -> SymScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for SymScalar {
    type Output = SymScalar;
    fn sub(mut self, rhs: SymScalar) -> SymScalar {
        self -= &rhs;
        self
    }
}

impl Neg for SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        SymScalar {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl Neg for &SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        -self.clone()
    }
}

impl Mul<&Rational> for &SymScalar {
    type Output = SymScalar;
    fn mul(self, rhs: &Rational) -> SymScalar {
        self.scale(rhs)
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let neg = v.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let a = v.abs();
            let mut factors = Vec::new();
            if !a.is_one() || (k.pi_power == 0 && k.zeta_arg == 0) {
                factors.push(a.to_string());
            }
            match k.pi_power {
                0 => {}
                1 => factors.push("pi".to_string()),
                p => factors.push(format!("pi^{p}")),
            }
            if k.zeta_arg != 0 {
                factors.push(format!("zeta({})", k.zeta_arg));
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
