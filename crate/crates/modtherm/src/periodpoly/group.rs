use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer matrix `(a b; c d)` of determinant one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl GroupElement {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::from_big(a.into(), b.into(), c.into(), d.into())
    }

    pub fn from_big(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::domain(format!("determinant of ({a} {b}; {c} {d}) is not 1")));
        }
        Ok(GroupElement { a, b, c, d })
    }

    pub fn identity() -> Self {
        GroupElement {
            a: 1.into(),
            b: 0.into(),
            c: 0.into(),
            d: 1.into(),
        }
    }

    /// `tau -> -1/tau`
    pub fn s() -> Self {
        GroupElement {
            a: 0.into(),
            b: (-1).into(),
            c: 1.into(),
            d: 0.into(),
        }
    }

    /// `tau -> tau + 1`
    pub fn t() -> Self {
        GroupElement {
            a: 1.into(),
            b: 1.into(),
            c: 0.into(),
            d: 1.into(),
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            a: self.d.clone(),
            b: -self.b.clone(),
            c: -self.c.clone(),
            d: self.a.clone(),
        }
    }

    /// Equal as Moebius maps, i.e. up to sign.
    pub fn projectively_eq(&self, other: &Self) -> bool {
        self == other
            || (self.a == -other.a.clone()
                && self.b == -other.b.clone()
                && self.c == -other.c.clone()
                && self.d == -other.d.clone())
    }
}

impl Mul for &GroupElement {
    type Output = GroupElement;
    fn mul(self, o: &GroupElement) -> GroupElement {
        GroupElement {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Letters of words in the modular group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    S,
    T,
    TInv,
}

impl Generator {
    pub fn matrix(self) -> GroupElement {
        match self {
            Generator::S => GroupElement::s(),
            Generator::T => GroupElement::t(),
            Generator::TInv => GroupElement::t().inverse(),
        }
    }

    pub fn inverse(self) -> Generator {
        match self {
            // S^-1 = -S acts like S
            Generator::S => Generator::S,
            Generator::T => Generator::TInv,
            Generator::TInv => Generator::T,
        }
    }
}

pub fn word_matrix(word: &[Generator]) -> GroupElement {
    word.iter().fold(GroupElement::identity(), |acc, g| &acc * &g.matrix())
}
