use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::group::GroupElement;
use crate::exactnum::{Rational, SymScalar};

/// `re + i im` with symbolic real and imaginary parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CSym {
    pub re: SymScalar,
    pub im: SymScalar,
}

impl CSym {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn real(re: SymScalar) -> Self {
        CSym {
            re,
            im: SymScalar::zero(),
        }
    }

    pub fn imag(im: SymScalar) -> Self {
        CSym {
            re: SymScalar::zero(),
            im,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CSym {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    pub fn mul_i(&self) -> Self {
        CSym {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// Multiply by `i^k`.
    pub fn mul_i_pow(&self, k: i64) -> Self {
        let mut out = self.clone();
        for _ in 0..k.rem_euclid(4) {
            out = out.mul_i();
        }
        out
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &CSym {
    type Output = CSym;
    fn add(self, o: &CSym) -> CSym {
        CSym {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub for &CSym {
    type Output = CSym;
    fn sub(self, o: &CSym) -> CSym {
        CSym {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Neg for &CSym {
    type Output = CSym;
    fn neg(self) -> CSym {
        CSym {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl fmt::Display for CSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "i*({})", self.im),
            (false, false) => write!(f, "{} + i*({})", self.re, self.im),
        }
    }
}

pub(crate) type Poly = Vec<CSym>;
type RatPoly = Vec<Rational>;

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let zero = CSym::zero();
    let mut out: Poly = (0..n)
        .map(|k| a.get(k).unwrap_or(&zero) + b.get(k).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

fn poly_scale(a: &Poly, c: &Rational) -> Poly {
    let mut out: Poly = a.iter().map(|x| x.scale(c)).collect();
    trim(&mut out);
    out
}

fn poly_mul_rat(a: &Poly, r: &RatPoly) -> Poly {
    if a.is_empty() || r.is_empty() {
        return Vec::new();
    }
    let mut out = vec![CSym::zero(); a.len() + r.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in r.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &x.scale(y);
            }
        }
    }
    trim(&mut out);
    out
}

fn rat_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn rat_pow(base: &RatPoly, k: u32) -> RatPoly {
    let mut out = vec![Rational::one()];
    for _ in 0..k {
        out = rat_mul(&out, base);
    }
    out
}

fn linear(p: &BigInt, q: &BigInt) -> RatPoly {
    vec![Rational::from_integer(q.clone()), Rational::from_integer(p.clone())]
}

fn poly_eval_rat(a: &Poly, x: &Rational) -> CSym {
    let mut acc = CSym::zero();
    for c in a.iter().rev() {
        acc = &acc.scale(x) + c;
    }
    acc
}

fn poly_eval_c(a: &Poly, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in a.iter().rev() {
        acc = acc * z + c.to_complex();
    }
    acc
}

fn poly_derivative(a: &Poly) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Rational::from_integer(BigInt::from(k))))
        .collect();
    trim(&mut out);
    out
}

/// Divide by `(tau - root)`, assuming `root` is a root.
fn poly_div_root(a: &Poly, root: &Rational) -> Poly {
    let n = a.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut out = vec![CSym::zero(); n - 1];
    let mut carry = CSym::zero();
    for k in (1..n).rev() {
        carry = &a[k] + &carry.scale(root);
        out[k - 1] = carry.clone();
    }
    trim(&mut out);
    out
}

/// A primitive linear form `p tau + q` with `p > 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lin {
    pub p: BigInt,
    pub q: BigInt,
}

impl Lin {
    /// Split `p tau + q` (with `p != 0`) into `scale * (primitive form)`.
    fn normalize(p: &BigInt, q: &BigInt) -> (BigInt, Lin) {
        let g = p.gcd(q);
        let g = if p.is_negative() { -g } else { g };
        (
            g.clone(),
            Lin {
                p: p / &g,
                q: q / &g,
            },
        )
    }

    fn root(&self) -> Rational {
        Rational::new(-self.q.clone(), self.p.clone())
    }

    fn eval_rat(&self, x: &Rational) -> Rational {
        Rational::from_integer(self.p.clone()) * x + Rational::from_integer(self.q.clone())
    }

    fn eval_c(&self, z: Complex64) -> Complex64 {
        z * big_to_f64(&self.p) + big_to_f64(&self.q)
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    crate::exactnum::rat_to_f64(&Rational::from_integer(x.clone()))
}

/// `num(tau) / prod (p tau + q)^e` with a weight `r` for the stroke action
/// `f|g = (c tau + d)^r f(g tau)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPeriodFunction {
    num: Poly,
    den: BTreeMap<Lin, u32>,
    weight: i64,
}

impl RationalPeriodFunction {
    pub fn zero(weight: i64) -> Self {
        RationalPeriodFunction {
            num: Vec::new(),
            den: BTreeMap::new(),
            weight,
        }
    }

    pub fn polynomial(coeffs: Vec<CSym>, weight: i64) -> Self {
        let mut num = coeffs;
        trim(&mut num);
        RationalPeriodFunction {
            num,
            den: BTreeMap::new(),
            weight,
        }
    }

    /// `sum c_k tau^k` over possibly negative `k`.
    pub fn laurent(terms: &[(i64, CSym)], weight: i64) -> Self {
        let lowest = terms.iter().map(|(k, _)| *k).min().unwrap_or(0).min(0);
        let highest = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
        let mut num = vec![CSym::zero(); (highest - lowest + 1) as usize];
        for (k, c) in terms {
            let slot = (k - lowest) as usize;
            num[slot] = &num[slot] + c;
        }
        let mut out = Self::polynomial(num, weight);
        if lowest < 0 {
            out.den.insert(
                Lin {
                    p: BigInt::one(),
                    q: BigInt::zero(),
                },
                (-lowest) as u32,
            );
        }
        out.reduce()
    }

    /// `num / prod (p_i tau + q_i)^(e_i)`; every `p_i` must be nonzero.
    pub fn from_factors(num: Vec<CSym>, factors: &[(i64, i64, u32)], weight: i64) -> Self {
        let mut out = Self::polynomial(num, weight);
        for &(p, q, e) in factors {
            assert!(p != 0, "linear factor needs a tau term");
            let (s, lin) = Lin::normalize(&BigInt::from(p), &BigInt::from(q));
            out.num = poly_scale(&out.num, &Rational::new(BigInt::one(), s.pow(e)));
            *out.den.entry(lin).or_insert(0) += e;
        }
        out.reduce()
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn with_weight(mut self, weight: i64) -> Self {
        self.weight = weight;
        self
    }

    pub fn numerator(&self) -> &[CSym] {
        &self.num
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&Lin, &u32)> {
        self.den.iter()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// Structural zero test; exact because numerators are kept trimmed.
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn den_poly(&self) -> RatPoly {
        self.den
            .iter()
            .fold(vec![Rational::one()], |acc, (l, e)| rat_mul(&acc, &rat_pow(&linear(&l.p, &l.q), *e)))
    }

    fn den_eval_rat(&self, x: &Rational) -> Rational {
        self.den.iter().fold(Rational::one(), |acc, (l, e)| {
            let v = l.eval_rat(x);
            let mut p = Rational::one();
            for _ in 0..*e {
                p *= &v;
            }
            acc * p
        })
    }

    /// Exact value at a rational point, `None` at a pole.
    pub fn eval_exact(&self, x: &Rational) -> Option<CSym> {
        let d = self.den_eval_rat(x);
        if d.is_zero() {
            return None;
        }
        Some(poly_eval_rat(&self.num, x).scale(&d.recip()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut v = poly_eval_c(&self.num, z);
        for (l, e) in &self.den {
            v /= l.eval_c(z).powi(*e as i32);
        }
        v
    }

    /// Cancel linear factors that divide the numerator.
    pub fn reduce(mut self) -> Self {
        if self.num.is_empty() {
            self.den.clear();
            return self;
        }
        let keys: Vec<Lin> = self.den.keys().cloned().collect();
        for l in keys {
            let root = l.root();
            while self.den.get(&l).copied().unwrap_or(0) > 0 && poly_eval_rat(&self.num, &root).is_zero() {
                // p tau + q = p (tau - root)
                let q = poly_div_root(&self.num, &root);
                self.num = poly_scale(&q, &Rational::new(BigInt::one(), l.p.clone()));
                let e = self.den.get_mut(&l).expect("key present");
                *e -= 1;
                if *e == 0 {
                    self.den.remove(&l);
                }
            }
        }
        self
    }

    fn lift_to(&self, den: &BTreeMap<Lin, u32>) -> Poly {
        let mut num = self.num.clone();
        for (l, e) in den {
            let have = self.den.get(l).copied().unwrap_or(0);
            if *e > have {
                num = poly_mul_rat(&num, &rat_pow(&linear(&l.p, &l.q), e - have));
            }
        }
        num
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut den = self.den.clone();
        for (l, e) in &other.den {
            let slot = den.entry(l.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let num = poly_add(&self.lift_to(&den), &other.lift_to(&den));
        RationalPeriodFunction {
            num,
            den,
            weight: self.weight,
        }
        .reduce()
    }

    pub fn neg(&self) -> Self {
        RationalPeriodFunction {
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
            weight: self.weight,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalPeriodFunction {
            num: poly_scale(&self.num, c),
            den: self.den.clone(),
            weight: self.weight,
        }
        .reduce()
    }

    pub fn mul_i(&self) -> Self {
        RationalPeriodFunction {
            num: self.num.iter().map(|c| c.mul_i()).collect(),
            den: self.den.clone(),
            weight: self.weight,
        }
    }

    /// Multiply by `(c tau + d)^k`, `k` of either sign.
    pub fn mul_linear_power(&self, c: &BigInt, d: &BigInt, k: i64) -> Self {
        let mut out = self.clone();
        if k == 0 {
            return out;
        }
        if c.is_zero() {
            let dk = Rational::from_integer(d.clone()).pow(k as i32);
            return out.scale(&dk);
        }
        let (s, lin) = Lin::normalize(c, d);
        let s = Rational::from_integer(s);
        if k > 0 {
            out.num = poly_mul_rat(&out.num, &rat_pow(&linear(c, d), k as u32));
        } else {
            let e = (-k) as u32;
            out.num = poly_scale(&out.num, &s.pow(k as i32));
            *out.den.entry(lin).or_insert(0) += e;
        }
        out.reduce()
    }

    /// `f|g = (c tau + d)^r f(g tau)`.
    pub fn stroke(&self, g: &GroupElement) -> Self {
        if self.num.is_empty() {
            return self.clone();
        }
        let n = (self.num.len() - 1) as u32;
        let top = linear(&g.a, &g.b);
        let bottom = linear(&g.c, &g.d);
        // sum n_k (a tau + b)^k (c tau + d)^(N - k)
        let mut num: Poly = Vec::new();
        for (k, coeff) in self.num.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let k = k as u32;
            let mult = rat_mul(&rat_pow(&top, k), &rat_pow(&bottom, n - k));
            num = poly_add(&num, &poly_mul_rat(&vec![coeff.clone()], &mult));
        }
        let mut den = BTreeMap::new();
        let mut total = 0i64;
        for (l, e) in &self.den {
            total += *e as i64;
            // p g(tau) + q = ((p a + q c) tau + (p b + q d)) / (c tau + d)
            let p2 = &l.p * &g.a + &l.q * &g.c;
            let q2 = &l.p * &g.b + &l.q * &g.d;
            if p2.is_zero() {
                num = poly_scale(&num, &Rational::from_integer(q2).pow(-(*e as i32)));
            } else {
                let (s, lin) = Lin::normalize(&p2, &q2);
                num = poly_scale(&num, &Rational::from_integer(s).pow(-(*e as i32)));
                *den.entry(lin).or_insert(0) += *e;
            }
        }
        let out = RationalPeriodFunction {
            num,
            den,
            weight: self.weight,
        };
        out.mul_linear_power(&g.c, &g.d, self.weight + total - n as i64)
    }

    /// `d/dtau`.
    pub fn derivative(&self) -> Self {
        if self.den.is_empty() {
            return RationalPeriodFunction {
                num: poly_derivative(&self.num),
                den: BTreeMap::new(),
                weight: self.weight,
            };
        }
        // (N / prod L^e)' = (N' M - N sum e p M / L) / prod L^(e+1), M = prod L
        let factors: Vec<(&Lin, &u32)> = self.den.iter().collect();
        let m = factors
            .iter()
            .fold(vec![Rational::one()], |acc, (l, _)| rat_mul(&acc, &linear(&l.p, &l.q)));
        let mut num = poly_mul_rat(&poly_derivative(&self.num), &m);
        for (i, (l, e)) in factors.iter().enumerate() {
            let others = factors
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .fold(vec![Rational::one()], |acc, (_, (l2, _))| rat_mul(&acc, &linear(&l2.p, &l2.q)));
            let w = Rational::from_integer(&l.p * BigInt::from(**e));
            let term = poly_mul_rat(&poly_scale(&self.num, &w), &others);
            num = poly_add(&num, &poly_scale(&term, &-Rational::one()));
        }
        let den = self.den.iter().map(|(l, e)| (l.clone(), e + 1)).collect();
        RationalPeriodFunction {
            num,
            den,
            weight: self.weight,
        }
        .reduce()
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Exact identity test by evaluating `self - other` at more rational
    /// points than its numerator degree.
    pub fn identical(&self, other: &Self, min_points: usize) -> bool {
        let diff = self.sub(other);
        let needed = diff.num.len().max(min_points).max(1);
        let mut checked = 0;
        let mut k = 1i64;
        while checked < needed {
            let x = Rational::new(BigInt::from(k), BigInt::from(k % 7 + 2));
            k += 1;
            match diff.eval_exact(&x) {
                Some(v) if !v.is_zero() => return false,
                Some(_) => checked += 1,
                None => continue,
            }
        }
        true
    }

    /// Numerator over the expanded denominator, as plain coefficient lists.
    pub fn expanded(&self) -> (Vec<CSym>, Vec<Rational>) {
        (self.num.clone(), self.den_poly())
    }
}

impl fmt::Display for RationalPeriodFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*tau^{k}"))
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.den.is_empty() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|(l, e)| format!("({}*tau + {})^{}", l.p, l.q, e))
            .collect();
        write!(f, "[{num}] / [{}]", den.join(" * "))
    }
}
