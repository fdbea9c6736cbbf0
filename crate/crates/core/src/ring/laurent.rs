use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::Poly;
use super::Rational;
use crate::error::{Error, Result};

/// Laurent polynomial in `s = t^(1/2)` with rational coefficients.
///
/// Stored densely from the lowest exponent `low`; the first and last stored
/// coefficients are nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    fn normalize(low: i64, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead == coeffs.len() {
            return LaurentPoly::default();
        }
        coeffs.drain(..lead);
        LaurentPoly { low: low + lead as i64, coeffs }
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::normalize(0, vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    /// `c * s^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::normalize(e, vec![c])
    }

    /// `s^e`, i.e. `t^(e/2)`.
    pub fn s_pow(e: i64) -> Self {
        Self::monomial(Rational::one(), e)
    }

    /// `t^e = s^(2e)`.
    pub fn t_pow(e: i64) -> Self {
        Self::s_pow(2 * e)
    }

    /// Build from `(exponent in s, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::normalize(low, coeffs)
    }

    /// Integer-coefficient shorthand: `&[(exponent in s, coefficient)]`.
    pub fn from_int_terms(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from_integer(c.into()))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        let i = e - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Highest minus lowest exponent in `s`.
    pub fn span(&self) -> Result<u64> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u64),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True when every exponent is even, so the value lies in `Q[t, t^-1]`.
    pub fn is_even(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `s -> 1/s` (so `t -> t^-1`).
    pub fn bar(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// Evaluate at `s = s0`.
    pub fn evaluate(&self, s0: &Rational) -> Result<Rational> {
        if s0.is_zero() {
            return Err(Error::ZeroBase);
        }
        let body = self.to_poly().eval(s0);
        Ok(body * pow_int(s0, self.low))
    }

    /// Evaluate at a value of `t`; every exponent in `s` must be even.
    pub fn evaluate_t(&self, t0: &Rational) -> Result<Rational> {
        if !self.is_even() {
            return Err(Error::OddExponent(self.to_string()));
        }
        if t0.is_zero() {
            return Err(Error::ZeroBase);
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            acc += c * pow_int(t0, e / 2);
        }
        Ok(acc)
    }

    /// Specialization at `t = 1` (equivalently `s = 1`): the coefficient sum.
    pub fn specialize_t1(&self) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |a, c| a + c)
    }

    /// Split as `s^low * p(s)` with `p(0) != 0`.
    pub(crate) fn to_poly(&self) -> Poly {
        Poly(self.coeffs.clone())
    }

    pub(crate) fn low(&self) -> i64 {
        self.low
    }

    pub(crate) fn from_poly(low: i64, p: Poly) -> Self {
        Self::normalize(low, p.0)
    }

    /// Exact quotient in `Q[s, s^-1]`, if `d` divides `self` there.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.coeffs.len() == 1 {
            let inv = d.coeffs[0].recip();
            return Some(LaurentPoly {
                low: self.low - d.low,
                coeffs: self.coeffs.iter().map(|c| c * &inv).collect(),
            });
        }
        let (q, r) = self.to_poly().div_rem(&d.to_poly());
        r.is_zero().then(|| Self::from_poly(self.low - d.low, q))
    }

    /// Divisibility in `Z[s, s^-1]`: the `Q[s]` quotient of the shifted
    /// polynomials must leave no remainder and have integral coefficients.
    /// Returns the quotient on success; `p = 0` is divisible by anything nonzero.
    pub fn divides(d: &LaurentPoly, p: &LaurentPoly) -> Option<LaurentPoly> {
        let q = p.div_exact(d)?;
        q.is_integral().then_some(q)
    }
}

fn pow_int(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num::pow::pow(base, e.unsigned_abs() as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        LaurentPoly::normalize(low, coeffs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &(-other)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_poly(self.low + other.low, self.to_poly().mul(&other.to_poly()))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, other: LaurentPoly) -> LaurentPoly {
                (&self).$m(&other)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl super::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn from_int(n: i64) -> Self {
        LaurentPoly::from_int(n)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && num::One::is_one(&self.coeffs[0])
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        LaurentPoly::div_exact(self, other)
    }
}

/// Render the variable part of `s^e` in terms of `t`.
pub(crate) fn render_power(e: i64) -> String {
    match e {
        0 => String::new(),
        2 => "t".to_string(),
        e if e % 2 == 0 => format!("t^{}", e / 2),
        e => format!("t^({}/2)", e),
    }
}

fn render_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({})", c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let var = render_power(e);
            if var.is_empty() {
                f.write_str(&render_coeff(&mag))?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}{}", render_coeff(&mag), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// JSON form: list of `[exponent_in_s, coeff_num, coeff_den]`.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            let num: serde_json::Number = c.numer().to_string().parse().map_err(serde::ser::Error::custom)?;
            let den: serde_json::Number = c.denom().to_string().parse().map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&(e, num, den))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, serde_json::Number, serde_json::Number)> = Vec::deserialize(de)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, n, d) in raw {
            let n: BigInt = n.to_string().parse().map_err(D::Error::custom)?;
            let d: BigInt = d.to_string().parse().map_err(D::Error::custom)?;
            if d.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((e, Rational::new(n, d)));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        let one_minus_t = lp(&[(0, 1), (2, -1)]);
        let t = LaurentPoly::t_pow(1);
        assert_eq!(&one_minus_t + &t, LaurentPoly::one());

        // (t^-1/2 - t^1/2)^2 = t^-1 - 2 + t
        let d = lp(&[(-1, 1), (1, -1)]);
        assert_eq!(&d * &d, lp(&[(-2, 1), (0, -2), (2, 1)]));

        assert_eq!(&t * &LaurentPoly::t_pow(-1), LaurentPoly::one());
    }

    #[test]
    fn evaluation_and_specialization() {
        let two_minus_t = lp(&[(0, 2), (2, -1)]);
        assert_eq!(two_minus_t.evaluate(&q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(two_minus_t.specialize_t1(), q(1, 1));
        assert_eq!(LaurentPoly::s_pow(1).specialize_t1(), q(1, 1));
        assert_eq!(two_minus_t.evaluate_t(&q(9, 10)).unwrap(), q(11, 10));
        assert_eq!(LaurentPoly::s_pow(-2).evaluate(&q(1, 2)).unwrap(), q(4, 1));
        assert_eq!(two_minus_t.evaluate(&q(0, 1)), Err(Error::ZeroBase));
        assert!(matches!(LaurentPoly::s_pow(1).evaluate_t(&q(1, 2)), Err(Error::OddExponent(_))));
    }

    #[test]
    fn span_examples() {
        assert_eq!(lp(&[(0, 2), (2, -1)]).span(), Ok(2));
        assert_eq!(LaurentPoly::one().span(), Ok(0));
        assert_eq!(lp(&[(-1, 1), (1, -1)]).span(), Ok(2));
        assert_eq!(LaurentPoly::zero().span(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn divisibility_examples() {
        let two_minus_t = lp(&[(0, 2), (2, -1)]);
        let sq = &two_minus_t * &two_minus_t;
        assert_eq!(LaurentPoly::divides(&two_minus_t, &sq), Some(two_minus_t.clone()));
        let two_minus_tbar = lp(&[(0, 2), (-2, -1)]);
        assert_eq!(LaurentPoly::divides(&two_minus_t, &two_minus_tbar), None);
        let s = LaurentPoly::s_pow(1);
        assert!(LaurentPoly::divides(&s, &two_minus_tbar).is_some());
        assert_eq!(LaurentPoly::divides(&two_minus_t, &LaurentPoly::zero()), Some(LaurentPoly::zero()));
        // 2 divides 2 + 2t in Q[s] but the quotient 1 + t is integral; 2 does not divide 1 + t in Z.
        assert!(LaurentPoly::divides(&lp(&[(0, 2)]), &lp(&[(0, 2), (2, 2)])).is_some());
        assert!(LaurentPoly::divides(&lp(&[(0, 2)]), &lp(&[(0, 1), (2, 1)])).is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(lp(&[(0, 2), (2, -1)]).to_string(), "2 - t");
        assert_eq!(lp(&[(-1, 1), (1, -1)]).to_string(), "t^(-1/2) - t^(1/2)");
        assert_eq!(lp(&[(-2, -1), (0, 3), (2, -1)]).to_string(), "-t^-1 + 3 - t");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::monomial(q(3, 2), 4).to_string(), "(3/2)t^2");
    }

    #[test]
    fn json_form() {
        let p = LaurentPoly::from_terms(vec![(-2, q(-1, 1)), (0, q(2, 3))]);
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(js, "[[-2,-1,1],[0,2,3]]");
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
    }
}
