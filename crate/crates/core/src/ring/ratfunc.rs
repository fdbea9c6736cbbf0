use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::upoly::Poly;
use super::{Field, LaurentPoly, Rational, Ring};
use crate::error::{Error, Result};

/// Quotient of two polynomials in `s` over the rationals.
///
/// Canonical form: numerator and denominator coprime in `Q[s]`, denominator
/// monic, zero stored as `0/1`. Negative powers of `s` are cleared into the
/// denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    fn reduce(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.lead().unwrap().clone();
        if !num::One::is_one(&lead) {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    /// `num / den` for Laurent polynomials; fails on a zero denominator.
    pub fn from_laurent_pair(num: &LaurentPoly, den: &LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let shift = num.low() - den.low();
        let (n, d) = if shift >= 0 {
            (num.to_poly().shift(shift as usize), den.to_poly())
        } else {
            (num.to_poly(), den.to_poly().shift((-shift) as usize))
        };
        Self::reduce(n, d)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator and (monic) denominator as polynomials in `s`.
    pub fn numerator(&self) -> LaurentPoly {
        LaurentPoly::from_poly(0, self.num.clone())
    }

    pub fn denominator(&self) -> LaurentPoly {
        LaurentPoly::from_poly(0, self.den.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::reduce(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Evaluate at `s = s0`.
    pub fn evaluate(&self, s0: &Rational) -> Result<Rational> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(s0.to_string()));
        }
        Ok(self.num.eval(s0) / d)
    }

    /// Evaluate at a value of `t`; numerator and denominator must be even in `s`.
    pub fn evaluate_t(&self, t0: &Rational) -> Result<Rational> {
        let d = self.denominator().evaluate_t(t0)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!("t = {}", t0)));
        }
        Ok(self.numerator().evaluate_t(t0)? / d)
    }

    pub fn specialize_t1(&self) -> Result<Rational> {
        self.evaluate(&num::One::one())
    }

    /// The Laurent polynomial equal to this function, which must have a
    /// monomial denominator and integral coefficients.
    pub fn to_laurent(&self) -> Result<LaurentPoly> {
        if self.den.0.len() != self.den.valuation() + 1 {
            return Err(Error::NotLaurent(self.to_string()));
        }
        let k = self.den.valuation() as i64;
        let p = LaurentPoly::from_poly(-k, self.num.clone());
        if !p.is_integral() {
            return Err(Error::NotIntegral(p.to_string()));
        }
        Ok(p)
    }

    /// Like [`RatFunc::to_laurent`] but keeps rational coefficients.
    pub fn to_laurent_rational(&self) -> Option<LaurentPoly> {
        (self.den.0.len() == self.den.valuation() + 1)
            .then(|| LaurentPoly::from_poly(-(self.den.valuation() as i64), self.num.clone()))
    }

    /// `s^e` with `e` possibly negative.
    pub fn s_pow(e: i64) -> Self {
        RatFunc::from(LaurentPoly::s_pow(e))
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from(&p)
    }
}

impl From<&LaurentPoly> for RatFunc {
    fn from(p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return RatFunc::zero();
        }
        let low = p.low();
        if low >= 0 {
            RatFunc::reduce(p.to_poly().shift(low as usize), Poly::one()).unwrap()
        } else {
            RatFunc::reduce(p.to_poly(), Poly::one().shift((-low) as usize)).unwrap()
        }
    }
}

impl Ring for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn from_int(n: i64) -> Self {
        RatFunc::constant(Rational::from_integer(n.into()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return RatFunc::reduce(self.num.add(&other.num), self.den.clone()).unwrap();
        }
        RatFunc::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .unwrap()
    }
    fn sub(&self, other: &Self) -> Self {
        Ring::add(self, &Ring::neg(other))
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RatFunc { num: self.num.mul(&other.num), den: Poly::one() };
        }
        RatFunc::reduce(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }
    fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.checked_div(other).ok()
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        self.inverse().ok()
    }
}

impl fmt::Display for RatFunc {
    /// Printed as `num/den` with the `s`-power of the denominator moved into
    /// the numerator, so `(2 - t^-1)/(2 - t)` reads naturally.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.numerator());
        }
        let k = self.den.valuation();
        let num = LaurentPoly::from_poly(-(k as i64), self.num.clone());
        let den = LaurentPoly::from_poly(0, self.den.unshift(k));
        if den.terms().count() == 1 {
            return write!(f, "{}", num.div_exact(&den).unwrap());
        }
        let wrap = |p: &LaurentPoly| {
            if p.terms().count() > 1 {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&num), wrap(&den))
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}

#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// JSON form: `{"num": poly, "den": poly}` with the canonical numerator and
/// monic denominator as polynomials in `s`.
impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson { num: self.numerator(), den: self.denominator() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RatFuncJson::deserialize(de)?;
        RatFunc::from_laurent_pair(&raw.num, &raw.den).map_err(serde::de::Error::custom)
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

    fn two_minus_t() -> LaurentPoly {
        lp(&[(0, 2), (2, -1)])
    }

    #[test]
    fn inverse_times_value_is_one() {
        let a = RatFunc::from(two_minus_t());
        let inv = a.inverse().unwrap();
        assert!(Ring::mul(&inv, &a).is_one());
        assert_eq!(RatFunc::zero().inverse(), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form_of_bar_ratio() {
        // (2 - s^-2)/(2 - s^2) = (2s^2 - 1)/(s^2 (2 - s^2)), normalized to a monic denominator.
        let r = RatFunc::from_laurent_pair(&lp(&[(0, 2), (-2, -1)]), &two_minus_t()).unwrap();
        assert_eq!(r.denominator(), lp(&[(2, -2), (4, 1)]));
        assert_eq!(r.numerator(), lp(&[(0, 1), (2, -2)]));
        // cross-multiplication check
        assert_eq!(
            &r.numerator() * &two_minus_t(),
            &r.denominator() * &lp(&[(0, 2), (-2, -1)])
        );
        assert_eq!(r.to_string(), "(t^-1 - 2)/(-2 + t)");
    }

    #[test]
    fn evaluation() {
        let r = RatFunc::from(two_minus_t()).inverse().unwrap();
        // t = 9/10 is s^2 = 9/10; use evaluate_t since s0 would be irrational.
        assert_eq!(r.evaluate_t(&q(9, 10)).unwrap(), q(10, 11));
        assert!(matches!(r.evaluate_t(&q(2, 1)), Err(Error::PoleAtPoint(_))));
        assert_eq!(RatFunc::from(two_minus_t()).specialize_t1().unwrap(), q(1, 1));
        // (t^-1 - 1)/(2 - t) at t = 1
        let r2 = RatFunc::from_laurent_pair(&lp(&[(-2, 1), (0, -1)]), &two_minus_t()).unwrap();
        assert_eq!(r2.specialize_t1().unwrap(), q(0, 1));
    }

    #[test]
    fn to_laurent_examples() {
        // (t^2 - 1)/(t - 1) = t + 1
        let r = RatFunc::from_laurent_pair(&lp(&[(4, 1), (0, -1)]), &lp(&[(2, 1), (0, -1)])).unwrap();
        assert_eq!(r.to_laurent().unwrap(), lp(&[(0, 1), (2, 1)]));
        let r = RatFunc::from(two_minus_t()).inverse().unwrap();
        assert!(matches!(r.to_laurent(), Err(Error::NotLaurent(_))));
        let r = RatFunc::from(lp(&[(0, 2), (-2, -1)]));
        assert_eq!(r.to_laurent().unwrap(), lp(&[(0, 2), (-2, -1)]));
        let half = RatFunc::constant(q(1, 2));
        assert!(matches!(half.to_laurent(), Err(Error::NotIntegral(_))));
    }

    #[test]
    fn json_round_trip() {
        let r = RatFunc::from_laurent_pair(&lp(&[(0, 2), (-2, -1)]), &two_minus_t()).unwrap();
        let js = serde_json::to_string(&r).unwrap();
        let back: RatFunc = serde_json::from_str(&js).unwrap();
        assert_eq!(back, r);
    }
}
