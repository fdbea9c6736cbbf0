//! Exact coefficient arithmetic: rationals, Laurent polynomials in
//! `s = t^(1/2)`, and rational functions in `s`.

mod laurent;
mod ratfunc;
pub(crate) mod upoly;

use std::fmt::{Debug, Display};

use num::{BigInt, Signed, ToPrimitive};

pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational; numerator and denominator are kept
/// coprime with a positive denominator.
pub type Rational = num::BigRational;

/// Commutative ring with exact arithmetic, as needed by [`crate::linalg::Matrix`].
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other` when the quotient exists in the ring.
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        num::Zero::zero()
    }
    fn one() -> Self {
        num::One::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_integer(n.into())
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(self)
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
        (!num::Zero::is_zero(other)).then(|| self / other)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        (!num::Zero::is_zero(self)).then(|| self.recip())
    }
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!num::Zero::is_zero(&d)).then(|| Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Lossy conversion used only for reporting numeric gaps.
pub fn rational_to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator or denominator: scale both down by the same power of two.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer().abs() >> shift).to_f64().unwrap_or(f64::MAX);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::MAX);
            let v = if d == 0.0 { f64::INFINITY } else { n / d };
            if r.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("9/10"), Some(Rational::new(9.into(), 10.into())));
        assert_eq!(parse_rational(" -3 "), Some(Rational::from_integer((-3).into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn f64_of_small_and_huge() {
        assert_eq!(rational_to_f64(&Rational::new(1.into(), 4.into())), 0.25);
        let huge = Rational::new(BigInt::from(3) << 5000usize, BigInt::from(2) << 5000usize);
        assert!((rational_to_f64(&huge) - 1.5).abs() < 1e-12);
    }
}
