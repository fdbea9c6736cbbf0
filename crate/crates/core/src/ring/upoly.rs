//! Dense univariate polynomials over the rationals, the workhorse behind
//! Laurent-polynomial division and rational-function normalization.

use num::{One, Zero};

use super::Rational;

/// Coefficients in ascending degree; no trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub(crate) struct Poly(pub(crate) Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.0.last()
    }

    /// Number of trailing factors of `s` (lowest nonzero degree).
    pub fn valuation(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = long.0.clone();
        for (o, c) in out.iter_mut().zip(&short.0) {
            *o += c;
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut out = vec![Rational::zero(); k];
        out.extend(self.0.iter().cloned());
        Poly(out)
    }

    /// Divide by `s^k`; the caller guarantees `k <= valuation`.
    pub fn unshift(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || k <= self.valuation());
        if self.is_zero() {
            return Poly::zero();
        }
        Poly(self.0[k..].to_vec())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.0[dd].recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[1, 0, -3, 2, 5]);
        let d = p(&[2, -1, 1]);
        let (q, r) = a.div_rem(&d);
        assert!(r.degree().map_or(true, |x| x < 2));
        assert_eq!(q.mul(&d).add(&r), a);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (s - 1)(s + 2) and (s - 1)(3s + 1)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-1, -2, 3]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(Poly::zero().gcd(&b), b.monic());
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 3, 0]).valuation(), 1);
        assert_eq!(p(&[1, 1]).add(&p(&[0, 1]).neg()), p(&[1]));
    }
}
