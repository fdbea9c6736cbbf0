use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

fn require_square<R: Ring>(a: &Matrix<R>) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    Ok(a.rows())
}

/// Fraction-free elimination; every division is exact in an integral domain.
pub(super) fn bareiss<R: Ring>(a: &Matrix<R>) -> Result<R> {
    let n = require_square(a)?;
    if n == 0 {
        return Ok(R::one());
    }
    let mut m = a.clone();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m.get(i, k).is_zero()) else {
                return Ok(R::zero());
            };
            m.swap_rows(k, p);
            negate = !negate;
        }
        let pivot = m.get(k, k).clone();
        for i in k + 1..n {
            let lead = m.get(i, k).clone();
            for j in k + 1..n {
                let num = m.get(i, j).mul(&pivot).sub(&lead.mul(m.get(k, j)));
                let v = num.div_exact(&prev).expect("Bareiss division is exact");
                m.set(i, j, v);
            }
            m.set(i, k, R::zero());
        }
        prev = pivot;
    }
    let d = m.get(n - 1, n - 1).clone();
    Ok(if negate { d.neg() } else { d })
}

/// Gaussian elimination over a field.
pub(super) fn gauss<R: Field>(a: &Matrix<R>) -> Result<R> {
    let n = require_square(a)?;
    let mut m = a.clone();
    let mut det = R::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
            return Ok(R::zero());
        };
        if p != k {
            m.swap_rows(k, p);
            det = det.neg();
        }
        let pivot = m.get(k, k).clone();
        det = det.mul(&pivot);
        let inv = pivot.inv().expect("nonzero pivot");
        for i in k + 1..n {
            let f = m.get(i, k).mul(&inv);
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = m.get(i, j).sub(&f.mul(m.get(k, j)));
                m.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// Gauss-Jordan inversion over a field.
pub(super) fn inverse<R: Field>(a: &Matrix<R>) -> Result<Matrix<R>> {
    let n = require_square(a)?;
    let mut m = a.clone();
    let mut inv: Matrix<R> = Matrix::identity(n);
    for k in 0..n {
        let p = (k..n).find(|&i| !m.get(i, k).is_zero()).ok_or(Error::Singular)?;
        m.swap_rows(k, p);
        inv.swap_rows(k, p);
        let pivot_inv = m.get(k, k).inv().ok_or(Error::Singular)?;
        for j in 0..n {
            let v = m.get(k, j).mul(&pivot_inv);
            m.set(k, j, v);
            let v = inv.get(k, j).mul(&pivot_inv);
            inv.set(k, j, v);
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            let f = m.get(i, k).clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = m.get(i, j).sub(&f.mul(m.get(k, j)));
                m.set(i, j, v);
                let v = inv.get(i, j).sub(&f.mul(inv.get(k, j)));
                inv.set(i, j, v);
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
pub(crate) fn cofactor<R: Ring>(a: &Matrix<R>) -> R {
    let n = a.rows();
    if n == 0 {
        return R::one();
    }
    let mut acc = R::zero();
    for j in 0..n {
        let x = a.get(0, j);
        if x.is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = x.mul(&cofactor(&a.select(&rows, &cols)));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LaurentPoly, RatFunc, Rational};
    use proptest::prelude::*;

    fn laurent_matrix(n: usize, cs: &[i64]) -> Matrix<LaurentPoly> {
        // entries a + b s^2 + c s^-1 from consecutive triples
        Matrix::from_fn(n, n, |i, j| {
            let k = 3 * (i * n + j);
            LaurentPoly::from_int_terms(&[(0, cs[k]), (2, cs[k + 1]), (-1, cs[k + 2])])
        })
    }

    #[test]
    fn identity_det_is_one() {
        for n in 0..5 {
            assert!(Matrix::<LaurentPoly>::identity(n).det().unwrap().is_one());
            assert!(Matrix::<RatFunc>::identity(n).det_gauss().unwrap().is_one());
        }
    }

    fn ints(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let a = ints(&[&[0, 2, 1], &[3, 0, 4], &[1, 5, 0]]);
        assert_eq!(a.det().unwrap(), Rational::from_integer(23.into()));
        assert_eq!(cofactor(&a), Rational::from_integer(23.into()));
        assert_eq!(ints(&[&[0, 1], &[1, 0]]).det().unwrap(), Rational::from_integer((-1).into()));
        assert_eq!(ints(&[&[0, 1], &[0, 2]]).det().unwrap(), Rational::from_integer(0.into()));
    }

    #[test]
    fn not_square() {
        let a = Matrix::<Rational>::zeros(2, 3);
        assert!(matches!(a.det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn inverse_of_identity_and_singular() {
        assert!(Matrix::<RatFunc>::identity(3).inverse().unwrap().is_identity());
        assert_eq!(Matrix::<RatFunc>::zeros(2, 2).inverse(), Err(Error::Singular));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn bareiss_matches_cofactor(cs in proptest::collection::vec(-3i64..=3, 48)) {
            let a = laurent_matrix(4, &cs);
            prop_assert_eq!(a.det().unwrap(), cofactor(&a));
        }

        #[test]
        fn gauss_matches_bareiss_over_ratfunc(cs in proptest::collection::vec(-3i64..=3, 27)) {
            let a = laurent_matrix(3, &cs).map(|x| RatFunc::from(x));
            prop_assert_eq!(a.det_gauss().unwrap(), a.det().unwrap());
        }

        #[test]
        fn inverse_is_two_sided(cs in proptest::collection::vec(-3i64..=3, 27)) {
            let a = laurent_matrix(3, &cs).map(|x| RatFunc::from(x));
            prop_assume!(!a.det_gauss().unwrap().is_zero());
            let inv = a.inverse().unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&a).unwrap().is_identity());
        }
    }
}
