use super::{lambda_star, partial_supertrace, ExtOperator};
use crate::error::{Error, Result};
use crate::linalg::{full_mask, wedge_sign, Matrix};
use crate::randomwalk::{is_string_link, ClosurePresentation};
use crate::ring::{Field, LaurentPoly, RatFunc, Ring};

/// `STR(Lambda^* burau(b))` on `Lambda^* M_n`.
pub fn brt_operator(cp: &ClosurePresentation) -> Result<ExtOperator<LaurentPoly>> {
    if !is_string_link(cp) {
        return Err(cp.permutation().err().unwrap_or(Error::NotStringLink { cycle: Vec::new() }));
    }
    partial_supertrace(&lambda_star(&cp.braid().burau())?, cp.n())
}

/// Grade-`k` block of [`brt_operator`].
pub fn brt(cp: &ClosurePresentation, k: usize) -> Result<Matrix<LaurentPoly>> {
    if k > cp.n() {
        return Err(Error::BadGrade { grade: k, max: cp.n() });
    }
    brt_operator(cp)?.block(k, k)
}

/// Grade `k` divided by the scalar grade `0`.
pub fn brt_ratio(cp: &ClosurePresentation, k: usize) -> Result<Matrix<RatFunc>> {
    let op = brt_operator(cp)?;
    let base = RatFunc::from(op.block(0, 0)?.get(0, 0));
    let inv = base.inv().ok_or(Error::DivisionByZero)?;
    Ok(op.block(k, k)?.map(|x| RatFunc::from(x).mul(&inv)))
}

/// `alpha -> t^{1/2} u_n ^ alpha` with `u_n = sum_j t^{j-1} v_j`.
pub fn f_breve(n: usize) -> ExtOperator<LaurentPoly> {
    let mut op = ExtOperator::zero(n);
    for a in 0..=full_mask(n) {
        for j in 0..n {
            if let Some(sign) = wedge_sign(1 << j, a) {
                op.add_entry(a | 1 << j, a, LaurentPoly::s_pow(2 * j as i64 + 1).scale(&sign_of(sign)));
            }
        }
    }
    op
}

/// `t^{-n/2} sum_j iota_j` with `iota_j(alpha ^ v_j) = alpha`.
pub fn e_breve(n: usize) -> ExtOperator<LaurentPoly> {
    let mut op = ExtOperator::zero(n);
    for b in 0..=full_mask(n) {
        for j in 0..n {
            if b >> j & 1 == 1 {
                let rest = b & !(1 << j);
                // tau_B = sign * tau_rest ^ v_j
                let sign = wedge_sign(rest, 1 << j).expect("disjoint");
                op.add_entry(rest, b, LaurentPoly::s_pow(-(n as i64)).scale(&sign_of(sign)));
            }
        }
    }
    op
}

fn sign_of(s: i32) -> crate::ring::Rational {
    crate::ring::Rational::from_integer(s.into())
}
