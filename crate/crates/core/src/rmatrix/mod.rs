//! The R-matrix tangle functor on string links and its graded components.

mod tensor;

pub use tensor::{weight_basis, TensorOperator};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::randomwalk::{is_string_link, ClosurePresentation};
use crate::ring::{Field, LaurentPoly, RatFunc, Rational, Ring};

fn s(e: i64) -> LaurentPoly {
    LaurentPoly::s_pow(e)
}

/// `t^{-1/2} - t^{1/2}`.
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_int_terms(&[(-1, 1), (1, -1)])
}

/// The R-matrix on `V (x) V` in the basis `e0e0, e0e1, e1e0, e1e1`.
pub fn r_matrix() -> Matrix<LaurentPoly> {
    let z = LaurentPoly::zero;
    let one = LaurentPoly::one;
    Matrix::from_rows(vec![
        vec![s(-1), z(), z(), z()],
        vec![z(), z(), one(), z()],
        vec![z(), one(), delta(), z()],
        vec![z(), z(), z(), s(1).neg()],
    ])
    .expect("4x4")
}

/// `R^{-1} = R - (t^{-1/2} - t^{1/2}) I`.
pub fn r_inverse() -> Matrix<LaurentPoly> {
    let z = LaurentPoly::zero;
    let one = LaurentPoly::one;
    Matrix::from_rows(vec![
        vec![s(1), z(), z(), z()],
        vec![z(), delta().neg(), one(), z()],
        vec![z(), one(), z(), z()],
        vec![z(), z(), z(), s(-1).neg()],
    ])
    .expect("4x4")
}

/// The braid group representation on `V^{(x) N}`, letters applied bottom to top.
pub fn psi(b: &BraidWord) -> TensorOperator {
    let (r, r_inv) = (r_matrix(), r_inverse());
    b.letters().iter().fold(TensorOperator::identity(b.strands()), |acc, &g| {
        let local = if g > 0 { &r } else { &r_inv };
        acc.left_apply_local(g.unsigned_abs() as usize, local)
    })
}

/// `t^{w(b)/2} psi(b)`.
pub fn psi_hat(b: &BraidWord) -> TensorOperator {
    psi(b).scale(&s(b.writhe()))
}

pub fn grading_operator(n: usize) -> TensorOperator {
    TensorOperator::diagonal(n, |r| LaurentPoly::from_int(r.count_ones() as i64))
}

/// `(-1)^{popcount(bits)}`.
fn sign(bits: u32) -> Rational {
    Rational::from_integer(if bits.count_ones() % 2 == 0 { 1 } else { -1 }.into())
}

/// `h^{(x) N} = t^{N/2} (-1)^d`.
pub fn h_op(n: usize) -> TensorOperator {
    TensorOperator::diagonal(n, |r| s(n as i64).scale(&sign(r)))
}

/// `(h^{-1})^{(x) N}`.
pub fn h_inv_op(n: usize) -> TensorOperator {
    TensorOperator::diagonal(n, |r| s(-(n as i64)).scale(&sign(r)))
}

/// `sum_i 1^{i-1} (x) E (x) (h^{-1})^{N-i}` with `E e1 = e0`.
pub fn e_tilde(n: usize) -> TensorOperator {
    let mut op = TensorOperator::zero(n);
    for c in 0..1u32 << n {
        for i in 1..=n {
            let bit = (n - i) as u32;
            if c >> bit & 1 == 1 {
                let below = c & ((1 << bit) - 1);
                let coeff = s(-(bit as i64)).scale(&sign(below));
                op.add_entry(c & !(1 << bit), c, coeff);
            }
        }
    }
    op
}

/// `sum_i h^{i-1} (x) F (x) 1^{N-i}` with `F e0 = e1`.
pub fn f_tilde(n: usize) -> TensorOperator {
    let mut op = TensorOperator::zero(n);
    for c in 0..1u32 << n {
        for i in 1..=n {
            let bit = (n - i) as u32;
            if c >> bit & 1 == 0 {
                let above = c >> (bit + 1);
                let coeff = s((i - 1) as i64).scale(&sign(above));
                op.add_entry(c | (1 << bit), c, coeff);
            }
        }
    }
    op
}

/// `trace(h^{(x) m} f)`.
pub fn qtr(f: &TensorOperator) -> LaurentPoly {
    let m = f.strands();
    f.entries()
        .filter(|((r, c), _)| r == c)
        .fold(LaurentPoly::zero(), |acc, ((r, _), v)| acc.add(&v.scale(&sign(*r))))
        .mul(&s(m as i64))
}

/// `id^{(x) n} (x) qtr_m` applied to an operator on `n + m` factors (the last `m` are traced).
pub fn partial_closure(f: &TensorOperator, m: usize) -> Result<TensorOperator> {
    let total = f.strands();
    if m > total {
        return Err(Error::DimensionMismatch(format!("cannot close {m} of {total} strands")));
    }
    let low = (1u32 << m) - 1;
    let weight = s(m as i64);
    let mut out = TensorOperator::zero(total - m);
    for (&(r, c), v) in f.entries() {
        if r & low == c & low {
            let k = r & low;
            out.add_entry(r >> m, c >> m, v.mul(&weight).scale(&sign(k)));
        }
    }
    Ok(out)
}

/// The functor on a string link, with its weight blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedFunctorValue {
    pub n: usize,
    pub operator: TensorOperator,
    pub components: Vec<Matrix<LaurentPoly>>,
}

impl GradedFunctorValue {
    pub fn component(&self, k: usize) -> Result<&Matrix<LaurentPoly>> {
        self.components.get(k).ok_or(Error::BadGrade { grade: k, max: self.n })
    }
}

pub fn functor_value(cp: &ClosurePresentation) -> Result<GradedFunctorValue> {
    if !is_string_link(cp) {
        return Err(cp.permutation().err().unwrap_or(Error::NotStringLink { cycle: Vec::new() }));
    }
    let operator = partial_closure(&psi(cp.braid()), cp.m())?;
    if !operator.preserves_weight() {
        return Err(Error::GradingViolation("closure mixes weight spaces".into()));
    }
    let n = cp.n();
    let components = (0..=n).map(|k| operator.weight_block(k)).collect();
    Ok(GradedFunctorValue { n, operator, components })
}

/// Component `k` divided by the scalar component `0`.
pub fn graded_ratio(v: &GradedFunctorValue, k: usize) -> Result<Matrix<RatFunc>> {
    let base = RatFunc::from(v.component(0)?.get(0, 0));
    let inv = base.inv().ok_or(Error::DivisionByZero)?;
    Ok(v.component(k)?.map(|x| RatFunc::from(x).mul(&inv)))
}

/// Whether the functor value commutes with `h^{(x) n}`, `E~_n` and `F~_n`.
pub fn equivariance_check(cp: &ClosurePresentation) -> Result<bool> {
    let v = functor_value(cp)?.operator;
    let n = cp.n();
    for op in [h_op(n), e_tilde(n), f_tilde(n)] {
        if !v.commutes_with(&op)? {
            return Ok(false);
        }
    }
    Ok(true)
}
