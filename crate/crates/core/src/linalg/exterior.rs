use super::{Matrix, WedgeBasis};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// `Lambda^k A`: rows and columns indexed by size-`k` subsets in lex order,
/// entry `(T, S)` the minor on rows `T` and columns `S`.
pub fn exterior_power<R: Ring>(a: &Matrix<R>, k: usize) -> Result<Matrix<R>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if k > a.rows() {
        return Err(Error::BadGrade { grade: k, max: a.rows() });
    }
    let basis = WedgeBasis::new(a.rows());
    Ok(compound_upto(a, &basis, k).pop().unwrap())
}

/// All exterior powers `Lambda^0 A ..= Lambda^n A`.
pub fn exterior_powers<R: Ring>(a: &Matrix<R>) -> Result<Vec<Matrix<R>>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let basis = WedgeBasis::new(a.rows());
    Ok(compound_upto(a, &basis, a.rows()))
}

/// Compound matrices of grades `0..=k`, each grade built from the previous by
/// Laplace expansion along the smallest selected row. No division is needed,
/// so this works over any commutative ring.
pub(crate) fn compound_upto<R: Ring>(a: &Matrix<R>, basis: &WedgeBasis, k: usize) -> Vec<Matrix<R>> {
    let mut out: Vec<Matrix<R>> = vec![Matrix::identity(1)];
    for g in 1..=k {
        let prev = &out[g - 1];
        let subs = basis.grade(g);
        let mut next = Matrix::zeros(subs.len(), subs.len());
        for (ri, &rows) in subs.iter().enumerate() {
            let r0 = rows.trailing_zeros() as usize;
            let rest_rows = basis.position(rows & (rows - 1));
            for (ci, &cols) in subs.iter().enumerate() {
                let mut acc = R::zero();
                let mut remaining = cols;
                let mut idx = 0;
                while remaining != 0 {
                    let c = remaining.trailing_zeros() as usize;
                    remaining &= remaining - 1;
                    let x = a.get(r0, c);
                    if !x.is_zero() {
                        let sub = prev.get(rest_rows, basis.position(cols & !(1 << c)));
                        if !sub.is_zero() {
                            let term = x.mul(sub);
                            acc = if idx % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                        }
                    }
                    idx += 1;
                }
                next.set(ri, ci, acc);
            }
        }
        out.push(next);
    }
    out
}
