use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::Field;

/// Block-UL factorization `B = B_u * B_l` of `B = [[H, J], [K, L]]` with
/// `B_u = [[1, G], [0, 1]]`, `B_l = [[D, 0], [K, L]]`, `D = H - J L^-1 K`,
/// `G = J L^-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchurFactors<R: Field> {
    pub d: Matrix<R>,
    pub g: Matrix<R>,
    pub l: Matrix<R>,
    pub k: Matrix<R>,
}

impl<R: Field> SchurFactors<R> {
    pub fn upper(&self) -> Matrix<R> {
        let (n, m) = (self.d.rows(), self.l.rows());
        Matrix::assemble(&Matrix::identity(n), &self.g, &Matrix::zeros(m, n), &Matrix::identity(m))
            .expect("block shapes agree")
    }

    pub fn lower(&self) -> Matrix<R> {
        let (n, m) = (self.d.rows(), self.l.rows());
        Matrix::assemble(&self.d, &Matrix::zeros(n, m), &self.k, &self.l).expect("block shapes agree")
    }
}

/// Schur complement of the bottom-right `m x m` block of an `(n+m)`-square matrix.
pub fn schur_complement<R: Field>(b: &Matrix<R>, n: usize, m: usize) -> Result<SchurFactors<R>> {
    if b.rows() != n + m || b.cols() != n + m {
        return Err(Error::DimensionMismatch(format!(
            "split ({n}, {m}) of a {}x{} matrix",
            b.rows(),
            b.cols()
        )));
    }
    let h = b.block(0, 0, n, n)?;
    let j = b.block(0, n, n, m)?;
    let k = b.block(n, 0, m, n)?;
    let l = b.block(n, n, m, m)?;
    let l_inv = l.inverse().map_err(|_| Error::SingularL)?;
    let g = j.mul(&l_inv)?;
    let d = h.sub(&g.mul(&k)?)?;
    Ok(SchurFactors { d, g, l, k })
}
