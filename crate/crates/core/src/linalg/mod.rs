//! Exact dense linear algebra over [`Ring`] elements.

mod det;
mod exterior;
mod schur;
mod subset;

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ring::Ring;

pub(crate) use exterior::compound_upto;
pub use exterior::{exterior_power, exterior_powers};
pub(crate) use subset::full_mask;
pub use schur::{schur_complement, SchurFactors};
pub use subset::{shuffle_sign, subsets, wedge_sign, SubsetIndex, WedgeBasis};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<S>>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sum")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "difference")?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.data[idx] = out.data[idx].add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn trace(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok((0..self.rows).fold(R::zero(), |acc, i| acc.add(self.get(i, i))))
    }

    /// Rectangular block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Result<Self> {
        if r0 + nr > self.rows || c0 + nc > self.cols {
            return Err(Error::DimensionMismatch(format!(
                "block {nr}x{nc} at ({r0},{c0}) of {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(Self::from_fn(nr, nc, |i, j| self.get(r0 + i, c0 + j).clone()))
    }

    /// Entries at the given (0-based) row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// `[[tl, tr], [bl, br]]`; either block row or column may be empty.
    pub fn assemble(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::DimensionMismatch("incompatible blocks".into()));
        }
        let (n, m) = (tl.rows, bl.rows);
        let (p, q) = (tl.cols, tr.cols);
        Ok(Self::from_fn(n + m, p + q, |i, j| match (i < n, j < p) {
            (true, true) => tl.get(i, j).clone(),
            (true, false) => tr.get(i, j - p).clone(),
            (false, true) => bl.get(i - n, j).clone(),
            (false, false) => br.get(i - n, j - p).clone(),
        }))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<R> {
        det::bareiss(self)
    }

    /// Determinant of the submatrix on the given rows and columns, taken in
    /// increasing index order.
    pub fn minor(&self, rows: &SubsetIndex, cols: &SubsetIndex) -> Result<R> {
        if rows.len() != cols.len() {
            return Err(Error::SizeMismatch { rows: rows.len(), cols: cols.len() });
        }
        if rows.ground() != self.rows || cols.ground() != self.cols {
            return Err(Error::DimensionMismatch("subset ground set does not match matrix".into()));
        }
        let r: Vec<usize> = rows.members().iter().map(|i| i - 1).collect();
        let c: Vec<usize> = cols.members().iter().map(|i| i - 1).collect();
        self.select(&r, &c).det()
    }

    pub fn specialize<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<Matrix<S>> {
        self.try_map(f)
    }
}

impl<R: crate::ring::Field> Matrix<R> {
    /// Determinant by Gaussian elimination with exact field division.
    pub fn det_gauss(&self) -> Result<R> {
        det::gauss(self)
    }

    pub fn inverse(&self) -> Result<Self> {
        det::inverse(self)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|x| x.to_string()).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j], w = widths[j])?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson<R> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<R>>,
}

/// JSON form: `{rows, cols, entries: [[entry, ...], ...]}`.
impl<R: Ring + Serialize> Serialize for Matrix<R> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).to_vec()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de, R: Ring + Deserialize<'de>> Deserialize<'de> for Matrix<R> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::<R>::deserialize(de)?;
        if raw.entries.len() != raw.rows || raw.entries.iter().any(|r| r.len() != raw.cols) {
            return Err(D::Error::custom("entries do not match rows/cols"));
        }
        Matrix::new(raw.rows, raw.cols, raw.entries.into_iter().flatten().collect())
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{LaurentPoly, RatFunc, Rational};

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(terms)
    }

    fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = int_matrix(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(Matrix::identity(3).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&Matrix::identity(2)).unwrap(), a);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn assemble_then_extract() {
        let x = int_matrix(&[&[1, 2], &[3, 4]]);
        let y = int_matrix(&[&[5], &[6]]);
        let z = int_matrix(&[&[7, 8]]);
        let q = int_matrix(&[&[9]]);
        let b = Matrix::assemble(&x, &y, &z, &q).unwrap();
        assert_eq!(b.block(0, 0, 2, 2).unwrap(), x);
        assert_eq!(b.block(0, 2, 2, 1).unwrap(), y);
        assert_eq!(b.block(2, 0, 1, 2).unwrap(), z);
        assert_eq!(b.block(2, 2, 1, 1).unwrap(), q);
    }

    #[test]
    fn ratfunc_product_by_hand() {
        // [[1, t], [1/(2-t), 0]] * [[1, 0], [1, 1]] = [[1 + t, t], [1/(2-t), 0]]
        let t = RatFunc::from(LaurentPoly::t_pow(1));
        let inv = RatFunc::from(lp(&[(0, 2), (2, -1)])).inverse().unwrap();
        let a = Matrix::from_rows(vec![vec![RatFunc::one(), t.clone()], vec![inv.clone(), RatFunc::zero()]])
            .unwrap();
        let b = Matrix::from_rows(vec![
            vec![RatFunc::one(), RatFunc::zero()],
            vec![RatFunc::one(), RatFunc::one()],
        ])
        .unwrap();
        let expected = Matrix::from_rows(vec![
            vec![RatFunc::from(lp(&[(0, 1), (2, 1)])), t],
            vec![inv, RatFunc::zero()],
        ])
        .unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn minors_by_hand() {
        let a = int_matrix(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        let full = SubsetIndex::full(3);
        assert_eq!(a.minor(&full, &full).unwrap(), a.det().unwrap());
        let r = SubsetIndex::new(3, &[2]).unwrap();
        let c = SubsetIndex::new(3, &[3]).unwrap();
        assert_eq!(a.minor(&r, &c).unwrap(), Rational::from_integer(4.into()));
        // rows {1,3}, cols {2,3}: det [[-1, 0], [5, -2]] = 2
        let r = SubsetIndex::new(3, &[1, 3]).unwrap();
        let c = SubsetIndex::new(3, &[2, 3]).unwrap();
        assert_eq!(a.minor(&r, &c).unwrap(), Rational::from_integer(2.into()));
        assert!(matches!(a.minor(&r, &SubsetIndex::full(3)), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn json_shape() {
        let a = Matrix::from_rows(vec![vec![lp(&[(0, 1)]), lp(&[(2, -1)])]]).unwrap();
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"rows":1,"cols":2,"entries":[[[[0,1,1]],[[2,-1,1]]]]}"#);
        let back: Matrix<LaurentPoly> = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
    }
}
