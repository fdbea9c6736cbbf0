use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{LaurentPoly, Ring};

/// Sparse operator on `V^{(x) N}`. Basis vector `e_{i_1} (x) ... (x) e_{i_N}` has index
/// `sum_j i_j 2^{N-j}`, so the first tensor factor is the most significant bit.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOperator {
    strands: usize,
    entries: BTreeMap<(u32, u32), LaurentPoly>,
}

impl TensorOperator {
    pub const MAX_STRANDS: usize = 24;

    pub fn zero(strands: usize) -> Self {
        assert!(strands <= Self::MAX_STRANDS, "too many tensor factors");
        TensorOperator { strands, entries: BTreeMap::new() }
    }

    pub fn identity(strands: usize) -> Self {
        Self::diagonal(strands, |_| LaurentPoly::one())
    }

    pub fn diagonal(strands: usize, f: impl Fn(u32) -> LaurentPoly) -> Self {
        let mut op = Self::zero(strands);
        for r in 0..1u32 << strands {
            op.add_entry(r, r, f(r));
        }
        op
    }

    pub fn from_dense(strands: usize, m: &Matrix<LaurentPoly>) -> Result<Self> {
        let dim = 1usize << strands;
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch(format!("expected a {dim}x{dim} matrix")));
        }
        let mut op = Self::zero(strands);
        for i in 0..dim {
            for j in 0..dim {
                op.add_entry(i as u32, j as u32, m.get(i, j).clone());
            }
        }
        Ok(op)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dim(&self) -> usize {
        1 << self.strands
    }

    pub fn get(&self, r: u32, c: u32) -> LaurentPoly {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    /// Nonzero entries `((row, col), value)` in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &LaurentPoly)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub(crate) fn add_entry(&mut self, r: u32, c: u32, v: LaurentPoly) {
        if v.is_zero() {
            return;
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&v);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch(format!(
                "operators on {} and {} tensor factors",
                self.strands, other.strands
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add_entry(r, c, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&LaurentPoly::from_int(-1))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.strands);
        for (&(r, col), v) in &self.entries {
            out.add_entry(r, col, v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut by_row: BTreeMap<u32, Vec<(u32, &LaurentPoly)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.strands);
        for (&(r, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for &(c, b) in row {
                    out.add_entry(r, c, a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// Left-multiply by a two-slot operator `local` (4x4, basis `e_a (x) e_b` at index `2a + b`)
    /// acting on tensor factors `slot` and `slot + 1` (1-based).
    pub(crate) fn left_apply_local(&self, slot: usize, local: &Matrix<LaurentPoly>) -> Self {
        let hi = (self.strands - slot) as u32;
        let lo = hi - 1;
        let mask = (1u32 << hi) | (1u32 << lo);
        let mut out = Self::zero(self.strands);
        for (&(r, c), v) in &self.entries {
            let l = (((r >> hi) & 1) << 1 | ((r >> lo) & 1)) as usize;
            for l2 in 0..4usize {
                let x = local.get(l2, l);
                if x.is_zero() {
                    continue;
                }
                let r2 = (r & !mask) | (((l2 as u32) >> 1) << hi) | (((l2 as u32) & 1) << lo);
                out.add_entry(r2, c, x.mul(v));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Matrix<LaurentPoly> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for (&(r, c), v) in &self.entries {
            m.set(r as usize, c as usize, v.clone());
        }
        m
    }

    /// Whether every nonzero entry `(r, c)` has `popcount(r) == popcount(c)`.
    pub fn preserves_weight(&self) -> bool {
        self.entries.keys().all(|(r, c)| r.count_ones() == c.count_ones())
    }

    /// The block on the weight-`k` basis.
    pub fn weight_block(&self, k: usize) -> Matrix<LaurentPoly> {
        let basis = weight_basis(self.strands, k);
        let pos: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut m = Matrix::zeros(basis.len(), basis.len());
        for (&(r, c), v) in &self.entries {
            if let (Some(&i), Some(&j)) = (pos.get(&r), pos.get(&c)) {
                m.set(i, j, v.clone());
            }
        }
        m
    }
}

/// Indices of popcount `k` in `0..2^n`, ascending.
pub fn weight_basis(n: usize, k: usize) -> Vec<u32> {
    (0..1u32 << n).filter(|r| r.count_ones() as usize == k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_basis_examples() {
        assert_eq!(weight_basis(2, 1), vec![1, 2]);
        assert_eq!(weight_basis(3, 0), vec![0]);
        assert_eq!(weight_basis(3, 2), vec![3, 5, 6]);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = TensorOperator::from_dense(
            2,
            &Matrix::from_fn(4, 4, |i, j| LaurentPoly::from_int_terms(&[((i as i64) - 1, ((i * 3 + j) % 4) as i64 - 1)])),
        )
        .unwrap();
        let b = TensorOperator::from_dense(
            2,
            &Matrix::from_fn(4, 4, |i, j| LaurentPoly::from_int_terms(&[(j as i64, ((i + 2 * j) % 3) as i64 - 1)])),
        )
        .unwrap();
        assert_eq!(a.mul(&b).unwrap().to_dense(), a.to_dense().mul(&b.to_dense()).unwrap());
        assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
    }
}
