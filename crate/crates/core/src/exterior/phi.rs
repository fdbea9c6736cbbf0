use super::ExtOperator;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, WedgeBasis};
use crate::rmatrix::{weight_basis, TensorOperator};
use crate::ring::{LaurentPoly, Ring};

/// The isomorphism `V^{(x) n} -> Lambda^* M_n`, `e_I -> t^{(sum of S(I))/2} tau_{S(I)}`
/// with `S(I) = {j : i_j = 1}`.
///
/// The weight basis (ascending tensor index) and the wedge basis (subset-lex) list the
/// same subsets in different orders, so the map is a scaled pairing rather than a
/// diagonal matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiMap {
    n: usize,
}

impl PhiMap {
    pub fn new(n: usize) -> Self {
        PhiMap { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Tensor index -> subset bit mask (slot `j` is tensor bit `n - j` and member bit `j - 1`).
    pub fn subset_of(&self, index: u32) -> u32 {
        (0..self.n).filter(|&b| index >> b & 1 == 1).fold(0, |acc, b| acc | 1 << (self.n - 1 - b))
    }

    pub fn index_of(&self, subset: u32) -> u32 {
        // the bit reversal is an involution
        self.subset_of(subset)
    }

    /// Exponent of `s` in the scale of `tau_S`: the sum of the members of `S`.
    pub fn scale_exponent(&self, subset: u32) -> i64 {
        (0..self.n).filter(|&b| subset >> b & 1 == 1).map(|b| b as i64 + 1).sum()
    }

    /// `Phi` restricted to weight `k`: rows in wedge order, columns in weight order.
    pub fn matrix(&self, k: usize) -> Result<Matrix<LaurentPoly>> {
        if k > self.n {
            return Err(Error::BadGrade { grade: k, max: self.n });
        }
        let wedge = WedgeBasis::new(self.n);
        let weights = weight_basis(self.n, k);
        let mut m = Matrix::zeros(weights.len(), weights.len());
        for (j, &idx) in weights.iter().enumerate() {
            let s = self.subset_of(idx);
            m.set(wedge.position(s), j, LaurentPoly::s_pow(self.scale_exponent(s)));
        }
        Ok(m)
    }

    /// `Phi^{-1} f Phi`.
    pub fn to_tensor(&self, f: &ExtOperator<LaurentPoly>) -> Result<TensorOperator> {
        self.check(f.n())?;
        let mut out = TensorOperator::zero(self.n);
        for ((r, c), v) in f.entries() {
            let shift = self.scale_exponent(c) - self.scale_exponent(r);
            out.add_entry(self.index_of(r), self.index_of(c), v.shift(shift));
        }
        Ok(out)
    }

    /// `Phi g Phi^{-1}`.
    pub fn from_tensor(&self, g: &TensorOperator) -> Result<ExtOperator<LaurentPoly>> {
        self.check(g.strands())?;
        let mut out = ExtOperator::zero(self.n);
        for (&(r, c), v) in g.entries() {
            let (sr, sc) = (self.subset_of(r), self.subset_of(c));
            out.add_entry(sr, sc, v.shift(self.scale_exponent(sr) - self.scale_exponent(sc)));
        }
        Ok(out)
    }

    /// Per-grade `Phi_k M_k Phi_k^{-1}` for matrices on the weight bases.
    pub fn conjugate_graded<R: Ring + From<LaurentPoly>>(&self, blocks: &[Matrix<R>]) -> Result<Vec<Matrix<R>>> {
        self.graded(blocks, 1)
    }

    /// Per-grade `Phi_k^{-1} M_k Phi_k` for matrices on the wedge bases.
    pub fn unconjugate_graded<R: Ring + From<LaurentPoly>>(&self, blocks: &[Matrix<R>]) -> Result<Vec<Matrix<R>>> {
        self.graded(blocks, -1)
    }

    fn graded<R: Ring + From<LaurentPoly>>(&self, blocks: &[Matrix<R>], dir: i64) -> Result<Vec<Matrix<R>>> {
        if blocks.len() != self.n + 1 {
            return Err(Error::DimensionMismatch(format!("expected {} graded blocks", self.n + 1)));
        }
        let wedge = WedgeBasis::new(self.n);
        blocks
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let weights = weight_basis(self.n, k);
                if m.rows() != weights.len() || m.cols() != weights.len() {
                    return Err(Error::DimensionMismatch(format!("grade {k} block has the wrong size")));
                }
                // weight position -> (wedge position, scale exponent)
                let pair: Vec<(usize, i64)> = weights
                    .iter()
                    .map(|&idx| {
                        let s = self.subset_of(idx);
                        (wedge.position(s), self.scale_exponent(s))
                    })
                    .collect();
                let mut out = Matrix::zeros(m.rows(), m.cols());
                for (i, &(pi, ei)) in pair.iter().enumerate() {
                    for (j, &(pj, ej)) in pair.iter().enumerate() {
                        if dir > 0 {
                            let f = R::from(LaurentPoly::s_pow(ei - ej));
                            out.set(pi, pj, m.get(i, j).mul(&f));
                        } else {
                            let f = R::from(LaurentPoly::s_pow(ej - ei));
                            out.set(i, j, m.get(pi, pj).mul(&f));
                        }
                    }
                }
                Ok(out)
            })
            .collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n {
            return Err(Error::DimensionMismatch(format!("Phi on {} factors applied to {n}", self.n)));
        }
        Ok(())
    }
}
