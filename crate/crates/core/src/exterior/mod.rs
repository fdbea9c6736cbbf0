//! Exterior algebra of the Burau module: forms, graded operators, supertraces,
//! contractions, and the Schur-complement evaluation of partial supertraces.

mod brt;
mod phi;

pub use brt::{brt, brt_operator, brt_ratio, e_breve, f_breve};
pub use phi::PhiMap;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{compound_upto, full_mask, schur_complement, shuffle_sign, wedge_sign, Matrix, SubsetIndex, WedgeBasis};
use crate::ring::{Field, Ring};

/// An element of `Lambda^* M_n`, keyed by the bit mask of `tau_S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<R> {
    n: usize,
    terms: BTreeMap<u32, R>,
}

impl<R: Ring> Form<R> {
    pub fn zero(n: usize) -> Self {
        Form { n, terms: BTreeMap::new() }
    }

    /// `tau_S`.
    pub fn basis(s: &SubsetIndex) -> Self {
        let mut f = Self::zero(s.ground());
        f.add_term(s.bits(), R::one());
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, bits: u32) -> R {
        self.terms.get(&bits).cloned().unwrap_or_else(R::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &R)> {
        self.terms.iter().map(|(&b, c)| (b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, bits: u32, c: R) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&bits) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(bits, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&b, c) in &other.terms {
            out.add_term(b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(self.n);
        for (&b, x) in &self.terms {
            out.add_term(b, x.mul(c));
        }
        out
    }

    /// `self ^ other`; both must live on the same ground set.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("forms on {} and {} generators", self.n, other.n)));
        }
        let mut out = Self::zero(self.n);
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                if let Some(sg) = wedge_sign(a, b) {
                    let v = x.mul(y);
                    out.add_term(a | b, if sg < 0 { v.neg() } else { v });
                }
            }
        }
        Ok(out)
    }

    /// Embed a form on `M_n` into `Lambda^*(M_n + M_m)`.
    pub fn extend(&self, m: usize) -> Self {
        Form { n: self.n + m, terms: self.terms.clone() }
    }
}

/// `iota_S : Lambda^*(U + M_m) -> Lambda^* U` with `iota_S(alpha ^ tau_T) = delta_{S,T} alpha`.
/// `u` is the rank of `U`; `s` is a subset of `{1..m}`.
pub fn contraction<R: Ring>(s: &SubsetIndex, eta: &Form<R>, u: usize) -> Result<Form<R>> {
    if eta.n != u + s.ground() {
        return Err(Error::DimensionMismatch(format!(
            "contraction over {} slots of a form on {} generators with |U| = {u}",
            s.ground(),
            eta.n
        )));
    }
    let low = full_mask(u);
    let target = s.bits() << u;
    let mut out = Form::zero(u);
    for (&b, c) in &eta.terms {
        if b & !low == target {
            out.add_term(b & low, c.clone());
        }
    }
    Ok(out)
}

/// A linear operator on `Lambda^* M_n`, stored sparsely by `(output subset, input subset)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtOperator<R> {
    n: usize,
    entries: BTreeMap<(u32, u32), R>,
}

impl<R: Ring> ExtOperator<R> {
    pub fn zero(n: usize) -> Self {
        ExtOperator { n, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::zero(n);
        for b in 0..=full_mask(n) {
            op.add_entry(b, b, R::one());
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, out: u32, inp: u32) -> R {
        self.entries.get(&(out, inp)).cloned().unwrap_or_else(R::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &R)> {
        self.entries.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, out: u32, inp: u32, v: R) {
        if v.is_zero() {
            return;
        }
        let v = match self.entries.remove(&(out, inp)) {
            Some(old) => old.add(&v),
            None => v,
        };
        if !v.is_zero() {
            self.entries.insert((out, inp), v);
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ExtOperator<S> {
        let mut out = ExtOperator::zero(self.n);
        for (&(a, b), v) in &self.entries {
            out.add_entry(a, b, f(v));
        }
        out
    }

    pub fn try_map<S: Ring>(&self, f: impl Fn(&R) -> Result<S>) -> Result<ExtOperator<S>> {
        let mut out = ExtOperator::zero(self.n);
        for (&(a, b), v) in &self.entries {
            out.add_entry(a, b, f(v)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul(c))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut out = self.clone();
        for (&(a, b), v) in &other.entries {
            out.add_entry(a, b, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.map(|v| v.neg()))
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.same_rank(other)?;
        let mut by_row: BTreeMap<u32, Vec<(u32, &R)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.n);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in by_row.get(&k).into_iter().flatten() {
                out.add_entry(r, c, a.mul(b));
            }
        }
        Ok(out)
    }

    fn same_rank(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("operators on ranks {} and {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn apply(&self, f: &Form<R>) -> Result<Form<R>> {
        if f.n != self.n {
            return Err(Error::DimensionMismatch(format!("operator on rank {} applied to rank {}", self.n, f.n)));
        }
        let mut out = Form::zero(self.n);
        for (&(r, c), v) in &self.entries {
            if let Some(x) = f.terms.get(&c) {
                out.add_term(r, v.mul(x));
            }
        }
        Ok(out)
    }

    /// Whether every entry maps grade `k` to grade `k + shift`.
    pub fn has_degree(&self, shift: i32) -> bool {
        self.entries.keys().all(|(r, c)| r.count_ones() as i32 - c.count_ones() as i32 == shift)
    }

    /// The block from grade `k_in` to grade `k_out` in subset-lex order.
    pub fn block(&self, k_out: usize, k_in: usize) -> Result<Matrix<R>> {
        for k in [k_out, k_in] {
            if k > self.n {
                return Err(Error::BadGrade { grade: k, max: self.n });
            }
        }
        let basis = WedgeBasis::new(self.n);
        let (rows, cols) = (basis.grade(k_out), basis.grade(k_in));
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (&(r, c), v) in &self.entries {
            if r.count_ones() as usize == k_out && c.count_ones() as usize == k_in {
                m.set(basis.position(r), basis.position(c), v.clone());
            }
        }
        Ok(m)
    }

    /// Diagonal blocks `0..=n`.
    pub fn diagonal_blocks(&self) -> Result<Vec<Matrix<R>>> {
        (0..=self.n).map(|k| self.block(k, k)).collect()
    }

    pub fn from_blocks(n: usize, blocks: &[(usize, usize, Matrix<R>)]) -> Result<Self> {
        let basis = WedgeBasis::new(n);
        let mut op = Self::zero(n);
        for (k_out, k_in, m) in blocks {
            if *k_out > n || *k_in > n {
                return Err(Error::BadGrade { grade: (*k_out).max(*k_in), max: n });
            }
            let (rows, cols) = (basis.grade(*k_out), basis.grade(*k_in));
            if m.rows() != rows.len() || m.cols() != cols.len() {
                return Err(Error::DimensionMismatch(format!("block ({k_out}, {k_in}) has the wrong shape")));
            }
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    op.add_entry(r, c, m.get(i, j).clone());
                }
            }
        }
        Ok(op)
    }
}

/// `Lambda^* A`, block diagonal with the compound matrices of `A`.
pub fn lambda_star<R: Ring>(a: &Matrix<R>) -> Result<ExtOperator<R>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let basis = WedgeBasis::new(n);
    let compounds = compound_upto(a, &basis, n);
    let mut op = ExtOperator::zero(n);
    for (k, c) in compounds.iter().enumerate() {
        let subs = basis.grade(k);
        for (i, &r) in subs.iter().enumerate() {
            for (j, &col) in subs.iter().enumerate() {
                op.add_entry(r, col, c.get(i, j).clone());
            }
        }
    }
    Ok(op)
}

/// `trace((-1)^d f)`.
pub fn supertrace<R: Ring>(f: &ExtOperator<R>) -> R {
    f.entries.iter().filter(|((r, c), _)| r == c).fold(R::zero(), |acc, ((r, _), v)| {
        if r.count_ones() % 2 == 0 {
            acc.add(v)
        } else {
            acc.sub(v)
        }
    })
}

/// `STR(f) alpha = sum_S (-1)^{|S|} iota_S(f(alpha ^ tau_S))`, where the last `m = rank - n`
/// generators are traced out.
pub fn partial_supertrace<R: Ring>(f: &ExtOperator<R>, n: usize) -> Result<ExtOperator<R>> {
    if n > f.n {
        return Err(Error::DimensionMismatch(format!("cannot keep {n} of {} generators", f.n)));
    }
    let low = full_mask(n);
    let mut out = ExtOperator::zero(n);
    for (&(r, c), v) in &f.entries {
        let s = r & !low;
        if s == c & !low {
            let v = if (s.count_ones()) % 2 == 0 { v.clone() } else { v.neg() };
            out.add_entry(r & low, c & low, v);
        }
    }
    Ok(out)
}

/// `iota_m((Lambda^* A alpha) ^ (Lambda^*(I - A) tau_m))` for `A` on `U + M_m`, `|U| = n`.
pub fn top_form_eval<R: Ring>(a: &Matrix<R>, n: usize, alpha: &Form<R>) -> Result<Form<R>> {
    if !a.is_square() || a.rows() < n {
        return Err(Error::DimensionMismatch(format!("cannot split a {}x{} matrix at {n}", a.rows(), a.cols())));
    }
    if alpha.n != n {
        return Err(Error::DimensionMismatch(format!("form on {} generators, expected {n}", alpha.n)));
    }
    let total = a.rows();
    let m = total - n;
    let lifted = lambda_star(a)?.apply(&alpha.extend(m))?;
    let i_minus_a = Matrix::identity(total).sub(a)?;
    let top = SubsetIndex::from_bits(total, full_mask(total) & !full_mask(n));
    let vol = lambda_star(&i_minus_a)?.apply(&Form::basis(&top))?;
    contraction(&SubsetIndex::full(m), &lifted.wedge(&vol)?, n)
}

/// The operator `alpha -> top_form_eval(A, n, alpha)`, assembled on the wedge basis.
pub fn top_form_operator<R: Ring>(a: &Matrix<R>, n: usize) -> Result<ExtOperator<R>> {
    let mut op = ExtOperator::zero(n);
    for c in 0..=full_mask(n) {
        let image = top_form_eval(a, n, &Form::basis(&SubsetIndex::from_bits(n, c)))?;
        for (r, v) in image.terms() {
            op.add_entry(r, c, v.clone());
        }
    }
    Ok(op)
}

/// `det(L) Lambda^*(I - D)` where `I - A = [[H, J], [K, L]]` and `D = H - J L^-1 K`.
pub fn schur_supertrace<R: Field>(a: &Matrix<R>, n: usize) -> Result<ExtOperator<R>> {
    if !a.is_square() || a.rows() < n {
        return Err(Error::DimensionMismatch(format!("cannot split a {}x{} matrix at {n}", a.rows(), a.cols())));
    }
    let m = a.rows() - n;
    let b = Matrix::identity(a.rows()).sub(a)?;
    let f = schur_complement(&b, n, m)?;
    let det_l = f.l.det_gauss()?;
    let i_minus_d = Matrix::identity(n).sub(&f.d)?;
    Ok(lambda_star(&i_minus_d)?.scale(&det_l))
}

/// `iota_S(eta) = sigma_S iota_m(eta ^ tau_{S^c})`; exposed for tests of the identity.
pub fn contraction_via_top<R: Ring>(s: &SubsetIndex, eta: &Form<R>, u: usize) -> Result<Form<R>> {
    let m = s.ground();
    let comp = SubsetIndex::from_bits(u + m, s.complement().bits() << u);
    let wedged = eta.wedge(&Form::basis(&comp))?;
    let sigma = shuffle_sign(s);
    let r = contraction(&SubsetIndex::full(m), &wedged, u)?;
    Ok(if sigma < 0 { r.scale(&R::from_int(-1)) } else { r })
}
