//! The random-walk invariant of string links presented as partial braid closures.

use serde::{Deserialize, Serialize};

use crate::braid::{BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::linalg::{exterior_power, Matrix};
use crate::ring::{Field, LaurentPoly, RatFunc, Rational, Ring};

/// A braid on `n + m` strands whose last `m` strands are closed up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosurePresentation {
    n: usize,
    m: usize,
    braid: BraidWord,
}

impl ClosurePresentation {
    pub fn new(n: usize, m: usize, braid: BraidWord) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("at least one strand must stay open".into()));
        }
        if braid.strands() != n + m {
            return Err(Error::DimensionMismatch(format!(
                "braid has {} strands but n + m = {}",
                braid.strands(),
                n + m
            )));
        }
        Ok(ClosurePresentation { n, m, braid })
    }

    /// A braid with nothing closed.
    pub fn pure(braid: BraidWord) -> Self {
        ClosurePresentation { n: braid.strands(), m: 0, braid }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn writhe(&self) -> i64 {
        self.braid.writhe()
    }

    /// Permutation of the open strands: follow each strand up through the braid,
    /// and whenever it exits at a closed position re-enter at the bottom of it.
    pub fn permutation(&self) -> Result<Permutation> {
        self.require_string_link()?;
        let pi = self.braid.permutation();
        let images = (1..=self.n)
            .map(|j| {
                let mut x = pi.apply(j);
                while x > self.n {
                    x = pi.apply(x);
                }
                x
            })
            .collect();
        Permutation::new(images)
    }

    /// `upper` stacked on top of `self`. Each factor keeps its own closed strands:
    /// the lower factor's next to the open strands, the upper factor's further right,
    /// carried across by a conjugating braid on closed strands only.
    pub fn then(&self, upper: &ClosurePresentation) -> Result<ClosurePresentation> {
        if self.n != upper.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack string links on {} and {} strands",
                self.n, upper.n
            )));
        }
        let (n, m1, m2) = (self.n, upper.m, self.m);
        let mut gamma = Vec::new();
        for j in 1..=m1 {
            for p in (n + j..n + m2 + j).rev() {
                gamma.push(p as i32);
            }
        }
        let mut letters = self.braid.letters().to_vec();
        letters.extend_from_slice(&gamma);
        letters.extend_from_slice(upper.braid.letters());
        letters.extend(gamma.iter().rev().map(|g| -g));
        ClosurePresentation::new(n, m1 + m2, BraidWord::new(n + m1 + m2, letters)?)
    }

    fn require_string_link(&self) -> Result<()> {
        match closed_cycle(self) {
            Some(cycle) => Err(Error::NotStringLink { cycle }),
            None => Ok(()),
        }
    }
}

/// Block form `[[X, Y], [Z, Q]]` of the Burau matrix, split after row and column `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BurauBlocks {
    pub x: Matrix<LaurentPoly>,
    pub y: Matrix<LaurentPoly>,
    pub z: Matrix<LaurentPoly>,
    pub q: Matrix<LaurentPoly>,
}

impl BurauBlocks {
    pub fn reassemble(&self) -> Matrix<LaurentPoly> {
        Matrix::assemble(&self.x, &self.y, &self.z, &self.q).expect("block shapes agree")
    }
}

/// The invariant together with `det(I - Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RWInvariant {
    pub gamma: Matrix<RatFunc>,
    pub denominator: LaurentPoly,
}

pub fn blocks(cp: &ClosurePresentation) -> BurauBlocks {
    let b = cp.braid.burau();
    let (n, m) = (cp.n, cp.m);
    let part = |r0, c0, nr, nc| b.block(r0, c0, nr, nc).expect("block in range");
    BurauBlocks { x: part(0, 0, n, n), y: part(0, n, n, m), z: part(n, 0, m, n), q: part(n, n, m, m) }
}

/// Closed positions (1-based, in `n+1..=n+m`) forming a closed component, if any.
fn closed_cycle(cp: &ClosurePresentation) -> Option<Vec<usize>> {
    let pi = cp.braid.permutation();
    let (n, m) = (cp.n, cp.m);
    for start in n + 1..=n + m {
        let mut path = vec![start];
        let mut x = pi.apply(start);
        while x > n && path.len() <= m {
            if x == start {
                return Some(path);
            }
            path.push(x);
            x = pi.apply(x);
        }
    }
    None
}

/// Whether `Q` at `t = 1` is nilpotent, checked by integer matrix powers.
pub fn is_string_link(cp: &ClosurePresentation) -> bool {
    let m = cp.m;
    if m == 0 {
        return true;
    }
    let q = blocks(cp).q.map(|x| x.specialize_t1());
    let mut power = Matrix::<Rational>::identity(m);
    for _ in 0..m {
        power = power.mul(&q).expect("square");
    }
    power.is_zero()
}

/// `Gamma = X + Y (I - Q)^-1 Z`.
pub fn ltw(cp: &ClosurePresentation) -> Result<RWInvariant> {
    if !is_string_link(cp) {
        return Err(Error::NotStringLink { cycle: closed_cycle(cp).unwrap_or_default() });
    }
    let bl = blocks(cp);
    let lift = |a: &Matrix<LaurentPoly>| a.map(|x| RatFunc::from(x));
    let i_minus_q = Matrix::identity(cp.m).sub(&bl.q)?;
    let denominator = i_minus_q.det()?;
    let mut gamma = lift(&bl.x);
    if cp.m > 0 {
        let inv = lift(&i_minus_q).inverse()?;
        gamma = gamma.add(&lift(&bl.y).mul(&inv)?.mul(&lift(&bl.z))?)?;
    }
    Ok(RWInvariant { gamma, denominator })
}

pub fn ltw_exterior(cp: &ClosurePresentation, k: usize) -> Result<Matrix<RatFunc>> {
    if k > cp.n {
        return Err(Error::BadGrade { grade: k, max: cp.n });
    }
    exterior_power(&ltw(cp)?.gamma, k)
}

/// `u_n = (1, t, ..., t^{n-1})^T`.
pub fn u_vector(n: usize) -> Vec<RatFunc> {
    (0..n).map(|j| RatFunc::from(LaurentPoly::t_pow(j as i64))).collect()
}

/// Checks `e_n Gamma = e_n` and `Gamma u_n = u_n` exactly.
pub fn eigen_check(inv: &RWInvariant) -> bool {
    let g = &inv.gamma;
    let n = g.rows();
    let ones = Matrix::from_fn(1, n, |_, _| RatFunc::one());
    let u = Matrix::new(n, 1, u_vector(n)).expect("length n");
    ones.mul(g).map(|r| r == ones).unwrap_or(false) && g.mul(&u).map(|c| c == u).unwrap_or(false)
}

/// The normalized right eigenvector `u_n / <e_n, u_n>`, with components
/// `(1 - t) t^{j-1} / (1 - t^n)` for `j = 1..n`.
pub fn equilibrium(n: usize) -> Vec<RatFunc> {
    let u = u_vector(n);
    let total = u.iter().fold(RatFunc::zero(), |acc, x| acc.add(x));
    let inv = total.inv().expect("1 + t + ... is nonzero");
    u.iter().map(|x| x.mul(&inv)).collect()
}

/// `X + Y (sum_{r < N} Q^r) Z` evaluated at `t = t0`.
pub fn truncated_series_oracle(cp: &ClosurePresentation, terms: usize, t0: &Rational) -> Result<Matrix<Rational>> {
    if !is_string_link(cp) {
        return Err(Error::NotStringLink { cycle: closed_cycle(cp).unwrap_or_default() });
    }
    let bl = blocks(cp);
    let at = |a: &Matrix<LaurentPoly>| a.try_map(|x| x.evaluate_t(t0));
    let (x, y, z, q) = (at(&bl.x)?, at(&bl.y)?, at(&bl.z)?, at(&bl.q)?);
    if cp.m == 0 || terms == 0 {
        return Ok(x);
    }
    let mut power = Matrix::<Rational>::identity(cp.m);
    let mut sum = Matrix::<Rational>::zeros(cp.m, cp.m);
    for _ in 0..terms {
        sum = sum.add(&power)?;
        power = power.mul(&q)?;
    }
    x.add(&y.mul(&sum)?.mul(&z)?)
}
