use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `{1..n}`, stored as a bit mask (member `j` is bit `j - 1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetIndex {
    n: usize,
    bits: u32,
}

impl SubsetIndex {
    pub const MAX_GROUND: usize = 31;

    /// From a strictly increasing list of 1-based members.
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n > Self::MAX_GROUND {
            return Err(Error::DimensionMismatch(format!("ground set of size {n} is too large")));
        }
        let mut bits = 0u32;
        let mut prev = 0;
        for &m in members {
            if m <= prev || m > n {
                return Err(Error::DimensionMismatch(format!(
                    "subset members {members:?} must be strictly increasing in 1..={n}"
                )));
            }
            bits |= 1 << (m - 1);
            prev = m;
        }
        Ok(SubsetIndex { n, bits })
    }

    pub fn from_bits(n: usize, bits: u32) -> Self {
        debug_assert!(n <= Self::MAX_GROUND && (n == 32 || bits >> n == 0));
        SubsetIndex { n, bits }
    }

    pub fn full(n: usize) -> Self {
        SubsetIndex { n, bits: full_mask(n) }
    }

    pub fn empty(n: usize) -> Self {
        SubsetIndex { n, bits: 0 }
    }

    pub fn ground(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, j: usize) -> bool {
        j >= 1 && j <= self.n && self.bits & (1 << (j - 1)) != 0
    }

    /// 1-based members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        members_of(self.bits)
    }

    pub fn complement(&self) -> Self {
        SubsetIndex { n: self.n, bits: full_mask(self.n) & !self.bits }
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members())
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// 1-based members of a bit mask, ascending.
pub(crate) fn members_of(bits: u32) -> Vec<usize> {
    (0..32).filter(|i| bits & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Sign of the shuffle permutation with `tau_full = sign * tau_S ^ tau_{S^c}`:
/// the parity of the pairs `(a in S, b in S^c)` with `a > b`.
pub fn shuffle_sign(s: &SubsetIndex) -> i32 {
    wedge_sign(s.bits, s.complement().bits).expect("a subset and its complement are disjoint")
}

/// `tau_A ^ tau_B = sign * tau_{A u B}`, or `None` when `A` and `B` overlap.
pub fn wedge_sign(a: u32, b: u32) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let low = rest.trailing_zeros();
        // members of A strictly above this member of B
        inversions += (a >> low).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Size-`k` subsets of `{1..n}` in lexicographic order of their member tuples.
pub fn subsets(n: usize, k: usize) -> Vec<SubsetIndex> {
    (0..n)
        .combinations(k)
        .map(|c| SubsetIndex { n, bits: c.iter().fold(0, |b, &i| b | (1 << i)) })
        .collect()
}

/// The wedge basis of `Lambda^* M_n`, grade by grade in subset-lex order.
#[derive(Clone, Debug)]
pub struct WedgeBasis {
    n: usize,
    grades: Vec<Vec<u32>>,
    position: HashMap<u32, usize>,
}

impl WedgeBasis {
    pub fn new(n: usize) -> Self {
        let grades: Vec<Vec<u32>> =
            (0..=n).map(|k| subsets(n, k).into_iter().map(|s| s.bits).collect()).collect();
        let position = grades
            .iter()
            .flat_map(|g| g.iter().enumerate().map(|(i, &b)| (b, i)))
            .collect();
        WedgeBasis { n, grades, position }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Bit masks of grade `k`, in basis order.
    pub fn grade(&self, k: usize) -> &[u32] {
        &self.grades[k]
    }

    /// Position of a subset within its own grade.
    pub fn position(&self, bits: u32) -> usize {
        self.position[&bits]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_sign_examples() {
        assert_eq!(shuffle_sign(&SubsetIndex::full(3)), 1);
        assert_eq!(shuffle_sign(&SubsetIndex::empty(3)), 1);
        assert_eq!(shuffle_sign(&SubsetIndex::new(2, &[2]).unwrap()), -1);
        // {2} in {1,2,3}: (2, 1, 3) has one inversion
        assert_eq!(shuffle_sign(&SubsetIndex::new(3, &[2]).unwrap()), -1);
        // {1,3}: (1, 3, 2) has one inversion
        assert_eq!(shuffle_sign(&SubsetIndex::new(3, &[1, 3]).unwrap()), -1);
        // {3}: (3, 1, 2) has two inversions
        assert_eq!(shuffle_sign(&SubsetIndex::new(3, &[3]).unwrap()), 1);
    }

    #[test]
    fn lex_order() {
        let s: Vec<Vec<usize>> = subsets(4, 2).iter().map(|s| s.members()).collect();
        assert_eq!(s, vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]);
        assert_eq!(subsets(3, 0).len(), 1);
    }

    #[test]
    fn rejects_bad_members() {
        assert!(SubsetIndex::new(3, &[2, 1]).is_err());
        assert!(SubsetIndex::new(3, &[4]).is_err());
        assert!(SubsetIndex::new(3, &[1, 1]).is_err());
    }

    #[test]
    fn wedge_sign_overlap() {
        assert_eq!(wedge_sign(0b01, 0b01), None);
        assert_eq!(wedge_sign(0b10, 0b01), Some(-1));
        assert_eq!(wedge_sign(0b01, 0b10), Some(1));
    }
}
