//! Braid words, their permutations, and the unreduced Burau representation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{LaurentPoly, Rational, Ring};

/// A word in the generators `sigma_i^{+-1}` of the braid group on `strands` strands.
/// Letters are read left to right as the diagram is read bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::DimensionMismatch("a braid needs at least one strand".into()));
        }
        for &g in &letters {
            if g == 0 {
                return Err(Error::ZeroGenerator);
            }
            if g.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { generator: g as i64, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Positive letters minus negative letters.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&g| g.signum() as i64).sum()
    }

    /// `self` followed by `other` (i.e. `other` stacked on top).
    pub fn then(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|g| -g).collect() }
    }

    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize;
            for x in images.iter_mut() {
                if *x == i {
                    *x = i + 1;
                } else if *x == i + 1 {
                    *x = i;
                }
            }
        }
        Permutation { images }
    }

    /// `M(a_k) ... M(a_1)` for the word `a_1 ... a_k`, built by row operations.
    pub fn burau(&self) -> Matrix<LaurentPoly> {
        let n = self.strands;
        let t = LaurentPoly::t_pow(1);
        let tbar = LaurentPoly::t_pow(-1);
        let one_minus_t = LaurentPoly::one().sub(&t);
        let one_minus_tbar = LaurentPoly::one().sub(&tbar);
        let mut rows: Vec<Vec<LaurentPoly>> = Matrix::<LaurentPoly>::identity(n)
            .entries()
            .chunks(n)
            .map(|r| r.to_vec())
            .collect();
        for &g in &self.letters {
            let p = g.unsigned_abs() as usize - 1;
            let (rp, rq) = (rows[p].clone(), rows[p + 1].clone());
            let (np, nq): (Vec<_>, Vec<_>) = if g > 0 {
                rp.iter()
                    .zip(&rq)
                    .map(|(a, b)| (one_minus_t.mul(a).add(b), t.mul(a)))
                    .unzip()
            } else {
                rp.iter()
                    .zip(&rq)
                    .map(|(a, b)| (tbar.mul(b), a.add(&one_minus_tbar.mul(b))))
                    .unzip()
            };
            rows[p] = np;
            rows[p + 1] = nq;
        }
        Matrix::from_rows(rows).expect("rows have equal length")
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.letters.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// Whitespace-separated nonzero integers; `i` is `sigma_i`, `-i` its inverse.
pub fn parse_braid(text: &str, strands: usize) -> Result<BraidWord> {
    let letters = text
        .split_whitespace()
        .map(|tok| tok.parse::<i32>().map_err(|_| Error::Syntax(format!("'{tok}' is not an integer"))))
        .collect::<Result<Vec<_>>>()?;
    BraidWord::new(strands, letters)
}

/// Matrix of a single letter, used as an independent check of [`BraidWord::burau`].
pub fn generator_matrix(strands: usize, g: i32) -> Matrix<LaurentPoly> {
    let mut m = Matrix::identity(strands);
    let p = g.unsigned_abs() as usize - 1;
    let block = if g > 0 {
        [LaurentPoly::from_int_terms(&[(0, 1), (2, -1)]), LaurentPoly::one(), LaurentPoly::t_pow(1), LaurentPoly::zero()]
    } else {
        [
            LaurentPoly::zero(),
            LaurentPoly::t_pow(-1),
            LaurentPoly::one(),
            LaurentPoly::from_int_terms(&[(0, 1), (-2, -1)]),
        ]
    };
    let [a, b, c, d] = block;
    m.set(p, p, a);
    m.set(p, p + 1, b);
    m.set(p + 1, p, c);
    m.set(p + 1, p + 1, d);
    m
}

/// A permutation of `{1..n}`, `images[i - 1] = pi(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::DimensionMismatch(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Column `j` has its single 1 in row `pi(j)`.
    pub fn matrix(&self) -> Matrix<Rational> {
        let n = self.images.len();
        Matrix::from_fn(n, n, |i, j| if self.images[j] == i + 1 { Rational::one() } else { Rational::zero() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    fn product_oracle(b: &BraidWord) -> Matrix<LaurentPoly> {
        b.letters()
            .iter()
            .fold(Matrix::identity(b.strands()), |acc, &g| generator_matrix(b.strands(), g).mul(&acc).unwrap())
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_braid("1 -2 1", 3).unwrap().letters(), &[1, -2, 1]);
        assert!(parse_braid("", 4).unwrap().is_empty());
        assert!(parse_braid("  \n", 4).unwrap().is_empty());
        assert!(matches!(parse_braid("3", 3), Err(Error::GeneratorOutOfRange { generator: 3, strands: 3 })));
        assert!(matches!(parse_braid("-3", 3), Err(Error::GeneratorOutOfRange { .. })));
        assert_eq!(parse_braid("1 0", 3), Err(Error::ZeroGenerator));
        assert!(matches!(parse_braid("1 x", 3), Err(Error::Syntax(_))));
        assert!(matches!(parse_braid("1.5", 3), Err(Error::Syntax(_))));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(word(2, &[1, 1]).writhe(), 2);
        assert_eq!(word(2, &[1, -1]).writhe(), 0);
        assert_eq!(word(3, &[1, -2, 1]).writhe(), 1);
    }

    #[test]
    fn generator_matrices() {
        let t = LaurentPoly::t_pow(1);
        let one = LaurentPoly::one();
        let expected = Matrix::from_rows(vec![vec![one.sub(&t), one.clone()], vec![t.clone(), LaurentPoly::zero()]]).unwrap();
        assert_eq!(word(2, &[1]).burau(), expected);
        let tb = LaurentPoly::t_pow(-1);
        let expected = Matrix::from_rows(vec![vec![LaurentPoly::zero(), tb.clone()], vec![one.clone(), one.sub(&tb)]]).unwrap();
        assert_eq!(word(2, &[-1]).burau(), expected);
        assert!(word(2, &[1, -1]).burau().is_identity());
        assert!(BraidWord::identity(4).burau().is_identity());
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(BraidWord::identity(3).permutation(), Permutation::identity(3));
        assert_eq!(word(2, &[1]).permutation().images(), &[2, 1]);
        // strand starting at 1 moves to 2 then to 3
        assert_eq!(word(3, &[1, 2]).permutation().images(), &[3, 1, 2]);
    }

    #[test]
    fn braid_relations_up_to_six_strands() {
        for n in 3..=6 {
            for i in 1..(n as i32 - 1) {
                for s in [1, -1] {
                    let lhs = word(n, &[s * i, s * (i + 1), s * i]).burau();
                    let rhs = word(n, &[s * (i + 1), s * i, s * (i + 1)]).burau();
                    assert_eq!(lhs, rhs);
                }
            }
            for i in 1..n as i32 {
                for j in 1..n as i32 {
                    if (i - j).abs() >= 2 {
                        assert_eq!(word(n, &[i, -j]).burau(), word(n, &[-j, i]).burau());
                    }
                }
            }
        }
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..=5).prop_flat_map(|n| {
            let gen = (1..n as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
            proptest::collection::vec(gen, 0..10).prop_map(move |l| BraidWord::new(n, l).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]

        #[test]
        fn row_operations_match_matrix_product(b in arb_word()) {
            prop_assert_eq!(b.burau(), product_oracle(&b));
        }

        #[test]
        fn concatenation_is_multiplication(a in arb_word(), k in 0usize..8) {
            let n = a.strands();
            let c = BraidWord::new(n, a.letters().iter().rev().take(k).map(|g| -g).collect()).unwrap();
            prop_assert_eq!(a.then(&c).unwrap().burau(), c.burau().mul(&a.burau()).unwrap());
        }

        #[test]
        fn word_times_inverse_is_identity(b in arb_word()) {
            prop_assert!(b.then(&b.inverse()).unwrap().burau().is_identity());
        }

        #[test]
        fn eigenvectors(b in arb_word()) {
            let n = b.strands();
            let m = b.burau();
            let ones = Matrix::from_fn(1, n, |_, _| LaurentPoly::one());
            prop_assert_eq!(ones.mul(&m).unwrap(), ones);
            let u = Matrix::from_fn(n, 1, |i, _| LaurentPoly::t_pow(i as i64));
            prop_assert_eq!(m.mul(&u).unwrap(), u);
        }

        #[test]
        fn t_equals_one_is_the_permutation(b in arb_word()) {
            let at_one = b.burau().map(|x| x.specialize_t1());
            prop_assert_eq!(at_one, b.permutation().matrix());
        }
    }
}
