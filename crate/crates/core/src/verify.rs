//! Instance-level checks of the correspondence between the random-walk invariant,
//! the graded R-matrix functor and the exterior-algebra supertrace, plus the fixtures
//! and generators used by the suites.

use std::fmt::Display;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{parse_braid, BraidWord};
use crate::error::{Error, Result};
use crate::exterior::{brt_ratio, partial_supertrace, schur_supertrace, top_form_operator, lambda_star, PhiMap};
use crate::linalg::{exterior_power, Matrix};
use crate::randomwalk::{eigen_check, is_string_link, ltw, ltw_exterior, ClosurePresentation};
use crate::rmatrix::{equivariance_check, functor_value, graded_ratio, TensorOperator};
use crate::ring::{LaurentPoly, RatFunc, Ring};

/// Braid word (on 3 strands, closing the last) whose closure is the example link `S`.
/// Found by [`find_braid_for_example`].
pub const EXAMPLE_S_WORD: &str = "2 -1 2";

/// Number of words tried by [`random_string_link`] before giving up.
pub const RETRY_BUDGET: usize = 10_000;

/// First disagreeing entry of a failed check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub grade: Option<usize>,
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub grade: Option<usize>,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl Check {
    fn pass(name: &str, grade: Option<usize>) -> Self {
        Check { name: name.into(), grade, passed: true, witness: None }
    }

    fn fail(name: &str, witness: Witness) -> Self {
        Check { name: name.into(), grade: witness.grade, passed: false, witness: Some(witness) }
    }

    /// Entrywise equality, reporting the first mismatch in row-major order.
    fn matrices<R: Ring + Display>(name: &str, grade: Option<usize>, lhs: &Matrix<R>, rhs: &Matrix<R>) -> Self {
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            return Check::fail(
                name,
                Witness {
                    grade,
                    row: 0,
                    col: 0,
                    lhs: format!("{}x{} matrix", lhs.rows(), lhs.cols()),
                    rhs: format!("{}x{} matrix", rhs.rows(), rhs.cols()),
                },
            );
        }
        for i in 0..lhs.rows() {
            for j in 0..lhs.cols() {
                let (a, b) = (lhs.get(i, j), rhs.get(i, j));
                if a != b {
                    let witness = Witness { grade, row: i, col: j, lhs: a.to_string(), rhs: b.to_string() };
                    return Check::fail(name, witness);
                }
            }
        }
        Check::pass(name, grade)
    }

    /// Equality of sparse tensor operators; the grade of a witness is the weight of its row.
    fn tensors(name: &str, lhs: &TensorOperator, rhs: &TensorOperator) -> Self {
        let keys = lhs.entries().chain(rhs.entries()).map(|(&k, _)| k).sorted().dedup();
        for (r, c) in keys {
            let (a, b) = (lhs.get(r, c), rhs.get(r, c));
            if a != b {
                let witness = Witness {
                    grade: Some(r.count_ones() as usize),
                    row: r as usize,
                    col: c as usize,
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                };
                return Check::fail(name, witness);
            }
        }
        Check::pass(name, None)
    }

    fn flag(name: &str, ok: bool) -> Self {
        if ok {
            Check::pass(name, None)
        } else {
            Check { name: name.into(), grade: None, passed: false, witness: None }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub presentation: ClosurePresentation,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    fn new(cp: &ClosurePresentation, checks: Vec<Check>, start: Instant) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerificationReport {
            presentation: cp.clone(),
            checks,
            passed,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn merge(mut self, other: VerificationReport) -> Self {
        self.checks.extend(other.checks);
        self.passed &= other.passed;
        self.elapsed_ms += other.elapsed_ms;
        self
    }
}

fn require_string_link(cp: &ClosurePresentation) -> Result<()> {
    if is_string_link(cp) {
        Ok(())
    } else {
        Err(cp.permutation().err().unwrap_or(Error::NotStringLink { cycle: Vec::new() }))
    }
}

/// `Lambda^k Gamma(T)` against the `Phi`-conjugated graded ratio of the functor, every grade.
pub fn theorem_check(cp: &ClosurePresentation) -> Result<VerificationReport> {
    let start = Instant::now();
    require_string_link(cp)?;
    let n = cp.n();
    let v = functor_value(cp)?;
    let ratios = (0..=n).map(|k| graded_ratio(&v, k)).collect::<Result<Vec<_>>>()?;
    let conjugated = PhiMap::new(n).conjugate_graded(&ratios)?;
    let checks = (0..=n)
        .map(|k| Ok(Check::matrices("theorem", Some(k), &ltw_exterior(cp, k)?, &conjugated[k])))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(cp, checks, start))
}

/// First `k x k` minor of the grade-1 component not divisible by `V_0^{k-1}` in `Z[s, 1/s]`.
fn corollary_witness(cp: &ClosurePresentation, k: usize) -> Result<Option<Witness>> {
    require_string_link(cp)?;
    if k > cp.n() {
        return Err(Error::BadGrade { grade: k, max: cp.n() });
    }
    let v = functor_value(cp)?;
    let d = v.component(0)?.get(0, 0).pow(k.saturating_sub(1) as u32);
    let minors = exterior_power(v.component(1)?, k)?;
    for i in 0..minors.rows() {
        for j in 0..minors.cols() {
            let mu = minors.get(i, j);
            let ok = LaurentPoly::divides(&d, mu).is_some_and(|q| q.is_integral());
            if !ok {
                return Ok(Some(Witness { grade: Some(k), row: i, col: j, lhs: mu.to_string(), rhs: d.to_string() }));
            }
        }
    }
    Ok(None)
}

/// Whether `V_0^{k-1}` divides every `k x k` minor of the grade-1 component.
pub fn corollary_check(cp: &ClosurePresentation, k: usize) -> Result<bool> {
    Ok(corollary_witness(cp, k)?.is_none())
}

/// [`corollary_check`] for every `1 <= k <= n`, as a report.
pub fn corollary_report(cp: &ClosurePresentation) -> Result<VerificationReport> {
    let start = Instant::now();
    let checks = (1..=cp.n())
        .map(|k| {
            Ok(match corollary_witness(cp, k)? {
                None => Check::pass("divisibility", Some(k)),
                Some(w) => Check::fail("divisibility", w),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(cp, checks, start))
}

/// `s^{m - w} Phi^{-1} STR(Lambda^* burau) Phi`, the functor value rebuilt from Burau.
pub fn functor_via_supertrace(cp: &ClosurePresentation) -> Result<TensorOperator> {
    require_string_link(cp)?;
    let contraction = partial_supertrace(&lambda_star(&cp.braid().burau())?, cp.n())?;
    let scale = LaurentPoly::s_pow(cp.m() as i64 - cp.writhe());
    PhiMap::new(cp.n()).to_tensor(&contraction.scale(&scale))
}

/// The functor against [`functor_via_supertrace`], the Schur and
/// top-form evaluations against the contraction one, and the supertrace ratios against
/// `Lambda^k Gamma`.
pub fn cross_check_paths(cp: &ClosurePresentation) -> Result<VerificationReport> {
    let start = Instant::now();
    require_string_link(cp)?;
    let n = cp.n();
    let burau = cp.braid().burau();
    let contraction = partial_supertrace(&lambda_star(&burau)?, n)?;
    let exterior_side = functor_via_supertrace(cp)?;
    let mut checks = vec![Check::tensors("functor-vs-supertrace", &functor_value(cp)?.operator, &exterior_side)];

    let schur = schur_supertrace(&burau.map(|x| RatFunc::from(x)), n)?;
    let top = top_form_operator(&burau, n)?;
    let lifted = contraction.map(|x| RatFunc::from(x));
    for k in 0..=n {
        checks.push(Check::matrices("schur-vs-contraction", Some(k), &schur.block(k, k)?, &lifted.block(k, k)?));
        checks.push(Check::matrices("top-form-vs-contraction", Some(k), &top.block(k, k)?, &contraction.block(k, k)?));
        checks.push(Check::matrices("supertrace-ratio-vs-ltw", Some(k), &brt_ratio(cp, k)?, &ltw_exterior(cp, k)?));
    }
    Ok(VerificationReport::new(cp, checks, start))
}

/// Every check on one presentation: theorem, divisibility, the three evaluation paths,
/// eigenvectors of `Gamma` and equivariance of the functor.
pub fn verify_presentation(cp: &ClosurePresentation) -> Result<VerificationReport> {
    let start = Instant::now();
    let extra = vec![
        Check::flag("eigenvectors", eigen_check(&ltw(cp)?)),
        Check::flag("equivariance", equivariance_check(cp)?),
    ];
    let report = theorem_check(cp)?.merge(corollary_report(cp)?).merge(cross_check_paths(cp)?);
    Ok(report.merge(VerificationReport::new(cp, extra, start)))
}

/// Runs `f` over the presentations in parallel; results keep input order.
pub fn run_suite<T, F>(cps: &[ClosurePresentation], f: F) -> Vec<Result<T>>
where
    T: Send,
    F: Fn(&ClosurePresentation) -> Result<T> + Sync + Send,
{
    cps.par_iter().map(f).collect()
}

/// Uniformly random words (length in `0..=max_len`, letters uniform among `+-1..+-(n+m-1)`)
/// until the closure is a string link.
pub fn random_string_link(n: usize, m: usize, max_len: usize, seed: u64) -> Result<ClosurePresentation> {
    let strands = n + m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RETRY_BUDGET {
        let len = if strands > 1 { rng.gen_range(0..=max_len) } else { 0 };
        let letters = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..strands) as i32;
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let cp = ClosurePresentation::new(n, m, BraidWord::new(strands, letters)?)?;
        if is_string_link(&cp) {
            log::debug!("string link on n={n}, m={m} accepted after {attempt} draws");
            return Ok(cp);
        }
    }
    Err(Error::ExhaustedRetries(RETRY_BUDGET))
}

/// Shape of a seeded random suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSpec {
    pub count: usize,
    pub max_n: usize,
    pub max_m: usize,
    pub max_len: usize,
    pub seed: u64,
}

/// `count` string links with `n` uniform in `1..=max_n` and `m` in `0..=max_m`.
pub fn random_suite(spec: &SuiteSpec) -> Result<Vec<ClosurePresentation>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let draws: Vec<(usize, usize, u64)> = (0..spec.count)
        .map(|_| (rng.gen_range(1..=spec.max_n), rng.gen_range(0..=spec.max_m), rng.next_u64()))
        .collect();
    draws.into_par_iter().map(|(n, m, s)| random_string_link(n, m, spec.max_len, s)).collect()
}

/// `Gamma(S) = 1/(2 - t) [[1, 1/t - 1], [1 - t, 3 - t - 1/t]]`.
pub fn example_s_gamma() -> Matrix<RatFunc> {
    let lp = LaurentPoly::from_int_terms;
    let den = lp(&[(0, 2), (2, -1)]);
    let entry = |terms: &[(i64, i64)]| RatFunc::from_laurent_pair(&lp(terms), &den).expect("nonzero denominator");
    Matrix::from_rows(vec![
        vec![entry(&[(0, 1)]), entry(&[(-2, 1), (0, -1)])],
        vec![entry(&[(0, 1), (2, -1)]), entry(&[(-2, -1), (0, 3), (2, -1)])],
    ])
    .expect("rectangular")
}

/// Graded functor components of `S`: `(2 - t)`, the grade-1 block on
/// `{e0 (x) e1, e1 (x) e0}`, and `(2 - 1/t)`.
pub fn example_s_components() -> Vec<Matrix<LaurentPoly>> {
    let lp = LaurentPoly::from_int_terms;
    let delta = lp(&[(-1, 1), (1, -1)]);
    let scalar = |p: LaurentPoly| Matrix::from_rows(vec![vec![p]]).expect("1x1");
    vec![
        scalar(lp(&[(0, 2), (2, -1)])),
        Matrix::from_rows(vec![vec![lp(&[(-2, -1), (0, 3), (2, -1)]), delta.clone()], vec![delta, LaurentPoly::one()]])
            .expect("2x2"),
        scalar(lp(&[(0, 2), (-2, -1)])),
    ]
}

/// The pinned presentation of `S`.
pub fn example_s() -> ClosurePresentation {
    ClosurePresentation::new(2, 1, parse_braid(EXAMPLE_S_WORD, 3).expect("valid word")).expect("3 strands")
}

/// Shortest word on 3 strands (length <= 6, letters tried in the order 1, -1, 2, -2)
/// whose closure of the last strand has `Gamma = Gamma(S)`.
pub fn find_braid_for_example() -> Result<ClosurePresentation> {
    let target = example_s_gamma();
    for len in 0..=6 {
        for letters in itertools::repeat_n([1, -1, 2, -2], len).multi_cartesian_product() {
            let cp = ClosurePresentation::new(2, 1, BraidWord::new(3, letters)?)?;
            if is_string_link(&cp) && ltw(&cp)?.gamma == target {
                return Ok(cp);
            }
        }
    }
    Err(Error::NotFound("no word of length <= 6 on 3 strands closes to S".into()))
}

/// Span in `s` of the scalar component.
pub fn span_statistic(cp: &ClosurePresentation) -> Result<u64> {
    functor_value(cp)?.component(0)?.get(0, 0).span()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cp(n: usize, m: usize, w: &str) -> ClosurePresentation {
        ClosurePresentation::new(n, m, parse_braid(w, n + m).unwrap()).unwrap()
    }

    #[test]
    fn search_finds_the_pinned_word() {
        let found = find_braid_for_example().unwrap();
        assert_eq!(found, example_s());
        assert_eq!(functor_value(&found).unwrap().components, example_s_components());
        assert_eq!(ltw(&found).unwrap().denominator, LaurentPoly::from_int_terms(&[(0, 2), (2, -1)]));
    }

    #[test]
    fn example_s_passes_everything() {
        let r = verify_presentation(&example_s()).unwrap();
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.checks.iter().filter(|c| c.name == "theorem").count(), 3);
        // grade-1 minor is det = (2 - t)(2 - 1/t) - ... ; divisible by 2 - t once
        let det = example_s_components()[1].det().unwrap();
        assert!(LaurentPoly::divides(&example_s_components()[0].get(0, 0).clone(), &det).is_some());
        assert!(corollary_check(&example_s(), 2).unwrap());
        assert_eq!(span_statistic(&example_s()).unwrap(), 2);
    }

    #[test]
    fn closure_prefactor_uses_minus_writhe() {
        // S has m = 1, w = 1: V_0 = 2 - t = STR_0, so the prefactor is s^0, not s^2
        let c = example_s();
        let v = functor_value(&c).unwrap().operator;
        assert_eq!(functor_via_supertrace(&c).unwrap(), v);
        let plus = functor_via_supertrace(&c).unwrap().scale(&LaurentPoly::s_pow(2 * c.writhe()));
        assert_ne!(plus, v);
    }

    #[test]
    fn identity_passes() {
        let id = ClosurePresentation::pure(BraidWord::identity(3));
        assert!(verify_presentation(&id).unwrap().passed);
        assert!(corollary_check(&id, 1).unwrap());
        assert_eq!(span_statistic(&id).unwrap(), 0);
    }

    #[test]
    fn non_string_link_is_rejected() {
        let bad = cp(2, 1, "");
        assert!(matches!(theorem_check(&bad), Err(Error::NotStringLink { .. })));
        assert!(matches!(corollary_check(&bad, 1), Err(Error::NotStringLink { .. })));
        assert!(matches!(cross_check_paths(&bad), Err(Error::NotStringLink { .. })));
        assert!(matches!(span_statistic(&bad), Err(Error::NotStringLink { .. })));
    }

    #[test]
    fn witness_points_at_first_difference() {
        let a = example_s_components()[1].clone();
        let mut b = a.clone();
        b.set(1, 0, LaurentPoly::from_int(7));
        let c = Check::matrices("probe", Some(1), &a, &b);
        assert!(!c.passed);
        let w = c.witness.unwrap();
        assert_eq!((w.grade, w.row, w.col), (Some(1), 1, 0));
        assert_eq!(w.rhs, "7");
        assert!(Check::matrices("probe", Some(1), &a, &a).passed);
    }

    #[test]
    fn random_links_are_seeded() {
        assert_eq!(random_string_link(3, 0, 8, 1).unwrap().m(), 0);
        assert_eq!(random_string_link(2, 2, 10, 42).unwrap(), random_string_link(2, 2, 10, 42).unwrap());
        let spec = SuiteSpec { count: 12, max_n: 3, max_m: 2, max_len: 8, seed: 5 };
        let suite = random_suite(&spec).unwrap();
        assert_eq!(suite, random_suite(&spec).unwrap());
        assert!(suite.iter().all(is_string_link));
        assert!(suite.iter().any(|c| c.m() > 0));
    }

    #[test]
    fn suite_results_keep_order() {
        let suite = random_suite(&SuiteSpec { count: 8, max_n: 2, max_m: 2, max_len: 6, seed: 9 }).unwrap();
        let spans: Vec<u64> = run_suite(&suite, span_statistic).into_iter().map(|r| r.unwrap()).collect();
        let serial: Vec<u64> = suite.iter().map(|c| span_statistic(c).unwrap()).collect();
        assert_eq!(spans, serial);
    }

    #[test]
    fn report_serializes() {
        let r = theorem_check(&example_s()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["passed"], serde_json::Value::Bool(true));
        assert_eq!(json["checks"].as_array().unwrap().len(), 3);
        assert_eq!(json["presentation"]["m"], serde_json::json!(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn theorem_implies_corollary(n in 1usize..=3, m in 0usize..=2, seed in any::<u64>()) {
            let c = random_string_link(n, m, 8, seed).unwrap();
            let t = theorem_check(&c).unwrap();
            prop_assert!(t.passed);
            for k in 1..=n {
                prop_assert!(corollary_check(&c, k).unwrap());
            }
        }

        #[test]
        fn span_adds_under_stacking(seed in any::<u64>()) {
            let a = random_string_link(2, 1, 6, seed).unwrap();
            let b = random_string_link(2, 1, 6, seed ^ 0x5555).unwrap();
            let both = a.then(&b).unwrap();
            prop_assert_eq!(span_statistic(&both).unwrap(), span_statistic(&a).unwrap() + span_statistic(&b).unwrap());
        }
    }
}
