//! Named, interchangeable strategies: the evaluation paths for partial supertraces and
//! the three graded invariants of a string link.

use crate::error::{Error, Result};
use crate::exterior::{self, ExtOperator, PhiMap};
use crate::linalg::{exterior_power, Matrix};
use crate::randomwalk::{ltw, ClosurePresentation};
use crate::rmatrix::{functor_value, graded_ratio};
use crate::ring::{LaurentPoly, RatFunc};

/// One way of computing `STR(Lambda^* A)` on the first `n` generators.
pub trait SupertraceMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, a: &Matrix<LaurentPoly>, n: usize) -> Result<ExtOperator<LaurentPoly>>;
}

/// `sum_S (-1)^{|S|} iota_S(f(alpha ^ tau_S))`.
pub struct Contraction;

/// `iota_m((Lambda^* A alpha) ^ (Lambda^*(I - A) tau_m))`.
pub struct TopForm;

/// `det(L) Lambda^*(I - D)`.
pub struct Schur;

impl SupertraceMethod for Contraction {
    fn name(&self) -> &'static str {
        "contraction"
    }
    fn compute(&self, a: &Matrix<LaurentPoly>, n: usize) -> Result<ExtOperator<LaurentPoly>> {
        exterior::partial_supertrace(&exterior::lambda_star(a)?, n)
    }
}

impl SupertraceMethod for TopForm {
    fn name(&self) -> &'static str {
        "top-form"
    }
    fn compute(&self, a: &Matrix<LaurentPoly>, n: usize) -> Result<ExtOperator<LaurentPoly>> {
        exterior::top_form_operator(a, n)
    }
}

impl SupertraceMethod for Schur {
    fn name(&self) -> &'static str {
        "schur"
    }
    fn compute(&self, a: &Matrix<LaurentPoly>, n: usize) -> Result<ExtOperator<LaurentPoly>> {
        let lifted = a.map(|x| RatFunc::from(x));
        exterior::schur_supertrace(&lifted, n)?.try_map(|x| x.to_laurent_rational().ok_or_else(|| Error::NotLaurent(x.to_string())))
    }
}

/// A grade-by-grade invariant of string links.
pub trait GradedInvariant: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Raw components `0..=n`, each on its own natural basis.
    fn components(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>>;
    /// Components divided by grade 0 and expressed on the wedge basis, so that all
    /// invariants are directly comparable.
    fn normalized(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>>;
}

/// Exterior powers of the random-walk matrix.
pub struct Ltw;

/// Graded components of the R-matrix functor.
pub struct Ohtsuki;

/// Graded blocks of the partial supertrace of `Lambda^*` Burau.
pub struct Brt;

impl GradedInvariant for Ltw {
    fn name(&self) -> &'static str {
        "ltw"
    }
    fn summary(&self) -> &'static str {
        "Lambda^k of the random-walk matrix X + Y(I - Q)^-1 Z"
    }
    fn components(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>> {
        let gamma = ltw(cp)?.gamma;
        (0..=cp.n()).map(|k| exterior_power(&gamma, k)).collect()
    }
    fn normalized(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>> {
        self.components(cp)
    }
}

impl GradedInvariant for Ohtsuki {
    fn name(&self) -> &'static str {
        "ohtsuki"
    }
    fn summary(&self) -> &'static str {
        "weight-k blocks of the R-matrix functor (partial quantum trace of the braid)"
    }
    fn components(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>> {
        Ok(functor_value(cp)?.components.iter().map(|c| c.map(|x| RatFunc::from(x))).collect())
    }
    fn normalized(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>> {
        let v = functor_value(cp)?;
        let ratios = (0..=cp.n()).map(|k| graded_ratio(&v, k)).collect::<Result<Vec<_>>>()?;
        PhiMap::new(cp.n()).conjugate_graded(&ratios)
    }
}

impl GradedInvariant for Brt {
    fn name(&self) -> &'static str {
        "brt"
    }
    fn summary(&self) -> &'static str {
        "grade-k blocks of the partial supertrace of Lambda^* Burau"
    }
    fn components(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>> {
        let op = exterior::brt_operator(cp)?;
        (0..=cp.n()).map(|k| Ok(op.block(k, k)?.map(|x| RatFunc::from(x)))).collect()
    }
    fn normalized(&self, cp: &ClosurePresentation) -> Result<Vec<Matrix<RatFunc>>> {
        (0..=cp.n()).map(|k| exterior::brt_ratio(cp, k)).collect()
    }
}

/// A name-indexed list of trait objects.
pub struct Registry<T: ?Sized> {
    entries: Vec<Box<T>>,
    name_of: fn(&T) -> &'static str,
}

impl<T: ?Sized> Registry<T> {
    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries.iter().map(|b| b.as_ref()).find(|e| (self.name_of)(e) == name).ok_or_else(|| {
            Error::UnknownStrategy { name: name.to_string(), available: self.names().join(", ") }
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| (self.name_of)(e.as_ref())).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.iter().map(|b| b.as_ref())
    }
}

pub fn supertrace_methods() -> Registry<dyn SupertraceMethod> {
    Registry { entries: vec![Box::new(Contraction), Box::new(TopForm), Box::new(Schur)], name_of: |m| m.name() }
}

pub fn graded_invariants() -> Registry<dyn GradedInvariant> {
    Registry { entries: vec![Box::new(Ltw), Box::new(Ohtsuki), Box::new(Brt)], name_of: |m| m.name() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    #[test]
    fn lookup() {
        let methods = supertrace_methods();
        assert_eq!(methods.names(), vec!["contraction", "top-form", "schur"]);
        assert_eq!(methods.get("schur").unwrap().name(), "schur");
        match methods.get("nope") {
            Err(Error::UnknownStrategy { available, .. }) => assert_eq!(available, "contraction, top-form, schur"),
            _ => panic!("expected an unknown-strategy error"),
        }
        assert_eq!(graded_invariants().names(), vec!["ltw", "ohtsuki", "brt"]);
    }

    #[test]
    fn methods_agree_on_a_burau_matrix() {
        let a = parse_braid("2 -1 3 2 -3", 4).unwrap().burau();
        let methods = supertrace_methods();
        let reference = methods.get("contraction").unwrap().compute(&a, 2).unwrap();
        for m in methods.iter() {
            assert_eq!(m.compute(&a, 2).unwrap(), reference, "{}", m.name());
        }
    }

    #[test]
    fn normalized_invariants_agree_on_example() {
        let cp = ClosurePresentation::new(2, 1, parse_braid("2 -1 2", 3).unwrap()).unwrap();
        let all: Vec<_> = graded_invariants().iter().map(|g| g.normalized(&cp).unwrap()).collect();
        assert_eq!(all[0], all[1]);
        assert_eq!(all[0], all[2]);
    }
}
