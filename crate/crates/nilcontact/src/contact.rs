//! The contact decision procedure.
//!
//! A `(2n+1)`-dimensional Lie algebra admits a contact structure when some
//! 1-form `eta` satisfies `eta ^ (d eta)^n != 0`. Two independent routes
//! compute that top coefficient: [`contact_value`] evaluates it directly in
//! the exterior algebra for a concrete coefficient vector, while
//! [`generic_contact_polynomial`] expands it symbolically for
//! `omega = a1 x1 + .. + an xn`, yielding a polynomial whose nonvanishing is
//! equivalent to contact existence.

use crate::exterior::ExteriorElement;
use crate::liealg::{JacobiError, LieAlgebra};
use crate::scalars::{rat, MultiPoly, Rational, Ring, UniPoly};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ContactError {
    #[error("dimension must be odd, got {0}")]
    EvenDimension(usize),
    #[error("Jacobi identity fails at basis triples {0:?}")]
    Jacobi(Vec<(usize, usize, usize)>),
}

impl<S: Ring> From<JacobiError<S>> for ContactError {
    fn from(err: JacobiError<S>) -> Self {
        ContactError::Jacobi(err.defects.keys().copied().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Contact,
    NoContact,
    DependsOnLambda,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Contact => "contact",
            Verdict::NoContact => "no-contact",
            Verdict::DependsOnLambda => "depends-on-lambda",
        };
        write!(f, "{s}")
    }
}

/// Parameter values at which a family loses every contact structure: the
/// rational ones listed exactly, irrational ones summarized by a monic
/// residual polynomial that is never evaluated numerically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalLambda {
    pub roots: BTreeSet<Rational>,
    pub residual: UniPoly,
}

/// Outcome of the decision procedure for one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactReport {
    pub verdict: Verdict,
    /// Coefficients of a contact form `eta = sum a_i x_i` when one exists.
    pub witness: Option<Vec<Rational>>,
    /// Value of `eta ^ (d eta)^n` at the witness; constant for plain
    /// rational algebras, a polynomial in the parameter for families.
    pub top_coefficient: UniPoly,
    pub exceptional: Option<ExceptionalLambda>,
}

/// Scalars that embed into `Q[lambda]`, which is what the symbolic route
/// computes over.
pub trait CoefficientRing: Ring {
    fn lift_to_unipoly(&self) -> UniPoly;
}

impl CoefficientRing for Rational {
    fn lift_to_unipoly(&self) -> UniPoly {
        UniPoly::constant(self.clone())
    }
}

impl CoefficientRing for UniPoly {
    fn lift_to_unipoly(&self) -> UniPoly {
        self.clone()
    }
}

fn check_odd<S: Ring>(g: &LieAlgebra<S>) -> Result<usize, ContactError> {
    let n = g.dim();
    if n.is_multiple_of(2) {
        return Err(ContactError::EvenDimension(n));
    }
    Ok(n)
}

/// Top-blade coefficient of `eta ^ (d eta)^((n-1)/2)` for the 1-form with
/// the given coefficients, computed directly in the exterior algebra.
pub fn contact_value<S: Ring>(g: &LieAlgebra<S>, coeffs: &[S]) -> Result<S, ContactError> {
    let n = check_odd(g)?;
    assert_eq!(coeffs.len(), n, "coefficient vector length mismatch");
    let eta = ExteriorElement::one_form(coeffs);
    let deta = g.d(&eta)?;
    let power = deta.power((n - 1) / 2);
    let top = eta.wedge(&power).expect("same dimension");
    Ok(top.top_coefficient())
}

/// The generic contact polynomial `P(a1..an)`: the coefficient of
/// `x1..xn` in `omega ^ (d omega)^((n-1)/2)` with symbolic `a_i`.
///
/// `P` is homogeneous of degree `(n+1)/2`, and a contact form exists (at a
/// given parameter value, for families) exactly when `P` is not the zero
/// polynomial there.
pub fn generic_contact_polynomial<S: CoefficientRing>(
    g: &LieAlgebra<S>,
) -> Result<MultiPoly, ContactError> {
    let n = check_odd(g)?;
    let defects = g.jacobi_defects();
    if !defects.is_empty() {
        return Err(ContactError::Jacobi(defects.keys().copied().collect()));
    }
    let lifted = g.map_scalars(|c| MultiPoly::constant(c.lift_to_unipoly()));
    let dx = lifted.ce_differential_unchecked();
    let mut domega = ExteriorElement::zero(n);
    for (i, dxi) in dx.iter().enumerate() {
        domega = domega.add(&dxi.scale(&MultiPoly::var(i + 1, n)));
    }
    let omega = ExteriorElement::one_form(
        &(1..=n).map(|i| MultiPoly::var(i, n)).collect::<Vec<_>>(),
    );
    let power = domega.power((n - 1) / 2);
    let top = omega.wedge(&power).expect("same dimension");
    Ok(top.top_coefficient())
}

/// Candidate witnesses in deterministic order: single dual generators from
/// `x_n` down, then `+-1` combinations of two generators, then a full grid
/// over `{0..(n+1)/2}^n` that is exhaustive for polynomials of per-variable
/// degree at most `(n+1)/2`.
fn witness_candidates(n: usize) -> impl Iterator<Item = Vec<Rational>> {
    let singles = (1..=n).rev().map(move |k| {
        let mut v = vec![rat(0); n];
        v[k - 1] = rat(1);
        v
    });
    let pairs = (2..=n).rev().flat_map(move |l| {
        (1..l).rev().flat_map(move |k| {
            [(1, 1), (1, -1), (-1, 1), (-1, -1)]
                .into_iter()
                .map(move |(sk, sl)| {
                    let mut v = vec![rat(0); n];
                    v[k - 1] = rat(sk);
                    v[l - 1] = rat(sl);
                    v
                })
        })
    });
    let bound = n.div_ceil(2) as i64;
    let mut odometer = vec![0i64; n];
    let mut done = false;
    let grid = std::iter::from_fn(move || {
        while !done {
            let point = odometer.clone();
            let mut carry = n;
            while carry > 0 {
                odometer[carry - 1] += 1;
                if odometer[carry - 1] <= bound {
                    break;
                }
                odometer[carry - 1] = 0;
                carry -= 1;
            }
            if carry == 0 {
                done = true;
            }
            if point.iter().any(|&c| c != 0) {
                return Some(point.iter().map(|&c| rat(c)).collect());
            }
        }
        None
    });
    singles.chain(pairs).chain(grid)
}

/// Decides contact existence for a rational Lie algebra of odd dimension
/// and produces an explicit witness when the verdict is positive.
pub fn find_contact_form(g: &LieAlgebra<Rational>) -> Result<ContactReport, ContactError> {
    let poly = generic_contact_polynomial(g)?;
    if poly.is_zero() {
        return Ok(ContactReport {
            verdict: Verdict::NoContact,
            witness: None,
            top_coefficient: UniPoly::zero(),
            exceptional: None,
        });
    }
    for candidate in witness_candidates(g.dim()) {
        if poly.evaluate(&rat(0), &candidate).is_zero() {
            continue;
        }
        let value = contact_value(g, &candidate)?;
        debug_assert!(!Ring::is_zero(&value));
        return Ok(ContactReport {
            verdict: Verdict::Contact,
            witness: Some(candidate),
            top_coefficient: UniPoly::constant(value),
            exceptional: None,
        });
    }
    unreachable!("nonzero polynomial has a nonzero point on the witness grid")
}

/// Decides contact existence across a whole one-parameter family.
///
/// A parameter value is exceptional when the generic polynomial vanishes
/// identically there, i.e. when no contact form at all exists at that
/// value; that is precisely the root set of the gcd of the coefficients.
pub fn family_analysis(g: &LieAlgebra<UniPoly>) -> Result<ContactReport, ContactError> {
    let poly = generic_contact_polynomial(g)?;
    if poly.is_zero() {
        return Ok(ContactReport {
            verdict: Verdict::NoContact,
            witness: None,
            top_coefficient: UniPoly::zero(),
            exceptional: None,
        });
    }
    let gcd = poly.coeff_gcd();
    let (roots, residual) = gcd
        .rational_roots()
        .expect("gcd of a nonzero polynomial is nonzero");
    let verdict = if roots.is_empty() && residual.is_constant() {
        Verdict::Contact
    } else {
        Verdict::DependsOnLambda
    };
    let mut witness = None;
    let mut top = UniPoly::zero();
    for candidate in witness_candidates(g.dim()) {
        let value = poly.eval_vars(&candidate);
        if !Ring::is_zero(&value) {
            witness = Some(candidate);
            top = value;
            break;
        }
    }
    Ok(ContactReport {
        verdict,
        witness,
        top_coefficient: top,
        exceptional: Some(ExceptionalLambda { roots, residual }),
    })
}

/// Isomorphism invariant of a one-parameter family, a rational function
/// `I(lambda)`: equal values at two parameters mean isomorphic algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInvariant {
    num: UniPoly,
    den: UniPoly,
    excluded: BTreeSet<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("denominator is identically zero")]
    ZeroDenominator,
    #[error("invariant undefined at lambda = {0}")]
    Domain(Rational),
}

impl FamilyInvariant {
    /// Normalizes to lowest terms with a monic denominator and records the
    /// denominator's rational roots as the excluded set.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, InvariantError> {
        if Ring::is_zero(&den) {
            return Err(InvariantError::ZeroDenominator);
        }
        let gcd = UniPoly::gcd(&num, &den);
        let (num, r1) = num.div_rem(&gcd);
        debug_assert!(Ring::is_zero(&r1));
        let (den, r2) = den.div_rem(&gcd);
        debug_assert!(Ring::is_zero(&r2));
        let lead = den.coeffs().last().expect("nonzero").clone();
        let den = den.scale(&(rat(1) / &lead));
        let num = num.scale(&(rat(1) / &lead));
        let excluded = if den.is_constant() {
            BTreeSet::new()
        } else {
            den.rational_roots().expect("nonzero denominator").0
        };
        Ok(FamilyInvariant { num, den, excluded })
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn excluded(&self) -> &BTreeSet<Rational> {
        &self.excluded
    }

    pub fn value(&self, lambda0: &Rational) -> Result<Rational, InvariantError> {
        let den = self.den.eval(lambda0);
        if Ring::is_zero(&den) {
            return Err(InvariantError::Domain(lambda0.clone()));
        }
        Ok(self.num.eval(lambda0) / den)
    }
}

impl fmt::Display for FamilyInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
