//! Univariate polynomials over the rationals in the family parameter.

use super::{rat, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable (`lambda`) with exact rational coefficients.
///
/// Canonical form: no trailing zero coefficient; the zero polynomial is the
/// empty coefficient list. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("zero polynomial has no root set")]
    ZeroPolynomial,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Builds a polynomial from coefficients indexed by degree, trimming
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn lambda() -> Self {
        Self::from_coeffs(vec![rat(0), rat(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `lambda^k` (zero when absent).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(|| rat(0))
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(rat(0)),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = rat(0);
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Leading coefficient scaled to one; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lead) => self.scale(&(rat(1) / lead)),
        }
    }

    /// Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![rat(0); rem.len() - dd + 1];
        let lead = divisor.coeffs.last().unwrap().clone();
        for qi in (0..quot.len()).rev() {
            let c = &rem[qi + dd - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (k, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[qi + k] = &rem[qi + k] - &t;
            }
            quot[qi] = c;
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// All rational roots together with the monic residual left after the
    /// corresponding linear factors are divided out (with multiplicity).
    ///
    /// The residual has no rational roots. Errors on the zero polynomial.
    pub fn rational_roots(&self) -> Result<(BTreeSet<Rational>, UniPoly), RootError> {
        if self.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        let mut roots = BTreeSet::new();
        let mut work = self.clone();

        // Factor out powers of lambda.
        if work.coeffs.len() > 1 && work.coeffs[0].is_zero() {
            roots.insert(rat(0));
            while work.coeffs.len() > 1 && work.coeffs[0].is_zero() {
                work = Self::from_coeffs(work.coeffs[1..].to_vec());
            }
        }

        if work.is_constant() {
            return Ok((roots, Self::one()));
        }

        // Rational root theorem on the primitive integer form: any rational
        // root p/q has p dividing the constant term and q the leading one.
        let prim = integer_primitive(&work);
        let lead = prim.last().unwrap().magnitude().clone();
        let cons = prim.first().unwrap().magnitude().clone();
        let mut candidates: BTreeSet<Rational> = BTreeSet::new();
        for p in divisors(&cons) {
            for q in divisors(&lead) {
                let r = Rational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
                candidates.insert(-&r);
                candidates.insert(r);
            }
        }

        for cand in candidates {
            while !work.is_constant() && work.eval(&cand).is_zero() {
                roots.insert(cand.clone());
                let factor = Self::from_coeffs(vec![-&cand, rat(1)]);
                let (q, r) = work.div_rem(&factor);
                debug_assert!(r.is_zero());
                work = q;
            }
        }

        Ok((roots, work.monic()))
    }
}

/// Content-free integer coefficient list of a nonzero polynomial.
fn integer_primitive(p: &UniPoly) -> Vec<BigInt> {
    let mut den_lcm = BigInt::one();
    for c in p.coeffs() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den_lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    ints.iter().map(|c| c / &content).collect()
}

/// Positive divisors of a nonzero natural number by trial division.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut out = Vec::new();
    if let Ok(small) = u64::try_from(n) {
        let mut d = 1u64;
        while d.saturating_mul(d) <= small {
            if small % d == 0 {
                out.push(BigUint::from(d));
                out.push(BigUint::from(small / d));
            }
            d += 1;
        }
    } else {
        let mut d = BigUint::one();
        while &d * &d <= *n {
            if (n % &d).is_zero() {
                out.push(d.clone());
                out.push(n / &d);
            }
            d += 1u32;
        }
    }
    out
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::from_coeffs(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;

    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![rat(0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }
}

impl super::Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }

    fn one() -> Self {
        UniPoly::one()
    }

    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        UniPoly::constant(rat(n))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if !unit || k == 0 {
                write!(f, "{mag}")?;
            }
            if k > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "lambda")?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ratio;
    use proptest::prelude::*;

    fn lam() -> UniPoly {
        UniPoly::lambda()
    }

    /// lambda * (1 - lambda)
    fn lam_one_minus_lam() -> UniPoly {
        UniPoly::from_ints(&[0, 1, -1])
    }

    #[test]
    fn roots_of_lambda_one_minus_lambda() {
        let (roots, residual) = lam_one_minus_lam().rational_roots().unwrap();
        assert_eq!(roots, BTreeSet::from([rat(0), rat(1)]));
        assert_eq!(residual, UniPoly::one());
    }

    #[test]
    fn roots_of_constant() {
        let (roots, residual) = UniPoly::one().rational_roots().unwrap();
        assert!(roots.is_empty());
        assert_eq!(residual, UniPoly::one());
    }

    #[test]
    fn roots_of_lambda_squared_minus_two() {
        // candidates +-1, +-2 all fail, so the quadratic survives intact
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        for c in [-2i64, -1, 1, 2] {
            assert!(!p.eval(&rat(c)).is_zero());
        }
        let (roots, residual) = p.rational_roots().unwrap();
        assert!(roots.is_empty());
        assert_eq!(residual, p);
    }

    #[test]
    fn roots_of_zero_polynomial_error() {
        assert_eq!(
            UniPoly::zero().rational_roots(),
            Err(RootError::ZeroPolynomial)
        );
    }

    #[test]
    fn roots_with_multiplicity_and_fractions() {
        // (2*lambda - 1)^2 * (lambda + 3)
        let p = &UniPoly::from_ints(&[-1, 2]).pow(2) * &UniPoly::from_ints(&[3, 1]);
        let (roots, residual) = p.rational_roots().unwrap();
        assert_eq!(roots, BTreeSet::from([ratio(1, 2), rat(-3)]));
        assert_eq!(residual, UniPoly::one());
    }

    #[test]
    fn gcd_of_shared_factors() {
        let p = lam_one_minus_lam();
        let q = &p * &p;
        // monic: lambda^2 - lambda
        assert_eq!(UniPoly::gcd(&p, &q), UniPoly::from_ints(&[0, -1, 1]).monic());
        assert_eq!(UniPoly::gcd(&p, &UniPoly::zero()), p.monic());
        assert_eq!(UniPoly::gcd(&UniPoly::zero(), &UniPoly::zero()), UniPoly::zero());
        assert_eq!(
            UniPoly::gcd(&lam(), &UniPoly::from_ints(&[1, 1])),
            UniPoly::one()
        );
    }

    #[test]
    fn evaluation_examples() {
        // (1 - lambda + lambda^2)^3 at 2 is 27
        let p = UniPoly::from_ints(&[1, -1, 1]).pow(3);
        assert_eq!(p.eval(&rat(2)), rat(27));
        assert_eq!(UniPoly::zero().eval(&rat(5)), rat(0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(UniPoly::zero().to_string(), "0");
        assert_eq!(UniPoly::from_ints(&[0, 6, -6]).to_string(), "6*lambda - 6*lambda^2");
        assert_eq!(UniPoly::from_ints(&[0, 1]).to_string(), "lambda");
        assert_eq!(UniPoly::constant(ratio(1, 2)).to_string(), "1/2");
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec((-20i64..20, 1i64..6), 0..6)
            .prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(|(p, q)| ratio(p, q)).collect()))
    }

    proptest! {
        #[test]
        fn product_degree_adds(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            let pq = &p * &q;
            prop_assert_eq!(pq.degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
        }

        #[test]
        fn evaluation_is_a_ring_hom(p in arb_poly(), q in arb_poly(), x in -10i64..10) {
            let x = rat(x);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        }

        #[test]
        fn reported_roots_are_roots(p in arb_poly()) {
            prop_assume!(!p.is_zero());
            let (roots, residual) = p.rational_roots().unwrap();
            for r in &roots {
                prop_assert!(p.eval(r).is_zero());
            }
            // the residual keeps no rational root at all
            let (leftover, _) = residual.rational_roots().unwrap();
            prop_assert!(leftover.is_empty());
        }
    }
}
