//! Sparse multivariate polynomials in the generic 1-form coefficients
//! `a1..an`, with [`UniPoly`] coefficients so a family parameter can ride
//! along.

use super::{rat, Rational, Ring, UniPoly};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial in `a1..an` over `Q[lambda]`.
///
/// Terms map a dense exponent vector of length `nvars` to a nonzero
/// [`UniPoly`] coefficient. Values built from different variable counts are
/// promoted by zero-padding the exponent vectors, and equality compares the
/// padded forms, so ring constants mix freely with `n`-variable polynomials.
#[derive(Debug, Clone, Eq, Default)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, UniPoly>,
}

/// Supported variable count; exponent vectors are dense.
pub const MAX_VARS: usize = 16;

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(UniPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(c: UniPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { nvars: 0, terms }
    }

    pub fn scalar(c: Rational) -> Self {
        Self::constant(UniPoly::constant(c))
    }

    /// The variable `a<index>` (1-based) in an `nvars`-variable ring.
    pub fn var(index: usize, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables supported");
        assert!((1..=nvars).contains(&index), "variable index out of range");
        let mut exps = vec![0u16; nvars];
        exps[index - 1] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, UniPoly::one());
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &UniPoly)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial with the given exponents (zero-padded
    /// comparison on both sides).
    pub fn coefficient(&self, exps: &[u16]) -> UniPoly {
        let key = trim(exps);
        self.terms
            .iter()
            .find(|(e, _)| trim(e) == key)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(UniPoly::zero)
    }

    fn promote(&self, nvars: usize) -> Self {
        if self.nvars >= nvars {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    /// Exact value at `lambda = lambda0`, `a = point`.
    ///
    /// `point` must provide at least `nvars` coordinates.
    pub fn evaluate(&self, lambda0: &Rational, point: &[Rational]) -> Rational {
        assert!(point.len() >= self.nvars, "evaluation point too short");
        let mut acc = rat(0);
        for (exps, coeff) in &self.terms {
            let mut term = coeff.eval(lambda0);
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term = &term * &point[i];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitutes `a = point` but keeps `lambda` symbolic.
    pub fn eval_vars(&self, point: &[Rational]) -> UniPoly {
        assert!(point.len() >= self.nvars, "evaluation point too short");
        let mut acc = UniPoly::zero();
        for (exps, coeff) in &self.terms {
            let mut factor = rat(1);
            for (i, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    factor = &factor * &point[i];
                }
            }
            acc = &acc + &coeff.scale(&factor);
        }
        acc
    }

    /// Substitutes `lambda = lambda0`, leaving a polynomial in `a` alone.
    pub fn eval_lambda(&self, lambda0: &Rational) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let c = coeff.eval(lambda0);
            if !c.is_zero() {
                terms.insert(exps.clone(), UniPoly::constant(c));
            }
        }
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Monic gcd of all coefficients; zero for the zero polynomial.
    ///
    /// Its roots are exactly the parameter values at which the whole
    /// polynomial vanishes identically.
    pub fn coeff_gcd(&self) -> UniPoly {
        let mut g = UniPoly::zero();
        for coeff in self.terms.values() {
            g = UniPoly::gcd(&g, coeff);
            if g.as_constant().is_some_and(|c| !c.is_zero()) {
                break;
            }
        }
        g
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
    }
}

fn trim(exps: &[u16]) -> &[u16] {
    let mut n = exps.len();
    while n > 0 && exps[n - 1] == 0 {
        n -= 1;
    }
    &exps[..n]
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .zip(other.terms.iter())
            .all(|((ea, ca), (eb, cb))| trim(ea) == trim(eb) && ca == cb)
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }

    fn one() -> Self {
        MultiPoly::one()
    }

    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        let nvars = self.nvars.max(rhs.nvars);
        let mut out = self.promote(nvars);
        let rhs = rhs.promote(nvars);
        for (exps, coeff) in rhs.terms {
            let entry = out.terms.entry(exps);
            match entry {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let sum = o.get() + &coeff;
                    if sum.is_zero() {
                        o.remove();
                    } else {
                        *o.get_mut() = sum;
                    }
                }
            }
        }
        out
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MultiPoly {
            nvars: self.nvars,
            terms,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let nvars = self.nvars.max(rhs.nvars);
        let a = self.promote(nvars);
        let b = rhs.promote(nvars);
        let mut terms: BTreeMap<Vec<u16>, UniPoly> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let prod = ca * cb;
                match terms.entry(exps) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        let sum = o.get() + &prod;
                        if sum.is_zero() {
                            o.remove();
                        } else {
                            *o.get_mut() = sum;
                        }
                    }
                }
            }
        }
        MultiPoly { nvars, terms }
    }

    fn from_int(n: i64) -> Self {
        MultiPoly::scalar(rat(n))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, coeff) in &self.terms {
            let rendered = coeff.to_string();
            let (sign, body) = if let Some(stripped) = rendered.strip_prefix('-') {
                if stripped.contains(" + ") || stripped.contains(" - ") {
                    ("+", rendered.as_str())
                } else {
                    ("-", stripped)
                }
            } else {
                ("+", rendered.as_str())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let monomial: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("a{}", i + 1)
                    } else {
                        format!("a{}^{}", i + 1, e)
                    }
                })
                .collect();
            let needs_parens = body.contains(" + ") || body.contains(" - ");
            if monomial.is_empty() {
                if needs_parens {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else {
                if needs_parens {
                    write!(f, "({body})*")?;
                } else if body != "1" {
                    write!(f, "{body}*")?;
                }
                write!(f, "{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}
