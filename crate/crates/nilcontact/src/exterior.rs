//! Graded exterior algebra over an ordered basis `x1..xn`, generic over the
//! coefficient ring.
//!
//! Blades are keyed by bitmask, so the wedge sign is an inversion count on
//! two sorted index lists; everything stays exact for any [`Ring`] scalar.

use crate::scalars::Ring;
use std::collections::BTreeMap;
use std::fmt;

/// Basis monomial `x_{i1}..x_{ip}` with strictly increasing 1-based indices,
/// stored as a bitmask (bit `i-1` set means `x_i` is a factor).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade(u32);

/// Largest supported basis size.
pub const MAX_DIM: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

impl Blade {
    /// The empty blade, i.e. the scalar unit.
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// Blade from strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut mask = 0u32;
        for &i in indices {
            assert!((1..=MAX_DIM).contains(&i), "index out of range");
            assert!(mask & (1 << (i - 1)) == 0, "repeated index");
            assert!(mask < (1 << (i - 1)), "indices must increase");
            mask |= 1 << (i - 1);
        }
        Blade(mask)
    }

    pub fn single(i: usize) -> Self {
        Self::from_indices(&[i])
    }

    /// The top blade `x1..xn`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_DIM);
        Blade(((1u64 << n) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << (i - 1)) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=MAX_DIM).filter(|&i| self.contains(i)).collect()
    }

    /// Wedge of two blades: `None` when they share an index, otherwise the
    /// merged blade and the sign `(-1)^inversions` from sorting the
    /// concatenated index lists.
    pub fn merge(self, other: Blade) -> Option<(Blade, i32)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            inversions += (self.0 >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((Blade(self.0 | other.0), sign))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        for i in self.indices() {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

/// Element of the exterior algebra over `n` generators.
///
/// Zero coefficients are never stored, so structural equality is semantic
/// equality. Immutable once built; all operations return fresh values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement<S: Ring> {
    dim: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Ring> ExteriorElement<S> {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        ExteriorElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative unit (empty blade with coefficient one).
    pub fn unit(dim: usize) -> Self {
        Self::monomial(dim, Blade::SCALAR, S::one())
    }

    pub fn monomial(dim: usize, blade: Blade, coeff: S) -> Self {
        assert!(dim <= MAX_DIM);
        assert!(blade.mask() < (1u64 << dim) as u32, "blade exceeds dimension");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(blade, coeff);
        }
        ExteriorElement { dim, terms }
    }

    /// The 1-form with the given coefficients on `x1..xn`.
    pub fn one_form(coeffs: &[S]) -> Self {
        let dim = coeffs.len();
        assert!(dim <= MAX_DIM);
        let mut terms = BTreeMap::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Blade::single(i + 1), c.clone());
            }
        }
        ExteriorElement { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, blade: Blade) -> S {
        self.terms.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of the top blade `x1..xn`.
    pub fn top_coefficient(&self) -> S {
        self.coefficient(Blade::full(self.dim))
    }

    fn insert_term(terms: &mut BTreeMap<Blade, S>, blade: Blade, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in addition");
        let mut terms = self.terms.clone();
        for (blade, coeff) in &rhs.terms {
            Self::insert_term(&mut terms, *blade, coeff.clone());
        }
        ExteriorElement {
            dim: self.dim,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(b, c)| (*b, c.neg()))
            .collect();
        ExteriorElement {
            dim: self.dim,
            terms,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        let mut terms = BTreeMap::new();
        for (blade, coeff) in &self.terms {
            Self::insert_term(&mut terms, *blade, coeff.mul(c));
        }
        ExteriorElement {
            dim: self.dim,
            terms,
        }
    }

    /// Wedge product; errors when the operands live over different bases.
    pub fn wedge(&self, rhs: &Self) -> Result<Self, ExteriorError> {
        if self.dim != rhs.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, rhs.dim));
        }
        Ok(self.wedge_raw(rhs))
    }

    fn wedge_raw(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ba, ca) in &self.terms {
            for (bb, cb) in &rhs.terms {
                if let Some((blade, sign)) = ba.merge(*bb) {
                    let mut coeff = ca.mul(cb);
                    if sign < 0 {
                        coeff = coeff.neg();
                    }
                    Self::insert_term(&mut terms, blade, coeff);
                }
            }
        }
        ExteriorElement {
            dim: self.dim,
            terms,
        }
    }

    /// The grade-`p` homogeneous part.
    pub fn grade_part(&self, p: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(b, _)| b.grade() == p)
            .map(|(b, c)| (*b, c.clone()))
            .collect();
        ExteriorElement {
            dim: self.dim,
            terms,
        }
    }

    /// Grade of a homogeneous element (`None` for zero or mixed grades).
    pub fn homogeneous_grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(|b| b.grade());
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }

    /// Repeated wedge; `power(0)` is the unit.
    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::unit(self.dim);
        for _ in 0..k {
            acc = acc.wedge_raw(self);
        }
        acc
    }
}

impl<S: Ring> fmt::Display for ExteriorElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Blade, &S)> = self.terms.iter().collect();
        ordered.sort_by_key(|(b, _)| (b.grade(), b.mask()));
        let mut first = true;
        for (blade, coeff) in ordered {
            let rendered = coeff.to_string();
            let composite = rendered.contains(" + ") || rendered.contains(" - ");
            let (sign, body) = match rendered.strip_prefix('-') {
                Some(stripped) if !composite => ("-", stripped.to_string()),
                _ => ("+", rendered),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let needs_parens = composite || body.contains(|c: char| c.is_ascii_alphabetic());
            if blade.grade() == 0 {
                write!(f, "{body}")?;
            } else if needs_parens {
                write!(f, "({body}){blade}")?;
            } else if body == "1" {
                write!(f, "{blade}")?;
            } else {
                write!(f, "{body}{blade}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational};
    use proptest::prelude::*;

    type Elt = ExteriorElement<Rational>;

    fn x(i: usize, dim: usize) -> Elt {
        Elt::monomial(dim, Blade::single(i), rat(1))
    }

    fn blade(ix: &[usize], dim: usize) -> Elt {
        Elt::monomial(dim, Blade::from_indices(ix), rat(1))
    }

    #[test]
    fn one_forms_anticommute() {
        let a = x(1, 7).wedge(&x(2, 7)).unwrap();
        let b = x(2, 7).wedge(&x(1, 7)).unwrap();
        assert_eq!(a, blade(&[1, 2], 7));
        assert_eq!(b, blade(&[1, 2], 7).neg());
    }

    #[test]
    fn six_transpositions_give_plus_one() {
        let lhs = x(7, 7).wedge(&blade(&[1, 2, 3, 4, 5, 6], 7)).unwrap();
        assert_eq!(lhs, blade(&[1, 2, 3, 4, 5, 6, 7], 7));
    }

    #[test]
    fn darboux_sum_cubes_to_six_times_top() {
        let u = blade(&[1, 2], 7)
            .add(&blade(&[3, 4], 7))
            .add(&blade(&[5, 6], 7));
        let cube = u.power(3);
        assert_eq!(
            cube,
            Elt::monomial(7, Blade::from_indices(&[1, 2, 3, 4, 5, 6]), rat(6))
        );
    }

    #[test]
    fn squares_of_repeated_blades_vanish() {
        assert!(blade(&[1, 2], 4).power(2).is_zero());
        let u = blade(&[1, 2], 4).add(&blade(&[3, 4], 4));
        assert_eq!(
            u.power(2),
            Elt::monomial(4, Blade::from_indices(&[1, 2, 3, 4]), rat(2))
        );
    }

    #[test]
    fn grade_extraction() {
        let u = x(1, 3).add(&blade(&[1, 2], 3));
        assert_eq!(u.grade_part(1), x(1, 3));
        assert_eq!(u.grade_part(2), blade(&[1, 2], 3));
        assert!(Elt::zero(3).grade_part(2).is_zero());
        assert_eq!(blade(&[1, 2, 3], 3).grade_part(3), blade(&[1, 2, 3], 3));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert_eq!(
            x(1, 3).wedge(&x(1, 4)),
            Err(ExteriorError::DimensionMismatch(3, 4))
        );
    }

    #[test]
    fn power_zero_is_unit() {
        assert_eq!(blade(&[1, 2], 5).power(0), Elt::unit(5));
    }

    #[test]
    fn pretty_printing() {
        let u = Elt::monomial(7, Blade::from_indices(&[1, 2, 5]), rat(6));
        assert_eq!(u.to_string(), "6x1x2x5");
        let v = x(1, 3).sub(&blade(&[1, 2], 3));
        assert_eq!(v.to_string(), "x1 - x1x2");
        assert_eq!(Elt::zero(2).to_string(), "0");
    }

    fn arb_element(dim: usize, max_grade: usize) -> impl Strategy<Value = Elt> {
        let blades: Vec<u32> = (0..(1u32 << dim))
            .filter(|m| (m.count_ones() as usize) <= max_grade)
            .collect();
        proptest::collection::vec(
            (proptest::sample::select(blades), -5i64..5),
            0..5,
        )
        .prop_map(move |terms| {
            let mut acc = Elt::zero(dim);
            for (mask, c) in terms {
                acc = acc.add(&Elt::monomial(dim, Blade::from_mask(mask), rat(c)));
            }
            acc
        })
    }

    fn arb_homogeneous(dim: usize, grade: usize) -> impl Strategy<Value = Elt> {
        arb_element(dim, dim).prop_map(move |e| e.grade_part(grade))
    }

    proptest! {
        #[test]
        fn graded_commutativity(
            p in 0usize..4, q in 0usize..4,
            seed_u in arb_element(5, 5), seed_v in arb_element(5, 5),
        ) {
            let u = seed_u.grade_part(p);
            let v = seed_v.grade_part(q);
            let uv = u.wedge(&v).unwrap();
            let vu = v.wedge(&u).unwrap();
            if (p * q) % 2 == 0 {
                prop_assert_eq!(uv, vu);
            } else {
                prop_assert_eq!(uv, vu.neg());
            }
        }

        #[test]
        fn associativity(u in arb_element(5, 5), v in arb_element(5, 5), w in arb_element(5, 5)) {
            let lhs = u.wedge(&v).unwrap().wedge(&w).unwrap();
            let rhs = u.wedge(&v.wedge(&w).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn odd_grade_elements_square_to_zero(g in prop::sample::select(vec![1usize, 3]), seed in arb_element(5, 5)) {
            let v = seed.grade_part(g);
            prop_assert!(v.wedge(&v).unwrap().is_zero());
        }

        #[test]
        fn products_beyond_top_grade_vanish(us in proptest::collection::vec(arb_homogeneous(4, 1), 5)) {
            let mut acc = Elt::unit(4);
            for u in &us {
                acc = acc.wedge(u).unwrap();
            }
            prop_assert!(acc.is_zero());
        }

        #[test]
        fn power_matches_multinomial_oracle(seed in arb_element(6, 6), k in 1usize..4) {
            // even-grade terms commute, so u^k is k! times the sum over
            // k-subsets of the blade products
            let u = seed.grade_part(2);
            let terms: Vec<(Blade, Rational)> =
                u.terms().map(|(b, c)| (b, c.clone())).collect();
            let mut oracle = Elt::zero(6);
            let n = terms.len();
            let mut pick = vec![0usize; k];
            fn subsets(
                terms: &[(Blade, Rational)],
                k: usize,
                start: usize,
                pick: &mut Vec<usize>,
                depth: usize,
                acc: &mut Elt,
            ) {
                if depth == k {
                    let mut blade = Blade::SCALAR;
                    let mut coeff = rat(1);
                    for &i in pick.iter() {
                        let (b, c) = &terms[i];
                        match blade.merge(*b) {
                            None => return,
                            Some((m, s)) => {
                                blade = m;
                                coeff = &coeff * c;
                                if s < 0 {
                                    coeff = -coeff;
                                }
                            }
                        }
                    }
                    *acc = acc.add(&Elt::monomial(6, blade, coeff));
                    return;
                }
                for i in start..terms.len() {
                    pick[depth] = i;
                    subsets(terms, k, i + 1, pick, depth + 1, acc);
                }
            }
            if n >= k {
                subsets(&terms, k, 0, &mut pick, 0, &mut oracle);
            }
            let factorial: i64 = (1..=k as i64).product();
            prop_assert_eq!(u.power(k), oracle.scale(&rat(factorial)));
        }
    }
}
