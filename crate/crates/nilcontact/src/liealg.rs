//! Lie algebras given by structure constants: Jacobi verification, the
//! Chevalley-Eilenberg differential, central series, direct sums, and the
//! combinatorial criteria used by the contact decision procedure.

use crate::exterior::{Blade, ExteriorElement, MAX_DIM};
use crate::linalg;
use crate::scalars::{Rational, Ring, UniPoly};
use std::collections::BTreeMap;
use std::fmt;

/// Lie algebra over the scalar ring `S`, described by its structure
/// constants `[X_i, X_j] = sum_k c_{ij}^k X_k` on an ordered basis.
///
/// Only keys with `i < j` are stored (antisymmetry is implicit) and only
/// brackets with some nonzero component; coefficient vectors always have
/// length `dim`. Indices are 1-based throughout, matching the usual
/// notation for these tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra<S: Ring> {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<S>>,
}

/// Central series data for a rational Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    /// Dimensions of the upper central series while it grows.
    pub upper_dims: Vec<usize>,
    /// Dimensions of the lower central series down to stabilization.
    pub lower_dims: Vec<usize>,
    pub nilpotency: Nilpotency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nilpotency {
    /// Nilpotent with the given index.
    Nilpotent(usize),
    NotNilpotent,
}

/// Witness for the pair-cover criterion: `(n-1)/2` disjoint nonzero-bracket
/// pairs plus one leftover index covering the whole basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverWitness {
    pub pairs: Vec<(usize, usize)>,
    pub singleton: usize,
}

/// Jacobi failure, reported per basis triple for diagnosability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiError<S: Ring> {
    pub defects: BTreeMap<(usize, usize, usize), Vec<S>>,
}

impl<S: Ring> fmt::Display for JacobiError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j, k) = *self.defects.keys().next().expect("nonempty defect map");
        write!(
            f,
            "Jacobi identity fails at {} basis triple(s), first at ({i},{j},{k})",
            self.defects.len()
        )
    }
}

impl<S: Ring> std::error::Error for JacobiError<S> {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieAlgError {
    #[error("dimension must be odd, got {0}")]
    EvenDimension(usize),
    #[error("specialize lambda first")]
    SpecializeFirst,
    #[error("not a parametric algebra")]
    NotParametric,
}

impl<S: Ring> LieAlgebra<S> {
    /// The abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        assert!(dim <= MAX_DIM);
        LieAlgebra {
            dim,
            brackets: BTreeMap::new(),
        }
    }

    /// Builds from `(i, j, k, c)` entries meaning `[X_i, X_j] += c X_k`.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, S)]) -> Self {
        let mut alg = Self::abelian(dim);
        for (i, j, k, c) in entries {
            alg.add_bracket_term(*i, *j, *k, c.clone());
        }
        alg
    }

    /// Adds `c X_k` to `[X_i, X_j]`; requires `i < j` and indices in range.
    pub fn add_bracket_term(&mut self, i: usize, j: usize, k: usize, c: S) {
        assert!(i < j, "bracket keys need i < j");
        assert!(j <= self.dim && k <= self.dim && i >= 1, "index out of range");
        let vec = self
            .brackets
            .entry((i, j))
            .or_insert_with(|| vec![S::zero(); self.dim]);
        vec[k - 1] = vec[k - 1].add(&c);
        if vec.iter().all(|c| c.is_zero()) {
            self.brackets.remove(&(i, j));
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Stored brackets `(i, j) -> components`, `i < j`, nonzero only.
    pub fn brackets(&self) -> impl Iterator<Item = ((usize, usize), &[S])> {
        self.brackets.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    pub fn bracket_count(&self) -> usize {
        self.brackets.len()
    }

    /// Components of `[X_i, X_j]` for any index order.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<S> {
        if i == j {
            return vec![S::zero(); self.dim];
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.brackets.get(&key) {
            None => vec![S::zero(); self.dim],
            Some(v) if flip => v.iter().map(|c| c.neg()).collect(),
            Some(v) => v.clone(),
        }
    }

    fn has_bracket(&self, i: usize, j: usize) -> bool {
        let key = if i < j { (i, j) } else { (j, i) };
        self.brackets.contains_key(&key)
    }

    /// Map every structure constant through `f` (a ring homomorphism for
    /// anything meaningful), keeping the bracket layout.
    pub fn map_scalars<T: Ring>(&self, f: impl Fn(&S) -> T) -> LieAlgebra<T> {
        let mut out = LieAlgebra::abelian(self.dim);
        for (&(i, j), v) in &self.brackets {
            let mapped: Vec<T> = v.iter().map(&f).collect();
            if mapped.iter().any(|c| !c.is_zero()) {
                out.brackets.insert((i, j), mapped);
            }
        }
        out
    }

    /// Defect of the Jacobi identity per basis triple `i < j < k`; an empty
    /// map means the table is a Lie algebra.
    pub fn jacobi_defects(&self) -> BTreeMap<(usize, usize, usize), Vec<S>> {
        let n = self.dim;
        let mut out = BTreeMap::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    let mut defect = vec![S::zero(); n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.bracket(a, b);
                        for (l, coeff) in inner.iter().enumerate() {
                            if coeff.is_zero() {
                                continue;
                            }
                            let outer = self.bracket(l + 1, c);
                            for (m, oc) in outer.iter().enumerate() {
                                if !oc.is_zero() {
                                    defect[m] = defect[m].add(&coeff.mul(oc));
                                }
                            }
                        }
                    }
                    if defect.iter().any(|c| !c.is_zero()) {
                        out.insert((i, j, k), defect);
                    }
                }
            }
        }
        out
    }

    pub fn is_lie_algebra(&self) -> bool {
        self.jacobi_defects().is_empty()
    }

    /// Differential on generators, `dx_k = sum_{i<j} c_{ij}^k x_i x_j`,
    /// without checking Jacobi. `d . d = 0` holds iff the table is a Lie
    /// algebra, so this is the tool for diagnosing broken tables.
    pub fn ce_differential_unchecked(&self) -> Vec<ExteriorElement<S>> {
        let n = self.dim;
        let mut out = vec![ExteriorElement::zero(n); n];
        for (&(i, j), v) in &self.brackets {
            for (k, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    let term =
                        ExteriorElement::monomial(n, Blade::from_indices(&[i, j]), c.clone());
                    out[k] = out[k].add(&term);
                }
            }
        }
        out
    }

    /// Chevalley-Eilenberg differential on generators; errors with the full
    /// defect map when the Jacobi identity fails.
    pub fn ce_differential(&self) -> Result<Vec<ExteriorElement<S>>, JacobiError<S>> {
        let defects = self.jacobi_defects();
        if !defects.is_empty() {
            return Err(JacobiError { defects });
        }
        Ok(self.ce_differential_unchecked())
    }

    /// Extends the generator differential to the whole exterior algebra as
    /// the degree `+1` graded derivation.
    pub fn d(
        &self,
        u: &ExteriorElement<S>,
    ) -> Result<ExteriorElement<S>, JacobiError<S>> {
        Ok(self.d_with(&self.ce_differential()?, u))
    }

    pub fn d_unchecked(&self, u: &ExteriorElement<S>) -> ExteriorElement<S> {
        self.d_with(&self.ce_differential_unchecked(), u)
    }

    fn d_with(
        &self,
        dx: &[ExteriorElement<S>],
        u: &ExteriorElement<S>,
    ) -> ExteriorElement<S> {
        assert_eq!(u.dim(), self.dim, "element over a different basis");
        let n = self.dim;
        let mut out = ExteriorElement::zero(n);
        for (blade, coeff) in u.terms() {
            let indices = blade.indices();
            for (t, &s) in indices.iter().enumerate() {
                let prefix = ExteriorElement::monomial(
                    n,
                    Blade::from_indices(&indices[..t]),
                    coeff.clone(),
                );
                let suffix =
                    ExteriorElement::monomial(n, Blade::from_indices(&indices[t + 1..]), S::one());
                let mut term = prefix
                    .wedge(&dx[s - 1])
                    .and_then(|p| p.wedge(&suffix))
                    .expect("same dimension");
                if t % 2 == 1 {
                    term = term.neg();
                }
                out = out.add(&term);
            }
        }
        out
    }

    /// Direct sum: `self` on indices `1..=n`, `other` shifted up, zero cross
    /// brackets.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.dim;
        let dim = n + other.dim;
        assert!(dim <= MAX_DIM);
        let mut out = LieAlgebra::abelian(dim);
        for (&(i, j), v) in &self.brackets {
            let mut ext = v.clone();
            ext.resize(dim, S::zero());
            out.brackets.insert((i, j), ext);
        }
        for (&(i, j), v) in &other.brackets {
            let mut ext = vec![S::zero(); dim];
            ext[n..].clone_from_slice(v);
            out.brackets.insert((i + n, j + n), ext);
        }
        out
    }

    /// Applies a basis relabeling; `perm[old - 1] = new`, a bijection on
    /// `1..=n`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim);
        let mut out = LieAlgebra::abelian(self.dim);
        for (&(i, j), v) in &self.brackets {
            let (a, b) = (perm[i - 1], perm[j - 1]);
            for (k, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i2, j2, c2) = if a < b {
                    (a, b, c.clone())
                } else {
                    (b, a, c.neg())
                };
                out.add_bracket_term(i2, j2, perm[k], c2);
            }
        }
        out
    }

    /// Pair-cover criterion: in odd dimension `n`, looks for `(n-1)/2`
    /// disjoint pairs with nonzero brackets plus one leftover index that
    /// together cover `{1..n}`. When no cover exists the generic contact
    /// polynomial vanishes identically, so `None` rules contact out.
    pub fn cover_criterion(&self) -> Result<Option<CoverWitness>, LieAlgError> {
        let n = self.dim;
        if n.is_multiple_of(2) {
            return Err(LieAlgError::EvenDimension(n));
        }
        for singleton in 1..=n {
            let mut pairs = Vec::new();
            if self.match_remaining(&mut vec![singleton], &mut pairs) {
                return Ok(Some(CoverWitness { pairs, singleton }));
            }
        }
        Ok(None)
    }

    fn match_remaining(&self, used: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>) -> bool {
        let n = self.dim;
        let Some(i) = (1..=n).find(|i| !used.contains(i)) else {
            return true;
        };
        used.push(i);
        for j in (i + 1)..=n {
            if used.contains(&j) || !self.has_bracket(i, j) {
                continue;
            }
            used.push(j);
            pairs.push((i, j));
            if self.match_remaining(used, pairs) {
                return true;
            }
            pairs.pop();
            used.pop();
        }
        used.pop();
        false
    }

    /// Searches the `2^(n-1)` basis-aligned bipartitions for one where both
    /// blocks are subalgebras with vanishing cross brackets, returning the
    /// lexicographically least block containing index 1. Decompositions
    /// hidden behind a change of basis are not detected.
    pub fn basis_aligned_decomposition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.dim;
        let mut best: Option<Vec<usize>> = None;
        for mask in 0u32..(1 << (n - 1)) {
            let side = |idx: usize| idx == 1 || (mask >> (idx - 2)) & 1 == 1;
            if (2..=n).all(&side) {
                continue; // trivial partition
            }
            let mut ok = true;
            'brackets: for (&(i, j), v) in &self.brackets {
                if side(i) != side(j) {
                    ok = false;
                    break;
                }
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() && side(k + 1) != side(i) {
                        ok = false;
                        break 'brackets;
                    }
                }
            }
            if ok {
                let block: Vec<usize> = (1..=n).filter(|&i| side(i)).collect();
                if best.as_ref().is_none_or(|b| block < *b) {
                    best = Some(block);
                }
            }
        }
        let block = best?;
        let rest = (1..=self.dim).filter(|i| !block.contains(i)).collect();
        Some((block, rest))
    }
}

impl LieAlgebra<Rational> {
    /// Upper and lower central series by exact rational linear algebra.
    pub fn central_series(&self) -> SeriesReport {
        let n = self.dim;

        // Upper series: C_{i+1} = { x : [x, g] inside C_i }, computed as the
        // kernel of the bracket maps composed with functionals annihilating
        // the current term.
        let mut upper_dims = Vec::new();
        let mut current: Vec<Vec<Rational>> = Vec::new(); // basis of C_i
        let mut nilpotency = Nilpotency::NotNilpotent;
        loop {
            let annihilators = linalg::kernel_basis(&current, n);
            let mut constraints = Vec::new();
            for j in 1..=n {
                let columns: Vec<Vec<Rational>> =
                    (1..=n).map(|t| self.bracket(t, j)).collect();
                for w in &annihilators {
                    let row: Vec<Rational> = columns
                        .iter()
                        .map(|col| {
                            let mut acc = crate::scalars::rat(0);
                            for (wk, ck) in w.iter().zip(col) {
                                acc = &acc + &(wk * ck);
                            }
                            acc
                        })
                        .collect();
                    constraints.push(row);
                }
            }
            let next = linalg::kernel_basis(&constraints, n);
            let dim = next.len();
            if dim == current.len() {
                break;
            }
            upper_dims.push(dim);
            current = next;
            if dim == n {
                nilpotency = Nilpotency::Nilpotent(upper_dims.len());
                break;
            }
        }

        // Lower series: L_1 = g, L_{k+1} = [g, L_k].
        let mut lower_dims = vec![n];
        let mut basis: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut e = vec![crate::scalars::rat(0); n];
                e[i] = crate::scalars::rat(1);
                e
            })
            .collect();
        loop {
            let mut products = Vec::new();
            for i in 1..=n {
                for v in &basis {
                    let mut out = vec![crate::scalars::rat(0); n];
                    for (j, vj) in v.iter().enumerate() {
                        if Ring::is_zero(vj) {
                            continue;
                        }
                        for (k, c) in self.bracket(i, j + 1).iter().enumerate() {
                            if !Ring::is_zero(c) {
                                out[k] = &out[k] + &(vj * c);
                            }
                        }
                    }
                    if out.iter().any(|c| !Ring::is_zero(c)) {
                        products.push(out);
                    }
                }
            }
            let next = linalg::row_space_basis(&products, n);
            let dim = next.len();
            if dim == *lower_dims.last().unwrap() {
                break;
            }
            lower_dims.push(dim);
            basis = next;
            if dim == 0 {
                break;
            }
        }

        SeriesReport {
            upper_dims,
            lower_dims,
            nilpotency,
        }
    }
}

impl LieAlgebra<UniPoly> {
    /// Substitutes a rational value for the parameter in every entry.
    pub fn specialize(&self, lambda0: &Rational) -> LieAlgebra<Rational> {
        self.map_scalars(|p| p.eval(lambda0))
    }
}

/// A catalog or user algebra: either plain rational structure constants or
/// a one-parameter family over `Q[lambda]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Rational(LieAlgebra<Rational>),
    Parametric(LieAlgebra<UniPoly>),
}

impl Algebra {
    pub fn dim(&self) -> usize {
        match self {
            Algebra::Rational(g) => g.dim(),
            Algebra::Parametric(g) => g.dim(),
        }
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self, Algebra::Parametric(_))
    }

    /// Jacobi defect triples (empty when the table is a Lie algebra), with
    /// the defect vectors rendered for display.
    pub fn jacobi_defect_display(&self) -> Vec<((usize, usize, usize), String)> {
        fn render<S: Ring>(defects: BTreeMap<(usize, usize, usize), Vec<S>>) -> Vec<((usize, usize, usize), String)> {
            defects
                .into_iter()
                .map(|(t, v)| (t, render_combination(&v)))
                .collect()
        }
        match self {
            Algebra::Rational(g) => render(g.jacobi_defects()),
            Algebra::Parametric(g) => render(g.jacobi_defects()),
        }
    }

    pub fn is_lie_algebra(&self) -> bool {
        match self {
            Algebra::Rational(g) => g.is_lie_algebra(),
            Algebra::Parametric(g) => g.is_lie_algebra(),
        }
    }

    /// Central series, specializing families at `lambda0`; families without
    /// a value to substitute cannot be row-reduced and error out.
    pub fn central_series(
        &self,
        lambda0: Option<&Rational>,
    ) -> Result<SeriesReport, LieAlgError> {
        match (self, lambda0) {
            (Algebra::Rational(g), _) => Ok(g.central_series()),
            (Algebra::Parametric(g), Some(l)) => Ok(g.specialize(l).central_series()),
            (Algebra::Parametric(_), None) => Err(LieAlgError::SpecializeFirst),
        }
    }

    pub fn specialize(&self, lambda0: &Rational) -> Result<LieAlgebra<Rational>, LieAlgError> {
        match self {
            Algebra::Rational(_) => Err(LieAlgError::NotParametric),
            Algebra::Parametric(g) => Ok(g.specialize(lambda0)),
        }
    }

    /// Given-basis rationality: true when every structure constant is a
    /// plain rational, after substituting `lambda0` if the entry is a
    /// family. An unspecialized family reports false, since the check is
    /// per parameter value.
    pub fn rational_in_given_basis(&self, lambda0: Option<&Rational>) -> bool {
        match (self, lambda0) {
            (Algebra::Rational(_), _) => true,
            (Algebra::Parametric(_), Some(_)) => true,
            (Algebra::Parametric(_), None) => false,
        }
    }

    pub fn cover_criterion(&self) -> Result<Option<CoverWitness>, LieAlgError> {
        match self {
            Algebra::Rational(g) => g.cover_criterion(),
            Algebra::Parametric(g) => g.cover_criterion(),
        }
    }

    pub fn basis_aligned_decomposition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        match self {
            Algebra::Rational(g) => g.basis_aligned_decomposition(),
            Algebra::Parametric(g) => g.basis_aligned_decomposition(),
        }
    }
}

/// Renders a coefficient vector as a combination of basis vectors, e.g.
/// `-X3` or `2*X1 + X4`.
pub fn render_combination<S: Ring>(v: &[S]) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let rendered = c.to_string();
        let (sign, body) = match rendered.strip_prefix('-') {
            Some(stripped) if !stripped.contains(' ') => ("-", stripped.to_string()),
            _ => ("+", rendered),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if body == "1" {
            out.push_str(&format!("X{}", k + 1));
        } else if body.contains(' ') {
            out.push_str(&format!("({body})*X{}", k + 1));
        } else {
            out.push_str(&format!("{body}*X{}", k + 1));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, ratio};
    use proptest::prelude::*;

    type Ralg = LieAlgebra<Rational>;

    fn alg(dim: usize, entries: &[(usize, usize, usize, i64)]) -> Ralg {
        LieAlgebra::from_entries(
            dim,
            &entries
                .iter()
                .map(|&(i, j, k, c)| (i, j, k, rat(c)))
                .collect::<Vec<_>>(),
        )
    }

    fn heis3() -> Ralg {
        alg(3, &[(1, 2, 3, 1)])
    }

    /// Upper central series (1,3,5,7); the running 7-dimensional example.
    fn alg_1357c() -> Ralg {
        alg(
            7,
            &[
                (1, 2, 4, 1),
                (1, 4, 5, 1),
                (1, 5, 7, 1),
                (2, 3, 5, 1),
                (2, 4, 7, 1),
                (3, 4, 7, -1),
                (3, 6, 7, 1),
            ],
        )
    }

    fn family_147e() -> LieAlgebra<UniPoly> {
        let lam = UniPoly::lambda();
        let one_minus = UniPoly::from_ints(&[1, -1]);
        LieAlgebra::from_entries(
            7,
            &[
                (1, 2, 4, UniPoly::one()),
                (1, 3, 6, UniPoly::from_ints(&[-1])),
                (1, 5, 7, UniPoly::from_ints(&[-1])),
                (2, 3, 5, UniPoly::one()),
                (2, 6, 7, lam),
                (3, 4, 7, one_minus),
            ],
        )
    }

    #[test]
    fn jacobi_holds_for_catalog_style_tables() {
        assert!(alg_1357c().jacobi_defects().is_empty());
        assert!(Ralg::abelian(5).jacobi_defects().is_empty());
        assert!(family_147e().jacobi_defects().is_empty());
    }

    #[test]
    fn jacobi_defect_of_broken_table() {
        // [X1,X2]=X3, [X1,X3]=X1 is not a Lie algebra
        let g = alg(3, &[(1, 2, 3, 1), (1, 3, 1, 1)]);
        let defects = g.jacobi_defects();
        assert_eq!(defects.len(), 1);
        let d = &defects[&(1, 2, 3)];
        assert_eq!(d.as_slice(), &[rat(0), rat(0), rat(-1)]);
        assert_eq!(render_combination(d), "-X3");
    }

    #[test]
    fn ce_differential_of_1357c() {
        let dx = alg_1357c().ce_differential().unwrap();
        assert_eq!(dx[4].to_string(), "x2x3 + x1x4");
        assert_eq!(dx[6].to_string(), "x2x4 - x3x4 + x1x5 + x3x6");
        assert!(dx[0].is_zero() && dx[1].is_zero() && dx[2].is_zero());
    }

    #[test]
    fn ce_differential_of_147e() {
        let dx = family_147e().ce_differential().unwrap();
        assert_eq!(dx[5].to_string(), "-x1x3");
        assert_eq!(dx[6].to_string(), "(1 - lambda)x3x4 - x1x5 + (lambda)x2x6");
    }

    #[test]
    fn differential_is_zero_on_closed_generators() {
        let g = alg_1357c();
        let x1x2 = ExteriorElement::monomial(7, Blade::from_indices(&[1, 2]), rat(1));
        assert!(g.d(&x1x2).unwrap().is_zero());
        let x7 = ExteriorElement::one_form(&[
            rat(0), rat(0), rat(0), rat(0), rat(0), rat(0), rat(1),
        ]);
        let ddx7 = g.d(&g.d(&x7).unwrap()).unwrap();
        assert!(ddx7.is_zero());
        assert!(g.d(&ExteriorElement::unit(7)).unwrap().is_zero());
    }

    #[test]
    fn broken_jacobi_breaks_d_squared() {
        let g = alg(3, &[(1, 2, 3, 1), (1, 3, 1, 1)]);
        assert!(g.ce_differential().is_err());
        let x3 = ExteriorElement::one_form(&[rat(0), rat(0), rat(1)]);
        let ddx3 = g.d_unchecked(&g.d_unchecked(&x3));
        assert!(!ddx3.is_zero());
    }

    #[test]
    fn central_series_examples() {
        let r = alg_1357c().central_series();
        assert_eq!(r.upper_dims, vec![1, 3, 5, 7]);
        assert_eq!(r.nilpotency, Nilpotency::Nilpotent(4));

        let r = Ralg::abelian(7).central_series();
        assert_eq!(r.upper_dims, vec![7]);
        assert_eq!(r.lower_dims, vec![7, 0]);
        assert_eq!(r.nilpotency, Nilpotency::Nilpotent(1));

        let r = heis3().central_series();
        assert_eq!(r.upper_dims, vec![1, 3]);
        assert_eq!(r.lower_dims, vec![3, 1, 0]);
        assert_eq!(r.nilpotency, Nilpotency::Nilpotent(2));
    }

    #[test]
    fn non_nilpotent_is_detected() {
        // [X1,X2] = X2 has trivial center
        let g = alg(2, &[(1, 2, 2, 1)]);
        let r = g.central_series();
        assert_eq!(r.nilpotency, Nilpotency::NotNilpotent);
        assert!(r.upper_dims.is_empty());
        assert_eq!(r.lower_dims, vec![2, 1]);
    }

    #[test]
    fn specialization_examples() {
        let g = family_147e();
        let at2 = g.specialize(&rat(2));
        assert_eq!(at2.bracket(2, 6)[6], rat(2));
        assert_eq!(at2.bracket(3, 4)[6], rat(-1));
        // no lambda occurrences: table unchanged
        let constant = LieAlgebra::from_entries(3, &[(1, 2, 3, UniPoly::one())]);
        assert_eq!(constant.specialize(&ratio(5, 3)), heis3());
    }

    #[test]
    fn specialization_can_drop_brackets() {
        let lam = UniPoly::lambda();
        let g = LieAlgebra::from_entries(
            7,
            &[
                (2, 6, 7, lam),
                (3, 4, 7, UniPoly::from_ints(&[1, -1])),
            ],
        );
        let at0 = g.specialize(&rat(0));
        assert!(at0.bracket(2, 6).iter().all(Ring::is_zero));
        assert_eq!(at0.bracket(3, 4)[6], rat(1));
        assert_eq!(at0.bracket_count(), 1);
    }

    #[test]
    fn direct_sums() {
        let g = heis3().direct_sum(&Ralg::abelian(4));
        assert_eq!(g.dim(), 7);
        assert_eq!(g.bracket_count(), 1);
        assert_eq!(g.bracket(1, 2)[2], rat(1));

        assert_eq!(
            Ralg::abelian(2).direct_sum(&Ralg::abelian(3)),
            Ralg::abelian(5)
        );

        // L5,1 + abelian-2: [X1,X2]=X5, [X3,X4]=X5
        let l51 = alg(5, &[(1, 2, 5, 1), (3, 4, 5, 1)]);
        let g = l51.direct_sum(&Ralg::abelian(2));
        assert_eq!(g.dim(), 7);
        assert_eq!(g.bracket(1, 2)[4], rat(1));
        assert_eq!(g.bracket(3, 4)[4], rat(1));
    }

    #[test]
    fn cover_criterion_examples() {
        let single = alg(7, &[(1, 2, 7, 1)]);
        assert_eq!(single.cover_criterion().unwrap(), None);

        let w = alg_1357c().cover_criterion().unwrap().unwrap();
        assert_eq!(w.singleton, 7);
        assert_eq!(w.pairs, vec![(1, 5), (2, 4), (3, 6)]);

        assert_eq!(Ralg::abelian(7).cover_criterion().unwrap(), None);
        assert_eq!(
            Ralg::abelian(6).cover_criterion(),
            Err(LieAlgError::EvenDimension(6))
        );
    }

    #[test]
    fn basis_aligned_decompositions() {
        let g = heis3().direct_sum(&Ralg::abelian(4));
        assert_eq!(
            g.basis_aligned_decomposition(),
            Some((vec![1, 2, 3], vec![4, 5, 6, 7]))
        );

        assert_eq!(alg_1357c().basis_aligned_decomposition(), None);

        assert_eq!(
            Ralg::abelian(7).basis_aligned_decomposition(),
            Some((vec![1], vec![2, 3, 4, 5, 6, 7]))
        );

        assert_eq!(heis3().basis_aligned_decomposition(), None);
    }

    #[test]
    fn algebra_enum_dispatch() {
        let fam = Algebra::Parametric(family_147e());
        assert!(fam.is_parametric());
        assert_eq!(fam.central_series(None), Err(LieAlgError::SpecializeFirst));
        assert!(fam.central_series(Some(&rat(2))).is_ok());
        assert!(!fam.rational_in_given_basis(None));
        assert!(fam.rational_in_given_basis(Some(&ratio(3, 2))));

        let plain = Algebra::Rational(heis3());
        assert!(plain.rational_in_given_basis(None));
        assert_eq!(plain.specialize(&rat(1)), Err(LieAlgError::NotParametric));
    }

    fn arb_nilpotent_like() -> impl Strategy<Value = Ralg> {
        // sparse tables bracketed into strictly higher indices, filtered
        // through the Jacobi check
        proptest::collection::vec(
            (1usize..7, 1usize..7, -2i64..3).prop_filter_map("needs i<j<k<=7", |(i, j, c)| {
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                if i == j || j >= 7 || c == 0 {
                    return None;
                }
                Some((i, j, 7usize, c))
            }),
            0..5,
        )
        .prop_map(|entries| alg(7, &entries))
        .prop_filter("jacobi", |g| g.is_lie_algebra())
    }

    proptest! {
        #[test]
        fn d_is_a_graded_derivation(g in arb_nilpotent_like(), seed_u in 0u32..(1 << 7), seed_v in 0u32..(1 << 7)) {
            let u = ExteriorElement::monomial(7, Blade::from_mask(seed_u & 0b0011011), rat(1));
            let v = ExteriorElement::monomial(7, Blade::from_mask(seed_v & 0b1100101), rat(1));
            let grade_u = u.homogeneous_grade().unwrap();
            let lhs = g.d(&u.wedge(&v).unwrap()).unwrap();
            let mut rhs = g.d(&u).unwrap().wedge(&v).unwrap();
            let udv = u.wedge(&g.d(&v).unwrap()).unwrap();
            rhs = if grade_u.is_multiple_of(2) { rhs.add(&udv) } else { rhs.sub(&udv) };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn relabeling_preserves_structure(g in arb_nilpotent_like(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (1..=7).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            prop_assert!(h.is_lie_algebra());
            prop_assert_eq!(
                g.cover_criterion().unwrap().is_some(),
                h.cover_criterion().unwrap().is_some()
            );
            prop_assert_eq!(g.central_series().upper_dims, h.central_series().upper_dims);
        }

        #[test]
        fn direct_sums_are_detected(split in 1usize..4, g in arb_nilpotent_like()) {
            // direct sums always expose a basis-aligned decomposition
            let h = LieAlgebra::<Rational>::abelian(split).direct_sum(&g);
            prop_assert!(h.basis_aligned_decomposition().is_some());
        }
    }
}
