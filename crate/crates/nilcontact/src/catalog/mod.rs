//! The bundled classification dataset, its file format, and the harness
//! that re-derives every recorded property from the bracket tables.
//!
//! Entries live in `catalog/*.nla` at the repository root and are compiled
//! into the library; `NILCONTACT_CATALOG_DIR` (handled by the CLI) points
//! the loaders at an alternative directory with the same file names.

mod parser;

pub use parser::{parse, render, ParseError};

use crate::contact::{
    contact_value, family_analysis, find_contact_form, ContactReport, ExceptionalLambda,
    FamilyInvariant, Verdict,
};
use crate::liealg::Algebra;
use crate::scalars::{rat, ratio, Rational, Ring, UniPoly};
use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

pub const DIM7_SOURCE: &str = include_str!("../../../../catalog/dim7.nla");
pub const DIM5_SOURCE: &str = include_str!("../../../../catalog/dim5.nla");
pub const DIM3_SOURCE: &str = include_str!("../../../../catalog/dim3.nla");

/// Structured admissibility rule for a family parameter: a finite excluded
/// set plus an optional lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LambdaRule {
    pub excluded: BTreeSet<Rational>,
    /// `(bound, strict)`: `lambda > bound` when strict, `lambda >= bound`
    /// otherwise.
    pub lower_bound: Option<(Rational, bool)>,
}

impl LambdaRule {
    pub fn admits(&self, lambda: &Rational) -> bool {
        if self.excluded.contains(lambda) {
            return false;
        }
        match &self.lower_bound {
            Some((bound, true)) => lambda > bound,
            Some((bound, false)) => lambda >= bound,
            None => true,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.excluded.is_empty() && self.lower_bound.is_none()
    }
}

impl fmt::Display for LambdaRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some((bound, strict)) = &self.lower_bound {
            parts.push(format!("lambda {} {}", if *strict { ">" } else { ">=" }, bound));
        }
        if !self.excluded.is_empty() {
            let vals: Vec<String> = self.excluded.iter().map(|r| r.to_string()).collect();
            parts.push(format!("lambda != {}", vals.join(", ")));
        }
        if parts.is_empty() {
            write!(f, "none")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

/// One catalog entry: the algebra itself plus the recorded facts the
/// verification harness re-derives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub algebra: Algebra,
    /// Parameter name as written in the source file.
    pub param_name: Option<String>,
    /// Excluded parameter values as listed in the source file.
    pub excluded: BTreeSet<Rational>,
    pub invariant: Option<FamilyInvariant>,
    /// Full admissibility rule (file exclusions plus recorded bounds).
    pub constraint: LambdaRule,
    pub expected_upper_dims: Option<Vec<usize>>,
    pub expected_witness: Option<Vec<Rational>>,
    pub expected_top_coefficient: Option<UniPoly>,
    /// Parameter values recorded as losing the contact structure; compared
    /// for exact equality when present.
    pub expected_exceptional: Option<BTreeSet<Rational>>,
    /// Whether a basis with all-rational structure constants is recorded
    /// as known (for families this stays false: it depends on the value
    /// substituted for the parameter).
    pub rational_basis_known: bool,
}

/// Upper-central-series dimensions encoded by a label's digit prefix,
/// e.g. `1357C -> [1, 3, 5, 7]`. Requires a strictly increasing digit run
/// ending in the dimension 7.
pub fn digit_label_dims(id: &str) -> Option<Vec<usize>> {
    let digits: Vec<usize> = id
        .chars()
        .take_while(|c| c.is_ascii_digit())
        .map(|c| (c as u8 - b'0') as usize)
        .collect();
    if digits.is_empty() || digits.windows(2).any(|w| w[0] >= w[1]) || *digits.last()? != 7 {
        return None;
    }
    Some(digits)
}

fn unit_vector(k: usize, n: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); n];
    v[k - 1] = rat(1);
    v
}

/// Fills in the recorded expectations for the bundled dataset ids.
pub fn attach_expectations(entries: &mut [CatalogEntry]) {
    for entry in entries.iter_mut() {
        let dim = entry.algebra.dim();
        match dim {
            7 => {
                if let Some(dims) = digit_label_dims(&entry.id) {
                    entry.expected_upper_dims = Some(dims);
                    entry.expected_witness = Some(if entry.id == "12457L" {
                        let mut w = unit_vector(7, 7);
                        w[5] = rat(1);
                        w
                    } else {
                        unit_vector(7, 7)
                    });
                }
            }
            5 => {
                let dims: Option<Vec<usize>> = match entry.id.as_str() {
                    "L5,1" => Some(vec![1, 5]),
                    "L5,3" => Some(vec![1, 3, 5]),
                    "L5,6" => Some(vec![1, 2, 3, 5]),
                    _ => None,
                };
                if let Some(dims) = dims {
                    entry.expected_upper_dims = Some(dims);
                    entry.expected_witness = Some(unit_vector(5, 5));
                }
            }
            3 => match entry.id.as_str() {
                "heis3" => {
                    entry.expected_upper_dims = Some(vec![1, 3]);
                    entry.expected_witness = Some(unit_vector(3, 3));
                }
                "abelian3" => {
                    entry.expected_upper_dims = Some(vec![3]);
                    entry.expected_witness = None;
                }
                _ => {}
            },
            _ => {}
        }

        match entry.id.as_str() {
            "1357C" => {
                entry.expected_top_coefficient = Some(UniPoly::from_ints(&[6]));
            }
            "147E" => {
                entry.expected_top_coefficient = Some(UniPoly::from_ints(&[0, 6, -6]));
                entry.expected_exceptional = Some(BTreeSet::from([rat(0), rat(1)]));
            }
            "1357M" => {
                entry.expected_exceptional = Some(BTreeSet::from([rat(0), rat(1)]));
            }
            _ => {}
        }

        let lower_bound = match entry.id.as_str() {
            "147E1" => Some((rat(1), true)),
            "12457N2" => Some((rat(0), false)),
            _ => None,
        };
        entry.constraint = LambdaRule {
            excluded: entry.excluded.clone(),
            lower_bound,
        };

        entry.rational_basis_known =
            !entry.algebra.is_parametric() && entry.expected_upper_dims.is_some();
    }
}

/// The full bundled dataset with expectations attached.
pub fn embedded_catalog() -> Vec<CatalogEntry> {
    let mut entries = Vec::new();
    for (name, source) in [
        ("dim7.nla", DIM7_SOURCE),
        ("dim5.nla", DIM5_SOURCE),
        ("dim3.nla", DIM3_SOURCE),
    ] {
        let mut parsed =
            parse(source).unwrap_or_else(|e| panic!("bundled {name} must parse: {e}"));
        entries.append(&mut parsed);
    }
    attach_expectations(&mut entries);
    entries
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// Loads `dim7.nla`, `dim5.nla`, `dim3.nla` from a directory, attaching the
/// same expectations as for the bundled dataset.
pub fn load_catalog_dir(dir: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries = Vec::new();
    for name in ["dim7.nla", "dim5.nla", "dim3.nla"] {
        let path = dir.join(name);
        let text = std::fs::read_to_string(&path).map_err(|source| CatalogError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut parsed = parse(&text).map_err(|source| CatalogError::Parse {
            path: path.display().to_string(),
            source,
        })?;
        entries.append(&mut parsed);
    }
    attach_expectations(&mut entries);
    Ok(entries)
}

/// Parameter samples used for per-value checks of a family.
pub fn family_samples(entry: &CatalogEntry) -> Vec<Rational> {
    [rat(2), rat(3), ratio(1, 2)]
        .into_iter()
        .filter(|l| !entry.excluded.contains(l))
        .collect()
}

/// Central-series outcome at one parameter value (`lambda` empty for plain
/// entries).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCheck {
    pub lambda: Option<Rational>,
    pub upper_dims: Vec<usize>,
    /// Comparison against the recorded dims, when any are recorded.
    pub ok: Option<bool>,
}

/// Everything the harness derived for one entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryResult {
    pub id: String,
    pub dim: usize,
    pub parametric: bool,
    pub jacobi_ok: bool,
    pub series_checks: Vec<SeriesCheck>,
    pub expected_upper_dims: Option<Vec<usize>>,
    pub verdict: Option<Verdict>,
    pub witness: Option<Vec<Rational>>,
    pub top_coefficient: Option<UniPoly>,
    pub exceptional: Option<ExceptionalLambda>,
    /// Equality with the recorded exceptional set, when one is recorded.
    pub exceptional_expected_ok: Option<bool>,
    /// Whether every computed exceptional value is already ruled out by the
    /// entry's constraint. Informational: a mismatch is reported but only
    /// fails the entry when an expected set is recorded.
    pub exceptional_consistent: Option<bool>,
    pub problems: Vec<String>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationResult {
    pub entries: Vec<EntryResult>,
    pub passed: usize,
    pub failed: usize,
}

impl VerificationResult {
    fn collect(entries: Vec<EntryResult>) -> Self {
        let passed = entries.iter().filter(|e| e.passed()).count();
        let failed = entries.len() - passed;
        VerificationResult {
            entries,
            passed,
            failed,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }
}

/// Re-derives every recorded fact for each entry; parallel across entries
/// when the `parallel` feature is enabled.
pub fn verify(entries: &[CatalogEntry]) -> VerificationResult {
    VerificationResult::collect(crate::par::par_map(entries, verify_entry))
}

/// Sequential twin of [`verify`], for comparison and benchmarking.
pub fn verify_sequential(entries: &[CatalogEntry]) -> VerificationResult {
    VerificationResult::collect(entries.iter().map(verify_entry).collect())
}

fn verify_entry(entry: &CatalogEntry) -> EntryResult {
    let mut result = EntryResult {
        id: entry.id.clone(),
        dim: entry.algebra.dim(),
        parametric: entry.algebra.is_parametric(),
        jacobi_ok: false,
        series_checks: Vec::new(),
        expected_upper_dims: entry.expected_upper_dims.clone(),
        verdict: None,
        witness: None,
        top_coefficient: None,
        exceptional: None,
        exceptional_expected_ok: None,
        exceptional_consistent: None,
        problems: Vec::new(),
    };

    result.jacobi_ok = entry.algebra.is_lie_algebra();
    if !result.jacobi_ok {
        result.problems.push("Jacobi identity fails".into());
        return result;
    }

    let check_series = |result: &mut EntryResult, lambda: Option<Rational>, dims: Vec<usize>| {
        let ok = entry.expected_upper_dims.as_ref().map(|e| e == &dims);
        if ok == Some(false) {
            result.problems.push(format!(
                "upper central series {:?}{} differs from recorded {:?}",
                dims,
                lambda
                    .as_ref()
                    .map(|l| format!(" at lambda = {l}"))
                    .unwrap_or_default(),
                entry.expected_upper_dims.as_ref().unwrap()
            ));
        }
        result.series_checks.push(SeriesCheck {
            lambda,
            upper_dims: dims,
            ok,
        });
    };

    match &entry.algebra {
        Algebra::Rational(g) => {
            check_series(&mut result, None, g.central_series().upper_dims);

            if g.dim() % 2 == 1 {
                let report = find_contact_form(g).expect("odd dimension, Jacobi verified");
                apply_plain_report(entry, &mut result, &report);
                if let Some(w) = &entry.expected_witness {
                    let value = contact_value(g, w).expect("odd dimension, Jacobi verified");
                    validate_expected_witness(entry, &mut result, UniPoly::constant(value));
                }
            }
        }
        Algebra::Parametric(g) => {
            if g.dim() % 2 == 1 {
                let report = family_analysis(g).expect("odd dimension, Jacobi verified");
                apply_family_report(entry, &mut result, &report);
                if let Some(w) = &entry.expected_witness {
                    let lifted: Vec<UniPoly> =
                        w.iter().map(|c| UniPoly::constant(c.clone())).collect();
                    let value = contact_value(g, &lifted).expect("odd dimension, Jacobi verified");
                    validate_expected_witness(entry, &mut result, value);
                }
            }

            for lambda in family_samples(entry) {
                let specialized = g.specialize(&lambda);
                check_series(
                    &mut result,
                    Some(lambda.clone()),
                    specialized.central_series().upper_dims,
                );
                if g.dim() % 2 == 1 {
                    let report =
                        find_contact_form(&specialized).expect("odd dimension, Jacobi verified");
                    if report.verdict != Verdict::Contact {
                        result
                            .problems
                            .push(format!("no contact structure at lambda = {lambda}"));
                    }
                    if let Some(w) = &entry.expected_witness {
                        let value = contact_value(&specialized, w)
                            .expect("odd dimension, Jacobi verified");
                        if Ring::is_zero(&value) {
                            result.problems.push(format!(
                                "recorded witness degenerates at lambda = {lambda}"
                            ));
                        }
                    }
                }
            }
        }
    }

    result
}

fn apply_plain_report(entry: &CatalogEntry, result: &mut EntryResult, report: &ContactReport) {
    result.verdict = Some(report.verdict);
    result.witness = report.witness.clone();
    result.top_coefficient = Some(report.top_coefficient.clone());
    let has_expectations = entry.expected_upper_dims.is_some();
    match (&entry.expected_witness, report.verdict) {
        (Some(_), Verdict::Contact) => {}
        (Some(_), v) => result
            .problems
            .push(format!("verdict {v} but a contact witness is recorded")),
        (None, Verdict::NoContact) => {}
        (None, v) if has_expectations => result
            .problems
            .push(format!("verdict {v} but no contact structure is recorded")),
        (None, _) => {}
    }
}

fn apply_family_report(entry: &CatalogEntry, result: &mut EntryResult, report: &ContactReport) {
    result.verdict = Some(report.verdict);
    result.witness = report.witness.clone();
    result.top_coefficient = Some(report.top_coefficient.clone());
    result.exceptional = report.exceptional.clone();
    if report.verdict == Verdict::NoContact {
        result
            .problems
            .push("family admits no contact structure for any parameter".into());
        return;
    }
    if let Some(exceptional) = &report.exceptional {
        if let Some(expected) = &entry.expected_exceptional {
            let ok = &exceptional.roots == expected && exceptional.residual.is_constant();
            result.exceptional_expected_ok = Some(ok);
            if !ok {
                result.problems.push(format!(
                    "exceptional parameter set {:?} differs from recorded {:?}",
                    exceptional.roots, expected
                ));
            }
        }
        result.exceptional_consistent = Some(
            exceptional
                .roots
                .iter()
                .all(|l| !entry.constraint.admits(l)),
        );
    }
}

fn validate_expected_witness(entry: &CatalogEntry, result: &mut EntryResult, value: UniPoly) {
    if Ring::is_zero(&value) {
        result
            .problems
            .push("recorded witness gives a zero top form".into());
        return;
    }
    if let Some(expected) = &entry.expected_top_coefficient {
        if &value != expected {
            result.problems.push(format!(
                "top coefficient {value} differs from recorded {expected}"
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::LieAlgebra;

    #[test]
    fn parse_single_algebra() {
        let entries = parse(
            "algebra \"1357C\" dim 7 { [1,2]=4; [1,4]=5; [1,5]=7; [2,3]=5; [2,4]=7; [3,4]=-7; [3,6]=7; }",
        )
        .unwrap();
        assert_eq!(entries.len(), 1);
        let e = &entries[0];
        assert_eq!(e.id, "1357C");
        match &e.algebra {
            Algebra::Rational(g) => {
                assert_eq!(g.bracket_count(), 7);
                assert_eq!(g.bracket(3, 4)[6], rat(-1));
            }
            _ => panic!("expected a plain algebra"),
        }
    }

    #[test]
    fn parse_empty_table() {
        let entries = parse("algebra \"abelian3\" dim 3 { }").unwrap();
        assert_eq!(entries[0].algebra, Algebra::Rational(LieAlgebra::abelian(3)));
    }

    #[test]
    fn parse_family_with_clauses() {
        let src = "family \"147E\" dim 7 param lambda exclude { 0, 1 } \
                   invariant \"(1 - lambda + lambda^2)^3 / (lambda^2 * (lambda - 1)^2)\" \
                   { [1,2]=4; [1,3]=-6; [1,5]=-7; [2,3]=5; [2,6]=lambda*7; [3,4]=(1-lambda)*7; }";
        let entries = parse(src).unwrap();
        let e = &entries[0];
        assert_eq!(e.excluded, BTreeSet::from([rat(0), rat(1)]));
        assert!(e.invariant.is_some());
        match &e.algebra {
            Algebra::Parametric(g) => {
                assert_eq!(g.bracket(2, 6)[6], UniPoly::lambda());
                assert_eq!(g.bracket(3, 4)[6], UniPoly::from_ints(&[1, -1]));
            }
            _ => panic!("expected a family"),
        }
        let inv = e.invariant.as_ref().unwrap();
        assert_eq!(inv.value(&rat(2)).unwrap(), ratio(27, 4));
    }

    #[test]
    fn parse_multi_target_bracket() {
        let entries =
            parse("family \"x\" dim 7 param t { [2,5]=-6+t*7; }").unwrap();
        match &entries[0].algebra {
            Algebra::Parametric(g) => {
                let v = g.bracket(2, 5);
                assert_eq!(v[5], UniPoly::from_ints(&[-1]));
                assert_eq!(v[6], UniPoly::lambda());
            }
            _ => panic!("expected a family"),
        }
    }

    #[test]
    fn parse_fractional_coefficient() {
        let entries = parse("algebra \"x\" dim 7 { [2,6]=1/2*7; [3,4]=1/2*7; }").unwrap();
        match &entries[0].algebra {
            Algebra::Rational(g) => assert_eq!(g.bracket(2, 6)[6], ratio(1, 2)),
            _ => panic!(),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = parse("algebra \"x\" dim 3 {\n  [2,1]=3;\n}").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("i < j"));

        let err = parse("algebra \"x\" dim 3 { [1,2]=3; [1,2]=3; }").unwrap_err();
        assert!(err.message.contains("duplicate bracket"));

        let err = parse("algebra \"x\" dim 3 { [1,5]=3; }").unwrap_err();
        assert!(err.message.contains("exceeds the dimension"));

        let err = parse("algebra \"x\" dim 3 { [1,2]=9; }").unwrap_err();
        assert!(err.message.contains("target index exceeds"));

        let err = parse("algebra \"x\" dim 3 { [1,2]==3; }").unwrap_err();
        assert_eq!((err.line, err.col > 0), (1, true));

        let err = parse("algebra \"x\" dim 3 { [1,2]=lambda*3; }").unwrap_err();
        assert!(err.message.contains("unknown identifier"));
    }

    #[test]
    fn label_digits() {
        assert_eq!(digit_label_dims("1357C"), Some(vec![1, 3, 5, 7]));
        assert_eq!(digit_label_dims("17"), Some(vec![1, 7]));
        assert_eq!(digit_label_dims("12457N2"), Some(vec![1, 2, 4, 5, 7]));
        assert_eq!(digit_label_dims("heis3"), None);
        assert_eq!(digit_label_dims("775"), None);
    }

    #[test]
    fn embedded_counts() {
        let entries = embedded_catalog();
        assert_eq!(entries.len(), 49);
        assert_eq!(entries.iter().filter(|e| e.algebra.dim() == 7).count(), 44);
        assert_eq!(entries.iter().filter(|e| e.algebra.dim() == 5).count(), 3);
        assert_eq!(entries.iter().filter(|e| e.algebra.dim() == 3).count(), 2);
        assert_eq!(
            entries.iter().filter(|e| e.algebra.is_parametric()).count(),
            9
        );
        // recorded as having an all-rational basis: the 35 plain
        // 7-dimensional entries plus the 5 low-dimensional ones
        assert_eq!(
            entries.iter().filter(|e| e.rational_basis_known).count(),
            40
        );
    }

    #[test]
    fn embedded_labels_match_series_digits() {
        for entry in embedded_catalog() {
            if entry.algebra.dim() == 7 {
                assert_eq!(
                    entry.expected_upper_dims,
                    digit_label_dims(&entry.id),
                    "entry {}",
                    entry.id
                );
            }
        }
    }

    #[test]
    fn embedded_entries_are_indecomposable() {
        for entry in embedded_catalog() {
            if entry.id == "abelian3" {
                assert_eq!(
                    entry.algebra.basis_aligned_decomposition(),
                    Some((vec![1], vec![2, 3]))
                );
            } else {
                assert_eq!(
                    entry.algebra.basis_aligned_decomposition(),
                    None,
                    "entry {}",
                    entry.id
                );
            }
        }
    }

    #[test]
    fn round_trip_through_the_printer() {
        let entries = embedded_catalog();
        let printed = render(&entries);
        let reparsed = parse(&printed).unwrap();
        assert_eq!(entries.len(), reparsed.len());
        for (a, b) in entries.iter().zip(&reparsed) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.algebra, b.algebra, "entry {}", a.id);
            assert_eq!(a.excluded, b.excluded, "entry {}", a.id);
            assert_eq!(a.invariant, b.invariant, "entry {}", a.id);
            assert_eq!(a.param_name, b.param_name, "entry {}", a.id);
        }
    }

    #[test]
    fn full_catalog_verifies_except_the_known_discrepancy() {
        let result = verify(&embedded_catalog());
        for entry in &result.entries {
            if entry.id == "12457L" {
                assert!(!entry.passed());
            } else {
                assert!(
                    entry.passed(),
                    "entry {} failed: {:?}",
                    entry.id,
                    entry.problems
                );
            }
        }
        assert_eq!((result.passed, result.failed), (48, 1));
    }

    /// The 12457L table is a genuine nilpotent Lie algebra with the series
    /// its label records, yet its generic contact polynomial vanishes
    /// identically: the recorded witness x6+x7 (like every other 1-form)
    /// gives a zero top form. The dataset keeps the table and the recorded
    /// witness as published, and verification reports the mismatch.
    #[test]
    fn entry_12457l_admits_no_contact_structure() {
        let entries = embedded_catalog();
        let entry = entries.iter().find(|e| e.id == "12457L").unwrap();
        let Algebra::Rational(g) = &entry.algebra else {
            panic!("12457L is a plain algebra");
        };
        assert!(g.is_lie_algebra());
        assert_eq!(g.central_series().upper_dims, vec![1, 2, 4, 5, 7]);
        let p = crate::contact::generic_contact_polynomial(g).unwrap();
        assert!(p.is_zero());
        let report = crate::contact::find_contact_form(g).unwrap();
        assert_eq!(report.verdict, Verdict::NoContact);
        // the recorded witness fails along with everything else
        let recorded = entry.expected_witness.as_ref().unwrap();
        assert!(Ring::is_zero(&contact_value(g, recorded).unwrap()));
    }

    #[test]
    fn verify_is_deterministic() {
        let entries = embedded_catalog();
        assert_eq!(verify(&entries), verify_sequential(&entries));
    }

    #[test]
    fn mutated_entry_is_flagged() {
        let mut entries = embedded_catalog();
        let entry = entries.iter_mut().find(|e| e.id == "1357C").unwrap();
        // drop the [3,6] bracket: Jacobi still holds but the recorded
        // series digits and contact data no longer match
        if let Algebra::Rational(g) = &entry.algebra {
            let kept: Vec<(usize, usize, usize, Rational)> = g
                .brackets()
                .filter(|&((i, j), _)| (i, j) != (3, 6))
                .flat_map(|((i, j), v)| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !Ring::is_zero(*c))
                        .map(move |(k, c)| (i, j, k + 1, c.clone()))
                        .collect::<Vec<_>>()
                })
                .collect();
            entry.algebra = Algebra::Rational(LieAlgebra::from_entries(7, &kept));
        }
        let result = verify(&entries);
        assert!(!result.all_passed());
        let failed = result.entries.iter().find(|e| e.id == "1357C").unwrap();
        assert!(failed.jacobi_ok);
        assert!(!failed.passed());
    }

    #[test]
    fn empty_entry_list() {
        let result = verify(&[]);
        assert_eq!(result.total(), 0);
        assert_eq!((result.passed, result.failed), (0, 0));
    }

    #[test]
    fn lambda_rules() {
        let rule = LambdaRule {
            excluded: BTreeSet::from([rat(1)]),
            lower_bound: Some((rat(0), false)),
        };
        assert!(rule.admits(&rat(0)));
        assert!(!rule.admits(&rat(1)));
        assert!(!rule.admits(&rat(-2)));
        assert_eq!(rule.to_string(), "lambda >= 0, lambda != 1");

        let strict = LambdaRule {
            excluded: BTreeSet::new(),
            lower_bound: Some((rat(1), true)),
        };
        assert!(!strict.admits(&rat(1)));
        assert!(strict.admits(&ratio(3, 2)));
        assert_eq!(strict.to_string(), "lambda > 1");
        assert_eq!(LambdaRule::default().to_string(), "none");
    }
}
