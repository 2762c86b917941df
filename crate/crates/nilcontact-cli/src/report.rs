//! Report structures and the text / json / csv renderers.
//!
//! Rationals serialize as strings `"p/q"`, never as floats; polynomials in
//! the parameter serialize as coefficient arrays `[c0, c1, ..]` of rational
//! strings. JSON objects render with sorted keys, so emitted output
//! round-trips byte-identically through a parse/re-serialize cycle.

use nilcontact::catalog::{EntryResult, VerificationResult};
use nilcontact::contact::{ContactReport, Verdict};
use nilcontact::liealg::{Nilpotency, SeriesReport};
use nilcontact::scalars::{MultiPoly, Rational, Ring, UniPoly};
use serde_json::{json, Value};

/// Everything `check` derives for one entry.
pub struct EntryReport {
    pub id: String,
    pub dim: usize,
    pub parametric: bool,
    pub jacobi_ok: bool,
    pub defects: Vec<((usize, usize, usize), String)>,
    pub specialized_at: Option<Rational>,
    pub series: Option<SeriesReport>,
    /// `true` / `false` / `depends-on-lambda`
    pub rational_basis: &'static str,
    pub contact: Option<ContactReport>,
}

pub fn rational_str(r: &Rational) -> String {
    r.to_string()
}

pub fn unipoly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!(rational_str(c))).collect())
}

pub fn witness_json(w: &[Rational]) -> Value {
    Value::Array(w.iter().map(|c| json!(rational_str(c))).collect())
}

/// Terms as `{exponents, coefficient}` records, in lexicographic exponent
/// order.
pub fn multipoly_json(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(exps, coeff)| {
                json!({
                    "exponents": exps,
                    "coefficient": unipoly_json(coeff),
                })
            })
            .collect(),
    )
}

pub fn multipoly_csv(p: &MultiPoly) -> String {
    let mut out = String::from("exponents,coefficient\n");
    for (exps, coeff) in p.terms() {
        let e: Vec<String> = exps.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!(
            "{},{}\n",
            csv_field(&e.join(" ")),
            csv_field(&coeff.to_string())
        ));
    }
    out
}

/// Compact rendering of a 1-form coefficient vector, e.g. `x7` or `x6+x7`.
pub fn witness_form(w: &[Rational]) -> String {
    let mut out = String::new();
    for (idx, c) in w.iter().enumerate() {
        if Ring::is_zero(c) {
            continue;
        }
        let body = if c == &Rational::from_integer(1.into()) {
            format!("x{}", idx + 1)
        } else if c == &Rational::from_integer((-1).into()) {
            format!("-x{}", idx + 1)
        } else {
            format!("{}*x{}", c, idx + 1)
        };
        if out.is_empty() {
            out.push_str(&body);
        } else if let Some(rest) = body.strip_prefix('-') {
            out.push('-');
            out.push_str(rest);
        } else {
            out.push('+');
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn dims_str(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn series_json(s: &SeriesReport) -> Value {
    json!({
        "upper": s.upper_dims,
        "lower": s.lower_dims,
        "nilpotency_index": match s.nilpotency {
            Nilpotency::Nilpotent(k) => json!(k),
            Nilpotency::NotNilpotent => Value::Null,
        },
    })
}

fn contact_json(c: &ContactReport) -> Value {
    json!({
        "verdict": c.verdict.to_string(),
        "witness": c.witness.as_ref().map(|w| witness_json(w)).unwrap_or(Value::Null),
        "witness_form": c.witness.as_ref().map(|w| json!(witness_form(w))).unwrap_or(Value::Null),
        "top_coefficient": unipoly_json(&c.top_coefficient),
        "exceptional_lambda": c.exceptional.as_ref().map(|e| json!({
            "roots": e.roots.iter().map(rational_str).collect::<Vec<_>>(),
            "residual": unipoly_json(&e.residual),
        })).unwrap_or(Value::Null),
    })
}

pub fn entry_json(e: &EntryReport) -> Value {
    json!({
        "id": e.id,
        "dim": e.dim,
        "parametric": e.parametric,
        "jacobi": {
            "ok": e.jacobi_ok,
            "defects": e.defects.iter().map(|((i, j, k), v)| json!({
                "triple": [i, j, k],
                "defect": v,
            })).collect::<Vec<_>>(),
        },
        "specialized_at": e.specialized_at.as_ref().map(|l| json!(rational_str(l))).unwrap_or(Value::Null),
        "series": e.series.as_ref().map(series_json).unwrap_or(Value::Null),
        "rational_in_given_basis": e.rational_basis,
        "contact": e.contact.as_ref().map(contact_json).unwrap_or(Value::Null),
    })
}

/// Wraps per-entry values in the output envelope.
pub fn envelope(input: &str, digest: &str, entries: Vec<Value>) -> Value {
    json!({
        "tool": "nilcontact",
        "version": env!("CARGO_PKG_VERSION"),
        "input": input,
        "input_digest": digest,
        "entries": entries,
    })
}

pub fn to_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn check_text(entries: &[EntryReport]) -> String {
    let mut out = String::new();
    for e in entries {
        out.push_str(&format!(
            "entry {} (dim {}{})\n",
            e.id,
            e.dim,
            if e.parametric { ", param lambda" } else { "" }
        ));
        if e.jacobi_ok {
            out.push_str("  jacobi: ok\n");
        } else {
            out.push_str("  jacobi: FAILED\n");
            for ((i, j, k), v) in &e.defects {
                out.push_str(&format!("    defect ({i},{j},{k}): {v}\n"));
            }
        }
        if let Some(l) = &e.specialized_at {
            out.push_str(&format!("  specialized at lambda = {l}\n"));
        }
        match &e.series {
            Some(s) => {
                let nil = match s.nilpotency {
                    Nilpotency::Nilpotent(k) => format!("nilpotency index {k}"),
                    Nilpotency::NotNilpotent => "not nilpotent".to_string(),
                };
                out.push_str(&format!(
                    "  upper central series: {} ({nil})\n  lower central series: {}\n",
                    dims_str(&s.upper_dims),
                    dims_str(&s.lower_dims),
                ));
            }
            None if e.jacobi_ok && e.parametric => {
                out.push_str("  upper central series: n/a (specialize lambda first)\n");
            }
            None => {}
        }
        if e.jacobi_ok {
            out.push_str(&format!(
                "  rational in given basis: {}\n",
                e.rational_basis
            ));
        }
        match &e.contact {
            Some(c) => {
                out.push_str(&format!("  contact: {}\n", c.verdict));
                if let Some(w) = &c.witness {
                    out.push_str(&format!("  witness: {}\n", witness_form(w)));
                    out.push_str(&format!("  top coefficient: {}\n", c.top_coefficient));
                }
                if let Some(exc) = &c.exceptional {
                    let roots: Vec<String> = exc.roots.iter().map(rational_str).collect();
                    out.push_str(&format!(
                        "  exceptional lambda: {{ {} }}, residual: {}\n",
                        roots.join(", "),
                        exc.residual
                    ));
                }
            }
            None if e.jacobi_ok && e.dim % 2 == 0 => {
                out.push_str("  contact: n/a (even dimension)\n");
            }
            None => {}
        }
        out.push('\n');
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_header() -> &'static str {
    "id,jacobi,upper_dims,verdict,witness,top_coeff\n"
}

pub fn csv_row(
    id: &str,
    jacobi_ok: bool,
    upper: Option<&[usize]>,
    verdict: Option<Verdict>,
    witness: Option<&[Rational]>,
    top: Option<&UniPoly>,
) -> String {
    format!(
        "{},{},{},{},{},{}\n",
        csv_field(id),
        if jacobi_ok { "ok" } else { "fail" },
        csv_field(&upper.map(dims_str).unwrap_or_default()),
        verdict.map(|v| v.to_string()).unwrap_or_default(),
        csv_field(&witness.map(witness_form).unwrap_or_default()),
        csv_field(&top.map(|p| p.to_string()).unwrap_or_default()),
    )
}

pub fn check_csv(entries: &[EntryReport]) -> String {
    let mut out = String::from(csv_header());
    for e in entries {
        out.push_str(&csv_row(
            &e.id,
            e.jacobi_ok,
            e.series.as_ref().map(|s| s.upper_dims.as_slice()),
            e.contact.as_ref().map(|c| c.verdict),
            e.contact.as_ref().and_then(|c| c.witness.as_deref()),
            e.contact.as_ref().map(|c| &c.top_coefficient),
        ));
    }
    out
}

pub fn verify_text(result: &VerificationResult) -> String {
    let mut out = String::new();
    for e in &result.entries {
        if e.passed() {
            out.push_str(&format!("ok   {}: {}\n", e.id, verify_summary(e)));
        } else {
            out.push_str(&format!(
                "FAIL {}: {}\n",
                e.id,
                e.problems.join("; ")
            ));
        }
    }
    out.push_str(&format!(
        "{}/{} entries pass\n",
        result.passed,
        result.total()
    ));
    out
}

fn verify_summary(e: &EntryResult) -> String {
    let mut parts = Vec::new();
    if let Some(first) = e.series_checks.first() {
        let lambdas: Vec<String> = e
            .series_checks
            .iter()
            .filter_map(|c| c.lambda.as_ref().map(rational_str))
            .collect();
        if lambdas.is_empty() {
            parts.push(format!("upper {}", dims_str(&first.upper_dims)));
        } else {
            parts.push(format!(
                "upper {} at lambda = {}",
                dims_str(&first.upper_dims),
                lambdas.join(", ")
            ));
        }
    }
    if let Some(v) = e.verdict {
        parts.push(v.to_string());
    }
    if let Some(w) = &e.witness {
        parts.push(format!("witness {}", witness_form(w)));
        if let Some(t) = &e.top_coefficient {
            parts.push(format!("top {t}"));
        }
    }
    if let Some(exc) = &e.exceptional {
        if !exc.roots.is_empty() || !exc.residual.is_constant() {
            let roots: Vec<String> = exc.roots.iter().map(rational_str).collect();
            parts.push(format!("exceptional {{ {} }}", roots.join(", ")));
        }
    }
    parts.join("; ")
}

pub fn verify_json(result: &VerificationResult) -> Value {
    let entries: Vec<Value> = result
        .entries
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "dim": e.dim,
                "parametric": e.parametric,
                "passed": e.passed(),
                "problems": e.problems,
                "jacobi_ok": e.jacobi_ok,
                "series": e.series_checks.iter().map(|c| json!({
                    "lambda": c.lambda.as_ref().map(|l| json!(rational_str(l))).unwrap_or(Value::Null),
                    "upper_dims": c.upper_dims,
                    "matches_recorded": c.ok,
                })).collect::<Vec<_>>(),
                "expected_upper_dims": e.expected_upper_dims,
                "verdict": e.verdict.map(|v| json!(v.to_string())).unwrap_or(Value::Null),
                "witness": e.witness.as_ref().map(|w| witness_json(w)).unwrap_or(Value::Null),
                "witness_form": e.witness.as_ref().map(|w| json!(witness_form(w))).unwrap_or(Value::Null),
                "top_coefficient": e.top_coefficient.as_ref().map(unipoly_json).unwrap_or(Value::Null),
                "exceptional_lambda": e.exceptional.as_ref().map(|exc| json!({
                    "roots": exc.roots.iter().map(rational_str).collect::<Vec<_>>(),
                    "residual": unipoly_json(&exc.residual),
                })).unwrap_or(Value::Null),
                "exceptional_matches_recorded": e.exceptional_expected_ok,
                "exceptional_within_constraint": e.exceptional_consistent,
            })
        })
        .collect();
    json!({
        "tool": "nilcontact",
        "version": env!("CARGO_PKG_VERSION"),
        "passed": result.passed,
        "failed": result.failed,
        "total": result.total(),
        "entries": entries,
    })
}

pub fn verify_csv(result: &VerificationResult) -> String {
    let mut out = String::from(csv_header());
    for e in &result.entries {
        out.push_str(&csv_row(
            &e.id,
            e.jacobi_ok,
            e.series_checks.first().map(|c| c.upper_dims.as_slice()),
            e.verdict,
            e.witness.as_deref(),
            e.top_coefficient.as_ref(),
        ));
    }
    out
}
