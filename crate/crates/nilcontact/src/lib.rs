//! Exact-arithmetic engine for deciding whether a nilpotent Lie algebra
//! admits a contact structure.
//!
//! Everything runs over exact scalar rings (arbitrary-precision rationals
//! and polynomial extensions), since contact existence is a zero/nonzero
//! question on the top coefficient of `eta ^ (d eta)^n`. The crate covers:
//!
//! - the graded exterior algebra over an ordered basis ([`exterior`]),
//! - Lie algebras by structure constants with Jacobi checking, the
//!   Chevalley-Eilenberg differential and central series ([`liealg`]),
//! - the contact decision procedure, both pointwise and across
//!   one-parameter families ([`contact`]),
//! - a bundled classification catalog with a text format, parser and
//!   verification harness ([`catalog`]).
//!
//! Catalog-wide runs fan out per entry through rayon when the default
//! `parallel` feature is enabled; disabling it yields a dependency-lean
//! sequential build with identical results.

pub mod catalog;
pub mod contact;
pub mod exterior;
pub mod liealg;
mod linalg;
pub mod par;
pub mod scalars;

pub use catalog::{embedded_catalog, verify, CatalogEntry, VerificationResult};
pub use contact::{
    contact_value, family_analysis, find_contact_form, generic_contact_polynomial,
    ContactReport, FamilyInvariant, Verdict,
};
pub use exterior::{Blade, ExteriorElement};
pub use liealg::{Algebra, LieAlgebra, SeriesReport};
pub use scalars::{MultiPoly, Rational, Ring, UniPoly};
