//! Command-line front end: analyze algebra definition files, verify the
//! bundled catalog, and print generic contact polynomials.
//!
//! Exit codes: 0 success, 2 usage or parse failure, 3 Jacobi failure,
//! 4 catalog verification failure.

mod report;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcontact::catalog::{self, CatalogEntry};
use nilcontact::contact::{family_analysis, find_contact_form, generic_contact_polynomial};
use nilcontact::liealg::Algebra;
use nilcontact::scalars::Rational;
use report::EntryReport;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "nilcontact", version, about = "Contact structures on nilpotent Lie algebras, decided in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze every entry of a definition file
    Check(CheckArgs),
    /// Operations on the bundled catalog
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Print the generic contact polynomial of one entry of a file
    GenericPoly {
        file: PathBuf,
        /// Entry id, e.g. "1357C"
        id: String,
        /// Substitute this value for the family parameter first
        #[arg(long, value_parser = parse_rational)]
        lambda: Option<Rational>,
        #[command(flatten)]
        format: FormatArgs,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Re-derive and check every recorded property of the catalog
    Verify(FormatArgs),
}

#[derive(Args)]
struct FormatArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    file: PathBuf,
    /// Substitute this value for the family parameter, e.g. `--lambda 3/2`
    #[arg(long, value_parser = parse_rational)]
    lambda: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|e| format!("not a rational number: {e}"))
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Catalog {
            command: CatalogCommand::Verify(args),
        } => cmd_catalog_verify(args),
        Command::GenericPoly {
            file,
            id,
            lambda,
            format,
        } => cmd_generic_poly(&file, &id, lambda.as_ref(), format),
    }
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_entries(file: &Path) -> anyhow::Result<(Vec<CatalogEntry>, String)> {
    let text = std::fs::read_to_string(file)
        .with_context(|| format!("cannot read {}", file.display()))?;
    let digest = format!("sha256:{:x}", Sha256::digest(text.as_bytes()));
    let entries =
        catalog::parse(&text).map_err(|e| anyhow!("{}: {e}", file.display()))?;
    Ok((entries, digest))
}

fn analyze_entry(entry: &CatalogEntry, lambda: Option<&Rational>) -> EntryReport {
    let dim = entry.algebra.dim();
    let parametric = entry.algebra.is_parametric();
    let defects = entry.algebra.jacobi_defect_display();
    let jacobi_ok = defects.is_empty();

    let mut out = EntryReport {
        id: entry.id.clone(),
        dim,
        parametric,
        jacobi_ok,
        defects,
        specialized_at: if parametric { lambda.cloned() } else { None },
        series: None,
        rational_basis: "true",
        contact: None,
    };
    if !jacobi_ok {
        return out;
    }

    out.rational_basis = if entry.algebra.rational_in_given_basis(lambda) {
        "true"
    } else {
        "depends-on-lambda"
    };
    out.series = entry.algebra.central_series(lambda).ok();

    if dim % 2 == 1 {
        let report = match (&entry.algebra, lambda) {
            (Algebra::Rational(g), _) => find_contact_form(g),
            (Algebra::Parametric(g), Some(l)) => find_contact_form(&g.specialize(l)),
            (Algebra::Parametric(g), None) => family_analysis(g),
        };
        out.contact = report.ok();
    }
    out
}

fn cmd_check(args: CheckArgs) -> anyhow::Result<i32> {
    let (entries, digest) = load_entries(&args.file)?;
    let reports = nilcontact::par::par_map(&entries, |e| analyze_entry(e, args.lambda.as_ref()));
    let text = match args.format {
        Format::Text => report::check_text(&reports),
        Format::Csv => report::check_csv(&reports),
        Format::Json => {
            let values: Vec<_> = reports.iter().map(report::entry_json).collect();
            report::to_pretty(&report::envelope(
                &args.file.display().to_string(),
                &digest,
                values,
            ))
        }
    };
    emit(args.output.as_deref(), &text)?;
    if reports.iter().any(|r| !r.jacobi_ok) {
        return Ok(3);
    }
    Ok(0)
}

fn catalog_entries() -> anyhow::Result<Vec<CatalogEntry>> {
    match std::env::var_os("NILCONTACT_CATALOG_DIR") {
        Some(dir) => catalog::load_catalog_dir(Path::new(&dir))
            .with_context(|| format!("loading catalog from {}", Path::new(&dir).display())),
        None => Ok(catalog::embedded_catalog()),
    }
}

fn cmd_catalog_verify(args: FormatArgs) -> anyhow::Result<i32> {
    let entries = catalog_entries()?;
    let result = catalog::verify(&entries);
    let text = match args.format {
        Format::Text => report::verify_text(&result),
        Format::Csv => report::verify_csv(&result),
        Format::Json => report::to_pretty(&report::verify_json(&result)),
    };
    emit(args.output.as_deref(), &text)?;
    Ok(if result.all_passed() { 0 } else { 4 })
}

fn cmd_generic_poly(
    file: &Path,
    id: &str,
    lambda: Option<&Rational>,
    format: FormatArgs,
) -> anyhow::Result<i32> {
    let (entries, digest) = load_entries(file)?;
    let entry = entries
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| anyhow!("no entry \"{id}\" in {}", file.display()))?;
    let poly = match &entry.algebra {
        Algebra::Rational(g) => generic_contact_polynomial(g),
        Algebra::Parametric(g) => generic_contact_polynomial(g),
    };
    let poly = match poly {
        Ok(p) => match lambda {
            Some(l) => p.eval_lambda(l),
            None => p,
        },
        Err(nilcontact::contact::ContactError::Jacobi(triples)) => {
            eprintln!("error: Jacobi identity fails at basis triples {triples:?}");
            return Ok(3);
        }
        Err(e) => return Err(anyhow!("{e}")),
    };
    let text = match format.format {
        Format::Text => format!("{poly}\n"),
        Format::Csv => report::multipoly_csv(&poly),
        Format::Json => report::to_pretty(&serde_json::json!({
            "tool": "nilcontact",
            "version": env!("CARGO_PKG_VERSION"),
            "input": file.display().to_string(),
            "input_digest": digest,
            "entry": id,
            "lambda": lambda.map(|l| serde_json::json!(report::rational_str(l))).unwrap_or(serde_json::Value::Null),
            "polynomial": report::multipoly_json(&poly),
            "polynomial_text": poly.to_string(),
        })),
    };
    emit(format.output.as_deref(), &text)?;
    Ok(0)
}
