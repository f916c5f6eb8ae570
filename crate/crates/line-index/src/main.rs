//! Command-line entry point: parse the input surface, run the pipeline,
//! and emit a text or JSON report, optionally with a DOT resolution graph.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;

use line_index::closed_forms::{
    catalog, tpqr_analysis, xii_analysis, CatalogEntry, WeightedHomogeneousSpec,
    WhFamily,
};
use line_index::newton::Exponent;
use line_index::report::{to_json, to_text, Report};
use line_index::{
    line_index_with_options, parse_polynomial, summarize, Error, LatticePolynomial,
    Options,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact line-index computation for surface singularities with
/// non-degenerate Newton boundary.
#[derive(Parser, Debug)]
#[command(name = "line-index", disable_help_subcommand = true)]
struct Cli {
    /// Inline polynomial in x, y, z, e.g. "x*y + y^4 + z^2".
    poly: Option<String>,

    /// File with a structured JSON term list:
    /// [{"exp": [a, b, c], "coef": "num/den"}, ...].
    #[arg(long, conflicts_with = "poly")]
    input: Option<PathBuf>,

    /// Catalog surface: family name followed by its integer parameters.
    /// Families: xi xii xiii xiv xv xvi xvii xviii tpqr.
    #[arg(long, num_args = 2..=7, value_name = "FAMILY PARAMS",
          conflicts_with_all = ["poly", "input"])]
    catalog: Option<Vec<String>>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the resolution graph in DOT format to this path.
    #[arg(long)]
    dot: Option<PathBuf>,

    /// Scan-only oracle mode: skip the congruence fast path and all
    /// closed-form cross-checks.
    #[arg(long)]
    oracle: bool,

    /// Print progress information to stderr.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Deserialize)]
struct TermIn {
    exp: [i64; 3],
    coef: String,
}

fn parse_coef(src: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational coefficient {src:?}"));
    match src.split_once('/') {
        Some((n, d)) => {
            let num = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let den = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(src.trim()).map_err(|_| bad())?,
        )),
    }
}

fn read_structured(path: &PathBuf) -> Result<LatticePolynomial, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    let terms: Vec<TermIn> = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("invalid term list: {e}")))?;
    let parsed: Result<Vec<(Exponent, BigRational)>, Error> = terms
        .iter()
        .map(|t| Ok((t.exp, parse_coef(&t.coef)?)))
        .collect();
    LatticePolynomial::from_terms(parsed?)
}

struct Prepared {
    f: LatticePolynomial,
    echo: String,
    extra_notes: Vec<String>,
    extra_warnings: Vec<String>,
    /// Set for the catalog family whose boundary has no compact 2-face.
    known_rho_only: Option<BigInt>,
}

fn parse_params(args: &[String], n: usize, family: &str) -> Result<Vec<i64>, Error> {
    if args.len() != n {
        return Err(Error::InvalidParameters(format!(
            "family {family} takes {n} integer parameters, got {}",
            args.len()
        )));
    }
    args.iter()
        .map(|s| {
            i64::from_str(s).map_err(|_| {
                Error::InvalidParameters(format!("invalid integer parameter {s:?}"))
            })
        })
        .collect()
}

fn catalog_entry(args: &[String]) -> Result<(CatalogEntry, String, Vec<String>), Error> {
    let family = args[0].to_lowercase();
    let params = &args[1..];
    let spec = match family.as_str() {
        "xi" | "xii" | "xiii" | "xiv" | "xv" => {
            let p = parse_params(params, 3, &family)?;
            let fam = match family.as_str() {
                "xi" => WhFamily::I,
                "xii" => WhFamily::II,
                "xiii" => WhFamily::III,
                "xiv" => WhFamily::IV,
                _ => WhFamily::V,
            };
            WeightedHomogeneousSpec::simple(fam, p[0], p[1], p[2])
        }
        "xvi" => {
            let p = parse_params(params, 1, &family)?;
            WeightedHomogeneousSpec::simple(WhFamily::VI, 2, 2, p[0])
        }
        "xvii" | "xviii" => {
            if params.len() != 5 && params.len() != 6 {
                return Err(Error::InvalidParameters(format!(
                    "family {family} takes a b c c1 c2 [t]"
                )));
            }
            let p = parse_params(&params[..5], 5, &family)?;
            let t = match params.get(5) {
                Some(src) => parse_coef(src)
                    .map_err(|_| Error::InvalidParameters(format!("invalid t {src:?}")))?,
                None => BigRational::one(),
            };
            WeightedHomogeneousSpec {
                family: if family == "xvii" { WhFamily::VII } else { WhFamily::VIII },
                a: p[0],
                b: p[1],
                c: p[2],
                c1: Some(p[3]),
                c2: Some(p[4]),
                t: Some(t),
            }
        }
        other => {
            return Err(Error::InvalidParameters(format!(
                "unknown catalog family {other:?}"
            )));
        }
    };
    let entry = catalog(&spec)?;
    let echo = format!("catalog {} {}", family, params.join(" "));
    let mut notes = Vec::new();
    if let Some(center) = &entry.center {
        notes.push(format!("catalog prediction: central covector {center}"));
    }
    Ok((entry, echo, notes))
}

fn prepare(cli: &Cli) -> Result<Prepared, Error> {
    if let Some(src) = &cli.poly {
        return Ok(Prepared {
            f: parse_polynomial(src)?,
            echo: src.clone(),
            extra_notes: Vec::new(),
            extra_warnings: Vec::new(),
            known_rho_only: None,
        });
    }
    if let Some(path) = &cli.input {
        return Ok(Prepared {
            f: read_structured(path)?,
            echo: format!("file {}", path.display()),
            extra_notes: Vec::new(),
            extra_warnings: Vec::new(),
            known_rho_only: None,
        });
    }
    let args = cli
        .catalog
        .as_ref()
        .ok_or_else(|| Error::Parse("no input given: pass a polynomial, --input or --catalog".into()))?;
    if args[0].to_lowercase() == "tpqr" {
        let p = parse_params(&args[1..], 3, "tpqr")?;
        let mut terms: Vec<(Exponent, BigRational)> = vec![
            ([p[0], 0, 0], BigRational::one()),
            ([0, p[1], 0], BigRational::one()),
            ([0, 0, p[2]], BigRational::one()),
            ([1, 1, 1], BigRational::one()),
        ];
        terms.sort_by_key(|t| t.0);
        let f = LatticePolynomial::from_terms(terms)?;
        let mut warnings = Vec::new();
        if !cli.oracle {
            let analysis = tpqr_analysis(p[0], p[1], p[2])?;
            warnings.extend(analysis.warnings);
        }
        return Ok(Prepared {
            f,
            echo: format!("catalog tpqr {} {} {}", p[0], p[1], p[2]),
            extra_notes: Vec::new(),
            extra_warnings: warnings,
            known_rho_only: None,
        });
    }
    let (entry, echo, mut notes) = catalog_entry(args)?;
    let mut warnings = Vec::new();
    if entry.center.is_none() {
        if let Some(rho) = &entry.known_rho {
            notes.push(format!(
                "the Newton boundary has no compact 2-face; the line index \
                 {rho} is known externally"
            ));
            return Ok(Prepared {
                f: entry.polynomial,
                echo,
                extra_notes: notes,
                extra_warnings: warnings,
                known_rho_only: Some(rho.clone()),
            });
        }
    }
    if !cli.oracle && args[0].to_lowercase() == "xii" {
        let p = parse_params(&args[1..], 3, "xii")?;
        let analysis = xii_analysis(p[0], p[1], p[2])?;
        warnings.extend(analysis.warnings);
    }
    Ok(Prepared {
        f: entry.polynomial,
        echo,
        extra_notes: notes,
        extra_warnings: warnings,
        known_rho_only: None,
    })
}

fn run(cli: &Cli) -> Result<(), Error> {
    let prepared = prepare(cli)?;
    if cli.verbose {
        eprintln!("input: {}", prepared.echo);
    }
    if let Some(rho) = &prepared.known_rho_only {
        match cli.format {
            Format::Text => {
                println!("input: {}", prepared.echo);
                for n in &prepared.extra_notes {
                    println!("note: {n}");
                }
                println!("total rho = {rho}");
            }
            Format::Json => {
                let doc = serde_json::json!({
                    "schema": 1,
                    "input": prepared.echo,
                    "total": rho.to_string(),
                    "notes": prepared.extra_notes,
                });
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            }
        }
        return Ok(());
    }
    let opts = Options { cross_check: !cli.oracle };
    let mut index = line_index_with_options(&prepared.f, &opts)?;
    index.notes.extend(prepared.extra_notes);
    index.warnings.extend(prepared.extra_warnings);
    let resolution = summarize(&prepared.f, &index)?;
    let terms: Vec<(Exponent, BigRational)> =
        prepared.f.terms().map(|(e, c)| (*e, c.clone())).collect();
    let report = Report { input_echo: prepared.echo, index, resolution };
    if let Some(path) = &cli.dot {
        let dot = line_index::export_graph(&report.index, &report.resolution);
        std::fs::write(path, dot)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
        if cli.verbose {
            eprintln!("wrote resolution graph to {}", path.display());
        }
    }
    match cli.format {
        Format::Text => print!("{}", to_text(&report, &terms)),
        Format::Json => print!("{}", to_json(&report, &terms)),
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::EmptyPolynomial
        | Error::TooFewTerms
        | Error::InvalidParameters(_) => 2,
        Error::NoCompactFacet => 3,
        Error::NotIsolated(_) => 4,
        _ => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
