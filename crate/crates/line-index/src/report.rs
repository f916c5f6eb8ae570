//! Report assembly: a versioned JSON document and a text rendering.
//!
//! JSON output is deterministic: field order is fixed by the struct
//! definitions, collections are emitted in the canonical orders chosen by
//! the pipeline, and all big integers and rationals are encoded as decimal
//! strings so the encoding never depends on platform integer widths.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::lattice::Covector;
use crate::linedex::{Finding, LineIndex, Residual};
use crate::newton::Exponent;
use crate::resolution::{ResolutionSummary, Verdict};

/// A fully assembled run result, ready for rendering.
#[derive(Clone, Debug)]
pub struct Report {
    /// Human-readable echo of the input source.
    pub input_echo: String,
    pub index: LineIndex,
    pub resolution: ResolutionSummary,
}

fn cov(c: &Covector) -> [String; 3] {
    [c.coord(0).to_string(), c.coord(1).to_string(), c.coord(2).to_string()]
}

fn rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize)]
struct TermJson {
    exp: [i64; 3],
    coef: String,
}

#[derive(Serialize)]
struct FacetJson {
    normal: [String; 3],
    value: String,
    vertices: Vec<[i64; 3]>,
    normally_smooth: bool,
    rational: bool,
    genus: String,
    arms: u64,
}

#[derive(Serialize)]
struct ChainCovectorJson {
    covector: [String; 3],
    alpha: String,
    beta: String,
    self_intersection: String,
}

#[derive(Serialize)]
struct NsJson {
    covector: [String; 3],
    coord: usize,
    alpha: String,
    beta: String,
}

#[derive(Serialize)]
struct ConeJson {
    p: [String; 3],
    q: [String; 3],
    det: String,
    edge: [[i64; 3]; 2],
    r: i64,
    components: u64,
    chain: Vec<ChainCovectorJson>,
    continued_fraction: Vec<String>,
    normally_smooth: Vec<NsJson>,
    rho: u64,
}

#[derive(Serialize)]
struct ConeTermJson {
    p: [String; 3],
    q: [String; 3],
    weight: u64,
    rho: u64,
}

#[derive(Serialize)]
struct RhoJson {
    facet_ns: Vec<[String; 3]>,
    facet_term: u64,
    cone_terms: Vec<ConeTermJson>,
    total: String,
}

#[derive(Serialize)]
struct VerdictJson {
    minimal: bool,
    reason: Option<String>,
}

#[derive(Serialize)]
struct FindingJson {
    kind: String,
    axis: Option<usize>,
    section: Option<usize>,
    normal: Option<[String; 3]>,
    q: Option<[String; 3]>,
    covector: Option<[String; 3]>,
}

#[derive(Serialize)]
struct ResidualJson {
    coord: usize,
    kind: String,
    roots: Vec<String>,
    reason: Option<String>,
}

#[derive(Serialize)]
struct LineLeadJson {
    covector: [String; 3],
    face_terms: Vec<TermJson>,
    residuals: Vec<ResidualJson>,
}

#[derive(Serialize)]
struct DocumentJson {
    schema: u32,
    input: String,
    terms: Vec<TermJson>,
    facets: Vec<FacetJson>,
    cones: Vec<ConeJson>,
    rho: RhoJson,
    verdict: VerdictJson,
    obvious_lines: Vec<FindingJson>,
    line_leads: Vec<LineLeadJson>,
    notes: Vec<String>,
    warnings: Vec<String>,
}

fn finding_json(f: &Finding) -> FindingJson {
    match f {
        Finding::AxisLine { axis, q, q1 } => FindingJson {
            kind: "axis_line".into(),
            axis: Some(*axis),
            section: None,
            normal: None,
            q: Some(cov(q)),
            covector: Some(cov(q1)),
        },
        Finding::CoordinateOneFacet { normal } => FindingJson {
            kind: "coordinate_one_facet".into(),
            axis: None,
            section: None,
            normal: Some(cov(normal)),
            q: None,
            covector: None,
        },
        Finding::HomogeneousSection { section, normal, covector } => FindingJson {
            kind: "homogeneous_section".into(),
            axis: None,
            section: Some(*section),
            normal: Some(cov(normal)),
            q: None,
            covector: Some(cov(covector)),
        },
    }
}

fn residual_json(coord: usize, r: &Residual) -> ResidualJson {
    match r {
        Residual::Roots(roots) => ResidualJson {
            coord,
            kind: "roots".into(),
            roots: roots.iter().map(rat).collect(),
            reason: None,
        },
        Residual::IdenticallyZero => ResidualJson {
            coord,
            kind: "identically_zero".into(),
            roots: Vec::new(),
            reason: None,
        },
        Residual::Skipped(reason) => ResidualJson {
            coord,
            kind: "skipped".into(),
            roots: Vec::new(),
            reason: Some(reason.clone()),
        },
    }
}

fn term_json(exp: &Exponent, coef: &BigRational) -> TermJson {
    TermJson { exp: *exp, coef: rat(coef) }
}

fn document(report: &Report, terms: &[(Exponent, BigRational)]) -> DocumentJson {
    let index = &report.index;
    let res = &report.resolution;
    let facets = index
        .facets
        .iter()
        .map(|f| {
            let summary = res
                .facets
                .iter()
                .find(|s| s.normal == f.normal)
                .expect("facet present in resolution summary");
            FacetJson {
                normal: cov(&f.normal),
                value: f.value.to_string(),
                vertices: crate::resolution::facet_vertices(f),
                normally_smooth: f.normal.has_coordinate_one(),
                rational: summary.rational,
                genus: summary.genus.to_string(),
                arms: summary.arms,
            }
        })
        .collect();
    let cones = index
        .cones
        .iter()
        .map(|c| {
            let components = (c.r + 1) as u64;
            ConeJson {
                p: cov(&c.p),
                q: cov(&c.q),
                det: c.d.to_string(),
                edge: [c.edge.a, c.edge.b],
                r: c.r,
                components,
                chain: c
                    .chain
                    .interior
                    .iter()
                    .zip(&c.chain.cf_entries)
                    .map(|(entry, m)| ChainCovectorJson {
                        covector: cov(&entry.covector),
                        alpha: entry.alpha.to_string(),
                        beta: entry.beta.to_string(),
                        self_intersection: (-m).to_string(),
                    })
                    .collect(),
                continued_fraction: c
                    .chain
                    .cf_entries
                    .iter()
                    .map(BigInt::to_string)
                    .collect(),
                normally_smooth: c
                    .ns
                    .iter()
                    .map(|s| NsJson {
                        covector: cov(&s.covector),
                        coord: s.coord,
                        alpha: s.alpha.to_string(),
                        beta: s.beta.to_string(),
                    })
                    .collect(),
                rho: c.rho,
            }
        })
        .collect();
    let rho = RhoJson {
        facet_ns: index.facet_ns.iter().map(cov).collect(),
        facet_term: index.facet_ns.len() as u64,
        cone_terms: index
            .cones
            .iter()
            .filter(|c| c.rho > 0)
            .map(|c| ConeTermJson {
                p: cov(&c.p),
                q: cov(&c.q),
                weight: (c.r + 1) as u64,
                rho: c.rho,
            })
            .collect(),
        total: index.total.to_string(),
    };
    let verdict = match &res.verdict {
        Verdict::Minimal => VerdictJson { minimal: true, reason: None },
        Verdict::Indeterminate(reason) => {
            VerdictJson { minimal: false, reason: Some(reason.clone()) }
        }
    };
    DocumentJson {
        schema: 1,
        input: report.input_echo.clone(),
        terms: terms.iter().map(|(e, c)| term_json(e, c)).collect(),
        facets,
        cones,
        rho,
        verdict,
        obvious_lines: index.findings.iter().map(finding_json).collect(),
        line_leads: index
            .line_leads
            .iter()
            .map(|l| LineLeadJson {
                covector: cov(&l.covector),
                face_terms: l
                    .face_terms
                    .iter()
                    .map(|(e, c)| term_json(e, c))
                    .collect(),
                residuals: l
                    .residuals
                    .iter()
                    .map(|(coord, r)| residual_json(*coord, r))
                    .collect(),
            })
            .collect(),
        notes: index.notes.clone(),
        warnings: index.warnings.clone(),
    }
}

/// Serializes the report as a deterministic JSON document.
pub fn to_json(report: &Report, terms: &[(Exponent, BigRational)]) -> String {
    let mut out = serde_json::to_string_pretty(&document(report, terms))
        .expect("report serialization cannot fail");
    out.push('\n');
    out
}

fn fmt_monomial(exp: &Exponent, coef: &BigRational) -> String {
    let mut parts = Vec::new();
    if !coef.is_integer() || coef.numer().magnitude() != &1u32.into() {
        parts.push(rat(coef));
    }
    for (i, name) in ["x", "y", "z"].iter().enumerate() {
        match exp[i] {
            0 => {}
            1 => parts.push((*name).to_string()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    if parts.is_empty() {
        parts.push(rat(coef));
    }
    let body = parts.join("*");
    if coef.numer().sign() == num_bigint::Sign::Minus && !body.starts_with('-') {
        // Sign already included via rat() when the coefficient is printed;
        // prepend it for bare +/-1 coefficients.
        if !parts[0].starts_with('-') {
            return format!("-{body}");
        }
    }
    body
}

/// Renders the report as a plain-text document.
pub fn to_text(report: &Report, terms: &[(Exponent, BigRational)]) -> String {
    let index = &report.index;
    let res = &report.resolution;
    let mut out = String::new();
    let line = |out: &mut String, s: String| {
        out.push_str(&s);
        out.push('\n');
    };

    line(&mut out, format!("input: {}", report.input_echo));
    let rendered: Vec<String> =
        terms.iter().map(|(e, c)| fmt_monomial(e, c)).collect();
    line(&mut out, format!("f = {}", rendered.join(" + ")));
    line(&mut out, String::new());

    line(&mut out, format!("facets ({}):", index.facets.len()));
    for f in &index.facets {
        let summary = res
            .facets
            .iter()
            .find(|s| s.normal == f.normal)
            .expect("facet present in resolution summary");
        line(
            &mut out,
            format!(
                "  P = {}  d(P) = {}  normally smooth: {}  rational: {}  \
                 genus: {}  arms: {}",
                f.normal,
                f.value,
                f.normal.has_coordinate_one(),
                summary.rational,
                summary.genus,
                summary.arms
            ),
        );
    }
    line(&mut out, String::new());

    line(&mut out, format!("cones ({}):", index.cones.len()));
    for c in &index.cones {
        line(
            &mut out,
            format!(
                "  Cone(P = {}, Q = {})  det = {}  r + 1 = {}",
                c.p,
                c.q,
                c.d,
                c.r + 1
            ),
        );
        if !c.chain.interior.is_empty() {
            let cf: Vec<String> =
                c.chain.cf_entries.iter().map(BigInt::to_string).collect();
            line(&mut out, format!("    continued fraction: [{}]", cf.join(", ")));
            for (entry, m) in c.chain.interior.iter().zip(&c.chain.cf_entries) {
                line(
                    &mut out,
                    format!(
                        "    {}  (alpha, beta) = ({}, {})  self-intersection {}",
                        entry.covector,
                        entry.alpha,
                        entry.beta,
                        -m
                    ),
                );
            }
        }
        for s in &c.ns {
            line(
                &mut out,
                format!(
                    "    normally smooth: {} at coordinate {} with \
                     (alpha, beta) = ({}, {})",
                    s.covector,
                    s.coord + 1,
                    s.alpha,
                    s.beta
                ),
            );
        }
        if c.rho > 0 {
            line(&mut out, format!("    rho contribution: {} x {}", c.r + 1, c.rho));
        }
    }
    line(&mut out, String::new());

    line(&mut out, "line index:".to_string());
    let ns_list: Vec<String> =
        index.facet_ns.iter().map(|c| c.to_string()).collect();
    line(
        &mut out,
        format!(
            "  facet normals with a coordinate 1: {}",
            if ns_list.is_empty() { "none".into() } else { ns_list.join(", ") }
        ),
    );
    for c in index.cones.iter().filter(|c| c.rho > 0) {
        line(
            &mut out,
            format!("  Cone(P = {}, Q = {}): (r + 1) * rho = {} * {}", c.p, c.q, c.r + 1, c.rho),
        );
    }
    line(&mut out, format!("  total rho = {}", index.total));
    line(&mut out, String::new());

    line(&mut out, "resolution:".to_string());
    match &res.verdict {
        Verdict::Minimal => line(&mut out, "  verdict: minimal".to_string()),
        Verdict::Indeterminate(reason) => {
            line(&mut out, format!("  verdict: indeterminate ({reason})"))
        }
    }
    line(&mut out, String::new());

    line(&mut out, format!("obvious lines ({}):", index.findings.len()));
    for f in &index.findings {
        let desc = match f {
            Finding::AxisLine { axis, q, q1 } => format!(
                "  the {} axis lies in the surface; neighbor {} gives \
                 normally smooth covector {}",
                ["x", "y", "z"][*axis], q, q1
            ),
            Finding::CoordinateOneFacet { normal } => {
                format!("  facet normal {normal} has a coordinate 1")
            }
            Finding::HomogeneousSection { section, normal, covector } => format!(
                "  the section {} = 0 is homogeneous; facet {} gives \
                 normally smooth covector {}",
                ["x", "y", "z"][*section], normal, covector
            ),
        };
        line(&mut out, desc);
    }
    line(&mut out, String::new());

    if !index.line_leads.is_empty() {
        line(&mut out, format!("line leading data ({}):", index.line_leads.len()));
        for l in &index.line_leads {
            let face: Vec<String> =
                l.face_terms.iter().map(|(e, c)| fmt_monomial(e, c)).collect();
            line(&mut out, format!("  {}: f_P = {}", l.covector, face.join(" + ")));
            for (coord, r) in &l.residuals {
                let desc = match r {
                    Residual::Roots(roots) if roots.is_empty() => {
                        "no rational root".to_string()
                    }
                    Residual::Roots(roots) => {
                        let rs: Vec<String> = roots.iter().map(rat).collect();
                        format!("rational roots {}", rs.join(", "))
                    }
                    Residual::IdenticallyZero => "identically zero".to_string(),
                    Residual::Skipped(reason) => format!("skipped: {reason}"),
                };
                line(
                    &mut out,
                    format!("    coordinate {} residual: {desc}", coord + 1),
                );
            }
        }
        line(&mut out, String::new());
    }

    for n in &index.notes {
        line(&mut out, format!("note: {n}"));
    }
    for w in &index.warnings {
        line(&mut out, format!("warning: {w}"));
    }
    out
}
