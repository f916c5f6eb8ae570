//! Exact combinatorics of canonical toric resolutions of surface
//! singularities `{f(x, y, z) = 0}` with non-degenerate Newton boundary.
//!
//! The crate computes the Newton polyhedron of `f`, the 2-skeleton of its
//! dual Newton diagram, the canonical regular subdivision of every 2-cone
//! (Hirzebruch-Jung continued fractions), the set of normally smooth
//! exceptional divisors and the line index of the resolution, together with
//! resolution-chain data (component counts, self-intersections, rationality
//! of the facet divisors) and a minimality verdict.
//!
//! All arithmetic is exact: unbounded integers for lattice data, exact
//! rationals for coefficients. No floating point is used anywhere.

pub mod closed_forms;
pub mod lattice;
pub mod linedex;
pub mod newton;
pub mod report;
pub mod resolution;

use thiserror::Error;

/// Errors produced by the pipeline.
///
/// The CLI maps these onto exit codes: parse/construction errors to 2,
/// unsupported inputs to 3, validation failures to 4 and internal
/// assertion failures to 5.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector is not a covector")]
    ZeroVector,
    #[error("covector coordinates must be non-negative")]
    NegativeCoordinate,
    #[error("degenerate cone: the two covectors are parallel")]
    DegenerateCone,
    #[error("invalid continued fraction input: {0}")]
    InvalidContinuedFraction(String),
    #[error("refinement forbidden: insertion would place a vertex inside Cone(Q, Q1) with Q not strictly positive")]
    RefinementForbidden,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is empty after merging terms")]
    EmptyPolynomial,
    #[error("polynomial must have at least two terms")]
    TooFewTerms,
    #[error("unsupported: the Newton boundary has no 2-dimensional compact face")]
    NoCompactFacet,
    #[error("the given segment is not an edge of the facet")]
    EdgeNotOnFacet,
    #[error("no adjacent covector exists for the edge (malformed or non-isolated input)")]
    NoAdjacentCovector,
    #[error("input cannot define an isolated singularity: {0}")]
    NotIsolated(String),
    #[error("covector has no coordinate equal to 1 (divisor not normally smooth)")]
    NotNormallySmooth,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("rationality check produced a non-integral or negative genus for {0}")]
    BadGenus(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use closed_forms::{
    catalog, lemma14_rho, lemma15_rho, tpqr_analysis, xii_analysis, CatalogEntry,
    TpqrReport, WeightedHomogeneousSpec, WhFamily, XiiReport,
};
pub use lattice::{canonical_subdivision, continued_fraction, det2, refine_chain, CanonicalChain, Covector};
pub use linedex::{line_index, line_index_with_options, LineIndex, NsSolution, Options};
pub use newton::{parse_polynomial, Face, LatticePolynomial};
pub use resolution::{export_graph, summarize, ResolutionSummary, Verdict};
