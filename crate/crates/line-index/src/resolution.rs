//! Resolution-chain summary: divisor component counts, chain
//! self-intersection numbers, rationality of facet divisors, arm counting,
//! the minimality verdict, and DOT graph export.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{Covector, IVec3};
use crate::linedex::LineIndex;
use crate::newton::{edges_of, exp_to_vec, Exponent, Face, LatticePolynomial};
use crate::{Error, Result};

/// One interior chain covector of a subdivided cone, as a divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDivisor {
    pub covector: Covector,
    /// Number of parallel components, `r + 1` for the ambient edge.
    pub components: u64,
    /// Always at most -2.
    pub self_intersection: BigInt,
}

/// The divisor chain produced by one non-regular cone.
#[derive(Clone, Debug)]
pub struct ConeChain {
    pub p: Covector,
    pub q: Covector,
    pub components: u64,
    pub divisors: Vec<ChainDivisor>,
}

/// Per-facet divisor data: rationality, genus, and arm count.
#[derive(Clone, Debug)]
pub struct FacetSummary {
    pub normal: Covector,
    pub rational: bool,
    pub genus: BigInt,
    pub arms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Minimal,
    Indeterminate(String),
}

#[derive(Clone, Debug)]
pub struct ResolutionSummary {
    pub facets: Vec<FacetSummary>,
    pub chains: Vec<ConeChain>,
    pub verdict: Verdict,
}

fn det3(a: &IVec3, b: &IVec3, c: &IVec3) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

/// Orders the facet's vertices into the boundary cycle of its polygon,
/// starting at the lexicographically smallest vertex.
fn vertex_cycle(facet: &Face) -> Result<Vec<Exponent>> {
    let edges = edges_of(facet);
    let mut neighbors: std::collections::BTreeMap<Exponent, Vec<Exponent>> =
        std::collections::BTreeMap::new();
    for e in &edges {
        neighbors.entry(e.a).or_default().push(e.b);
        neighbors.entry(e.b).or_default().push(e.a);
    }
    for (v, ns) in &neighbors {
        if ns.len() != 2 {
            return Err(Error::Internal(format!(
                "facet vertex {v:?} has {} boundary neighbors",
                ns.len()
            )));
        }
    }
    let start = *neighbors.keys().next().ok_or_else(|| {
        Error::Internal("facet polygon has no boundary edges".into())
    })?;
    let mut cycle = vec![start];
    let mut current = *neighbors[&start].iter().min().unwrap();
    let mut previous = start;
    while current != start {
        cycle.push(current);
        let ns = &neighbors[&current];
        let next = if ns[0] == previous { ns[1] } else { ns[0] };
        previous = current;
        current = next;
    }
    if cycle.len() != neighbors.len() {
        return Err(Error::Internal("facet boundary is not a single cycle".into()));
    }
    Ok(cycle)
}

/// The facet polygon's vertices in boundary-cycle order, for reports.
pub fn facet_vertices(facet: &Face) -> Vec<Exponent> {
    vertex_cycle(facet).unwrap_or_else(|_| facet.points.clone())
}

/// Decides rationality of the facet divisor and computes its genus from the
/// cone-volume identity: the divisor is rational exactly when
/// `-6 Vol(Cone) / d + sum of edge lattice lengths = 2`, and the genus is
/// `(2 - LHS) / 2`, which must be a non-negative integer.
pub fn is_rational(f: &LatticePolynomial, facet: &Face) -> Result<(bool, BigInt)> {
    let _ = f;
    let cycle = vertex_cycle(facet)?;
    // Fan triangulation from the cycle start, each triangle coned to the
    // origin: 6 Vol = sum of |det| over triangles.
    let apex = exp_to_vec(&cycle[0]);
    let mut six_vol = BigInt::zero();
    for w in cycle.windows(2).skip(1) {
        six_vol += det3(&apex, &exp_to_vec(&w[0]), &exp_to_vec(&w[1])).abs();
    }
    let mut edge_sum = BigInt::zero();
    for e in edges_of(facet) {
        edge_sum += BigInt::from(e.interior_points() + 1);
    }
    let lhs = BigRational::new(-six_vol, facet.value.clone())
        + BigRational::from_integer(edge_sum);
    let two = BigRational::from_integer(BigInt::from(2));
    let g2 = &two - &lhs;
    if !g2.is_integer() || g2.numer().is_odd() || g2.is_negative() {
        return Err(Error::BadGenus(format!(
            "genus (2 - {lhs}) / 2 for facet {} is not a non-negative integer; \
             the input likely violates the non-degeneracy assumption",
            facet.normal
        )));
    }
    let g: BigInt = g2.to_integer() / 2;
    Ok((g.is_zero(), g))
}

/// Number of arms of the facet divisor: the sum of `r + 1` over incident
/// non-regular cones. Regular cones contribute nothing even when the
/// neighboring divisor meets the facet divisor.
pub fn arms(facet: &Face, cones: &[crate::newton::Cone2]) -> u64 {
    cones
        .iter()
        .filter(|c| {
            c.d > BigInt::one() && (c.p == facet.normal || c.q == facet.normal)
        })
        .map(|c| (c.r + 1) as u64)
        .sum()
}

fn verdict(facets: &[FacetSummary]) -> Verdict {
    if facets.iter().all(|s| !s.rational || s.arms >= 3) {
        // Chain divisors have self-intersection <= -2, so no exceptional
        // curve of the first kind can exist.
        Verdict::Minimal
    } else {
        Verdict::Indeterminate(
            "a rational facet divisor has fewer than 3 arms and its \
             self-intersection number is not computed here, so a final \
             blow-down cannot be ruled out"
                .into(),
        )
    }
}

/// Builds the resolution summary for a computed line-index report.
pub fn summarize(f: &LatticePolynomial, report: &LineIndex) -> Result<ResolutionSummary> {
    let cone2: Vec<crate::newton::Cone2> = report
        .cones
        .iter()
        .map(|c| crate::newton::Cone2 {
            p: c.p.clone(),
            q: c.q.clone(),
            d: c.d.clone(),
            edge: c.edge.clone(),
            r: c.r,
        })
        .collect();
    let mut facets = Vec::new();
    for facet in &report.facets {
        let (rational, genus) = is_rational(f, facet)?;
        facets.push(FacetSummary {
            normal: facet.normal.clone(),
            rational,
            genus,
            arms: arms(facet, &cone2),
        });
    }
    let mut chains = Vec::new();
    for cone in &report.cones {
        if cone.chain.interior.is_empty() {
            continue;
        }
        let components = (cone.r + 1) as u64;
        let mut divisors = Vec::new();
        for (entry, m) in cone.chain.interior.iter().zip(&cone.chain.cf_entries) {
            let self_intersection = -m.clone();
            if self_intersection > BigInt::from(-2) {
                return Err(Error::Internal(format!(
                    "chain divisor {} has self-intersection {self_intersection} > -2",
                    entry.covector
                )));
            }
            divisors.push(ChainDivisor {
                covector: entry.covector.clone(),
                components,
                self_intersection,
            });
        }
        chains.push(ConeChain {
            p: cone.p.clone(),
            q: cone.q.clone(),
            components,
            divisors,
        });
    }
    let verdict = verdict(&facets);
    Ok(ResolutionSummary { facets, chains, verdict })
}

fn node_id(cov: &Covector, component: u64) -> String {
    format!(
        "E_{}_{}_{}_c{component}",
        cov.coord(0),
        cov.coord(1),
        cov.coord(2)
    )
}

/// Renders the resolution graph as an undirected DOT document: one node per
/// divisor component, chain adjacency edges, and direct edges for regular
/// facet-facet cones.
pub fn export_graph(report: &LineIndex, summary: &ResolutionSummary) -> String {
    let mut out = String::from("graph resolution {\n  node [shape=box];\n");
    let is_facet =
        |c: &Covector| report.facets.iter().any(|f| &f.normal == c);
    for fs in &summary.facets {
        out.push_str(&format!(
            "  \"{}\" [label=\"cov={} rational={} ns={}\"];\n",
            node_id(&fs.normal, 0),
            fs.normal,
            fs.rational,
            fs.normal.has_coordinate_one()
        ));
    }
    for chain in &summary.chains {
        for div in &chain.divisors {
            for j in 0..chain.components {
                out.push_str(&format!(
                    "  \"{}\" [label=\"cov={} selfint={} ns={}\"];\n",
                    node_id(&div.covector, j),
                    div.covector,
                    div.self_intersection,
                    div.covector.has_coordinate_one()
                ));
            }
        }
    }
    let mut edges: Vec<(String, String)> = Vec::new();
    for chain in &summary.chains {
        for j in 0..chain.components {
            // Chain order runs from the Q side toward P.
            if is_facet(&chain.q) {
                edges.push((
                    node_id(&chain.q, 0),
                    node_id(&chain.divisors[0].covector, j),
                ));
            }
            for w in chain.divisors.windows(2) {
                edges.push((
                    node_id(&w[0].covector, j),
                    node_id(&w[1].covector, j),
                ));
            }
            if is_facet(&chain.p) {
                edges.push((
                    node_id(&chain.divisors.last().unwrap().covector, j),
                    node_id(&chain.p, 0),
                ));
            }
        }
    }
    for cone in &report.cones {
        if cone.d.is_one() && is_facet(&cone.p) && is_facet(&cone.q) {
            edges.push((node_id(&cone.p, 0), node_id(&cone.q, 0)));
        }
    }
    edges.sort();
    edges.dedup();
    for (a, b) in edges {
        out.push_str(&format!("  \"{a}\" -- \"{b}\";\n"));
    }
    out.push_str("}\n");
    out
}
