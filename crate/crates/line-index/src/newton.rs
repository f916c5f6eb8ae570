//! Newton polyhedron machinery: polynomial support, faces, compact facets,
//! edge neighbors and the 2-skeleton of the dual Newton diagram.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{det2, vcross, vdot, vgcd, vis_zero, vneg, vsub, Covector, IVec3};
use crate::{Error, Result};

/// An exponent triple of a monomial `x^a y^b z^c`.
pub type Exponent = [i64; 3];

pub(crate) fn exp_to_vec(e: &Exponent) -> IVec3 {
    [BigInt::from(e[0]), BigInt::from(e[1]), BigInt::from(e[2])]
}

/// A polynomial in x, y, z given by its sparse support with exact rational
/// coefficients. Terms are merged; zero coefficients are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolynomial {
    terms: BTreeMap<Exponent, BigRational>,
}

impl LatticePolynomial {
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, BigRational)>,
    {
        let mut map: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (exp, coef) in terms {
            if exp.iter().any(|&e| e < 0) {
                return Err(Error::Parse(format!("negative exponent in {exp:?}")));
            }
            let entry = map.entry(exp).or_insert_with(BigRational::zero);
            *entry += coef;
        }
        map.retain(|_, c| !c.is_zero());
        match map.len() {
            0 => Err(Error::EmptyPolynomial),
            1 => Err(Error::TooFewTerms),
            _ => Ok(LatticePolynomial { terms: map }),
        }
    }

    /// Support-only constructor: every listed exponent gets coefficient 1.
    pub fn from_support<I>(support: I) -> Result<Self>
    where
        I: IntoIterator<Item = Exponent>,
    {
        Self::from_terms(support.into_iter().map(|e| (e, BigRational::one())))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coefficient(&self, exp: &Exponent) -> Option<&BigRational> {
        self.terms.get(exp)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A face of the Newton polyhedron: the argmin set of a covector on the
/// support, together with the minimum value and the affine dimension.
#[derive(Clone, Debug)]
pub struct Face {
    pub normal: Covector,
    pub value: BigInt,
    pub points: Vec<Exponent>,
    pub dim: u8,
}

const VARS: [char; 3] = ['x', 'y', 'z'];

/// Parses the term grammar: terms separated by `+`/`-`; a term is an
/// optional rational coefficient (`num` or `num/den`) and `*`-separated
/// variable powers `x^a`, `y^b`, `z^c` (`^1` may be omitted).
pub fn parse_polynomial(text: &str) -> Result<LatticePolynomial> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut terms: Vec<(Exponent, BigRational)> = Vec::new();
    let mut rest = text;
    let mut sign = BigRational::one();
    // Leading sign.
    if let Some(r) = rest.strip_prefix('-') {
        sign = -sign;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    loop {
        let next_sep = rest.find(['+', '-']);
        let (term_src, tail) = match next_sep {
            Some(i) => (&rest[..i], Some((rest.as_bytes()[i] as char, &rest[i + 1..]))),
            None => (rest, None),
        };
        terms.push(parse_term(term_src.trim(), &sign)?);
        match tail {
            Some((sep, t)) => {
                sign = if sep == '-' { -BigRational::one() } else { BigRational::one() };
                rest = t;
            }
            None => break,
        }
    }
    LatticePolynomial::from_terms(terms)
}

fn parse_term(src: &str, sign: &BigRational) -> Result<(Exponent, BigRational)> {
    if src.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coef = sign.clone();
    let mut exp: Exponent = [0, 0, 0];
    for factor in src.split('*') {
        let factor = factor.trim();
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term '{src}'")));
        }
        let first = factor.chars().next().unwrap();
        if first.is_ascii_digit() {
            coef *= parse_rational(factor)?;
        } else if let Some(var) = VARS.iter().position(|&v| v == first) {
            let power = match factor[1..].strip_prefix('^') {
                Some(p) => p
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                None if factor.len() == 1 => 1,
                None => {
                    return Err(Error::Parse(format!("unexpected factor '{factor}'")));
                }
            };
            if power < 0 {
                return Err(Error::Parse(format!("negative exponent in '{factor}'")));
            }
            exp[var] += power;
        } else {
            return Err(Error::Parse(format!(
                "unknown variable or token '{factor}' (only x, y, z are allowed)"
            )));
        }
    }
    Ok((exp, coef))
}

pub(crate) fn parse_rational(src: &str) -> Result<BigRational> {
    let parse_int = |s: &str| -> Result<BigInt> {
        s.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad number '{s}'")))
    };
    match src.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(BigRational::new(parse_int(n)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(src)?)),
    }
}

/// The face of the Newton polyhedron cut out by the covector `P`: minimum
/// value of `P` on the support and its argmin set.
pub fn face_of(f: &LatticePolynomial, p: &Covector) -> Face {
    let mut min: Option<BigInt> = None;
    for exp in f.support() {
        let v = p.eval(exp);
        if min.as_ref().is_none_or(|m| &v < m) {
            min = Some(v);
        }
    }
    let value = min.expect("polynomial has at least two terms");
    let points: Vec<Exponent> =
        f.support().filter(|e| p.eval(e) == value).copied().collect();
    let dim = affine_dim(&points);
    Face { normal: p.clone(), value, points, dim }
}

/// Affine dimension of a point set (0 for a single point).
pub(crate) fn affine_dim(points: &[Exponent]) -> u8 {
    if points.len() <= 1 {
        return 0;
    }
    let base = exp_to_vec(&points[0]);
    let mut dir: Option<IVec3> = None;
    for pt in &points[1..] {
        let d = vsub(&exp_to_vec(pt), &base);
        match &dir {
            None => {
                if !vis_zero(&d) {
                    dir = Some(d);
                }
            }
            Some(u) => {
                if !vis_zero(&vcross(u, &d)) {
                    return 2;
                }
            }
        }
    }
    if dir.is_some() {
        1
    } else {
        0
    }
}

/// All compact 2-dimensional faces of the Newton polyhedron, each with its
/// unique primitive strictly positive normal, sorted by normal.
///
/// A triple scan with exact orientation determinants: a candidate normal is
/// a cross product of two support differences; it is kept when it supports
/// the whole set from below and is strictly positive.
pub fn compact_facets(f: &LatticePolynomial) -> Vec<Face> {
    let support: Vec<Exponent> = f.support().copied().collect();
    let vecs: Vec<IVec3> = support.iter().map(exp_to_vec).collect();
    let mut normals: BTreeSet<Covector> = BTreeSet::new();
    for i in 0..vecs.len() {
        for j in i + 1..vecs.len() {
            for k in j + 1..vecs.len() {
                let u = vsub(&vecs[j], &vecs[i]);
                let v = vsub(&vecs[k], &vecs[i]);
                let n = vcross(&u, &v);
                if vis_zero(&n) {
                    continue;
                }
                for cand in [n.clone(), vneg(&n)] {
                    if cand.iter().any(|c| !c.is_positive()) {
                        continue;
                    }
                    let base = vdot(&cand, &vecs[i]);
                    if vecs.iter().all(|w| vdot(&cand, w) >= base) {
                        let g = vgcd(&cand);
                        let prim: IVec3 =
                            std::array::from_fn(|t| &cand[t] / &g);
                        normals.insert(
                            Covector::primitive(prim).expect("positive normal"),
                        );
                    }
                }
            }
        }
    }
    normals.iter().map(|p| face_of(f, p)).collect()
}

/// A boundary edge of a facet polygon, endpoints in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub a: Exponent,
    pub b: Exponent,
}

impl Edge {
    fn new(a: Exponent, b: Exponent) -> Self {
        if a <= b {
            Edge { a, b }
        } else {
            Edge { a: b, b: a }
        }
    }

    /// Number of interior lattice points of the segment.
    pub fn interior_points(&self) -> i64 {
        let d = vsub(&exp_to_vec(&self.b), &exp_to_vec(&self.a));
        let g = vgcd(&d);
        let g: i64 = g.try_into().expect("edge gcd fits i64");
        g - 1
    }
}

/// Boundary edges of a 2-dimensional facet: pairs of extreme points such
/// that every other facet point lies on one side of the line (collinear
/// points must be strictly between the endpoints).
pub fn edges_of(facet: &Face) -> Vec<Edge> {
    let pts = &facet.points;
    let vecs: Vec<IVec3> = pts.iter().map(exp_to_vec).collect();
    let normal = facet.normal.coords();
    let mut edges = BTreeSet::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let dir = vsub(&vecs[j], &vecs[i]);
            if vis_zero(&dir) {
                continue;
            }
            let len2 = vdot(&dir, &dir);
            let mut pos = false;
            let mut neg = false;
            let mut extreme = true;
            for (k, w) in vecs.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                let side = vdot(&vcross(&dir, &vsub(w, &vecs[i])), normal);
                if side.is_positive() {
                    pos = true;
                } else if side.is_negative() {
                    neg = true;
                } else {
                    // Collinear: must be strictly inside the segment.
                    let t = vdot(&vsub(w, &vecs[i]), &dir);
                    if !(t.is_positive() && t < len2) {
                        extreme = false;
                        break;
                    }
                }
            }
            if extreme && !(pos && neg) {
                edges.insert(Edge::new(pts[i], pts[j]));
            }
        }
    }
    edges.into_iter().collect()
}

/// The second extreme ray of the 2-dimensional normal cone of an edge of a
/// compact facet: the unique primitive `R` in the non-negative octant with
/// `R` orthogonal to the edge, `R` supporting the polyhedron on the edge,
/// and `R` distinct from the facet normal. It is another compact facet
/// normal, an axis-type covector with one zero coordinate, or some `E_i`.
pub fn adjacent_covector(
    f: &LatticePolynomial,
    facet: &Face,
    edge: &Edge,
) -> Result<Covector> {
    if !edges_of(facet).contains(&Edge::new(edge.a, edge.b)) {
        return Err(Error::EdgeNotOnFacet);
    }
    let a = exp_to_vec(&edge.a);
    let e = vsub(&exp_to_vec(&edge.b), &a);
    let support: Vec<IVec3> = f.support().map(exp_to_vec).collect();
    // Extreme rays of the normal cone are tight on one more constraint:
    // either another support point or a coordinate hyperplane.
    let mut candidates: Vec<IVec3> = Vec::new();
    for w in &support {
        candidates.push(vcross(&e, &vsub(w, &a)));
    }
    for i in 0..3 {
        let mut unit = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        unit[i] = BigInt::one();
        candidates.push(vcross(&e, &unit));
    }
    let mut found: BTreeSet<Covector> = BTreeSet::new();
    for cand in candidates {
        for v in [cand.clone(), vneg(&cand)] {
            if vis_zero(&v) || v.iter().any(|c| c.is_negative()) {
                continue;
            }
            let feasible = support.iter().all(|w| !vdot(&v, &vsub(w, &a)).is_negative());
            if !feasible {
                continue;
            }
            let r = Covector::primitive(v).expect("validated candidate");
            if r != facet.normal {
                found.insert(r);
            }
        }
    }
    match found.len() {
        0 => Err(Error::NoAdjacentCovector),
        1 => Ok(found.into_iter().next().unwrap()),
        _ => Err(Error::Internal(format!(
            "edge normal cone has more than two extreme rays: {found:?}"
        ))),
    }
}

/// A 2-cone of the dual Newton diagram with strictly positive interior:
/// a strictly positive facet normal `P` paired with the neighbor `Q`
/// across one edge of the facet.
#[derive(Clone, Debug)]
pub struct Cone2 {
    pub p: Covector,
    pub q: Covector,
    pub d: BigInt,
    pub edge: Edge,
    /// Interior lattice points of the edge.
    pub r: i64,
}

/// The 2-skeleton of the dual Newton diagram: one cone per edge of the
/// Newton boundary incident to a compact facet. Facet-facet cones are
/// emitted once, with `P` the lexicographically larger normal.
pub fn dual_diagram2(f: &LatticePolynomial) -> Result<Vec<Cone2>> {
    let facets = compact_facets(f);
    if facets.is_empty() {
        return Err(Error::NoCompactFacet);
    }
    let facet_normals: BTreeSet<Covector> =
        facets.iter().map(|f| f.normal.clone()).collect();
    let mut cones: Vec<Cone2> = Vec::new();
    for facet in &facets {
        for edge in edges_of(facet) {
            let q = adjacent_covector(f, facet, &edge)?;
            if q.is_strictly_positive() {
                if !facet_normals.contains(&q) {
                    return Err(Error::Internal(format!(
                        "strictly positive neighbor {q} is not a compact facet normal"
                    )));
                }
                // Emitted from the lexicographically larger side only.
                if facet.normal < q {
                    continue;
                }
            }
            let r = edge.interior_points();
            cones.push(Cone2 {
                p: facet.normal.clone(),
                d: det2(&facet.normal, &q),
                q,
                edge,
                r,
            });
        }
    }
    cones.sort_by(|a, b| (&a.p, &a.q).cmp(&(&b.p, &b.q)));
    cones.dedup_by(|a, b| a.p == b.p && a.q == b.q);
    Ok(cones)
}

/// Coordinate axes contained in `{f = 0}`: axis `i` is in `X` exactly when
/// `f` has no pure power of variable `i`.
pub fn axis_membership(f: &LatticePolynomial) -> BTreeSet<usize> {
    let mut axes = BTreeSet::new();
    for i in 0..3 {
        let has_pure_power = f
            .support()
            .any(|e| e[i] > 0 && (0..3).all(|j| j == i || e[j] == 0));
        if !has_pure_power {
            axes.insert(i);
        }
    }
    axes
}

/// Necessary condition for an isolated singularity: whenever axis `i` lies
/// in `X`, `f` must contain a monomial `z_i^a z_j` for some `j != i`.
pub fn validate_isolated(f: &LatticePolynomial) -> Result<()> {
    for i in axis_membership(f) {
        let ok = f.support().any(|e| {
            e[i] >= 1 && {
                let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
                (e[others[0]] == 1 && e[others[1]] == 0)
                    || (e[others[0]] == 0 && e[others[1]] == 1)
            }
        });
        if !ok {
            return Err(Error::NotIsolated(format!(
                "the {}-axis lies in X but f has no monomial {}^a*{} or {}^a*{}",
                VARS[i],
                VARS[i],
                VARS[(i + 1) % 3],
                VARS[i],
                VARS[(i + 2) % 3],
            )));
        }
    }
    Ok(())
}
