//! Normally smooth divisor enumeration per cone, assembly of the line
//! index, obvious-line detection and line leading-term data.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::{canonical_subdivision, det2, CanonicalChain, Covector, IVec3};
use crate::newton::{
    axis_membership, compact_facets, dual_diagram2, face_of, validate_isolated,
    Cone2, Edge, Exponent, Face, LatticePolynomial,
};
use crate::{Error, Result};

/// A solution of the normally smooth congruence system for `Cone(P, Q)`:
/// a covector `R = (beta*P + alpha*Q)/d` whose `coord` entry equals 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NsSolution {
    pub covector: Covector,
    pub coord: usize,
    pub alpha: BigInt,
    pub beta: BigInt,
}

/// All (interior covector, coordinate-with-value-1) pairs of a canonical
/// chain. The definitional oracle for the congruence solver.
pub fn vns_scan(chain: &CanonicalChain) -> Vec<NsSolution> {
    let mut out = Vec::new();
    for entry in &chain.interior {
        for coord in entry.covector.one_positions() {
            out.push(NsSolution {
                covector: entry.covector.clone(),
                coord,
                alpha: entry.alpha.clone(),
                beta: entry.beta.clone(),
            });
        }
    }
    out
}

/// Solves `alpha*q_l + beta*p_l = d` with `0 < alpha, beta < d` and
/// `alpha*q_k + beta*p_k = 0 (mod d)` for `k != l`, by scanning `alpha`.
/// Solutions are sorted by `beta` (chain order from Q).
pub fn vns_congruence(p: &Covector, q: &Covector, l: usize) -> Vec<NsSolution> {
    let d = det2(p, q);
    let mut out = Vec::new();
    if d <= BigInt::one() {
        return out;
    }
    let (pl, ql) = (p.coord(l), q.coord(l));
    let mut alpha = BigInt::one();
    while alpha < d {
        let rem = &d - &alpha * ql;
        if rem.is_positive() && (&rem % pl).is_zero() {
            let beta = rem / pl;
            if beta < d {
                let congruent = (0..3).filter(|&k| k != l).all(|k| {
                    (&alpha * q.coord(k) + &beta * p.coord(k)).mod_floor(&d).is_zero()
                });
                if congruent {
                    let v: IVec3 = std::array::from_fn(|k| {
                        (&beta * p.coord(k) + &alpha * q.coord(k)) / &d
                    });
                    let covector = Covector::primitive(v).expect("congruence solution");
                    debug_assert!(covector.coord(l).is_one());
                    out.push(NsSolution { covector, coord: l, alpha: alpha.clone(), beta });
                }
            }
        }
        alpha += 1;
    }
    out.sort_by(|a, b| a.beta.cmp(&b.beta));
    out
}

/// Closed form for `q_l` equal to 0 or 1: if `q_l = 0` the set is `{Q_1}`
/// exactly when `d = p_l`, else empty (`d` must divide `p_l`); if
/// `q_l = 1` the set is the chain prefix from Q with positive Q-coefficient,
/// of size `floor(d/p_l)` (one less when `p_l` divides `d`).
pub fn vns_corollary11(p: &Covector, q: &Covector, l: usize) -> Result<Vec<NsSolution>> {
    if !p.is_strictly_positive() {
        return Err(Error::Precondition("P must be strictly positive".into()));
    }
    let d = det2(p, q);
    if d < BigInt::from(2) {
        return Err(Error::Precondition(format!("need det(P,Q) >= 2, got {d}")));
    }
    let pl = p.coord(l);
    let chain = canonical_subdivision(p, q)?;
    let take = |n: usize| -> Vec<NsSolution> {
        chain.interior[..n]
            .iter()
            .map(|e| {
                debug_assert!(e.covector.coord(l).is_one());
                NsSolution {
                    covector: e.covector.clone(),
                    coord: l,
                    alpha: e.alpha.clone(),
                    beta: e.beta.clone(),
                }
            })
            .collect()
    };
    match u32::try_from(q.coord(l)) {
        Ok(0) => {
            if !(pl % &d).is_zero() {
                return Err(Error::Precondition(format!(
                    "q_{l} = 0 requires det(P,Q) = {d} to divide p_{l} = {pl}"
                )));
            }
            if &d == pl {
                Ok(take(1))
            } else {
                Ok(Vec::new())
            }
        }
        Ok(1) => {
            // Entries Q_i = (i*P + (d - i*p_l)*Q)/d while the Q-coefficient
            // d - i*p_l stays positive; when p_l divides d the index d/p_l
            // gives alpha = 0, which is P itself, not an interior vertex.
            let mut count = &d / pl;
            if (&d % pl).is_zero() {
                count -= 1;
            }
            let n: usize = count
                .max(BigInt::zero())
                .try_into()
                .expect("prefix length fits usize");
            debug_assert!(n <= chain.interior.len());
            Ok(take(n))
        }
        _ => Err(Error::Precondition(format!(
            "coordinate q_{l} must be 0 or 1, got {}",
            q.coord(l)
        ))),
    }
}

/// The number of distinct interior chain covectors of `Cone(P, Q)` with
/// some coordinate 1, together with the covectors in chain order from Q.
pub fn rho_pq(p: &Covector, q: &Covector) -> Result<(u64, Vec<Covector>)> {
    let chain = canonical_subdivision(p, q)?;
    let covectors: Vec<Covector> = chain
        .interior
        .iter()
        .filter(|e| e.covector.has_coordinate_one())
        .map(|e| e.covector.clone())
        .collect();
    Ok((covectors.len() as u64, covectors))
}

/// Count formula from the extreme solutions: `1 + |beta_max * alpha_min -
/// alpha_max * beta_min| / d`. Requires a nonempty list sorted by `beta`.
pub fn rho_formula_cor13(solutions: &[NsSolution], d: &BigInt) -> Result<BigInt> {
    let lo = solutions
        .first()
        .ok_or_else(|| Error::Precondition("empty solution set".into()))?;
    let hi = solutions.last().unwrap();
    let num = (&hi.beta * &lo.alpha - &hi.alpha * &lo.beta).abs();
    debug_assert!((&num % d).is_zero());
    Ok(BigInt::one() + num / d)
}

/// Per-cone data in the line index report.
#[derive(Clone, Debug)]
pub struct ConeReport {
    pub p: Covector,
    pub q: Covector,
    pub d: BigInt,
    pub edge: Edge,
    /// Interior lattice points of the edge; the divisor over each chain
    /// covector has `r + 1` components.
    pub r: i64,
    pub chain: CanonicalChain,
    /// One entry per (interior covector, coordinate-1 position) pair.
    pub ns: Vec<NsSolution>,
    /// Distinct normally smooth interior covectors, chain order from Q.
    pub ns_covectors: Vec<Covector>,
    pub rho: u64,
}

/// An obvious line detected directly from the polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finding {
    /// A coordinate axis lies in the surface; the first chain covector
    /// from the axis-type neighbor carries a line family along the axis.
    AxisLine { axis: usize, q: Covector, q1: Covector },
    /// A compact facet normal with a coordinate 1: its divisor is
    /// normally smooth.
    CoordinateOneFacet { normal: Covector },
    /// A coordinate section of `f` is a non-monomial homogeneous
    /// polynomial; the associated covector is normally smooth.
    HomogeneousSection { section: usize, normal: Covector, covector: Covector },
}

/// Outcome of the residual univariate root search in line leading data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    /// Exact rational torus roots (may be empty: no rational root).
    Roots(Vec<BigRational>),
    /// The residual polynomial vanishes identically: every value works.
    IdenticallyZero,
    /// Root search skipped; the reason is recorded.
    Skipped(String),
}

/// Leading-term data of the lines through a normally smooth divisor:
/// the exponent triple, the face function and, per coordinate-1 position,
/// the rational roots of the residual polynomial obtained by setting the
/// other two variables to 1.
#[derive(Clone, Debug)]
pub struct LineLead {
    pub covector: Covector,
    pub face_terms: Vec<(Exponent, BigRational)>,
    pub residuals: Vec<(usize, Residual)>,
}

/// The assembled line index of the canonical toric resolution.
#[derive(Clone, Debug)]
pub struct LineIndex {
    pub facets: Vec<Face>,
    pub cones: Vec<ConeReport>,
    /// Facet normals with a coordinate 1, each counted once in the total.
    pub facet_ns: Vec<Covector>,
    pub total: BigInt,
    pub findings: Vec<Finding>,
    pub line_leads: Vec<LineLead>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

/// Pipeline options.
#[derive(Clone, Debug)]
pub struct Options {
    /// Verify the chain scan against the congruence solver and the closed
    /// forms on every cone. Disabled in scan-only mode.
    pub cross_check: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { cross_check: true }
    }
}

pub fn line_index(f: &LatticePolynomial) -> Result<LineIndex> {
    line_index_with_options(f, &Options::default())
}

pub fn line_index_with_options(f: &LatticePolynomial, opts: &Options) -> Result<LineIndex> {
    validate_isolated(f)?;
    let facets = compact_facets(f);
    if facets.is_empty() {
        return Err(Error::NoCompactFacet);
    }
    let cones = dual_diagram2(f)?;
    let mut reports = Vec::with_capacity(cones.len());
    let mut warnings = Vec::new();
    let mut notes = Vec::new();
    for cone in &cones {
        reports.push(analyze_cone(cone, opts)?);
    }
    let facet_ns: Vec<Covector> = facets
        .iter()
        .map(|f| f.normal.clone())
        .filter(|p| p.has_coordinate_one())
        .collect();
    for p in &facet_ns {
        notes.push(format!(
            "facet divisor E{p} is normally smooth and counted once, \
             regardless of its number of components"
        ));
    }
    let mut total = BigInt::from(facet_ns.len());
    for rep in &reports {
        total += BigInt::from(rep.r + 1) * BigInt::from(rep.rho);
    }
    let findings = obvious_lines_from_parts(f, &cones)?;
    let mut ns_all: BTreeSet<Covector> = facet_ns.iter().cloned().collect();
    for rep in &reports {
        ns_all.extend(rep.ns_covectors.iter().cloned());
    }
    let mut line_leads = Vec::new();
    for cov in ns_all {
        match line_leading_data(f, &cov) {
            Ok(lead) => line_leads.push(lead),
            Err(Error::Precondition(msg)) => {
                warnings.push(format!("no leading data for E{cov}: {msg}"));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(LineIndex {
        facets,
        cones: reports,
        facet_ns,
        total,
        findings,
        line_leads,
        warnings,
        notes,
    })
}

fn analyze_cone(cone: &Cone2, opts: &Options) -> Result<ConeReport> {
    let chain = canonical_subdivision(&cone.p, &cone.q)?;
    let ns = vns_scan(&chain);
    let ns_covectors: Vec<Covector> = {
        let mut seen = BTreeSet::new();
        ns.iter()
            .filter(|s| seen.insert(s.covector.clone()))
            .map(|s| s.covector.clone())
            .collect()
    };
    if opts.cross_check {
        cross_check_cone(cone, &chain, &ns)?;
    }
    Ok(ConeReport {
        p: cone.p.clone(),
        q: cone.q.clone(),
        d: cone.d.clone(),
        edge: cone.edge.clone(),
        r: cone.r,
        chain,
        rho: ns_covectors.len() as u64,
        ns,
        ns_covectors,
    })
}

/// Verifies the congruence solver and the closed forms against the scan.
/// A mismatch is an internal error: these identities are exact.
fn cross_check_cone(cone: &Cone2, chain: &CanonicalChain, ns: &[NsSolution]) -> Result<()> {
    for l in 0..3 {
        let scan_l: Vec<&Covector> =
            ns.iter().filter(|s| s.coord == l).map(|s| &s.covector).collect();
        let cong = vns_congruence(&cone.p, &cone.q, l);
        let cong_l: Vec<&Covector> = cong.iter().map(|s| &s.covector).collect();
        if scan_l != cong_l {
            return Err(Error::Internal(format!(
                "congruence solutions for Cone({},{}) coordinate {l} disagree \
                 with the chain scan: {cong_l:?} vs {scan_l:?}",
                cone.p, cone.q
            )));
        }
        if cone.d >= BigInt::from(2) && cone.p.is_strictly_positive() {
            let ql_small = u32::try_from(cone.q.coord(l));
            let applicable = matches!(ql_small, Ok(0) | Ok(1))
                && !(cone.q.coord(l).is_zero()
                    && !(cone.p.coord(l) % &cone.d).is_zero());
            if applicable {
                let closed = vns_corollary11(&cone.p, &cone.q, l)?;
                let closed_l: Vec<&Covector> = closed.iter().map(|s| &s.covector).collect();
                if closed_l != cong_l {
                    return Err(Error::Internal(format!(
                        "closed-form solutions for Cone({},{}) coordinate {l} \
                         disagree with the scan: {closed_l:?} vs {scan_l:?}",
                        cone.p, cone.q
                    )));
                }
            }
        }
        if !cong.is_empty() {
            let predicted = rho_formula_cor13(&cong, &chain.d)?;
            if predicted != BigInt::from(cong.len()) {
                return Err(Error::Internal(format!(
                    "extreme-solution count formula gives {predicted} but \
                     Cone({},{}) coordinate {l} has {} solutions",
                    cone.p, cone.q,
                    cong.len()
                )));
            }
        }
    }
    Ok(())
}

/// Obvious lines readable directly from the polynomial.
pub fn obvious_lines(f: &LatticePolynomial) -> Result<Vec<Finding>> {
    let cones = dual_diagram2(f)?;
    obvious_lines_from_parts(f, &cones)
}

fn obvious_lines_from_parts(f: &LatticePolynomial, cones: &[Cone2]) -> Result<Vec<Finding>> {
    let mut findings = Vec::new();
    // (a) coordinate axes in the surface.
    for axis in axis_membership(f) {
        // Axis-type neighbor: zero at the axis coordinate only (the axis
        // covectors E_j have two zeros and support coordinate-plane faces).
        let cone = cones.iter().find(|c| {
            c.q.coord(axis).is_zero()
                && c.q.coords().iter().filter(|v| v.is_zero()).count() == 1
        });
        if let Some(cone) = cone {
            let chain = canonical_subdivision(&cone.p, &cone.q)?;
            let q1 = chain
                .interior
                .first()
                .map(|e| e.covector.clone())
                .unwrap_or_else(|| cone.p.clone());
            findings.push(Finding::AxisLine { axis, q: cone.q.clone(), q1 });
        }
    }
    // (b) facet normals with a coordinate 1.
    let facet_normals: BTreeSet<&Covector> = cones.iter().map(|c| &c.p).collect();
    for normal in &facet_normals {
        if normal.has_coordinate_one() {
            findings.push(Finding::CoordinateOneFacet { normal: (*normal).clone() });
        }
    }
    // (c) homogeneous non-monomial coordinate sections.
    for section in 0..3 {
        let section_exps: Vec<&Exponent> =
            f.support().filter(|e| e[section] == 0).collect();
        if section_exps.len() < 2 {
            continue;
        }
        let deg = section_exps[0].iter().sum::<i64>();
        if !section_exps.iter().all(|e| e.iter().sum::<i64>() == deg) {
            continue;
        }
        let (j, k) = (((section + 1) % 3), ((section + 2) % 3));
        // The facet containing the section has equal normal entries at the
        // two section coordinates.
        let facet = facet_normals.iter().find(|p| {
            p.coord(j) == p.coord(k) && {
                let face = face_of(f, p);
                section_exps.iter().all(|e| face.points.contains(e))
            }
        });
        if let Some(&normal) = facet {
            let axis = Covector::axis(section);
            let d = det2(normal, &axis);
            let covector = if d.is_one() {
                normal.clone()
            } else {
                // First chain covector from E_section; it has 1 at the two
                // section coordinates.
                canonical_subdivision(normal, &axis)?
                    .interior
                    .first()
                    .map(|e| e.covector.clone())
                    .expect("non-regular cone has interior vertices")
            };
            findings.push(Finding::HomogeneousSection {
                section,
                normal: normal.clone(),
                covector,
            });
        }
    }
    Ok(findings)
}

/// Leading-term data of the lines through `E(P)`: the face function
/// `f_P` and, for each coordinate-1 position, the rational roots of the
/// residual obtained by setting the other two variables to 1.
pub fn line_leading_data(f: &LatticePolynomial, p: &Covector) -> Result<LineLead> {
    let ones = p.one_positions();
    if ones.is_empty() {
        return Err(Error::NotNormallySmooth);
    }
    let face = face_of(f, p);
    if face.dim < 1 {
        return Err(Error::Precondition(format!(
            "the face of {p} is a single point; no line leading data"
        )));
    }
    let face_terms: Vec<(Exponent, BigRational)> = face
        .points
        .iter()
        .map(|e| (*e, f.coefficient(e).expect("face point in support").clone()))
        .collect();
    let mut residuals = Vec::new();
    for coord in ones {
        let mut poly: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (exp, coef) in &face_terms {
            *poly.entry(exp[coord]).or_insert_with(BigRational::zero) += coef.clone();
        }
        residuals.push((coord, rational_roots(&poly)));
    }
    Ok(LineLead { covector: p.clone(), face_terms, residuals })
}

/// Exact rational torus roots of a sparse univariate polynomial, via the
/// rational root theorem. Skips when the coefficient bounds make the
/// divisor enumeration too large.
fn rational_roots(poly: &BTreeMap<i64, BigRational>) -> Residual {
    let nonzero: BTreeMap<i64, &BigRational> =
        poly.iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (*e, c)).collect();
    if nonzero.is_empty() {
        return Residual::IdenticallyZero;
    }
    if nonzero.len() == 1 {
        // A single monomial has no root in the torus.
        return Residual::Roots(Vec::new());
    }
    let shift = *nonzero.keys().next().unwrap();
    let mut den_lcm = BigInt::one();
    for c in nonzero.values() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let int_coefs: BTreeMap<i64, BigInt> = nonzero
        .iter()
        .map(|(e, c)| (e - shift, (c.numer() * &den_lcm) / c.denom()))
        .collect();
    let content = int_coefs
        .values()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let int_coefs: BTreeMap<i64, BigInt> =
        int_coefs.into_iter().map(|(e, c)| (e, c / &content)).collect();
    let a0 = int_coefs.values().next().unwrap().abs();
    let an = int_coefs.values().last().unwrap().abs();
    let bound = BigInt::from(1_000_000_000_000u64);
    if a0 > bound || an > bound {
        return Residual::Skipped(format!(
            "constant or leading coefficient too large for divisor \
             enumeration ({a0}, {an})"
        ));
    }
    let (a0, an): (u64, u64) =
        (a0.try_into().unwrap(), an.try_into().unwrap());
    let (num_divs, den_divs) = (divisors(a0), divisors(an));
    if num_divs.len() * den_divs.len() > 20_000 {
        return Residual::Skipped("too many candidate roots".into());
    }
    let mut roots = Vec::new();
    for nu in &num_divs {
        for de in &den_divs {
            if nu.gcd(de) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = BigRational::new(
                    BigInt::from(sign) * BigInt::from(*nu),
                    BigInt::from(*de),
                );
                let value = int_coefs.iter().fold(BigRational::zero(), |acc, (e, c)| {
                    let e = i32::try_from(*e).expect("small exponent");
                    acc + BigRational::from(c.clone()) * cand.pow(e)
                });
                if value.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Residual::Roots(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newton::parse_polynomial;

    fn cov(a: i64, b: i64, c: i64) -> Covector {
        Covector::of(a, b, c)
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn scan_and_congruence_agree_on_large_cone() {
        let p = cov(44, 30, 555);
        let q = cov(30, 44, 555);
        let chain = canonical_subdivision(&p, &q).unwrap();
        let ns = vns_scan(&chain);
        let on_1: Vec<&NsSolution> = ns.iter().filter(|s| s.coord == 0).collect();
        assert_eq!(on_1.len(), 1);
        assert_eq!(on_1[0].covector, cov(1, 1, 15));
        assert_eq!(on_1[0].alpha, big(7));
        assert_eq!(on_1[0].beta, big(7));
        let cong = vns_congruence(&p, &q, 0);
        assert_eq!(cong.len(), 1);
        assert_eq!(cong[0].covector, cov(1, 1, 15));
    }

    #[test]
    fn congruence_finds_high_weight_solution() {
        let p = cov(172, 12, 195);
        let q = cov(0, 8, 1);
        assert_eq!(det2(&p, &q), big(172));
        let cong = vns_congruence(&p, &q, 1);
        let hit = cong
            .iter()
            .find(|s| s.alpha == big(11) && s.beta == big(7))
            .expect("solution (11, 7)");
        assert_eq!(hit.covector, cov(7, 1, 8));
    }

    #[test]
    fn congruence_regular_cone_empty() {
        assert!(vns_congruence(&cov(1, 1, 2), &cov(0, 1, 1), 0).is_empty());
    }

    #[test]
    fn corollary11_prefix_case() {
        // P=(1,3,3), Q=E1, coordinate 0 with q_0 = 1: chain prefix (1,i,i).
        let p = cov(1, 3, 3);
        let q = Covector::axis(0);
        let sols = vns_corollary11(&p, &q, 0).unwrap();
        assert_eq!(sols.len(), 2);
        assert_eq!(sols[0].covector, cov(1, 1, 1));
        assert_eq!(sols[1].covector, cov(1, 2, 2));
        assert_eq!(sols, vns_congruence(&p, &q, 0));
    }

    #[test]
    fn corollary11_zero_case() {
        // P=(5,1,2), Q=(0,3,1), coordinate 0 with q_0 = 0, d = p_0 = 5:
        // the single solution is the first chain covector from Q.
        let p = cov(5, 1, 2);
        let q = cov(0, 3, 1);
        let sols = vns_corollary11(&p, &q, 0).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].covector, cov(1, 2, 1));
        assert_eq!(sols, vns_congruence(&p, &q, 0));
        // q_0 = 0 with d not dividing p_0 violates the precondition.
        assert!(matches!(
            vns_corollary11(&cov(7, 1, 2), &cov(0, 3, 1), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rho_pq_examples() {
        let (rho, covs) = rho_pq(&cov(5, 1, 2), &cov(0, 3, 1)).unwrap();
        assert_eq!(rho, 2);
        assert_eq!(covs, vec![cov(1, 2, 1), cov(2, 1, 1)]);
        let (rho, _) = rho_pq(&cov(1, 1, 2), &cov(0, 1, 1)).unwrap();
        assert_eq!(rho, 0);
    }

    #[test]
    fn cor13_formula_instance() {
        let p = cov(8, 2, 5);
        let q = cov(2, 16, 9);
        let d = det2(&p, &q);
        assert_eq!(d, big(62));
        let cong = vns_congruence(&p, &q, 0);
        assert_eq!(cong.len(), 4);
        assert_eq!(rho_formula_cor13(&cong, &d).unwrap(), big(4));
        let single = vns_congruence(&cov(44, 30, 555), &cov(30, 44, 555), 0);
        assert_eq!(rho_formula_cor13(&single, &big(518)).unwrap(), big(1));
    }

    #[test]
    fn line_index_one_arm_family() {
        // xy + y^{bc} + z^c with b = c = 2.
        let f = parse_polynomial("x*y + y^4 + z^2").unwrap();
        let report = line_index(&f).unwrap();
        assert_eq!(report.total, big(2));
        // The central normal (bc-1, 1, b) always has a coordinate 1.
        assert_eq!(report.facet_ns, vec![cov(3, 1, 2)]);
        // b = 2, c = 3.
        let f = parse_polynomial("x*y + y^6 + z^3").unwrap();
        let report = line_index(&f).unwrap();
        assert_eq!(report.total, big(3));
    }

    #[test]
    fn line_index_tnnn() {
        for n in [4i64, 5, 7] {
            let f = parse_polynomial(&format!("x^{n} + y^{n} + z^{n} + x*y*z")).unwrap();
            let report = line_index(&f).unwrap();
            assert_eq!(report.total, big(3 * n - 9), "n = {n}");
            assert_eq!(report.facet_ns.len(), 3);
        }
    }

    #[test]
    fn line_index_section_family() {
        // x^a y + y^b - z^b with a = a1 (b - 1): rho = b (a1 - 1) + 1.
        for (a1, b) in [(2i64, 2i64), (3, 2), (2, 3), (4, 3)] {
            let a = a1 * (b - 1);
            let f = parse_polynomial(&format!("x^{a}*y + y^{b} - z^{b}")).unwrap();
            let report = line_index(&f).unwrap();
            assert_eq!(report.total, big(b * (a1 - 1) + 1), "a1={a1}, b={b}");
        }
    }

    #[test]
    fn obvious_lines_axis_case() {
        let f = parse_polynomial("x^3*y + y^5 + z^2").unwrap();
        let findings = obvious_lines(&f).unwrap();
        assert!(findings
            .iter()
            .any(|fi| matches!(fi, Finding::AxisLine { axis: 0, .. })));
    }

    #[test]
    fn obvious_lines_homogeneous_section() {
        // x = 0 section of x^2 y + y^2 - z^2 is homogeneous non-monomial.
        let f = parse_polynomial("x^2*y + y^2 - z^2").unwrap();
        let findings = obvious_lines(&f).unwrap();
        let hit = findings
            .iter()
            .find(|fi| matches!(fi, Finding::HomogeneousSection { section: 0, .. }))
            .expect("section finding");
        if let Finding::HomogeneousSection { normal, covector, .. } = hit {
            assert_eq!(*normal, cov(1, 2, 2));
            assert_eq!(*covector, cov(1, 1, 1));
        }
    }

    #[test]
    fn obvious_lines_brieskorn_empty() {
        let f = parse_polynomial("x^5 + y^7 + z^11").unwrap();
        assert!(obvious_lines(&f).unwrap().is_empty());
    }

    #[test]
    fn leading_data_t237() {
        let f = parse_polynomial("x^2 + y^3 + z^7 + x*y*z").unwrap();
        let lead = line_leading_data(&f, &cov(3, 2, 1)).unwrap();
        let (coord, outcome) = &lead.residuals[0];
        assert_eq!(*coord, 2);
        assert_eq!(
            *outcome,
            Residual::Roots(vec![BigRational::from(big(-2))])
        );
    }

    #[test]
    fn leading_data_root_of_unity_case() {
        // x^2 y + y^2 - z^2 at (1,1,1): face y^2 - z^2; roots +-1.
        let f = parse_polynomial("x^2*y + y^2 - z^2").unwrap();
        let lead = line_leading_data(&f, &cov(1, 1, 1)).unwrap();
        let by_coord: BTreeMap<usize, &Residual> =
            lead.residuals.iter().map(|(c, r)| (*c, r)).collect();
        assert_eq!(by_coord[&0], &Residual::IdenticallyZero);
        assert_eq!(
            by_coord[&1],
            &Residual::Roots(vec![
                BigRational::from(big(-1)),
                BigRational::from(big(1))
            ])
        );
    }

    #[test]
    fn leading_data_requires_coordinate_one() {
        let f = parse_polynomial("x^2 + y^3 + z^7 + x*y*z").unwrap();
        assert!(matches!(
            line_leading_data(&f, &cov(11, 7, 3)),
            Err(Error::NotNormallySmooth)
        ));
    }

    #[test]
    fn rational_roots_basics() {
        let mk = |terms: &[(i64, i64)]| -> BTreeMap<i64, BigRational> {
            terms
                .iter()
                .map(|(e, c)| (*e, BigRational::from(big(*c))))
                .collect()
        };
        assert_eq!(
            rational_roots(&mk(&[(0, -6), (1, 5), (2, 1)])),
            Residual::Roots(vec![
                BigRational::from(big(-6)),
                BigRational::from(big(1))
            ])
        );
        assert_eq!(
            rational_roots(&mk(&[(0, 2), (1, 3)])),
            Residual::Roots(vec![BigRational::new(big(-2), big(3))])
        );
        assert_eq!(rational_roots(&mk(&[(2, 5)])), Residual::Roots(vec![]));
        assert_eq!(rational_roots(&mk(&[])), Residual::IdenticallyZero);
        // x^2 + 1 has no rational root.
        assert_eq!(rational_roots(&mk(&[(0, 1), (2, 1)])), Residual::Roots(vec![]));
    }
}
