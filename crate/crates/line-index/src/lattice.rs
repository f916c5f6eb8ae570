//! Exact integer lattice primitives: covectors of the dual lattice, 2-cone
//! determinants, Hirzebruch-Jung continued fractions and the canonical
//! regular subdivision of a 2-cone.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub(crate) type IVec3 = [BigInt; 3];

pub(crate) fn vadd(a: &IVec3, b: &IVec3) -> IVec3 {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub(crate) fn vsub(a: &IVec3, b: &IVec3) -> IVec3 {
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

pub(crate) fn vdot(a: &IVec3, b: &IVec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub(crate) fn vcross(a: &IVec3, b: &IVec3) -> IVec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) fn vneg(a: &IVec3) -> IVec3 {
    [-&a[0], -&a[1], -&a[2]]
}

pub(crate) fn vgcd(a: &IVec3) -> BigInt {
    a[0].gcd(&a[1]).gcd(&a[2])
}

pub(crate) fn vis_zero(a: &IVec3) -> bool {
    a.iter().all(|c| c.is_zero())
}

/// A primitive non-negative integer covector of the dual lattice.
///
/// Invariants: not all coordinates zero, gcd of coordinates is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Covector(IVec3);

impl Covector {
    /// Divides a non-negative integer triple by the gcd of its coordinates.
    pub fn primitive(v: IVec3) -> Result<Self> {
        if v.iter().any(|c| c.is_negative()) {
            return Err(Error::NegativeCoordinate);
        }
        if vis_zero(&v) {
            return Err(Error::ZeroVector);
        }
        let g = vgcd(&v);
        Ok(Covector([&v[0] / &g, &v[1] / &g, &v[2] / &g]))
    }

    /// Convenience constructor from machine integers; panics on invalid input.
    pub fn of(p1: i64, p2: i64, p3: i64) -> Self {
        Self::primitive([BigInt::from(p1), BigInt::from(p2), BigInt::from(p3)])
            .expect("invalid covector literal")
    }

    /// The axis covector E_i (i = 0, 1, 2).
    pub fn axis(i: usize) -> Self {
        let mut v = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        v[i] = BigInt::one();
        Covector(v)
    }

    pub fn coord(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn coords(&self) -> &IVec3 {
        &self.0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|c| c.is_positive())
    }

    /// Indices of coordinates equal to 1.
    pub fn one_positions(&self) -> Vec<usize> {
        (0..3).filter(|&i| self.0[i].is_one()).collect()
    }

    pub fn has_coordinate_one(&self) -> bool {
        self.0.iter().any(|c| c.is_one())
    }

    /// Evaluates the covector as a linear function on an exponent triple.
    pub fn eval(&self, exp: &[i64; 3]) -> BigInt {
        (0..3).map(|i| &self.0[i] * BigInt::from(exp[i])).sum()
    }
}

impl fmt::Display for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Covector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `det(P, Q)`: the gcd of the absolute values of the 2x2 minors of the
/// matrix `(P, Q)`. Zero exactly when the two primitive covectors coincide.
pub fn det2(p: &Covector, q: &Covector) -> BigInt {
    let (a, b) = (p.coords(), q.coords());
    let m12 = &a[0] * &b[1] - &a[1] * &b[0];
    let m13 = &a[0] * &b[2] - &a[2] * &b[0];
    let m23 = &a[1] * &b[2] - &a[2] * &b[1];
    m12.gcd(&m13).gcd(&m23)
}

/// One interior vertex of a canonical chain together with its mixing
/// coefficients: `Q_i = (beta * P + alpha * Q) / d`.
#[derive(Clone, Debug)]
pub struct ChainEntry {
    pub covector: Covector,
    pub alpha: BigInt,
    pub beta: BigInt,
}

/// The canonical regular subdivision of `Cone(P, Q)`, stored from Q to P.
///
/// `interior` lists `Q_1, ..., Q_k` starting next to Q. `cf_entries` is the
/// continued fraction `d/d_1 = [m_1, ..., m_k]` in the same orientation;
/// `-m_i` is the self-intersection of each component of `E(Q_i)`.
#[derive(Clone, Debug)]
pub struct CanonicalChain {
    pub p: Covector,
    pub q: Covector,
    pub d: BigInt,
    pub interior: Vec<ChainEntry>,
    pub cf_entries: Vec<BigInt>,
}

impl CanonicalChain {
    /// Full vertex list `Q, Q_1, ..., Q_k, P`.
    pub fn vertices(&self) -> Vec<Covector> {
        let mut v = Vec::with_capacity(self.interior.len() + 2);
        v.push(self.q.clone());
        v.extend(self.interior.iter().map(|e| e.covector.clone()));
        v.push(self.p.clone());
        v
    }
}

/// Finds the unique `t` in `1..d` with `(P + t*Q)/d` integral.
fn find_mixing(p: &Covector, q: &Covector, d: &BigInt) -> Result<BigInt> {
    let mut found: Option<BigInt> = None;
    let mut t = BigInt::one();
    while &t < d {
        let ok = (0..3).all(|i| {
            let num = p.coord(i) + &t * q.coord(i);
            num.mod_floor(d).is_zero()
        });
        if ok {
            if found.is_some() {
                return Err(Error::Internal(format!(
                    "mixing integer for Cone({p},{q}) is not unique"
                )));
            }
            found = Some(t.clone());
            if !cfg!(debug_assertions) {
                break;
            }
        }
        t += 1;
    }
    found.ok_or_else(|| Error::Internal(format!("no mixing integer for Cone({p},{q})")))
}

/// The canonical regular subdivision of `Cone(P, Q)`, built from Q: while
/// `d = det(P, Q_cur) > 1` insert `(P + d_1 Q_cur)/d` and recurse on the
/// cone nearer to P.
pub fn canonical_subdivision(p: &Covector, q: &Covector) -> Result<CanonicalChain> {
    let d = det2(p, q);
    if d.is_zero() {
        return Err(Error::DegenerateCone);
    }
    let mut interior = Vec::new();
    let mut cur = q.clone();
    let mut d_cur = d.clone();
    while d_cur > BigInt::one() {
        let t = find_mixing(p, &cur, &d_cur)?;
        let next = {
            let v: IVec3 = std::array::from_fn(|i| {
                (p.coord(i) + &t * cur.coord(i)) / &d_cur
            });
            debug_assert!(vgcd(&v).is_one(), "chain vertex must be primitive");
            Covector(v)
        };
        interior.push(next.clone());
        cur = next;
        d_cur = t;
    }
    let interior: Vec<ChainEntry> = interior
        .into_iter()
        .map(|c| {
            let alpha = det2(p, &c);
            let beta = det2(&c, q);
            debug_assert!({
                let lhs: IVec3 = std::array::from_fn(|i| c.coord(i) * &d);
                let rhs: IVec3 =
                    std::array::from_fn(|i| &beta * p.coord(i) + &alpha * q.coord(i));
                lhs == rhs
            });
            ChainEntry { covector: c, alpha, beta }
        })
        .collect();
    let chain = CanonicalChain { p: p.clone(), q: q.clone(), d, interior, cf_entries: Vec::new() };
    let cf_entries = chain_cf_entries(&chain)?;
    Ok(CanonicalChain { cf_entries, ..chain })
}

/// Recovers `m_i` from `Q_{i-1} + Q_{i+1} = m_i Q_i`.
fn chain_cf_entries(chain: &CanonicalChain) -> Result<Vec<BigInt>> {
    let verts = chain.vertices();
    let mut entries = Vec::new();
    for i in 1..verts.len() - 1 {
        let sum = vadd(verts[i - 1].coords(), verts[i + 1].coords());
        let mid = verts[i].coords();
        let ell = (0..3)
            .find(|&j| !mid[j].is_zero())
            .ok_or_else(|| Error::Internal("zero chain vertex".into()))?;
        let (m, r) = sum[ell].div_rem(&mid[ell]);
        let consistent = r.is_zero()
            && (0..3).all(|j| &sum[j] - &m * &mid[j] == BigInt::zero());
        if !consistent {
            return Err(Error::Internal(format!(
                "three-term recurrence fails at {}",
                verts[i]
            )));
        }
        entries.push(m);
    }
    Ok(entries)
}

/// The negative-regular continued fraction of `num/den`: the unique
/// expansion `[m_1, ..., m_k] = m_1 - 1/[m_2, ..., m_k]` with all entries
/// at least 2 (requires `0 < den < num` coprime; `[n]` for `den = 1`).
pub fn continued_fraction(num: &BigInt, den: &BigInt) -> Result<Vec<BigInt>> {
    if !den.is_positive() || den >= num {
        return Err(Error::InvalidContinuedFraction(format!(
            "need 0 < den < num, got {num}/{den}"
        )));
    }
    if !num.gcd(den).is_one() {
        return Err(Error::InvalidContinuedFraction(format!(
            "{num}/{den} is not in lowest terms"
        )));
    }
    let mut n = num.clone();
    let mut d = den.clone();
    let mut entries = Vec::new();
    loop {
        let m = (&n + &d - BigInt::one()).div_floor(&d);
        let r = &m * &d - &n;
        entries.push(m);
        if r.is_zero() {
            break;
        }
        n = d;
        d = r;
    }
    Ok(entries)
}

/// Evaluates `[m_1, ..., m_k]` as an exact rational (test oracle).
pub fn evaluate_continued_fraction(entries: &[BigInt]) -> BigRational {
    let mut acc = BigRational::zero();
    for m in entries.iter().rev() {
        acc = BigRational::from_integer(m.clone()) - acc.recip_or_zero();
    }
    acc
}

trait RecipOrZero {
    fn recip_or_zero(self) -> Self;
}

impl RecipOrZero for BigRational {
    fn recip_or_zero(self) -> Self {
        if self.is_zero() {
            self
        } else {
            self.recip()
        }
    }
}

/// Inserts `S = S_pos + S_{pos+1}` into a full vertex list `S_0..S_{eta+1}`
/// of a regular subdivision of a 2-cone.
///
/// Position 0 is rejected whenever `S_0` is not strictly positive: for a
/// chain grown from the canonical subdivision by such insertions, every
/// vertex inserted at position 0 lies in the interior of `Cone(Q, Q_1)`,
/// which is exactly what the (#)-condition forbids.
pub fn refine_chain(chain: &[Covector], position: usize) -> Result<Vec<Covector>> {
    if chain.len() < 2 || position + 1 >= chain.len() {
        return Err(Error::Precondition(format!(
            "position {position} out of range for chain of length {}",
            chain.len()
        )));
    }
    if position == 0 && !chain[0].is_strictly_positive() {
        return Err(Error::RefinementForbidden);
    }
    if !det2(&chain[position], &chain[position + 1]).is_one() {
        return Err(Error::Precondition(format!(
            "consecutive determinant at {position} is not 1"
        )));
    }
    let s = Covector(vadd(chain[position].coords(), chain[position + 1].coords()));
    debug_assert!(det2(&chain[position], &s).is_one());
    debug_assert!(det2(&s, &chain[position + 1]).is_one());
    let mut out = chain.to_vec();
    out.insert(position + 1, s);
    Ok(out)
}

/// Checks one coordinate sequence along a chain against the monotonicity /
/// unimodality constraint: non-decreasing when the Q-side value is at most
/// 1; otherwise non-decreasing, non-increasing, or unimodal with a single
/// minimum at least 1.
pub fn coordinate_profile_ok(values: &[BigInt], q_start: &BigInt) -> bool {
    let non_decreasing = values.windows(2).all(|w| w[0] <= w[1]);
    if q_start <= &BigInt::one() {
        return non_decreasing;
    }
    let non_increasing = values.windows(2).all(|w| w[0] >= w[1]);
    if non_decreasing || non_increasing {
        return true;
    }
    let min = values.iter().min().unwrap();
    if min < &BigInt::one() {
        return false;
    }
    let first_min = values.iter().position(|v| v == min).unwrap();
    values[..=first_min].windows(2).all(|w| w[0] >= w[1])
        && values[first_min..].windows(2).all(|w| w[0] <= w[1])
}

/// Verifies every structural invariant of a canonical chain: unimodular
/// consecutive pairs, the three-term recurrence against `cf_entries`,
/// strict monotonicity of the mixing coefficients, strict positivity of
/// interior vertices, and per-coordinate monotonicity/unimodality.
pub fn verify_chain_invariants(chain: &CanonicalChain) -> Result<()> {
    let fail = |msg: String| Err(Error::Internal(msg));
    let verts = chain.vertices();
    for w in verts.windows(2) {
        if !det2(&w[0], &w[1]).is_one() {
            return fail(format!("consecutive det of {} and {} is not 1", w[0], w[1]));
        }
    }
    if chain.cf_entries.len() != chain.interior.len() {
        return fail("cf entry count differs from interior count".into());
    }
    for (i, m) in chain.cf_entries.iter().enumerate() {
        let sum = vadd(verts[i].coords(), verts[i + 2].coords());
        let scaled: IVec3 = std::array::from_fn(|j| m * verts[i + 1].coord(j));
        if sum != scaled {
            return fail(format!("three-term recurrence fails at index {i}"));
        }
        if m < &BigInt::from(2) {
            return fail(format!("cf entry {m} below 2"));
        }
    }
    if chain.p.is_strictly_positive() {
        for e in &chain.interior {
            if !e.covector.is_strictly_positive() {
                return fail(format!("interior vertex {} not strictly positive", e.covector));
            }
        }
    }
    let mut alphas: Vec<BigInt> = vec![chain.d.clone()];
    alphas.extend(chain.interior.iter().map(|e| e.alpha.clone()));
    alphas.push(BigInt::zero());
    if !alphas.windows(2).all(|w| w[0] > w[1]) {
        return fail("alpha not strictly decreasing".into());
    }
    let mut betas: Vec<BigInt> = vec![BigInt::zero()];
    betas.extend(chain.interior.iter().map(|e| e.beta.clone()));
    betas.push(chain.d.clone());
    if !betas.windows(2).all(|w| w[0] < w[1]) {
        return fail("beta not strictly increasing".into());
    }
    for ell in 0..3 {
        let values: Vec<BigInt> = verts.iter().map(|v| v.coord(ell).clone()).collect();
        if !coordinate_profile_ok(&values, chain.q.coord(ell)) {
            return fail(format!("coordinate {ell} violates monotonicity/unimodality"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(Covector::of(44, 30, 555), Covector::of(44, 30, 555));
        assert_eq!(Covector::of(2, 2, 2), Covector::of(1, 1, 1));
        assert_eq!(Covector::of(0, 6, 4), Covector::of(0, 3, 2));
        assert!(matches!(
            Covector::primitive([big(0), big(0), big(0)]),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            Covector::primitive([big(-1), big(2), big(0)]),
            Err(Error::NegativeCoordinate)
        ));
    }

    #[test]
    fn det2_examples() {
        assert_eq!(det2(&Covector::of(44, 30, 555), &Covector::of(30, 44, 555)), big(518));
        assert_eq!(det2(&Covector::of(1, 2, 3), &Covector::of(1, 2, 3)), big(0));
        assert_eq!(det2(&Covector::of(5, 1, 2), &Covector::of(0, 3, 1)), big(5));
    }

    #[test]
    fn subdivision_of_large_cone() {
        let p = Covector::of(44, 30, 555);
        let q = Covector::of(30, 44, 555);
        let chain = canonical_subdivision(&p, &q).unwrap();
        assert_eq!(chain.d, big(518));
        assert_eq!(chain.interior[0].covector, Covector::of(13, 19, 240));
        assert_eq!(chain.interior[0].alpha, big(223));
        let cf: Vec<i64> = vec![3, 2, 2, 12, 2, 2, 3];
        assert_eq!(chain.cf_entries, cf.into_iter().map(big).collect::<Vec<_>>());
    }

    #[test]
    fn subdivision_of_a_non_convenient_cone() {
        // xy + y^6 + z^3; the chain from the axis-type covector Q.
        let p = Covector::of(5, 1, 2);
        let q = Covector::of(0, 3, 1);
        let chain = canonical_subdivision(&p, &q).unwrap();
        let interior: Vec<Covector> =
            chain.interior.iter().map(|e| e.covector.clone()).collect();
        assert_eq!(interior, vec![Covector::of(1, 2, 1), Covector::of(2, 1, 1)]);
        assert_eq!(chain.cf_entries, vec![big(2), big(3)]);
        // Opposite orientation, as worked in the source computation from P.
        let rev = canonical_subdivision(&q, &p).unwrap();
        let rev_interior: Vec<Covector> =
            rev.interior.iter().map(|e| e.covector.clone()).collect();
        assert_eq!(rev_interior, vec![Covector::of(2, 1, 1), Covector::of(1, 2, 1)]);
        assert_eq!(rev.cf_entries, vec![big(3), big(2)]);
    }

    #[test]
    fn subdivision_regular_cone_is_empty() {
        let chain =
            canonical_subdivision(&Covector::of(1, 1, 2), &Covector::of(0, 1, 1)).unwrap();
        assert!(chain.interior.is_empty());
        assert!(chain.cf_entries.is_empty());
    }

    #[test]
    fn subdivision_degenerate_cone_fails() {
        let p = Covector::of(1, 2, 3);
        assert!(matches!(canonical_subdivision(&p, &p), Err(Error::DegenerateCone)));
    }

    #[test]
    fn continued_fraction_examples() {
        let cf = continued_fraction(&big(518), &big(223)).unwrap();
        assert_eq!(cf, [3, 2, 2, 12, 2, 2, 3].map(big).to_vec());
        assert_eq!(continued_fraction(&big(9), &big(1)).unwrap(), vec![big(9)]);
        assert_eq!(continued_fraction(&big(5), &big(2)).unwrap(), vec![big(3), big(2)]);
        assert!(continued_fraction(&big(3), &big(5)).is_err());
        assert!(continued_fraction(&big(6), &big(4)).is_err());
    }

    #[test]
    fn cf_entries_match_d_over_d1() {
        let p = Covector::of(44, 30, 555);
        let q = Covector::of(30, 44, 555);
        let chain = canonical_subdivision(&p, &q).unwrap();
        let d1 = &chain.interior[0].alpha;
        assert_eq!(chain.cf_entries, continued_fraction(&chain.d, d1).unwrap());
    }

    #[test]
    fn refine_chain_inserts_sum() {
        let chain = vec![
            Covector::of(0, 3, 1),
            Covector::of(1, 2, 1),
            Covector::of(2, 1, 1),
            Covector::of(5, 1, 2),
        ];
        let refined = refine_chain(&chain, 1).unwrap();
        assert_eq!(refined[2], Covector::of(3, 3, 2));
        for w in refined.windows(2) {
            assert!(det2(&w[0], &w[1]).is_one());
        }
        // Position 0 is forbidden: the endpoint is not strictly positive.
        assert!(matches!(refine_chain(&chain, 0), Err(Error::RefinementForbidden)));
        // ... but allowed when it is.
        let pos = vec![Covector::of(1, 2, 1), Covector::of(2, 1, 1)];
        assert!(refine_chain(&pos, 0).is_ok());
    }

    #[test]
    fn chain_invariants_on_fixture_cones() {
        for (p, q) in [
            (Covector::of(44, 30, 555), Covector::of(30, 44, 555)),
            (Covector::of(5, 1, 2), Covector::of(0, 3, 1)),
            (Covector::of(172, 12, 195), Covector::of(0, 8, 1)),
            (Covector::of(8, 2, 5), Covector::of(2, 16, 9)),
        ] {
            verify_chain_invariants(&canonical_subdivision(&p, &q).unwrap()).unwrap();
        }
    }

    #[test]
    fn chain_symmetry() {
        let p = Covector::of(172, 12, 195);
        let q = Covector::of(0, 8, 1);
        let fwd = canonical_subdivision(&p, &q).unwrap();
        let rev = canonical_subdivision(&q, &p).unwrap();
        let f: Vec<_> = fwd.interior.iter().map(|e| e.covector.clone()).collect();
        let mut r: Vec<_> = rev.interior.iter().map(|e| e.covector.clone()).collect();
        r.reverse();
        assert_eq!(f, r);
        let mut cf = rev.cf_entries.clone();
        cf.reverse();
        assert_eq!(fwd.cf_entries, cf);
    }

    proptest! {
        #[test]
        fn cf_round_trips(num in 2u64..1_000_000, den_seed in 1u64..1_000_000) {
            let den = den_seed % num;
            prop_assume!(den >= 1);
            let (n, d) = (BigInt::from(num), BigInt::from(den));
            prop_assume!(n.gcd(&d).is_one());
            let cf = continued_fraction(&n, &d).unwrap();
            prop_assert!(cf.iter().all(|m| m >= &BigInt::from(2)));
            let val = evaluate_continued_fraction(&cf);
            prop_assert_eq!(val, BigRational::new(n, d));
        }

        #[test]
        fn random_chain_invariants(
            p1 in 1i64..40, p2 in 1i64..40, p3 in 1i64..40,
            q1 in 0i64..40, q2 in 0i64..40, q3 in 0i64..40,
        ) {
            prop_assume!(q1 + q2 + q3 > 0);
            let p = Covector::of(p1, p2, p3);
            let q = Covector::of(q1, q2, q3);
            prop_assume!(p != q);
            let chain = canonical_subdivision(&p, &q).unwrap();
            prop_assert!(verify_chain_invariants(&chain).is_ok());
            // symmetry
            let rev = canonical_subdivision(&q, &p).unwrap();
            let f: Vec<_> = chain.interior.iter().map(|e| e.covector.clone()).collect();
            let mut r: Vec<_> = rev.interior.iter().map(|e| e.covector.clone()).collect();
            r.reverse();
            prop_assert_eq!(f, r);
        }
    }
}
