//! Twists `Y^n = d·P(T,Z)`: parameter generation, no-point certificates,
//! bounded exhaustive point search and explicit points at divisor primes.
//!
//! A [`TwistCertificate`] is a proof that the twist has no rational point:
//! a prime `p` in the certified set `S` of `P` with `v_p(d) > 0` and
//! `n ∤ v_p(d)`. For such `p` every value `P(t,z)` with coprime `(t,z)` has
//! `p`-adic valuation divisible by `n` (it is either a unit or
//! `N·v_p(t)` up to units), so `d·P(t,z)` can never be an `n`-th power.
//!
//! Searches never produce certificates; they only cross-check them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_prime_u64, valuation};
use crate::error::Hypothesis;
use crate::modp::reduce_int;
use crate::prime_sieve::{classify, CertifiedS, Verdict};
use crate::ser;
use crate::zpoly::IntPoly;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwistShape {
    /// `d = p`
    Prime,
    /// `d = p·2^n`
    PrimeTimesNthPower,
    /// `d = p^(n+1)`
    PrimePower,
}

impl FromStr for TwistShape {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prime" => Ok(TwistShape::Prime),
            "prime-times-nth-power" => Ok(TwistShape::PrimeTimesNthPower),
            "prime-power" => Ok(TwistShape::PrimePower),
            other => Err(Error::InvalidArgument(format!("unknown twist shape {other:?}"))),
        }
    }
}

/// Twist parameters built from the first `count` primes of `S`.
pub fn make_twists(s: &CertifiedS, n: u32, count: usize, shape: TwistShape) -> Result<Vec<BigInt>> {
    if s.is_empty() {
        return Err(Error::EmptyPrimeSet);
    }
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    Ok(s.primes
        .iter()
        .take(count)
        .map(|&p| {
            let p = BigInt::from(p);
            match shape {
                TwistShape::Prime => p,
                TwistShape::PrimeTimesNthPower => p * BigInt::from(2).pow(n),
                TwistShape::PrimePower => p.pow(n + 1),
            }
        })
        .collect())
}

/// Checks `n >= 2`, `n | deg P` and the multiplicity bound.
pub fn check_curve_hypotheses(poly: &IntPoly, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if poly.degree() % n as usize != 0 {
        return Err(Error::hypothesis(
            Hypothesis::ExponentDividesDegree,
            format!("n = {n} does not divide N = {}", poly.degree()),
        ));
    }
    if !poly.multiplicity_bound_ok(n) {
        return Err(Error::hypothesis(
            Hypothesis::MultiplicityBound,
            format!("some root of {poly} has multiplicity >= {n}"),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistCertificate {
    pub poly: IntPoly,
    pub n: u32,
    #[serde(serialize_with = "ser::bigint")]
    pub d: BigInt,
    pub witness_prime: u64,
    pub valuation: u32,
}

impl TwistCertificate {
    /// Re-derives every ingredient of the certificate from scratch.
    pub fn verify(&self) -> Result<()> {
        check_curve_hypotheses(&self.poly, self.n)?;
        let p = self.witness_prime;
        let fail = |why: String| Err(Error::Invariant(format!("certificate for d = {} at p = {p}: {why}", self.d)));
        if !is_prime_u64(p) {
            return fail("witness is not prime".into());
        }
        if classify(&self.poly, p)?.verdict != Verdict::NonDivisor {
            return fail("witness is not a non-divisor".into());
        }
        if reduce_int(&self.poly.constant_term(), p) == 0 {
            return fail("witness divides a_0".into());
        }
        if self.d.is_zero() {
            return fail("d = 0".into());
        }
        let v = valuation(&self.d, p);
        if v != self.valuation || v == 0 || v % self.n == 0 {
            return fail(format!("v_p(d) = {v} is not a positive non-multiple of n"));
        }
        Ok(())
    }
}

/// Searches `S` for a prime certifying that `Y^n = d·P(T,Z)` has no rational
/// point. `None` means inconclusive.
pub fn certify_no_points(poly: &IntPoly, n: u32, d: &BigInt, s: &CertifiedS) -> Result<Option<TwistCertificate>> {
    check_curve_hypotheses(poly, n)?;
    if d.is_zero() {
        return Err(Error::InvalidArgument("d must be nonzero".into()));
    }
    if s.poly != *poly {
        return Err(Error::InvalidArgument("the certified prime set belongs to a different polynomial".into()));
    }
    for &p in &s.primes {
        if reduce_int(d, p) != 0 {
            continue;
        }
        let v = valuation(d, p);
        if v % n != 0 {
            return Ok(Some(TwistCertificate { poly: poly.clone(), n, d: d.clone(), witness_prime: p, valuation: v }));
        }
    }
    Ok(None)
}

/// A point `[y : t : z]` of weighted projective space with weights
/// `(N/n, 1, 1)`: `t, z` coprime, `z >= 0`, and `(1, 0)` the only point at
/// infinity. `y` is integral because `y^n` is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WPoint {
    #[serde(serialize_with = "ser::bigint")]
    pub y: BigInt,
    #[serde(serialize_with = "ser::bigint")]
    pub t: BigInt,
    #[serde(serialize_with = "ser::bigint")]
    pub z: BigInt,
}

impl WPoint {
    /// `y^n = d·P(t, z)` exactly, plus the normalisation invariants.
    pub fn verify(&self, poly: &IntPoly, n: u32, d: &BigInt) -> bool {
        if self.z.is_negative() || !self.t.gcd(&self.z).is_one() {
            return false;
        }
        if self.z.is_zero() && !self.t.is_one() {
            return false;
        }
        match poly.homogenize().eval(&self.t, &self.z) {
            Ok(v) => self.y.pow(n) == d * v,
            Err(_) => false,
        }
    }

    /// The affine `y`-coordinate `y / z^{N/n}` on `y^n = d·P(t/z)`.
    pub fn affine_y(&self, weight: u32) -> Option<BigRational> {
        (!self.z.is_zero()).then(|| BigRational::new(self.y.clone(), self.z.pow(weight)))
    }
}

impl fmt::Display for WPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.y, self.t, self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    #[serde(serialize_with = "ser::bigint")]
    pub d: BigInt,
    pub n: u32,
    pub height_bound: u64,
    pub points: Vec<WPoint>,
    pub exhaustive: bool,
}

/// Exact `n`-th root of `x`, if `x` is an `n`-th power (negative `x` only for
/// odd `n`).
pub fn integer_nth_root(x: &BigInt, n: u32) -> Option<BigInt> {
    assert!(n >= 1, "root index must be positive");
    if x.is_negative() && n % 2 == 0 {
        return None;
    }
    let r = x.nth_root(n);
    (r.pow(n) == *x).then_some(r)
}

const SQUARE_MOD_64: u64 = {
    let mut mask = 0u64;
    let mut i = 0;
    while i < 64 {
        mask |= 1 << ((i * i) % 64);
        i += 1;
    }
    mask
};

fn residue_table<const M: usize>() -> [bool; M] {
    let mut table = [false; M];
    for i in 0..M {
        table[(i * i) % M] = true;
    }
    table
}

struct SquareFilter {
    mod63: [bool; 63],
    mod65: [bool; 65],
    mod11: [bool; 11],
}

impl SquareFilter {
    fn new() -> Self {
        SquareFilter { mod63: residue_table(), mod65: residue_table(), mod11: residue_table() }
    }

    fn sqrt_u64(&self, v: u64) -> Option<u64> {
        if SQUARE_MOD_64 >> (v & 63) & 1 == 0
            || !self.mod63[(v % 63) as usize]
            || !self.mod65[(v % 65) as usize]
            || !self.mod11[(v % 11) as usize]
        {
            return None;
        }
        let mut r = (v as f64).sqrt() as u64;
        while (r as u128) * (r as u128) > v as u128 {
            r -= 1;
        }
        while ((r + 1) as u128) * ((r + 1) as u128) <= v as u128 {
            r += 1;
        }
        ((r as u128) * (r as u128) == v as u128).then_some(r)
    }
}

/// Exact `n`-th root of a machine integer, if any.
fn nth_root_i128(v: i128, n: u32, filter: &SquareFilter) -> Option<i128> {
    if v < 0 {
        if n % 2 == 0 {
            return None;
        }
        return nth_root_i128(v.checked_neg()?, n, filter).map(|r| -r);
    }
    if n == 2 {
        if let Ok(small) = u64::try_from(v) {
            return filter.sqrt_u64(small).map(i128::from);
        }
        let r = BigInt::from(v).sqrt();
        let r = r.to_i128()?;
        return (r.checked_mul(r) == Some(v)).then_some(r);
    }
    let est = (v as f64).powf(1.0 / n as f64).round() as i128;
    (est.saturating_sub(1)..=est + 1).find(|r| *r >= 0 && r.checked_pow(n) == Some(v))
}

/// The curve in machine integers, when its coefficients and `d` fit.
struct FastCurve {
    coeffs: Vec<i128>,
    d: i128,
}

impl FastCurve {
    fn new(poly: &IntPoly, d: &BigInt) -> Option<Self> {
        let coeffs = poly.coeffs().iter().map(|c| c.to_i64().map(i128::from)).collect::<Option<Vec<_>>>()?;
        Some(FastCurve { coeffs, d: d.to_i64()? as i128 })
    }

    /// `d·P(t, z)` or `None` on overflow.
    fn value(&self, t: i128, zpows: &[Option<i128>]) -> Option<i128> {
        let n = self.coeffs.len() - 1;
        let mut acc = self.coeffs[n];
        for i in (0..n).rev() {
            let term = self.coeffs[i].checked_mul(zpows[n - i]?)?;
            acc = acc.checked_mul(t)?.checked_add(term)?;
        }
        acc.checked_mul(self.d)
    }
}

/// Points on the twist `Y^n = d·P(T,Z)` with `|t| <= bound`, `0 <= z <=
/// bound`, sorted by `(z, t)`.
pub fn search_points(poly: &IntPoly, n: u32, d: &BigInt, bound: u64) -> Result<SearchReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if poly.degree() % n as usize != 0 {
        return Err(Error::hypothesis(
            Hypothesis::ExponentDividesDegree,
            format!("n = {n} does not divide N = {}", poly.degree()),
        ));
    }
    if d.is_zero() {
        return Err(Error::InvalidArgument("d must be nonzero".into()));
    }
    let bound_i = i64::try_from(bound).map_err(|_| Error::SizeLimit("search bound".into()))?;
    let hom = poly.homogenize();
    let fast = FastCurve::new(poly, d);
    let filter = SquareFilter::new();
    let deg = poly.degree();

    let slow_root = |t: i64, z: i64| -> Option<BigInt> {
        let v = d * hom.eval(&BigInt::from(t), &BigInt::from(z)).ok()?;
        integer_nth_root(&v, n)
    };

    let per_z: Vec<Vec<WPoint>> = (0..=bound_i)
        .into_par_iter()
        .map(|z| {
            let mut found = Vec::new();
            let zpows: Vec<Option<i128>> =
                (0..=deg as u32).map(|k| (z as i128).checked_pow(k)).collect();
            let ts: Box<dyn Iterator<Item = i64>> =
                if z == 0 { Box::new(std::iter::once(1)) } else { Box::new(-bound_i..=bound_i) };
            for t in ts {
                if z != 0 && t.gcd(&z) != 1 {
                    continue;
                }
                let root = match fast.as_ref().and_then(|f| f.value(t as i128, &zpows)) {
                    Some(v) => nth_root_i128(v, n, &filter).map(BigInt::from),
                    None => slow_root(t, z),
                };
                if let Some(y) = root {
                    found.push(WPoint { y, t: BigInt::from(t), z: BigInt::from(z) });
                }
            }
            found
        })
        .collect();
    Ok(SearchReport {
        d: d.clone(),
        n,
        height_bound: bound,
        points: per_z.into_iter().flatten().collect(),
        exhaustive: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TwistStatus {
    CertifiedEmpty { certificate: TwistCertificate },
    PointsFound { count: usize },
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistAssessment {
    #[serde(serialize_with = "ser::bigint")]
    pub d: BigInt,
    pub status: TwistStatus,
    pub search: SearchReport,
}

/// Certificate attempt plus exhaustive search to `search_bound`. A point on
/// a certified twist is reported as an invariant violation.
pub fn assess_twist(
    poly: &IntPoly,
    n: u32,
    d: &BigInt,
    s: &CertifiedS,
    search_bound: u64,
) -> Result<TwistAssessment> {
    let certificate = certify_no_points(poly, n, d, s)?;
    let search = search_points(poly, n, d, search_bound)?;
    if let Some(bad) = search.points.iter().find(|pt| !pt.verify(poly, n, d)) {
        return Err(Error::Invariant(format!("search returned a non-point {bad}")));
    }
    let status = match (certificate, search.points.len()) {
        (Some(cert), 0) => TwistStatus::CertifiedEmpty { certificate: cert },
        (Some(_), k) => {
            return Err(Error::Invariant(format!(
                "twist d = {d} is certified empty but {k} point(s) were found, first {}",
                search.points[0]
            )))
        }
        (None, 0) => TwistStatus::Unknown,
        (None, count) => TwistStatus::PointsFound { count },
    };
    Ok(TwistAssessment { d: d.clone(), status, search })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorPoint {
    pub p: u64,
    #[serde(serialize_with = "ser::bigint")]
    pub d: BigInt,
    pub point: WPoint,
    pub valuation: u32,
}

/// At a divisor prime `p ∤ disc·a_N`, finds `t` with `v_p(P(t)) = 1` and the
/// point `[P(t) : t : 1]` on the twist by `d = P(t)^{n-1}`. `None` when `p`
/// is not a prime divisor.
pub fn construct_divisor_point(poly: &IntPoly, n: u32, p: u64) -> Result<Option<DivisorPoint>> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let class = classify(poly, p)?;
    if reduce_int(&poly.leading(), p) == 0 {
        return Err(Error::hypothesis(Hypothesis::PrimeCoprimeToLeading, format!("{p} divides a_N")));
    }
    if reduce_int(&poly.discriminant(), p) == 0 {
        return Err(Error::hypothesis(Hypothesis::PrimeCoprimeToDisc, format!("{p} divides the discriminant")));
    }
    let Verdict::Divisor { witness } = class.verdict else {
        return Ok(None);
    };
    let mut t = BigInt::from(witness);
    let mut value = poly.eval_int(&t);
    if value.is_zero() || valuation(&value, p) >= 2 {
        // P(t+p) = P(t) + p·P'(t) + p²·R with p ∤ P'(t): valuation exactly 1
        t += p;
        value = poly.eval_int(&t);
    }
    if value.is_zero() || valuation(&value, p) != 1 {
        return Err(Error::Invariant(format!("Taylor shift failed to reach v_p(P(t)) = 1 at p = {p}")));
    }
    let d = value.pow(n - 1);
    let point = WPoint { y: value, t, z: BigInt::one() };
    if !point.verify(poly, n, &d) {
        return Err(Error::Invariant(format!("constructed point {point} does not verify")));
    }
    Ok(Some(DivisorPoint { p, valuation: valuation(&d, p), d, point }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime_sieve::build_s;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn quartic() -> IntPoly {
        ip(&[1, 0, 0, 0, 1])
    }

    #[test]
    fn make_twists_examples() {
        let s = build_s(&quartic(), 100).unwrap();
        assert_eq!(make_twists(&s, 2, 3, TwistShape::Prime).unwrap(), vec![big(3), big(5), big(7)]);
        assert_eq!(make_twists(&s, 2, 1, TwistShape::PrimeTimesNthPower).unwrap(), vec![big(12)]);
        assert_eq!(make_twists(&s, 2, 1, TwistShape::PrimePower).unwrap(), vec![big(27)]);
        let empty = build_s(&ip(&[-1, 0, 1]), 100).unwrap();
        assert_eq!(make_twists(&empty, 2, 1, TwistShape::Prime), Err(Error::EmptyPrimeSet));
    }

    #[test]
    fn certify_examples() {
        let s = build_s(&quartic(), 100).unwrap();
        let cert = certify_no_points(&quartic(), 2, &big(3), &s).unwrap().unwrap();
        assert_eq!((cert.witness_prime, cert.valuation), (3, 1));
        cert.verify().unwrap();
        assert_eq!(certify_no_points(&quartic(), 2, &big(-1), &s).unwrap(), None);
        assert_eq!(certify_no_points(&quartic(), 2, &big(17), &s).unwrap(), None);
        // 9 = 3^2 has even valuation everywhere
        assert_eq!(certify_no_points(&quartic(), 2, &big(9), &s).unwrap(), None);
    }

    #[test]
    fn certify_rejects_broken_hypotheses() {
        let s = build_s(&quartic(), 100).unwrap();
        assert!(matches!(
            certify_no_points(&quartic(), 3, &big(3), &s),
            Err(Error::Hypothesis { hypothesis: Hypothesis::ExponentDividesDegree, .. })
        ));
        let square = ip(&[1, 0, 2, 0, 1]); // (T^2+1)^2
        let s2 = build_s(&square, 100).unwrap();
        assert!(matches!(
            certify_no_points(&square, 2, &big(3), &s2),
            Err(Error::Hypothesis { hypothesis: Hypothesis::MultiplicityBound, .. })
        ));
        assert!(certify_no_points(&quartic(), 2, &big(0), &s).is_err());
    }

    #[test]
    fn search_examples() {
        let r = search_points(&quartic(), 2, &big(2), 10).unwrap();
        assert!(r.exhaustive);
        assert!(r.points.contains(&WPoint { y: big(2), t: big(1), z: big(1) }));
        assert!(r.points.iter().all(|pt| pt.verify(&quartic(), 2, &big(2))));

        let r = search_points(&quartic(), 2, &big(17), 10).unwrap();
        assert!(r.points.contains(&WPoint { y: big(17), t: big(2), z: big(1) }));

        assert!(search_points(&quartic(), 2, &big(3), 60).unwrap().points.is_empty());
    }

    #[test]
    fn search_includes_infinity_and_sorts_by_z() {
        // a_N = 1 is a square, so [1:1:0] lies on the untwisted curve
        let r = search_points(&quartic(), 2, &big(1), 5).unwrap();
        assert_eq!(r.points[0], WPoint { y: big(1), t: big(1), z: big(0) });
        let keys: Vec<(BigInt, BigInt)> = r.points.iter().map(|p| (p.z.clone(), p.t.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn fast_and_slow_paths_agree() {
        // a huge d forces the big-integer path for every point
        let huge = BigInt::from(2).pow(100) * big(2);
        let poly = ip(&[-2, 0, 1, 0, 3]);
        let fast = search_points(&poly, 2, &big(2), 30).unwrap();
        let slow = search_points(&poly, 2, &huge, 30).unwrap();
        // d and huge differ by the square 2^100
        assert_eq!(fast.points.len(), slow.points.len());
        for (a, b) in fast.points.iter().zip(&slow.points) {
            assert_eq!((&a.t, &a.z), (&b.t, &b.z));
            assert_eq!(&a.y * BigInt::from(2).pow(50), b.y);
        }
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(integer_nth_root(&big(289), 2), Some(big(17)));
        assert_eq!(integer_nth_root(&big(-27), 3), Some(big(-3)));
        assert_eq!(integer_nth_root(&big(50), 2), None);
        assert_eq!(integer_nth_root(&big(-4), 2), None);
        let filter = SquareFilter::new();
        for v in [0i128, 1, 4, 289, 1 << 62, (1i128 << 62) + 1, 10_i128.pow(30), -27, -28] {
            for n in 2..6 {
                let expected = integer_nth_root(&BigInt::from(v), n).map(|r| r.to_i128().unwrap());
                assert_eq!(nth_root_i128(v, n, &filter), expected, "{v} {n}");
            }
        }
    }

    #[test]
    fn divisor_point_examples() {
        let dp = construct_divisor_point(&quartic(), 2, 17).unwrap().unwrap();
        assert_eq!(dp.d, big(17));
        assert_eq!(dp.point, WPoint { y: big(17), t: big(2), z: big(1) });
        assert!(matches!(
            construct_divisor_point(&quartic(), 2, 2),
            Err(Error::Hypothesis { hypothesis: Hypothesis::PrimeCoprimeToDisc, .. })
        ));
        let dp = construct_divisor_point(&ip(&[1, 0, 1]), 2, 5).unwrap().unwrap();
        assert_eq!((dp.d.clone(), dp.point.clone()), (big(5), WPoint { y: big(5), t: big(2), z: big(1) }));
        assert_eq!(construct_divisor_point(&quartic(), 2, 3).unwrap(), None);
    }

    #[test]
    fn divisor_point_needs_taylor_shift() {
        let poly = ip(&[-50, 0, 1]); // disc = 200, rejected at 5
        assert!(construct_divisor_point(&poly, 2, 5).is_err());
        let poly = ip(&[-25, 1, 1]); // T^2 + T - 25, disc = 101
        let dp = construct_divisor_point(&poly, 3, 5).unwrap().unwrap();
        // witness 0: P(0) = -25 has v_5 = 2, so t = 5: P(5) = 5
        assert_eq!(dp.point.t, big(5));
        assert_eq!(dp.point.y, big(5));
        assert_eq!(dp.valuation, 2);
    }
}
