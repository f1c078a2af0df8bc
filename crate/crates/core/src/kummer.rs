//! The Kummer extension `E = Q(T)(ⁿ√P(T))`: branch points, specializations,
//! the reduction to `n' = n/e`, and witnesses that `E` is not parametric.
//!
//! The bridge to [`crate::twist_forge`]: for `n = 2` and even `deg P`, the
//! quadratic field `Q(√d)` is the specialization of `E` at `t0 = t/z` exactly
//! when `[y : t : z]` is a point of `Y^2 = d·P(T,Z)` with `y ≠ 0`. A twist
//! certificate therefore rules `Q(√d)` out as a specialization.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{factorize, is_squarefree, primes_up_to, valuation};
use crate::error::Hypothesis;
use crate::galois_cert::{certify_condition_h, ConditionHCertificate};
use crate::prime_sieve::CertifiedS;
use crate::ser;
use crate::twist_forge::{
    certify_no_points, check_curve_hypotheses, integer_nth_root, search_points, TwistCertificate, WPoint,
};
use crate::zpoly::IntPoly;
use crate::{Error, Result, DEFAULT_CERT_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedKummerData {
    pub n: u32,
    /// `gcd(n, e_1, ..., e_s)`
    pub e: u32,
    pub n_prime: u32,
    pub multiplicities: Vec<u32>,
    pub reduced_multiplicities: Vec<u32>,
    /// `P = P_0^e`, so `ⁿ√P = ⁿ'√P_0`.
    pub p0: IntPoly,
}

fn multiplicity_error(poly: &IntPoly, n: u32) -> Error {
    Error::hypothesis(Hypothesis::MultiplicityBound, format!("some root of {poly} has multiplicity >= {n}"))
}

/// Writes `P = P_0^e` with `e = gcd(n, e_1, ..., e_s)`.
///
/// The content of `P` must itself be an `e`-th power; otherwise `ⁿ√P` is not
/// an `n'`-th root of an integer polynomial and the input is rejected.
pub fn reduce_kummer(poly: &IntPoly, n: u32) -> Result<ReducedKummerData> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    let sqf = poly.squarefree_decomposition()?;
    let multiplicities = sqf.multiplicities();
    if multiplicities.iter().any(|&m| m >= n) {
        return Err(multiplicity_error(poly, n));
    }
    let e = multiplicities.iter().fold(n, |g, &m| g.gcd(&m));
    let c0 = integer_nth_root(&sqf.content, e).ok_or_else(|| {
        Error::InvalidArgument(format!("content {} of P is not a {e}-th power", sqf.content))
    })?;
    let p0 = sqf
        .parts
        .iter()
        .fold(IntPoly::constant(c0), |acc, (a, m)| &acc * &a.pow(m / e));
    if p0.pow(e) != *poly {
        return Err(Error::Invariant("P_0^e does not reconstruct P".into()));
    }
    Ok(ReducedKummerData {
        n,
        e,
        n_prime: n / e,
        reduced_multiplicities: multiplicities.iter().map(|m| m / e).collect(),
        multiplicities,
        p0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchPoints {
    pub count: usize,
    pub infinity_branched: bool,
}

/// The branch points of `E/Q(T)` are the distinct roots of `P`; `∞` is
/// unbranched because `n | deg P`.
pub fn branch_points_count(poly: &IntPoly, n: u32) -> Result<BranchPoints> {
    check_curve_hypotheses(poly, n)?;
    let sqf = poly.squarefree_decomposition()?;
    let e = sqf.multiplicities().iter().fold(n, |g, &m| g.gcd(&m));
    if e != 1 {
        return Err(Error::hypothesis(
            Hypothesis::CoprimeMultiplicities,
            format!("gcd(n, e_1, ..., e_s) = {e}"),
        ));
    }
    Ok(BranchPoints { count: poly.radical()?.degree(), infinity_branched: false })
}

/// A nonzero rational modulo `n`-th powers, as its `n`-th-power-free
/// integer representative. Signed for `n = 2`, positive for odd `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpecializationClass {
    pub n: u32,
    #[serde(serialize_with = "ser::bigint")]
    pub rep: BigInt,
}

impl SpecializationClass {
    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }
}

const TRIAL_PRIME_LIMIT: u64 = 1 << 16;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_PRIME_LIMIT))
}

/// `n`-th-power-free part of a positive integer: trial division, then full
/// factorization of a cofactor of at most 128 bits.
fn power_free_magnitude(x: &BigUint, n: u32) -> Result<BigUint> {
    let mut rest = x.clone();
    let mut rep = BigUint::one();
    for &p in trial_primes() {
        if BigUint::from(p * p) > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        rep *= BigUint::from(p).pow(e % n);
    }
    if rest.bits() > 128 {
        return Err(Error::SizeLimit(format!("class representative cofactor {rest} exceeds 2^128")));
    }
    if !rest.is_one() {
        for (q, e) in factorize(&rest) {
            rep *= q.pow(e % n);
        }
    }
    Ok(rep)
}

/// Class of a nonzero rational `a/b` modulo `n`-th powers.
pub fn canonical_class(value: &BigRational, n: u32) -> Result<SpecializationClass> {
    if value.is_zero() {
        return Err(Error::InvalidArgument("zero has no Kummer class".into()));
    }
    if n < 2 || (n % 2 == 0 && n != 2) {
        return Err(Error::InvalidArgument(format!("classes are computed for n = 2 or odd n, not n = {n}")));
    }
    let r = value.numer() * value.denom().pow(n - 1);
    let magnitude = power_free_magnitude(r.magnitude(), n)?;
    let sign = if n == 2 && r.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok(SpecializationClass { n, rep: BigInt::from_biguint(sign, magnitude) })
}

/// Class of `P(t0)`, i.e. the specialization `Q(ⁿ√P(t0))` of `E` at `t0`.
pub fn specialize(poly: &IntPoly, n: u32, t0: &BigRational) -> Result<SpecializationClass> {
    let value = poly.eval(t0);
    if value.is_zero() {
        return Err(Error::InvalidArgument(format!("t0 = {t0} is a root of P, hence a branch point")));
    }
    canonical_class(&value, n)
}

/// Class of `a_N`, the specialization at infinity.
pub fn specialize_infinity(poly: &IntPoly, n: u32) -> Result<SpecializationClass> {
    if poly.is_constant() || poly.degree() % n as usize != 0 {
        return Err(Error::hypothesis(
            Hypothesis::ExponentDividesDegree,
            format!("n = {n} does not divide N = {}", poly.degree()),
        ));
    }
    canonical_class(&BigRational::from_integer(poly.leading()), n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub m: u32,
    pub certificate: TwistCertificate,
}

/// Proof that `Q(ⁿ'√d)` is not a specialization of `E`: `v_p(d) = 1` at the
/// Eisenstein prime (so `Y^{n'} - d` is irreducible) and, for every `m < n'`
/// prime to `n'`, a certificate that the twist of `P_0` by `d^m` has no point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametricityWitness {
    #[serde(serialize_with = "ser::bigint")]
    pub d: BigInt,
    pub eisenstein_prime: u64,
    pub n_prime: u32,
    pub subgroup_order: u32,
    pub chain: Vec<ChainLink>,
    pub curve_level_only: bool,
}

impl ParametricityWitness {
    pub fn verify(&self) -> Result<()> {
        let fail = |why: &str| Err(Error::Invariant(format!("witness d = {}: {why}", self.d)));
        if self.subgroup_order < 2 || self.n_prime % self.subgroup_order != 0 {
            return fail("subgroup order must be at least 2 and divide n'");
        }
        if self.d.is_zero() || valuation(&self.d, self.eisenstein_prime) != 1 {
            return fail("d is not Eisenstein at the stated prime");
        }
        let expected: Vec<u32> = (1..self.n_prime).filter(|m| m.gcd(&self.n_prime) == 1).collect();
        let got: Vec<u32> = self.chain.iter().map(|l| l.m).collect();
        if got != expected {
            return fail("certificate chain does not cover every m < n' prime to n'");
        }
        let poly = &self.chain[0].certificate.poly;
        for link in &self.chain {
            let cert = &link.certificate;
            if cert.n != self.n_prime || cert.d != self.d.pow(link.m) || cert.poly != *poly {
                return fail("chained certificate has the wrong twist");
            }
            cert.verify()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "at", content = "t0", rename_all = "kebab-case")]
pub enum SpecializationPoint {
    Finite(#[serde(serialize_with = "ser::rational")] BigRational),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "evidence", rename_all = "kebab-case")]
pub enum SpecializationVerdict {
    Yes(SpecializationPoint),
    CertifiedNo(ParametricityWitness),
    Unknown,
}

/// Decides whether `Q(√d)` is the specialization of `Q(T)(√P)` at some `t0`
/// of height at most `bound` (or at infinity). `d = 1` asks for the trivial
/// specialization. The answer `Yes` names the first `t0 = t/z` ordered by
/// height, then `|t|`, then `z`, positive before negative.
pub fn is_specialization(poly: &IntPoly, d: &BigInt, bound: u64, s: &CertifiedS) -> Result<SpecializationVerdict> {
    if !poly.is_separable() {
        return Err(Error::hypothesis(Hypothesis::Separable, format!("{poly} has a repeated root")));
    }
    if poly.degree() % 2 != 0 {
        return Err(Error::hypothesis(Hypothesis::ExponentDividesDegree, "deg P must be even"));
    }
    if d.is_zero() || !is_squarefree(d) {
        return Err(Error::InvalidArgument(format!("d = {d} must be a nonzero squarefree integer")));
    }
    if let Some(cert) = certify_no_points(poly, 2, d, s)? {
        return Ok(SpecializationVerdict::CertifiedNo(ParametricityWitness {
            d: d.clone(),
            eisenstein_prime: cert.witness_prime,
            n_prime: 2,
            subgroup_order: 2,
            chain: vec![ChainLink { m: 1, certificate: cert }],
            curve_level_only: false,
        }));
    }
    let report = search_points(poly, 2, d, bound)?;
    let finite = report
        .points
        .iter()
        .filter(|pt| !pt.z.is_zero() && !pt.y.is_zero())
        .min_by(|a, b| {
            let key = |pt: &WPoint| (pt.t.abs().max(pt.z.clone()), pt.t.abs(), pt.z.clone(), pt.t.is_negative());
            key(a).cmp(&key(b))
        });
    if let Some(pt) = finite {
        return Ok(SpecializationVerdict::Yes(SpecializationPoint::Finite(BigRational::new(
            pt.t.clone(),
            pt.z.clone(),
        ))));
    }
    if specialize_infinity(poly, 2)?.rep == *d {
        return Ok(SpecializationVerdict::Yes(SpecializationPoint::Infinity));
    }
    Ok(SpecializationVerdict::Unknown)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub hypothesis: Hypothesis,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParametricReport {
    pub reduction: ReducedKummerData,
    pub checklist: Vec<HypothesisCheck>,
    pub condition_h: ConditionHCertificate,
    pub witnesses: Vec<ParametricityWitness>,
    /// False when `n' > 2`: the certificates stand but say nothing about
    /// parametricity over the rationals.
    pub parametricity_claimed: bool,
}

/// Checks (hyp-1), (hyp-2) and (hyp-4), failing on the first violation, and
/// records (hyp-3), whose failure only suppresses the parametricity claim.
pub fn parametric_checklist(
    poly: &IntPoly,
    n: u32,
) -> Result<(ReducedKummerData, Vec<HypothesisCheck>, ConditionHCertificate)> {
    if n < 2 {
        return Err(Error::InvalidArgument("n must be at least 2".into()));
    }
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let mut checklist = Vec::new();
    if poly.degree() % n as usize != 0 {
        return Err(Error::hypothesis(
            Hypothesis::ExponentDividesDegree,
            format!("n = {n} does not divide N = {}", poly.degree()),
        ));
    }
    checklist.push(HypothesisCheck {
        hypothesis: Hypothesis::ExponentDividesDegree,
        passed: true,
        detail: format!("{n} | {}", poly.degree()),
    });
    if !poly.multiplicity_bound_ok(n) {
        return Err(multiplicity_error(poly, n));
    }
    let reduction = reduce_kummer(poly, n)?;
    checklist.push(HypothesisCheck {
        hypothesis: Hypothesis::MultiplicityBound,
        passed: true,
        detail: format!("multiplicities {:?} < {n}", reduction.multiplicities),
    });
    let roots_of_unity = reduction.n_prime == 2;
    checklist.push(HypothesisCheck {
        hypothesis: Hypothesis::RootsOfUnity,
        passed: roots_of_unity,
        detail: if roots_of_unity {
            "n' = 2".to_string()
        } else {
            format!("n' = {}: curve-level certificates only; parametricity claim suppressed", reduction.n_prime)
        },
    });
    let condition_h = certify_condition_h(poly, DEFAULT_CERT_BOUND)?.ok_or_else(|| {
        Error::hypothesis(
            Hypothesis::FixedPointFree,
            format!("no prime up to {DEFAULT_CERT_BOUND} certifies condition (H)"),
        )
    })?;
    checklist.push(HypothesisCheck {
        hypothesis: Hypothesis::FixedPointFree,
        passed: true,
        detail: format!("pattern {:?} at p = {}", condition_h.pattern.degrees, condition_h.witness_prime),
    });
    Ok((reduction, checklist, condition_h))
}

/// Runs the hypothesis checklist, reduces to `(P_0, n')` and builds `count`
/// witnesses `d = p` from the primes of `s`, which must be `S(P_0)`.
pub fn nonparametric_witnesses(poly: &IntPoly, n: u32, count: usize, s: &CertifiedS) -> Result<ParametricReport> {
    let (reduction, checklist, condition_h) = parametric_checklist(poly, n)?;
    let roots_of_unity = reduction.n_prime == 2;
    if s.poly != reduction.p0 {
        return Err(Error::InvalidArgument("the certified prime set must belong to P_0".into()));
    }
    if s.is_empty() {
        return Err(Error::EmptyPrimeSet);
    }
    let n_prime = reduction.n_prime;
    let mut witnesses = Vec::new();
    for &p in s.primes.iter().take(count) {
        let d = BigInt::from(p);
        let mut chain = Vec::new();
        for m in (1..n_prime).filter(|m| m.gcd(&n_prime) == 1) {
            let cert = certify_no_points(&reduction.p0, n_prime, &d.pow(m), s)?
                .ok_or_else(|| Error::Invariant(format!("no certificate for d^{m} with d = {d}")))?;
            chain.push(ChainLink { m, certificate: cert });
        }
        let witness = ParametricityWitness {
            d,
            eisenstein_prime: p,
            n_prime,
            subgroup_order: n_prime,
            chain,
            curve_level_only: !roots_of_unity,
        };
        witness.verify()?;
        witnesses.push(witness);
    }
    Ok(ParametricReport { reduction, checklist, condition_h, witnesses, parametricity_claimed: roots_of_unity })
}
