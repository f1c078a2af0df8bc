//! Prime divisors of a polynomial and the certified prime set `S`.
//!
//! A prime `p` is a prime divisor of `P` when `p | P(t)` for some rational
//! `t` of nonnegative `p`-adic valuation. When `p` does not divide the
//! leading coefficient this is decided exactly by looking for a root of `P`
//! modulo `p`. Primes dividing the leading coefficient are reported as
//! excluded instead of being resolved.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::primes_up_to;
use crate::modp::{reduce, reduce_int};
use crate::zpoly::IntPoly;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExclusionReason {
    DividesLeadingCoeff,
    DividesA0,
    DividesContent,
}

impl ExclusionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionReason::DividesLeadingCoeff => "divides-leading-coeff",
            ExclusionReason::DividesA0 => "divides-a0",
            ExclusionReason::DividesContent => "divides-content",
        }
    }
}

impl FromStr for ExclusionReason {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "divides-leading-coeff" => Ok(ExclusionReason::DividesLeadingCoeff),
            "divides-a0" => Ok(ExclusionReason::DividesA0),
            "divides-content" => Ok(ExclusionReason::DividesContent),
            other => Err(Error::InvalidArgument(format!("unknown exclusion reason {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    /// `P(witness) ≡ 0 (mod p)`, with the smallest such residue.
    Divisor { witness: u64 },
    NonDivisor,
    Excluded { reason: ExclusionReason },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeClass {
    pub p: u64,
    pub verdict: Verdict,
}

impl PrimeClass {
    pub fn is_divisor(&self) -> bool {
        matches!(self.verdict, Verdict::Divisor { .. })
    }

    pub fn is_non_divisor(&self) -> bool {
        self.verdict == Verdict::NonDivisor
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Divisor { witness } => write!(f, "{} divisor {witness}", self.p),
            Verdict::NonDivisor => write!(f, "{} nondivisor", self.p),
            Verdict::Excluded { reason } => write!(f, "{} excluded {}", self.p, reason.as_str()),
        }
    }
}

/// Verdict without the witness search; same decision procedure as
/// [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    Divisor,
    NonDivisor,
    Excluded,
}

fn precheck(poly: &IntPoly, p: u64) -> Result<Option<Verdict>> {
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let reduced = reduce(poly, p)?;
    if reduced.is_zero() {
        // every coefficient, hence every value, is divisible by p
        return Ok(Some(Verdict::Divisor { witness: 0 }));
    }
    if reduce_int(&poly.leading(), p) == 0 {
        return Ok(Some(Verdict::Excluded { reason: ExclusionReason::DividesLeadingCoeff }));
    }
    Ok(None)
}

/// Classifies `p` as a prime divisor / non-divisor of `P`.
pub fn classify(poly: &IntPoly, p: u64) -> Result<PrimeClass> {
    if let Some(verdict) = precheck(poly, p)? {
        return Ok(PrimeClass { p, verdict });
    }
    let reduced = reduce(poly, p)?;
    let verdict = match reduced.smallest_root() {
        Some(witness) => Verdict::Divisor { witness },
        None => Verdict::NonDivisor,
    };
    Ok(PrimeClass { p, verdict })
}

pub fn classify_kind(poly: &IntPoly, p: u64) -> Result<VerdictKind> {
    if let Some(verdict) = precheck(poly, p)? {
        return Ok(match verdict {
            Verdict::Divisor { .. } => VerdictKind::Divisor,
            Verdict::NonDivisor => VerdictKind::NonDivisor,
            Verdict::Excluded { .. } => VerdictKind::Excluded,
        });
    }
    let reduced = reduce(poly, p)?;
    Ok(if reduced.root_count()? > 0 { VerdictKind::Divisor } else { VerdictKind::NonDivisor })
}

/// Non-divisor primes `p <= bound` of `P` with `p ∤ a_0·a_N`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifiedS {
    pub poly: IntPoly,
    pub bound: u64,
    pub primes: Vec<u64>,
}

impl CertifiedS {
    /// Assembles `S` from a classification of every prime up to `bound`
    /// (e.g. one read back from a cache).
    pub fn from_classifications(poly: &IntPoly, bound: u64, classes: &[PrimeClass]) -> Result<Self> {
        if poly.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let a0 = poly.constant_term();
        if a0.is_zero() {
            return Err(Error::InvalidArgument("a_0 = 0: 0 is a root of P".into()));
        }
        let expected = primes_up_to(bound);
        if classes.len() != expected.len() || classes.iter().zip(&expected).any(|(c, &p)| c.p != p) {
            return Err(Error::InvalidArgument(format!(
                "classification must cover exactly the primes up to {bound}"
            )));
        }
        let primes = classes
            .iter()
            .filter(|c| c.is_non_divisor() && reduce_int(&a0, c.p) != 0)
            .map(|c| c.p)
            .collect();
        Ok(CertifiedS { poly: poly.clone(), bound, primes })
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }
}

/// Classifies the given primes, preserving their order.
pub fn classify_primes(poly: &IntPoly, primes: &[u64]) -> Result<Vec<PrimeClass>> {
    primes.par_iter().map(|&p| classify(poly, p)).collect()
}

/// Classifies every prime up to `bound`, in order.
pub fn classify_all(poly: &IntPoly, bound: u64) -> Result<Vec<PrimeClass>> {
    classify_primes(poly, &primes_up_to(bound))
}

pub fn build_s(poly: &IntPoly, bound: u64) -> Result<CertifiedS> {
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if poly.constant_term().is_zero() {
        return Err(Error::InvalidArgument("a_0 = 0: 0 is a root of P".into()));
    }
    let classes = classify_all(poly, bound)?;
    CertifiedS::from_classifications(poly, bound, &classes)
}

/// `|S| / π(B)`.
pub fn density_of_s(s: &CertifiedS) -> Ratio<u64> {
    let pi = primes_up_to(s.bound).len() as u64;
    if pi == 0 {
        return Ratio::zero();
    }
    Ratio::new(s.primes.len() as u64, pi)
}

/// `v_p(P(t)) >= 1` check for a classified witness.
pub fn witness_is_valid(poly: &IntPoly, class: &PrimeClass) -> bool {
    match class.verdict {
        Verdict::Divisor { witness } => {
            let value = poly.eval_int(&BigInt::from(witness));
            reduce_int(&value, class.p) == 0
        }
        _ => true,
    }
}
