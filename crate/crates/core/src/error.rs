use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Named hypotheses checked before a certificate or witness is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Hypothesis {
    /// `n` divides the degree `N`.
    #[serde(rename = "hyp-1")]
    ExponentDividesDegree,
    /// Every root of `P` has multiplicity at most `n - 1`.
    #[serde(rename = "hyp-2")]
    MultiplicityBound,
    /// The base field contains the `n'`-th roots of unity (over Q: `n' <= 2`).
    #[serde(rename = "hyp-3")]
    RootsOfUnity,
    /// Some Galois element fixes no root of `P` (condition (H)).
    #[serde(rename = "hyp-4")]
    FixedPointFree,
    /// `P` has no rational root.
    #[serde(rename = "no-root")]
    NoRationalRoot,
    /// `P` is monic.
    #[serde(rename = "monic")]
    Monic,
    /// `0` is not a root of `P`.
    #[serde(rename = "zero-not-root")]
    ZeroNotRoot,
    /// `1` is not a root of `P`.
    #[serde(rename = "one-not-root")]
    OneNotRoot,
    /// `P` is separable.
    #[serde(rename = "separable")]
    Separable,
    /// The prime does not divide the discriminant.
    #[serde(rename = "p-coprime-to-disc")]
    PrimeCoprimeToDisc,
    /// The prime does not divide the leading coefficient.
    #[serde(rename = "p-coprime-to-lc")]
    PrimeCoprimeToLeading,
    /// The prime is a prime divisor of `P`.
    #[serde(rename = "p-divisor")]
    PrimeIsDivisor,
    /// `gcd(n, e_1, ..., e_s) = 1`.
    #[serde(rename = "hyp-5")]
    CoprimeMultiplicities,
}

impl Hypothesis {
    pub fn tag(self) -> &'static str {
        match self {
            Hypothesis::ExponentDividesDegree => "hyp-1",
            Hypothesis::MultiplicityBound => "hyp-2",
            Hypothesis::RootsOfUnity => "hyp-3",
            Hypothesis::FixedPointFree => "hyp-4",
            Hypothesis::NoRationalRoot => "no-root",
            Hypothesis::Monic => "monic",
            Hypothesis::ZeroNotRoot => "zero-not-root",
            Hypothesis::OneNotRoot => "one-not-root",
            Hypothesis::Separable => "separable",
            Hypothesis::PrimeCoprimeToDisc => "p-coprime-to-disc",
            Hypothesis::PrimeCoprimeToLeading => "p-coprime-to-lc",
            Hypothesis::PrimeIsDivisor => "p-divisor",
            Hypothesis::CoprimeMultiplicities => "hyp-5",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Hypothesis::ExponentDividesDegree => "n divides N",
            Hypothesis::MultiplicityBound => "multiplicity at most n-1",
            Hypothesis::RootsOfUnity => "the rationals contain the n'-th roots of unity (n' <= 2)",
            Hypothesis::FixedPointFree => "some Galois element fixes no root (condition (H))",
            Hypothesis::NoRationalRoot => "P has no rational root",
            Hypothesis::Monic => "P is monic",
            Hypothesis::ZeroNotRoot => "0 is not a root",
            Hypothesis::OneNotRoot => "1 is not a root",
            Hypothesis::Separable => "P is separable",
            Hypothesis::PrimeCoprimeToDisc => "p does not divide the discriminant",
            Hypothesis::PrimeCoprimeToLeading => "p does not divide the leading coefficient",
            Hypothesis::PrimeIsDivisor => "p is a prime divisor of P",
            Hypothesis::CoprimeMultiplicities => "gcd(n, e_1, ..., e_s) = 1",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.tag(), self.description())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^61")]
    PrimeTooLarge(u64),
    #[error("hypothesis failed {hypothesis}: {detail}")]
    Hypothesis { hypothesis: Hypothesis, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("the certified prime set is empty")]
    EmptyPrimeSet,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn hypothesis(hypothesis: Hypothesis, detail: impl Into<String>) -> Self {
        Error::Hypothesis { hypothesis, detail: detail.into() }
    }
}
