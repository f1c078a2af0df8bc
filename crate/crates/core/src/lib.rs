//! Exact kernels for certifying twists `Y^n = d·P(T,Z)` of superelliptic
//! curves that have no rational point.
//!
//! The crate is organised bottom-up:
//!
//! * [`zpoly`]: integer polynomials (content, gcd, squarefree structure,
//!   discriminant, text format).
//! * [`modp`]: polynomials over prime fields and factorization patterns.
//! * [`prime_sieve`]: classification of primes as divisors / non-divisors
//!   of `P`, and the certified prime set used by twist certificates.
//! * [`galois_cert`]: single-prime certificates that the Galois group of `P`
//!   contains an element fixing no root, plus density estimates.
//! * [`twist_forge`]: twist parameters, no-point certificates, exhaustive
//!   point searches and explicit points at divisor primes.
//! * [`kummer`]: specializations of `Q(T)(ⁿ√P)` and non-parametricity
//!   witnesses.
//! * [`census`]: exact lattice counts and sampled density curves.

pub mod arith;
pub mod census;
mod error;
pub(crate) mod ser;
pub mod galois_cert;
pub mod kummer;
pub mod modp;
pub mod prime_sieve;
pub mod twist_forge;
pub mod zpoly;

pub use error::{Error, Hypothesis, Result};
pub use zpoly::IntPoly;

/// Default prime bound used when searching for a condition-(H) witness.
pub const DEFAULT_CERT_BOUND: u64 = 10_000;
/// Default prime bound for density estimates.
pub const DEFAULT_DENSITY_BOUND: u64 = 100_000;
/// Default height bound for exhaustive point searches.
pub const DEFAULT_SEARCH_BOUND: u64 = 500;
