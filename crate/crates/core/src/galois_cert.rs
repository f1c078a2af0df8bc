//! Certificates for condition (H): the Galois group of `P` contains an
//! element that fixes no root.
//!
//! At a prime `p` not dividing `disc·lc` of the radical, the factorization
//! pattern of `P mod p` is the cycle type of a Frobenius element. A pattern
//! without a part of size 1 therefore exhibits a fixed-point-free element,
//! which is a complete proof of (H). Failing to find such a prime below a
//! bound proves nothing.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{divisors, primes_up_to};
use crate::error::Hypothesis;
use crate::modp::{reduce, reduce_int, FactorPattern};
use crate::prime_sieve::{classify_kind, VerdictKind};
use crate::zpoly::IntPoly;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionHCertificate {
    pub witness_prime: u64,
    pub pattern: FactorPattern,
    pub radical_degree: usize,
}

impl ConditionHCertificate {
    /// Re-checks the certificate against `P` from scratch.
    pub fn verify(&self, poly: &IntPoly) -> Result<()> {
        let rad = poly.radical()?;
        let p = self.witness_prime;
        if rad.degree() != self.radical_degree {
            return Err(Error::Invariant("radical degree mismatch".into()));
        }
        if reduce_int(&bad_product(&rad), p) == 0 {
            return Err(Error::Invariant(format!("{p} divides disc·lc of the radical")));
        }
        let pattern = reduce(&rad, p)?.distinct_degree_pattern()?;
        if pattern != self.pattern || pattern.has_linear_factor() {
            return Err(Error::Invariant(format!("pattern at {p} does not certify (H)")));
        }
        Ok(())
    }
}

fn bad_product(rad: &IntPoly) -> BigInt {
    rad.discriminant() * rad.leading()
}

/// Least prime `p <= bound` (with `p ∤ disc·lc` of the radical) at which the
/// radical of `P` has no linear factor mod `p`.
pub fn certify_condition_h(poly: &IntPoly, bound: u64) -> Result<Option<ConditionHCertificate>> {
    if bound < 2 {
        return Err(Error::InvalidArgument("prime bound must be at least 2".into()));
    }
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let rad = poly.radical()?;
    let bad = bad_product(&rad);
    let primes = primes_up_to(bound);
    let found = primes.par_iter().find_map_first(|&p| {
        if reduce_int(&bad, p) == 0 {
            return None;
        }
        let pattern = reduce(&rad, p).ok()?.distinct_degree_pattern().ok()?;
        (!pattern.has_linear_factor()).then_some(pattern)
    });
    Ok(found.map(|pattern| ConditionHCertificate {
        witness_prime: pattern.p,
        pattern,
        radical_degree: rad.degree(),
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub prime_bound: u64,
    pub primes_examined: usize,
    pub non_divisor_count: usize,
    pub excluded_count: usize,
    pub estimate: f64,
}

/// Fraction of primes `p <= bound` (outside `disc·lc` of the radical) that
/// are not prime divisors of `P`.
pub fn estimate_delta(poly: &IntPoly, bound: u64) -> Result<DensityEstimate> {
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let rad = poly.radical()?;
    let bad = bad_product(&rad);
    let primes = primes_up_to(bound);
    let kinds: Vec<VerdictKind> = primes
        .par_iter()
        .map(|&p| {
            if reduce_int(&bad, p) == 0 {
                Ok(VerdictKind::Excluded)
            } else {
                classify_kind(poly, p)
            }
        })
        .collect::<Result<_>>()?;
    let excluded_count = kinds.iter().filter(|k| **k == VerdictKind::Excluded).count();
    let non_divisor_count = kinds.iter().filter(|k| **k == VerdictKind::NonDivisor).count();
    let denominator = primes.len() - excluded_count;
    let estimate = if denominator == 0 { 0.0 } else { non_divisor_count as f64 / denominator as f64 };
    Ok(DensityEstimate { prime_bound: bound, primes_examined: primes.len(), non_divisor_count, excluded_count, estimate })
}

/// Least prime `p <= bound`, `p ∤ disc·a_N`, at which `P` stays irreducible
/// mod `p`; then the Galois group contains an `N`-cycle and `P` is
/// irreducible over the rationals.
pub fn check_n_cycle(poly: &IntPoly, bound: u64) -> Result<Option<u64>> {
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !poly.is_separable() {
        return Err(Error::hypothesis(Hypothesis::Separable, format!("{poly} has a repeated root")));
    }
    let bad = bad_product(poly);
    let n = poly.degree();
    let primes = primes_up_to(bound);
    Ok(primes.par_iter().copied().find_first(|&p| {
        reduce_int(&bad, p) != 0
            && reduce(poly, p)
                .and_then(|q| q.distinct_degree_pattern())
                .is_ok_and(|pat| pat.degrees == [n])
    }))
}

/// All rational roots, ascending.
pub fn rational_roots(poly: &IntPoly) -> Result<Vec<BigRational>> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let shift = poly.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut roots = Vec::new();
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let core = IntPoly::new(poly.coeffs()[shift..].to_vec());
    if !core.is_constant() {
        let hom = core.homogenize();
        let numerators = divisors(core.constant_term().magnitude());
        let denominators = divisors(core.leading().magnitude());
        for den in &denominators {
            let den = BigInt::from_biguint(Sign::Plus, den.clone());
            for num in &numerators {
                let num = BigInt::from_biguint(Sign::Plus, num.clone());
                if !num.gcd(&den).is_one() {
                    continue;
                }
                for signed in [num.clone(), -num.clone()] {
                    if hom.eval(&signed, &den)?.is_zero() {
                        roots.push(BigRational::new(signed, den.clone()));
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// Every `k <= k_max` for which `P(T^k)` receives a condition-(H)
/// certificate below `bound`. Requires `P` monic with `P(0) ≠ 0 ≠ P(1)`.
pub fn scan_power_compositions(
    poly: &IntPoly,
    k_max: usize,
    bound: u64,
) -> Result<Vec<(usize, ConditionHCertificate)>> {
    if poly.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    if !poly.is_monic() {
        return Err(Error::hypothesis(Hypothesis::Monic, format!("leading coefficient is {}", poly.leading())));
    }
    if poly.constant_term().is_zero() {
        return Err(Error::hypothesis(Hypothesis::ZeroNotRoot, "0 is a root"));
    }
    if poly.eval_int(&BigInt::from(1)).is_zero() {
        return Err(Error::hypothesis(Hypothesis::OneNotRoot, "1 is a root"));
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        if let Some(cert) = certify_condition_h(&poly.compose_power(k), bound)? {
            out.push((k, cert));
        }
    }
    Ok(out)
}

/// Which automated special case of the "no root + linearly disjoint
/// splitting fields" criterion applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum ExplicitCase {
    /// `P` irreducible of degree `>= 2`, certified by irreducibility mod
    /// `prime`.
    Irreducible { prime: u64 },
    /// Separable quartic without rational roots.
    RootlessQuartic,
}

/// Detects the two automated cases in which condition (H) holds without a
/// witness prime. Returns `None` when neither case can be certified.
pub fn explicit_case(poly: &IntPoly, bound: u64) -> Result<Option<ExplicitCase>> {
    if !poly.is_separable() {
        return Ok(None);
    }
    if poly.degree() >= 2 {
        if let Some(prime) = check_n_cycle(poly, bound)? {
            return Ok(Some(ExplicitCase::Irreducible { prime }));
        }
    }
    if poly.degree() == 4 && rational_roots(poly)?.is_empty() {
        return Ok(Some(ExplicitCase::RootlessQuartic));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn certificate_examples() {
        let cert = certify_condition_h(&ip(&[1, 0, 0, 0, 1]), 100).unwrap().unwrap();
        assert_eq!(cert.witness_prime, 3);
        assert_eq!(cert.pattern.degrees, vec![2, 2]);
        assert_eq!(cert.radical_degree, 4);
        cert.verify(&ip(&[1, 0, 0, 0, 1])).unwrap();

        assert_eq!(certify_condition_h(&ip(&[-1, 0, 1]), 10_000).unwrap(), None);
        assert!(certify_condition_h(&ip(&[1, 1]), 1).is_err());
    }

    #[test]
    fn product_of_quadratics_gets_a_certificate() {
        // oracle: least odd p where T^2+1 and T^2-2 are distinct irreducibles
        // mod p (p = 3 is skipped: there the two factors coincide)
        let poly = &ip(&[1, 0, 1]) * &ip(&[-2, 0, 1]);
        let oracle = primes_up_to(100)
            .into_iter()
            .find(|&p| p > 3 && (0..p).all(|t| (t * t + 1) % p != 0 && (t * t) % p != 2))
            .unwrap();
        assert_eq!(oracle, 11);
        let cert = certify_condition_h(&poly, 100).unwrap().unwrap();
        assert_eq!(cert.witness_prime, oracle);
        assert_eq!(cert.pattern.degrees, vec![2, 2]);
    }

    #[test]
    fn n_cycle_examples() {
        let p = check_n_cycle(&ip(&[-1, -1, 0, 0, 1]), 200).unwrap().unwrap();
        let reduced = reduce(&ip(&[-1, -1, 0, 0, 1]), p).unwrap();
        assert!((0..p).all(|t| reduced.eval(t) != 0));
        assert_eq!(reduced.distinct_degree_pattern().unwrap().degrees, vec![4]);
        assert_eq!(check_n_cycle(&ip(&[-1, 0, 1]), 10_000).unwrap(), None);
        assert_eq!(check_n_cycle(&ip(&[1, 0, 1]), 10).unwrap(), Some(3));
        assert!(check_n_cycle(&ip(&[1, -2, 1]), 10).is_err());
    }

    #[test]
    fn rational_root_examples() {
        assert_eq!(rational_roots(&ip(&[-1, 0, 1])).unwrap(), vec![q(-1, 1), q(1, 1)]);
        assert!(rational_roots(&ip(&[1, 0, 0, 0, 1])).unwrap().is_empty());
        assert_eq!(rational_roots(&ip(&[0, -1, 2])).unwrap(), vec![q(0, 1), q(1, 2)]);
        assert_eq!(rational_roots(&ip(&[-6, 1, 1])).unwrap(), vec![q(-3, 1), q(2, 1)]);
        assert_eq!(rational_roots(&ip(&[3, -4, -4])).unwrap(), vec![q(-3, 2), q(1, 2)]);
        assert!(rational_roots(&IntPoly::zero()).is_err());
    }

    #[test]
    fn power_composition_examples() {
        let ks = scan_power_compositions(&ip(&[-2, 1]), 8, 500).unwrap();
        let k2 = ks.iter().find(|(k, _)| *k == 2).expect("k = 2 certified");
        // least witness for T^2 - 2 is 3 (2 is a non-residue mod 3); 5 works too
        assert_eq!(k2.1.witness_prime, 3);
        assert_eq!(reduce(&ip(&[-2, 0, 1]), 5).unwrap().distinct_degree_pattern().unwrap().degrees, vec![2]);
        assert!(ks.iter().all(|(k, _)| *k != 1));

        match scan_power_compositions(&ip(&[-1, 1]), 4, 500) {
            Err(Error::Hypothesis { hypothesis: Hypothesis::OneNotRoot, .. }) => {}
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
        assert!(matches!(
            scan_power_compositions(&ip(&[0, 1, 1]), 4, 500),
            Err(Error::Hypothesis { hypothesis: Hypothesis::ZeroNotRoot, .. })
        ));
        assert!(matches!(
            scan_power_compositions(&ip(&[1, 2]), 4, 500),
            Err(Error::Hypothesis { hypothesis: Hypothesis::Monic, .. })
        ));
        let ks = scan_power_compositions(&ip(&[1, 0, 1]), 4, 500).unwrap();
        assert_eq!(ks[0].0, 1);
        assert_eq!(ks[0].1.witness_prime, 3);
    }

    #[test]
    fn explicit_cases() {
        assert!(matches!(
            explicit_case(&ip(&[-1, -1, 0, 0, 1]), 200).unwrap(),
            Some(ExplicitCase::Irreducible { .. })
        ));
        // T^4 + 1 is irreducible but never irreducible mod p
        assert_eq!(explicit_case(&ip(&[1, 0, 0, 0, 1]), 200).unwrap(), Some(ExplicitCase::RootlessQuartic));
        assert_eq!(explicit_case(&ip(&[-1, 0, 1]), 200).unwrap(), None);
    }

    #[test]
    fn density_on_rational_root_polynomial_is_zero() {
        let est = estimate_delta(&ip(&[-1, 0, 1]), 10_000).unwrap();
        assert_eq!(est.non_divisor_count, 0);
        assert_eq!(est.excluded_count, 1);
        assert_eq!(est.estimate, 0.0);
    }
}
