//! Polynomials over `F_p` and distinct-degree factorization patterns.
//!
//! Primes are limited to `p < 2^61` so that every product of two residues
//! fits a `u128` intermediate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::{inv_mod, is_prime_u64, mul_mod};
use crate::zpoly::IntPoly;
use crate::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 61;

/// Residues in `[0, p)`, low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// `x mod p` in `[0, p)`.
pub fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits u64")
}

impl ModPoly {
    /// Builds a polynomial from residues (each reduced mod `p`). `p` is
    /// assumed prime; use [`reduce`] for checked construction.
    pub fn from_residues(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: Vec::new() }
    }

    fn x(p: u64) -> Self {
        Self::from_residues(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, t: u64) -> u64 {
        let t = t % self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, t, self.p) + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        ModPoly { p: self.p, coeffs: self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect() }
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::from_residues(
            p,
            self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, i as u64 % p, p)).collect(),
        )
    }

    fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_residues(
            p,
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u128;
        let mut acc = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u128 * b as u128) % p;
            }
        }
        Self::from_residues(self.p, acc.into_iter().map(|c| c as u64).collect())
    }

    /// Quotient and remainder by a nonzero divisor.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        if self.degree() < d.degree() || self.is_zero() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = mul_mod(r[k + dd], inv, p);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &b) in d.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mul_mod(c, b, p)) % p;
            }
        }
        (Self::from_residues(p, q), Self::from_residues(p, r))
    }

    fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd (zero only if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `base^exp mod self`.
    fn pow_mod(&self, base: &Self, mut exp: u64) -> Self {
        let mut acc = Self::from_residues(self.p, vec![1]).rem(self);
        let mut b = base.rem(self);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&b).rem(self);
            }
            exp >>= 1;
            if exp > 0 {
                b = b.mul(&b).rem(self);
            }
        }
        acc
    }

    /// Number of distinct roots in `F_p`: `deg gcd(X^p - X, Q)`.
    pub fn root_count(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == 0 {
            return Ok(0);
        }
        let q = self.monic();
        let xp = q.pow_mod(&Self::x(self.p), self.p);
        let g = xp.sub(&Self::x(self.p)).gcd(&q);
        Ok(g.degree())
    }

    /// The product of the distinct linear factors, `gcd(X^p - X, Q)`.
    pub fn linear_part(&self) -> Self {
        let q = self.monic();
        if q.degree() == 0 {
            return Self::from_residues(self.p, vec![1]);
        }
        let xp = q.pow_mod(&Self::x(self.p), self.p);
        xp.sub(&Self::x(self.p)).gcd(&q)
    }

    /// Smallest `t` in `[0, p)` with `Q(t) = 0`, if any.
    pub fn smallest_root(&self) -> Option<u64> {
        let lin = self.linear_part();
        if lin.degree() == 0 {
            return None;
        }
        (0..self.p).find(|&t| lin.eval(t) == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Degrees of the irreducible factors of a squarefree `Q` by
    /// distinct-degree factorization (no equal-degree splitting).
    pub fn distinct_degree_pattern(&self) -> Result<FactorPattern> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(Error::InvalidArgument(format!("{self} is not squarefree mod {}", self.p)));
        }
        let p = self.p;
        let mut f = self.monic();
        let mut degrees = Vec::new();
        let x = Self::x(p);
        let mut h = x.clone();
        let mut d = 1usize;
        while 2 * d <= f.degree() {
            h = f.pow_mod(&h, p);
            let g = h.sub(&x).gcd(&f);
            if g.degree() > 0 {
                degrees.extend(std::iter::repeat_n(d, g.degree() / d));
                f = f.div_rem(&g).0;
                h = h.rem(&f);
            }
            d += 1;
        }
        if f.degree() > 0 {
            degrees.push(f.degree());
        }
        degrees.sort_unstable();
        Ok(FactorPattern { degrees, p })
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        if self.degree() == 0 {
            return Err(Error::InvalidArgument("irreducibility needs degree >= 1".into()));
        }
        if !self.is_squarefree() {
            return Ok(false);
        }
        Ok(self.distinct_degree_pattern()?.degrees.len() == 1)
    }
}

/// Reduces an integer polynomial modulo a prime `p < 2^61`.
pub fn reduce(poly: &IntPoly, p: u64) -> Result<ModPoly> {
    check_prime(p)?;
    Ok(ModPoly::from_residues(p, poly.coeffs().iter().map(|c| reduce_int(c, p)).collect()))
}

/// Multiset of irreducible-factor degrees of a squarefree polynomial mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FactorPattern {
    pub degrees: Vec<usize>,
    pub p: u64,
}

impl FactorPattern {
    pub fn has_linear_factor(&self) -> bool {
        self.degrees.contains(&1)
    }

    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect());
        write!(f, "{lifted}")
    }
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly({self} mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&ip(&[1, 0, 0, 0, 1]), 3).unwrap().coeffs(), &[1, 0, 0, 0, 1]);
        assert_eq!(reduce(&ip(&[0, 1, 3]), 3).unwrap().coeffs(), &[0, 1]);
        assert_eq!(reduce(&ip(&[-1, 0, 1]), 5).unwrap().coeffs(), &[4, 0, 1]);
        assert_eq!(reduce(&ip(&[1, 1]), 9), Err(Error::NotPrime(9)));
        assert_eq!(reduce(&ip(&[1, 1]), (1 << 61) + 1), Err(Error::PrimeTooLarge((1 << 61) + 1)));
    }

    #[test]
    fn root_count_examples() {
        let quartic = ip(&[1, 0, 0, 0, 1]);
        assert_eq!(reduce(&quartic, 3).unwrap().root_count().unwrap(), 0);
        assert_eq!(reduce(&quartic, 17).unwrap().root_count().unwrap(), 4);
        assert_eq!(reduce(&ip(&[-1, 0, 1]), 5).unwrap().root_count().unwrap(), 2);
        assert_eq!(reduce(&ip(&[3, 0, 3]), 3).unwrap().root_count(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn pattern_examples() {
        let quartic = ip(&[1, 0, 0, 0, 1]);
        assert_eq!(reduce(&quartic, 3).unwrap().distinct_degree_pattern().unwrap().degrees, vec![2, 2]);
        assert_eq!(reduce(&quartic, 17).unwrap().distinct_degree_pattern().unwrap().degrees, vec![1, 1, 1, 1]);
        assert_eq!(reduce(&ip(&[-1, 0, 1]), 5).unwrap().distinct_degree_pattern().unwrap().degrees, vec![1, 1]);
        // T^4 + 1 mod 2 = (T + 1)^4
        assert!(reduce(&quartic, 2).unwrap().distinct_degree_pattern().is_err());
        // T^5 - T - 1 is irreducible mod 5 (Artin-Schreier)
        assert_eq!(reduce(&ip(&[-1, -1, 0, 0, 0, 1]), 5).unwrap().distinct_degree_pattern().unwrap().degrees, vec![5]);
    }

    #[test]
    fn irreducibility_examples() {
        assert!(reduce(&ip(&[1, 0, 1]), 3).unwrap().is_irreducible().unwrap());
        assert!(!reduce(&ip(&[-1, 0, 1]), 5).unwrap().is_irreducible().unwrap());
        assert!(!reduce(&ip(&[1, 0, 0, 0, 1]), 3).unwrap().is_irreducible().unwrap());
    }

    #[test]
    fn smallest_root_scan() {
        assert_eq!(reduce(&ip(&[1, 0, 0, 0, 1]), 17).unwrap().smallest_root(), Some(2));
        assert_eq!(reduce(&ip(&[1, 0, 0, 0, 1]), 3).unwrap().smallest_root(), None);
        assert_eq!(reduce(&ip(&[-1, 0, 1]), 5).unwrap().smallest_root(), Some(1));
    }
}
