//! Dense polynomials with arbitrary-precision integer coefficients.
//!
//! Everything here is exact. Polynomial gcds over the rationals go through
//! primitive pseudo-remainder sequences, so intermediate coefficients stay
//! integral and reasonably small.

mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

pub use parse::parse_poly;

/// `a_0 + a_1 T + ... + a_N T^N`, stored low-to-high with no trailing zeros.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `T`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c·T^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `T^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last stored coefficient; `0` for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient `a_N` (zero for the zero polynomial).
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Constant term `a_0`.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Comma-separated coefficient list, low to high (`"1,0,0,0,1"`).
    pub fn to_coeff_list(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn eval_int(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * t + BigRational::from_integer(c.clone()))
    }

    pub fn homogenize(&self) -> HomForm {
        HomForm { poly: self.clone(), weight_degree: self.degree() }
    }

    /// Maximum absolute value of the coefficients.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = IntPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of the coefficients, nonnegative (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `(content, primitive part)` with positive content; the sign stays on
    /// the primitive part.
    pub fn content_and_primitive(&self) -> Result<(BigInt, IntPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.content();
        let prim = Self::new(self.coeffs.iter().map(|a| a / &c).collect());
        Ok((c, prim))
    }

    /// Primitive part normalised to a positive leading coefficient.
    pub fn primitive_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    /// Pseudo-remainder `prem(self, d)`: the remainder of `lc(d)^k · self`
    /// divided by `d`, with `k = deg self - deg d + 1`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() || self.degree() < d.degree() {
            return self.clone();
        }
        let lc = d.leading();
        let dd = d.degree();
        let mut r: Vec<BigInt> = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = r[top].clone();
            let shift = top - dd;
            for a in r.iter_mut() {
                *a *= &lc;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                r[shift + i] -= &c * b;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly::new(r)
    }

    /// Exact division over the integers; `None` when `d` does not divide
    /// `self` in `Z[T]`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let lc = d.leading();
        let dd = d.degree();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            let (qk, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] -= &qk * b;
            }
            q[k] = qk;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Gcd over the rationals, returned primitive with positive leading
    /// coefficient (zero only when both inputs are zero).
    pub fn primitive_gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_normalized();
        let mut b = other.primitive_normalized();
        if a.degree() < b.degree() || a.is_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_normalized();
        }
        a.primitive_normalized()
    }

    /// Yun's squarefree decomposition over the rationals with integral,
    /// primitive parts of positive leading coefficient.
    pub fn squarefree_decomposition(&self) -> Result<SqfDecomp> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let f = self.primitive_normalized();
        let df = f.derivative();
        let g = f.primitive_gcd(&df);
        let mut a = f.div_exact(&g).ok_or_else(|| Error::Invariant("gcd does not divide f".into()))?;
        let mut b = df.div_exact(&g).ok_or_else(|| Error::Invariant("gcd does not divide f'".into()))?;
        let mut parts = Vec::new();
        let mut i = 1u32;
        loop {
            let c = &b - &a.derivative();
            if c.is_zero() {
                if !a.is_constant() {
                    parts.push((a.primitive_normalized(), i));
                }
                break;
            }
            let d = a.primitive_gcd(&c);
            if !d.is_constant() {
                parts.push((d.clone(), i));
            }
            a = a.div_exact(&d).ok_or_else(|| Error::Invariant("Yun step: d does not divide a".into()))?;
            b = c.div_exact(&d).ok_or_else(|| Error::Invariant("Yun step: d does not divide c".into()))?;
            i += 1;
            if a.is_constant() {
                break;
            }
        }
        let product = parts.iter().fold(IntPoly::one(), |acc, (p, e)| &acc * &p.pow(*e));
        let unit = self
            .leading()
            .div_rem(&product.leading());
        if !unit.1.is_zero() || product.scale(&unit.0) != *self {
            return Err(Error::Invariant("squarefree reconstruction failed".into()));
        }
        Ok(SqfDecomp { content: unit.0, parts })
    }

    /// True iff every root has multiplicity at most `n - 1`.
    pub fn multiplicity_bound_ok(&self, n: u32) -> bool {
        match self.squarefree_decomposition() {
            Ok(sqf) => sqf.parts.iter().all(|(_, e)| *e < n),
            Err(_) => true,
        }
    }

    /// Product of the distinct squarefree parts: primitive, separable, with
    /// the same complex roots as `self`.
    pub fn radical(&self) -> Result<IntPoly> {
        let sqf = self.squarefree_decomposition()?;
        Ok(sqf.parts.iter().fold(IntPoly::one(), |acc, (p, _)| &acc * p))
    }

    pub fn is_separable(&self) -> bool {
        !self.is_constant() && self.primitive_gcd(&self.derivative()).is_constant()
    }

    /// `(-1)^{N(N-1)/2} · Res(P, P') / a_N`. Zero iff `P` has a repeated root.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree();
        if self.is_constant() {
            return BigInt::zero();
        }
        let res = resultant(self, &self.derivative());
        let (q, r) = res.div_rem(&self.leading());
        debug_assert!(r.is_zero());
        if (n * (n - 1) / 2) % 2 == 1 {
            -q
        } else {
            q
        }
    }

    /// `T^N · P(1/T)`: coefficients reversed relative to the degree.
    pub fn reverse(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `P(T^k)`.
    pub fn compose_power(&self, k: usize) -> IntPoly {
        assert!(k >= 1, "compose_power needs k >= 1");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    /// `P(T + c)`.
    pub fn taylor_shift(&self, c: &BigInt) -> IntPoly {
        let mut coeffs = self.coeffs.clone();
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = coeffs[j + 1].clone();
                coeffs[j] += c * next;
            }
        }
        IntPoly::new(coeffs)
    }
}

/// Resultant of two nonzero polynomials as the determinant of their
/// Sylvester matrix, computed by fraction-free (Bareiss) elimination.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    assert!(!f.is_zero() && !g.is_zero(), "resultant of zero polynomial");
    let (m, n) = (f.degree(), g.degree());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            mat[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            mat[n + row][row + j] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// `content · Π A_i^{e_i}` with each `A_i` squarefree, primitive, positive
/// leading coefficient, pairwise coprime. `content` carries the sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfDecomp {
    pub content: BigInt,
    pub parts: Vec<(IntPoly, u32)>,
}

impl SqfDecomp {
    pub fn reconstruct(&self) -> IntPoly {
        self.parts
            .iter()
            .fold(IntPoly::constant(self.content.clone()), |acc, (p, e)| &acc * &p.pow(*e))
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.parts.iter().map(|(_, e)| *e).collect()
    }
}

/// `P(T,Z) = a_0 Z^N + a_1 Z^{N-1} T + ... + a_N T^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomForm {
    poly: IntPoly,
    weight_degree: usize,
}

impl HomForm {
    pub fn weight_degree(&self) -> usize {
        self.weight_degree
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    /// `Σ a_i a^i b^{N-i}`; rejects `(0, 0)`.
    pub fn eval(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("(0,0) is not a point of the weighted projective plane".into()));
        }
        let n = self.weight_degree;
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for i in (0..=n).rev() {
            acc = acc * a + self.poly.coeff(i) * &bpow;
            bpow *= b;
        }
        Ok(acc)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.sign() == num_bigint::Sign::Minus) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i.cmp(&1) {
                Ordering::Less => {}
                Ordering::Equal => write!(f, "{}T", if show_coeff { "*" } else { "" })?,
                Ordering::Greater => write!(f, "{}T^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn eval_examples() {
        let quartic = p(&[1, 0, 0, 0, 1]);
        assert_eq!(quartic.eval(&q(2, 1)), q(17, 1));
        assert_eq!(p(&[-1, 0, 1]).eval(&q(1, 1)), q(0, 1));
        assert_eq!(quartic.eval(&q(1, 2)), q(17, 16));
    }

    #[test]
    fn hom_eval_examples() {
        let h = p(&[1, 0, 0, 0, 1]).homogenize();
        let b = |x: i64| BigInt::from(x);
        assert_eq!(h.eval(&b(2), &b(1)).unwrap(), b(17));
        assert_eq!(h.eval(&b(1), &b(0)).unwrap(), b(1));
        assert_eq!(h.eval(&b(1), &b(1)).unwrap(), b(2));
        assert!(h.eval(&b(0), &b(0)).is_err());
        // a_0 Z^N term
        let h = p(&[3, 0, 1]).homogenize();
        assert_eq!(h.eval(&b(0), &b(2)).unwrap(), b(12));
    }

    #[test]
    fn content_examples() {
        assert_eq!(p(&[4, 0, 2]).content_and_primitive().unwrap(), (BigInt::from(2), p(&[2, 0, 1])));
        assert_eq!(p(&[1, 0, 0, 0, 1]).content_and_primitive().unwrap(), (BigInt::from(1), p(&[1, 0, 0, 0, 1])));
        assert_eq!(p(&[3, -3]).content_and_primitive().unwrap(), (BigInt::from(3), p(&[1, -1])));
        assert_eq!(IntPoly::zero().content_and_primitive(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn squarefree_examples() {
        // (T-1)^2 (T+2) = T^3 - 3T + 2
        let f = p(&[2, -3, 0, 1]);
        let sqf = f.squarefree_decomposition().unwrap();
        assert_eq!(sqf.parts, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(sqf.content, BigInt::one());

        let sqf = p(&[1, 0, 0, 0, 1]).squarefree_decomposition().unwrap();
        assert_eq!(sqf.parts, vec![(p(&[1, 0, 0, 0, 1]), 1)]);

        let g = (&p(&[1, 0, 1]) * &p(&[-2, 0, 1])).pow(2);
        let sqf = g.squarefree_decomposition().unwrap();
        assert_eq!(sqf.parts, vec![(p(&[-2, 0, -1, 0, 1]), 2)]);

        assert_eq!(p(&[5]).squarefree_decomposition(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn squarefree_keeps_sign_and_content() {
        let f = p(&[3, -3]); // -3(T - 1)
        let sqf = f.squarefree_decomposition().unwrap();
        assert_eq!(sqf.content, BigInt::from(-3));
        assert_eq!(sqf.reconstruct(), f);
    }

    #[test]
    fn multiplicity_examples() {
        assert!(p(&[1, 0, 0, 0, 1]).multiplicity_bound_ok(2));
        assert!(!p(&[2, -3, 0, 1]).multiplicity_bound_ok(2));
        assert!(p(&[2, -3, 0, 1]).multiplicity_bound_ok(3));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(&[1, 0, 0, 0, 1]).discriminant(), BigInt::from(256));
        assert_eq!(p(&[-1, 0, 1]).discriminant(), BigInt::from(4));
        assert_eq!(p(&[1, -2, 1]).discriminant(), BigInt::zero());
        // b^2 - 4ac on 3T^2 + 5T - 7
        assert_eq!(p(&[-7, 5, 3]).discriminant(), BigInt::from(25 + 84));
        // T^3 + T + 1: -4 - 27
        assert_eq!(p(&[1, 1, 0, 1]).discriminant(), BigInt::from(-31));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(p(&[2, -3, 0, 1]).radical().unwrap(), p(&[-2, 1, 1]));
        assert_eq!(p(&[1, 0, 0, 0, 1]).radical().unwrap(), p(&[1, 0, 0, 0, 1]));
        let g = (&p(&[1, 0, 1]) * &p(&[-2, 0, 1])).pow(2);
        assert_eq!(g.radical().unwrap(), p(&[-2, 0, -1, 0, 1]));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(p(&[1, 0, 0, 0, 1]).reverse(), p(&[1, 0, 0, 0, 1]));
        assert_eq!(p(&[5, 1, 0, 2]).reverse(), p(&[2, 0, 1, 5]));
        assert_eq!(p(&[0, 0, 1]).reverse(), p(&[1]));
    }

    #[test]
    fn compose_and_height() {
        assert_eq!(p(&[1, 0, 1]).compose_power(2), p(&[1, 0, 0, 0, 1]));
        assert_eq!(p(&[2, 1]).compose_power(3), p(&[2, 0, 0, 1]));
        assert_eq!(p(&[-2, 0, 1]).compose_power(1), p(&[-2, 0, 1]));
        assert_eq!(p(&[1, 0, 0, 0, 1]).height(), BigInt::from(1));
        assert_eq!(p(&[0, -7, 3]).height(), BigInt::from(7));
        assert_eq!(IntPoly::zero().height(), BigInt::zero());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = p(&[-1, -1, 0, 0, 1]);
        let g = f.taylor_shift(&BigInt::from(3));
        for t in -5..5 {
            assert_eq!(g.eval_int(&BigInt::from(t)), f.eval_int(&BigInt::from(t + 3)));
        }
    }

    #[test]
    fn display_round_trips() {
        for c in [&[1, 0, 0, 0, 1][..], &[5, 1, 0, 2], &[0, -7, 3], &[-1], &[0, 1], &[3, -1]] {
            let f = p(c);
            assert_eq!(f.to_string().parse::<IntPoly>().unwrap(), f, "{f}");
        }
        assert_eq!(p(&[5, 1, 0, -2]).to_string(), "-2*T^3 + T + 5");
    }
}
