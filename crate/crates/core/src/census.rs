//! Lattice-point counts of integer coefficient tuples, the constants in
//! their asymptotics, and sampled density curves for certificate success.
//!
//! Sampling is reproducible: every batch of samples draws from its own
//! ChaCha stream keyed by `(seed, H, batch)`, so results do not depend on
//! how batches are scheduled.

use std::collections::HashMap;
use std::ops::Add;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{is_squarefree, mobius_up_to};
use crate::galois_cert::{certify_condition_h, rational_roots};
use crate::ser;
use crate::zpoly::IntPoly;
use crate::{Error, Result, DEFAULT_CERT_BOUND};

const ZETA_DIRECT_TERMS: u64 = 1000;

/// Riemann zeta at an integer `s >= 2`: direct sum plus an Euler-Maclaurin
/// tail, accurate to double precision.
pub fn zeta(s: u32) -> f64 {
    assert!(s >= 2, "zeta diverges at s = {s}");
    let sf = s as f64;
    let m = ZETA_DIRECT_TERMS as f64;
    let tail = m.powf(1.0 - sf) / (sf - 1.0) + 0.5 * m.powf(-sf) + sf / 12.0 * m.powf(-sf - 1.0)
        - sf * (sf + 1.0) * (sf + 2.0) / 720.0 * m.powf(-sf - 3.0);
    let head: f64 = (1..ZETA_DIRECT_TERMS).rev().map(|k| (k as f64).powf(-sf)).sum();
    head + tail
}

const MOBIUS_TABLE: usize = 1_000_000;

fn mobius_table() -> &'static [i8] {
    static MU: OnceLock<Vec<i8>> = OnceLock::new();
    MU.get_or_init(|| mobius_up_to(MOBIUS_TABLE))
}

fn mobius(len: usize) -> std::borrow::Cow<'static, [i8]> {
    if len <= MOBIUS_TABLE {
        std::borrow::Cow::Borrowed(&mobius_table()[..=len])
    } else {
        std::borrow::Cow::Owned(mobius_up_to(len))
    }
}

/// `Z(n, H)`: tuples `(a_0, ..., a_n)` in `[-H, H]` with `a_n ≠ 0` and
/// `gcd = 1`, by Möbius inversion over the common divisor.
fn coprime_count(n: u32, h: u64, mu: &[i8]) -> BigInt {
    let mut total = BigInt::zero();
    for k in 1..=h {
        let sign = mu[k as usize];
        if sign == 0 {
            continue;
        }
        let m = h / k;
        let term = BigInt::from(2 * m + 1).pow(n) * (2 * m);
        if sign > 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    Coprime,
    SquarefreeGcd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TupleCountReport {
    pub predicate: Predicate,
    pub n: u32,
    pub h: u64,
    #[serde(serialize_with = "ser::bigint")]
    pub exact_count: BigInt,
    /// Leading constant `c` of the asymptotic `c·H^{n+1}`.
    pub constant: f64,
    /// Independent evaluation of `constant`, when one is available.
    pub constant_closed_form: Option<f64>,
    pub asymptotic_value: f64,
    pub ratio: f64,
}

fn check_count_args(n: u32, h: u64) -> Result<()> {
    if n == 0 || h == 0 {
        return Err(Error::InvalidArgument("n and H must be positive".into()));
    }
    Ok(())
}

/// Exact count of primitive tuples against `2^{n+1} H^{n+1} / ζ(n+1)`.
pub fn count_coprime_tuples(n: u32, h: u64) -> Result<TupleCountReport> {
    check_count_args(n, h)?;
    let mu = mobius(h as usize);
    let exact = coprime_count(n, h, &mu);
    let constant = 2f64.powi(n as i32 + 1) / zeta(n + 1);
    let asymptotic = constant * (h as f64).powi(n as i32 + 1);
    Ok(TupleCountReport {
        predicate: Predicate::Coprime,
        n,
        h,
        ratio: exact.to_f64().unwrap_or(f64::INFINITY) / asymptotic,
        exact_count: exact,
        constant,
        constant_closed_form: None,
        asymptotic_value: asymptotic,
    })
}

const AGREEMENT: f64 = 1e-10;

/// `2^{n+1}/ζ(n+1) · Σ_{k squarefree} k^{-(n+1)}` summed directly, with the
/// tail past the Möbius table estimated by its average density `6/π²`.
fn squarefree_constant_series(n: u32) -> f64 {
    let s = (n + 1) as f64;
    let mu = mobius_table();
    let head: f64 = (1..=MOBIUS_TABLE).rev().filter(|&k| mu[k] != 0).map(|k| (k as f64).powf(-s)).sum();
    let k = MOBIUS_TABLE as f64;
    let tail = 6.0 / std::f64::consts::PI.powi(2) * k.powf(1.0 - s) / (s - 1.0);
    2f64.powi(n as i32 + 1) / zeta(n + 1) * (head + tail)
}

/// Exact count of tuples with squarefree gcd, as `Σ Z(n, ⌊H/k⌋)` over
/// squarefree `k`; the constant is evaluated as a series and in closed
/// form `2^{n+1}/ζ(2n+2)`, and the two must agree.
pub fn count_squarefree_gcd_tuples(n: u32, h: u64) -> Result<TupleCountReport> {
    check_count_args(n, h)?;
    if n < 2 {
        return Err(Error::InvalidArgument("the squarefree-gcd count needs n >= 2".into()));
    }
    let mu = mobius(h as usize);
    let mut memo: HashMap<u64, BigInt> = HashMap::new();
    let mut exact = BigInt::zero();
    for k in (1..=h).filter(|&k| mu[k as usize] != 0) {
        let m = h / k;
        exact += memo.entry(m).or_insert_with(|| coprime_count(n, m, &mu)).clone();
    }
    let series = squarefree_constant_series(n);
    let closed = 2f64.powi(n as i32 + 1) / zeta(2 * n + 2);
    if (series - closed).abs() > AGREEMENT {
        return Err(Error::Invariant(format!(
            "C_{n}: series {series} and closed form {closed} disagree"
        )));
    }
    let asymptotic = series * (h as f64).powi(n as i32 + 1);
    Ok(TupleCountReport {
        predicate: Predicate::SquarefreeGcd,
        n,
        h,
        ratio: exact.to_f64().unwrap_or(f64::INFINITY) / asymptotic,
        exact_count: exact,
        constant: series,
        constant_closed_form: Some(closed),
        asymptotic_value: asymptotic,
    })
}

const BRUTE_FORCE_LIMIT: u64 = 100_000_000;

/// Direct enumeration of `[-H, H]^{n+1}` with `a_n ≠ 0`.
pub fn brute_force_tuple_count(n: u32, h: u64, predicate: Predicate) -> Result<u64> {
    check_count_args(n, h)?;
    let side = 2 * h + 1;
    let size = side.checked_pow(n + 1).filter(|&s| s <= BRUTE_FORCE_LIMIT);
    if size.is_none() {
        return Err(Error::SizeLimit(format!("(2H+1)^(n+1) exceeds {BRUTE_FORCE_LIMIT}")));
    }
    let h = h as i64;
    let len = n as usize + 1;
    let mut tuple = vec![-h; len];
    let mut count = 0;
    loop {
        if tuple[len - 1] != 0 {
            let g = tuple.iter().fold(0i64, |g, &a| g.gcd(&a));
            let ok = match predicate {
                Predicate::Coprime => g == 1,
                Predicate::SquarefreeGcd => (2..).take_while(|q| q * q <= g).all(|q| g % (q * q) != 0),
            };
            count += ok as u64;
        }
        let mut i = 0;
        loop {
            if i == len {
                return Ok(count);
            }
            if tuple[i] < h {
                tuple[i] += 1;
                break;
            }
            tuple[i] = -h;
            i += 1;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleOutcome {
    /// A condition-(H) certificate was found.
    Success,
    /// `P` has a rational root, so no twist can be empty.
    Failure,
    Inconclusive,
}

/// Rational root first (cheap and definitive), then a condition-(H)
/// certificate up to the default bound.
pub fn classify_sample(poly: &IntPoly) -> Result<SampleOutcome> {
    if !rational_roots(poly)?.is_empty() {
        return Ok(SampleOutcome::Failure);
    }
    Ok(match certify_condition_h(poly, DEFAULT_CERT_BOUND)? {
        Some(_) => SampleOutcome::Success,
        None => SampleOutcome::Inconclusive,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityPoint {
    pub h: u64,
    pub samples: u64,
    pub success: u64,
    pub failure: u64,
    pub inconclusive: u64,
    pub success_fraction: f64,
    pub failure_fraction: f64,
    pub inconclusive_fraction: f64,
    /// Standard error of `success_fraction`.
    pub stderr: f64,
    /// Draws rejected before `samples` admissible polynomials were found.
    pub rejected: u64,
    /// Accepted samples of degree `N - 1` (quadratic census only).
    pub degree_drop: u64,
    /// `2^{N+1} H^{N+1}`, the size of the sampled box up to lower order.
    pub normalization: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CensusKind {
    ConditionStar,
    QuadraticExtension,
}

impl CensusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CensusKind::ConditionStar => "condition-star",
            CensusKind::QuadraticExtension => "quadratic-extension",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityCurve {
    pub kind: CensusKind,
    pub degree: usize,
    pub n: u32,
    pub samples: u64,
    pub seed: u64,
    pub points: Vec<DensityPoint>,
}

#[derive(Clone, Copy, Default)]
struct Tally {
    success: u64,
    failure: u64,
    inconclusive: u64,
    rejected: u64,
    degree_drop: u64,
}

impl Add for Tally {
    type Output = Tally;
    fn add(self, o: Tally) -> Tally {
        Tally {
            success: self.success + o.success,
            failure: self.failure + o.failure,
            inconclusive: self.inconclusive + o.inconclusive,
            rejected: self.rejected + o.rejected,
            degree_drop: self.degree_drop + o.degree_drop,
        }
    }
}

impl Tally {
    fn record(&mut self, outcome: SampleOutcome) {
        match outcome {
            SampleOutcome::Success => self.success += 1,
            SampleOutcome::Failure => self.failure += 1,
            SampleOutcome::Inconclusive => self.inconclusive += 1,
        }
    }
}

const BATCH: u64 = 64;
const MAX_DRAWS_PER_SAMPLE: u64 = 10_000;

fn batch_rng(kind: CensusKind, seed: u64, h: u64, batch: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&h.to_le_bytes());
    key[16..24].copy_from_slice(&batch.to_le_bytes());
    key[24] = kind as u8;
    ChaCha8Rng::from_seed(key)
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, h: u64) -> IntPoly {
    let h = h as i64;
    IntPoly::new((0..=degree).map(|_| BigInt::from(rng.random_range(-h..=h))).collect())
}

/// Either a sample to classify or a rejection.
type Admit = dyn Fn(&IntPoly) -> Option<IntPoly> + Sync;

/// The admissible polynomials of one batch, and the number of rejected draws.
fn draw_batch(
    kind: CensusKind,
    seed: u64,
    h: u64,
    batch: u64,
    wanted: u64,
    degree: usize,
    admit: &Admit,
) -> Result<(Vec<IntPoly>, u64)> {
    let mut rng = batch_rng(kind, seed, h, batch);
    let mut accepted = Vec::with_capacity(wanted as usize);
    let mut rejected = 0;
    while (accepted.len() as u64) < wanted {
        if rejected > MAX_DRAWS_PER_SAMPLE * wanted {
            return Err(Error::Invariant(format!("rejection sampling stalled at H = {h}")));
        }
        match admit(&random_poly(&mut rng, degree, h)) {
            Some(poly) => accepted.push(poly),
            None => rejected += 1,
        }
    }
    Ok((accepted, rejected))
}

fn run_census(
    kind: CensusKind,
    degree: usize,
    n: u32,
    heights: &[u64],
    samples: u64,
    seed: u64,
    admit: &Admit,
) -> Result<DensityCurve> {
    if samples < 100 {
        return Err(Error::InvalidArgument("at least 100 samples per height are required".into()));
    }
    if heights.iter().any(|&h| h == 0 || h > i64::MAX as u64) {
        return Err(Error::InvalidArgument("heights must be positive".into()));
    }
    let mut points = Vec::with_capacity(heights.len());
    for &h in heights {
        let batches = samples.div_ceil(BATCH);
        let tallies: Vec<Result<Tally>> = (0..batches)
            .into_par_iter()
            .map(|b| {
                let wanted = BATCH.min(samples - b * BATCH);
                let (polys, rejected) = draw_batch(kind, seed, h, b, wanted, degree, admit)?;
                let mut tally = Tally { rejected, ..Tally::default() };
                for poly in &polys {
                    if poly.degree() < degree {
                        // outside the reach of the degree-N certificate
                        tally.degree_drop += 1;
                        let has_root = !rational_roots(poly)?.is_empty();
                        tally.record(if has_root { SampleOutcome::Failure } else { SampleOutcome::Inconclusive });
                    } else {
                        tally.record(classify_sample(poly)?);
                    }
                }
                Ok(tally)
            })
            .collect();
        let tally = tallies.into_iter().try_fold(Tally::default(), |acc, t| t.map(|t| acc + t))?;
        let total = samples as f64;
        let success_fraction = tally.success as f64 / total;
        points.push(DensityPoint {
            h,
            samples,
            success: tally.success,
            failure: tally.failure,
            inconclusive: tally.inconclusive,
            success_fraction,
            failure_fraction: tally.failure as f64 / total,
            inconclusive_fraction: tally.inconclusive as f64 / total,
            stderr: (success_fraction * (1.0 - success_fraction) / total).sqrt(),
            rejected: tally.rejected,
            degree_drop: tally.degree_drop,
            normalization: 2f64.powi(degree as i32 + 1) * (h as f64).powi(degree as i32 + 1),
        });
    }
    Ok(DensityCurve { kind, degree, n, samples, seed, points })
}

/// Fraction of degree-`N` polynomials of height at most `H` (roots of
/// multiplicity below `n`) for which condition (H) is certified, refuted by
/// a rational root, or left open.
pub fn condition_star_density(degree: usize, n: u32, heights: &[u64], samples: u64, seed: u64) -> Result<DensityCurve> {
    if n < 2 || degree == 0 || degree % n as usize != 0 {
        return Err(Error::InvalidArgument(format!("need n >= 2 dividing N, got n = {n}, N = {degree}")));
    }
    let admit = move |p: &IntPoly| {
        (p.degree() == degree && !p.is_zero() && p.multiplicity_bound_ok(n)).then(|| p.clone())
    };
    run_census(CensusKind::ConditionStar, degree, n, heights, samples, seed, &admit)
}

/// Separable polynomials of degree `N` or `N - 1` with squarefree content:
/// the quadratic extensions `Q(T)(√P)` with at most `N` branch points.
pub fn quadratic_extension_census(degree: usize, heights: &[u64], samples: u64, seed: u64) -> Result<DensityCurve> {
    if degree < 2 || degree % 2 != 0 {
        return Err(Error::InvalidArgument(format!("N must be even and at least 2, got {degree}")));
    }
    let admit = move |p: &IntPoly| {
        let ok = !p.is_zero()
            && p.degree() + 1 >= degree
            && p.degree() >= 1
            && p.is_separable()
            && is_squarefree(&p.content());
        ok.then(|| p.clone())
    };
    run_census(CensusKind::QuadraticExtension, degree, 2, heights, samples, seed, &admit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_values() {
        let pi = std::f64::consts::PI;
        assert!((zeta(2) - pi.powi(2) / 6.0).abs() < 1e-14);
        assert!((zeta(4) - pi.powi(4) / 90.0).abs() < 1e-14);
        assert!((zeta(6) - pi.powi(6) / 945.0).abs() < 1e-14);
    }

    #[test]
    fn coprime_examples() {
        assert_eq!(count_coprime_tuples(2, 1).unwrap().exact_count, BigInt::from(18));
        assert_eq!(count_coprime_tuples(1, 1).unwrap().exact_count, BigInt::from(6));
        let r = count_coprime_tuples(2, 200).unwrap();
        assert!((r.ratio - 1.0).abs() < 0.05, "ratio {}", r.ratio);
        assert_eq!(brute_force_tuple_count(2, 1, Predicate::Coprime).unwrap(), 18);
        assert_eq!(
            BigInt::from(brute_force_tuple_count(2, 3, Predicate::Coprime).unwrap()),
            count_coprime_tuples(2, 3).unwrap().exact_count
        );
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(count_squarefree_gcd_tuples(2, 1).unwrap().exact_count, BigInt::from(18));
        let r = count_squarefree_gcd_tuples(2, 150).unwrap();
        assert!((r.ratio - 1.0).abs() < 0.05, "ratio {}", r.ratio);
        assert!((r.constant - 7.86).abs() < 0.01);
        assert_eq!(
            BigInt::from(brute_force_tuple_count(2, 3, Predicate::SquarefreeGcd).unwrap()),
            count_squarefree_gcd_tuples(2, 3).unwrap().exact_count
        );
        assert_eq!(
            BigInt::from(brute_force_tuple_count(3, 10, Predicate::SquarefreeGcd).unwrap()),
            count_squarefree_gcd_tuples(3, 10).unwrap().exact_count
        );
        assert!(count_squarefree_gcd_tuples(1, 5).is_err());
    }

    #[test]
    fn constants_agree_for_small_n() {
        for n in 2..=6 {
            let r = count_squarefree_gcd_tuples(n, 1).unwrap();
            assert!((r.constant - r.constant_closed_form.unwrap()).abs() < AGREEMENT);
        }
    }

    #[test]
    fn ratio_converges() {
        let far = |h| (count_coprime_tuples(2, h).unwrap().ratio - 1.0).abs();
        assert!(far(25) >= far(100));
    }

    #[test]
    fn brute_force_guard() {
        assert!(matches!(brute_force_tuple_count(7, 10, Predicate::Coprime), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn sample_classification() {
        assert_eq!(classify_sample(&IntPoly::from_i64s(&[1, 0, 0, 0, 1])).unwrap(), SampleOutcome::Success);
        assert_eq!(classify_sample(&IntPoly::from_i64s(&[-1, 0, 1])).unwrap(), SampleOutcome::Failure);
    }

    #[test]
    fn quadratics_fail_exactly_when_they_have_rational_roots() {
        let curve = condition_star_density(2, 2, &[10], 500, 3).unwrap();
        let point = &curve.points[0];
        assert_eq!(point.success + point.failure + point.inconclusive, 500);
        // an irreducible quadratic is inert at half the primes
        assert_eq!(point.inconclusive, 0);
        let admit = |p: &IntPoly| (p.degree() == 2 && p.multiplicity_bound_ok(2)).then(|| p.clone());
        let mut with_root = 0;
        for b in 0..500u64.div_ceil(BATCH) {
            let wanted = BATCH.min(500 - b * BATCH);
            let (polys, _) = draw_batch(CensusKind::ConditionStar, 3, 10, b, wanted, 2, &admit).unwrap();
            with_root += polys.iter().filter(|p| !rational_roots(p).unwrap().is_empty()).count() as u64;
        }
        assert_eq!(with_root, point.failure);
    }

    #[test]
    fn census_is_reproducible() {
        let a = condition_star_density(4, 2, &[10, 30], 200, 7).unwrap();
        let b = condition_star_density(4, 2, &[10, 30], 200, 7).unwrap();
        assert_eq!(a, b);
        let c = condition_star_density(4, 2, &[10, 30], 200, 8).unwrap();
        assert_ne!(a, c);
        for p in &a.points {
            assert_eq!(p.success + p.failure + p.inconclusive, p.samples);
        }
    }

    #[test]
    fn quadratic_census_counts_degree_drops() {
        let curve = quadratic_extension_census(4, &[10, 100], 1000, 7).unwrap();
        let (low, high) = (&curve.points[0], &curve.points[1]);
        assert!(low.degree_drop > 0);
        assert!(high.degree_drop < low.degree_drop);
        assert!(high.success_fraction > 0.5);
    }

    #[test]
    fn census_argument_checks() {
        assert!(condition_star_density(4, 3, &[10], 100, 1).is_err());
        assert!(condition_star_density(4, 2, &[10], 99, 1).is_err());
        assert!(quadratic_extension_census(3, &[10], 100, 1).is_err());
    }
}
