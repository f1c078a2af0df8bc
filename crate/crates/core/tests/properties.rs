use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use twistlab_core::arith::primes_up_to;
use twistlab_core::kummer::{reduce_kummer, specialize};
use twistlab_core::modp::reduce;
use twistlab_core::prime_sieve::{build_s, classify, witness_is_valid, Verdict};
use twistlab_core::twist_forge::{
    certify_no_points, construct_divisor_point, integer_nth_root, search_points,
};
use twistlab_core::IntPoly;

fn poly_strategy(max_degree: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 2..=max_degree + 1)
        .prop_map(|c| IntPoly::from_i64s(&c))
        .prop_filter("non-constant", |p| !p.is_constant())
}

/// Products of small factors with multiplicities, so squarefree structure is
/// nontrivial.
fn structured_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec((poly_strategy(2, 5), 1u32..=3), 1..=3)
        .prop_map(|factors| factors.iter().fold(IntPoly::one(), |acc, (f, e)| &acc * &f.pow(*e)))
        .prop_filter("degree at most 12", |p| p.degree() <= 12 && !p.is_constant())
}

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_up_to(97))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn homogenized_evaluation(p in poly_strategy(6, 50), a in -30i64..=30, b in 1i64..=30) {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let hom = p.homogenize().eval(&a, &b).unwrap();
        let affine = p.eval(&BigRational::new(a.clone(), b.clone()));
        let scaled = affine * BigRational::from_integer(b.pow(p.degree() as u32));
        prop_assert_eq!(BigRational::from_integer(hom), scaled);
        prop_assert_eq!(p.homogenize().eval(&a, &BigInt::one()).unwrap(), p.eval_int(&a));
    }

    #[test]
    fn squarefree_decomposition_reconstructs(p in structured_poly()) {
        let sqf = p.squarefree_decomposition().unwrap();
        prop_assert_eq!(sqf.reconstruct(), p.clone());
        for (i, (a, _)) in sqf.parts.iter().enumerate() {
            prop_assert!(a.is_separable());
            for (b, _) in &sqf.parts[i + 1..] {
                prop_assert!(a.primitive_gcd(b).is_constant());
            }
        }
        let rad = p.radical().unwrap();
        prop_assert!(rad.is_separable());
    }

    #[test]
    fn discriminant_vanishes_iff_repeated_root(p in prop_oneof![structured_poly(), poly_strategy(6, 50)]) {
        let repeated = !p.primitive_gcd(&p.derivative()).is_constant();
        prop_assert_eq!(p.discriminant().is_zero(), repeated);
    }

    #[test]
    fn reverse_is_an_involution(p in poly_strategy(8, 50)) {
        prop_assume!(!p.constant_term().is_zero());
        prop_assert_eq!(p.reverse().reverse(), p);
    }

    #[test]
    fn display_parses_back(p in poly_strategy(8, 1000)) {
        prop_assert_eq!(p.to_string().parse::<IntPoly>().unwrap(), p.clone());
        prop_assert_eq!(p.to_coeff_list().parse::<IntPoly>().unwrap(), p);
    }

    #[test]
    fn root_count_matches_exhaustive(p in poly_strategy(6, 50), q in small_prime()) {
        let reduced = reduce(&p, q).unwrap();
        prop_assume!(!reduced.is_zero());
        let exhaustive = (0..q).filter(|&t| reduced.eval(t) == 0).count();
        prop_assert_eq!(reduced.root_count().unwrap(), exhaustive);
    }

    #[test]
    fn factor_pattern_survives_taylor_shift(p in poly_strategy(6, 50), q in small_prime(), c in -20i64..=20) {
        let reduced = reduce(&p, q).unwrap();
        prop_assume!(!reduced.is_zero() && reduced.degree() > 0 && reduced.is_squarefree());
        let shifted = reduce(&p.taylor_shift(&BigInt::from(c)), q).unwrap();
        prop_assert_eq!(
            reduced.distinct_degree_pattern().unwrap().degrees,
            shifted.distinct_degree_pattern().unwrap().degrees
        );
    }

    #[test]
    fn classification_is_exact(p in poly_strategy(5, 30), q in small_prime()) {
        let class = classify(&p, q).unwrap();
        prop_assert!(witness_is_valid(&p, &class));
        if class.verdict == Verdict::NonDivisor {
            let pb = BigInt::from(q);
            prop_assert!((0..q).all(|t| !p.eval_int(&BigInt::from(t)).mod_floor(&pb).is_zero()));
        }
    }

    #[test]
    fn certificates_survive_search(
        p in poly_strategy(4, 12).prop_filter("even degree", |p| p.degree() % 2 == 0),
        k in 0usize..4,
        extra in 1i64..=20,
    ) {
        prop_assume!(!p.constant_term().is_zero() && p.multiplicity_bound_ok(2));
        let s = build_s(&p, 60).unwrap();
        prop_assume!(!s.is_empty());
        let d = BigInt::from(s.primes[k % s.len()]) * BigInt::from(extra);
        if let Some(cert) = certify_no_points(&p, 2, &d, &s).unwrap() {
            cert.verify().unwrap();
            prop_assert!(search_points(&p, 2, &d, 25).unwrap().points.is_empty());
        }
    }

    #[test]
    fn search_points_verify(p in poly_strategy(4, 10).prop_filter("even", |p| p.degree() % 2 == 0), d in -10i64..=10) {
        prop_assume!(d != 0);
        let d = BigInt::from(d);
        for pt in search_points(&p, 2, &d, 12).unwrap().points {
            prop_assert!(pt.verify(&p, 2, &d));
        }
    }

    #[test]
    fn divisor_points_verify(p in poly_strategy(4, 20), q in small_prime()) {
        prop_assume!(q > 2);
        match construct_divisor_point(&p, 2, q) {
            Ok(Some(dp)) => {
                prop_assert!(dp.point.verify(&p, 2, &dp.d));
                prop_assert_eq!(dp.valuation, 1);
            }
            Ok(None) => prop_assert!(!classify(&p, q).unwrap().is_divisor()),
            Err(_) => prop_assert!(
                (p.discriminant() * p.leading()).mod_floor(&BigInt::from(q)).is_zero()
            ),
        }
    }

    #[test]
    fn nth_roots_invert_powers(x in -1_000_000_000i64..=1_000_000_000, n in 1u32..=5) {
        let x = BigInt::from(x);
        let power = x.pow(n);
        let root = integer_nth_root(&power, n).unwrap();
        if n % 2 == 0 {
            prop_assert_eq!(root, x.abs());
        } else {
            prop_assert_eq!(root, x.clone());
        }
        if n >= 2 && x.abs() > BigInt::one() {
            prop_assert!(integer_nth_root(&(power + 1), n).is_none());
        }
    }

    #[test]
    fn kummer_reduction_is_idempotent(base in structured_poly(), n in 2u32..=6) {
        prop_assume!(base.multiplicity_bound_ok(n));
        let r = reduce_kummer(&base, n);
        prop_assume!(r.is_ok());
        let r = r.unwrap();
        prop_assert_eq!(r.p0.pow(r.e), base);
        prop_assert_eq!(reduce_kummer(&r.p0, r.n_prime).unwrap().e, 1);
    }

    #[test]
    fn specialization_class_differs_by_a_square(a in -40i64..=40, b in 1i64..=40) {
        let p = IntPoly::from_i64s(&[1, 0, 0, 0, 1]);
        let t0 = BigRational::new(BigInt::from(a), BigInt::from(b));
        let class = specialize(&p, 2, &t0).unwrap();
        let ratio = p.eval(&t0) / BigRational::from_integer(class.rep.clone());
        let num = integer_nth_root(ratio.numer(), 2);
        let den = integer_nth_root(ratio.denom(), 2);
        prop_assert!(num.is_some() && den.is_some());
    }
}
