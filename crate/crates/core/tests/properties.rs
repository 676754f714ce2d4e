//! Algebraic laws of the polynomial, series and univariate layers.

use cymf::univariate;
use cymf::*;
use proptest::prelude::*;

const VARS: [&str; 2] = ["x", "y"];

fn poly_strategy() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(((0u32..4, 0u32..4), -5i64..6, 1i64..4), 0..6).prop_map(|terms| {
        Poly::from_terms(
            &VARS,
            terms
                .into_iter()
                .map(|((a, b), p, q)| (vec![a, b], ratio(p, q))),
        )
    })
}

fn upoly_strategy() -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(-4i64..5, 1..5).prop_map(|v| v.into_iter().map(rat).collect())
}

proptest! {
    #[test]
    fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_parses_back(p in poly_strategy()) {
        let text = p.to_string();
        prop_assert_eq!(Poly::parse(&text, Some(&VARS)).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly_strategy(), q in poly_strategy(), a in poly_strategy(), b in poly_strategy()) {
        let img = [a, b];
        let lhs = (&p * &q).substitute(&img).unwrap();
        let rhs = &p.substitute(&img).unwrap() * &q.substitute(&img).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leibniz_rule(p in poly_strategy(), q in poly_strategy(), v in 0usize..2) {
        let lhs = (&p * &q).derivative(v);
        let rhs = &(&p.derivative(v) * &q) + &(&p * &q.derivative(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly_strategy(), q in poly_strategy(), x in -3i64..4, y in -3i64..4) {
        let pt = [rat(x), rat(y)];
        prop_assert_eq!((&p * &q).eval(&pt), p.eval(&pt) * q.eval(&pt));
    }

    #[test]
    fn series_product_is_truncated_product(p in poly_strategy(), q in poly_strategy(), n in 0u32..7) {
        let a = PowerSeries::new(p.clone(), n);
        let b = PowerSeries::new(q.clone(), n);
        let prod = a.arith(&b, Arith::Mul).unwrap();
        prop_assert_eq!(prod.base().clone(), (&p * &q).truncate(n));
        prop_assert_eq!(p.mul_truncated(&q, n), (&p * &q).truncate(n));
    }

    #[test]
    fn translation_round_trips(p in poly_strategy(), s in -3i64..4) {
        prop_assert_eq!(p.translate(0, &rat(s)).translate(0, &rat(-s)), p);
    }

    #[test]
    fn squarefree_decomposition_multiplies_back(a in upoly_strategy(), b in upoly_strategy()) {
        let p = univariate::mul(&univariate::mul(&a, &a), &b);
        prop_assume!(univariate::degree(&p).unwrap_or(0) > 0);
        let mut back = vec![rat(1)];
        for (f, m) in univariate::squarefree_decomposition(&p) {
            for _ in 0..m {
                back = univariate::mul(&back, &f);
            }
        }
        prop_assert_eq!(univariate::monic(&back), univariate::monic(&p));
    }

    #[test]
    fn rational_roots_are_roots(roots in proptest::collection::vec(-4i64..5, 1..4)) {
        let mut p = vec![rat(1)];
        for r in &roots {
            p = univariate::mul(&p, &[rat(-*r), rat(1)]);
        }
        let mut want: Vec<Rat> = roots.iter().map(|&r| rat(r)).collect();
        want.sort();
        want.dedup();
        prop_assert_eq!(univariate::rational_roots(&p), want);
    }
}
