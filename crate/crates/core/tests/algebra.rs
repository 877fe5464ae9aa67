use cremona_core::algebra::{gcd, Monomial, Poly, RationalFunction, Scalar, VarSet};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-4i64..=4, -4i64..=4, 1i64..=3).prop_map(|(re, im, d)| &Scalar::gaussian(re, im) * &Scalar::ratio(1, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..=3, 0u32..=2), scalar()), 1..5).prop_map(|terms| {
        Poly::from_terms(VarSet::Affine, terms.into_iter().map(|((i, j), c)| (Monomial::from_slice(&[i, j]), c)))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division_undoes_product(p in poly(), q in nonzero_poly()) {
        prop_assert_eq!((&p * &q).div_exact(&q), Some(p));
    }

    #[test]
    fn gcd_recovers_shared_factor(p in nonzero_poly(), q in nonzero_poly(), r in nonzero_poly()) {
        let g = gcd(&(&p * &r), &(&q * &r)).unwrap();
        prop_assert!(g.div_exact(&r.monic()).is_some() || r.is_constant());
        prop_assert!((&p * &r).div_exact(&g).is_some());
        prop_assert!((&q * &r).div_exact(&g).is_some());
    }

    #[test]
    fn rational_functions_are_reduced(p in nonzero_poly(), q in nonzero_poly(), r in nonzero_poly()) {
        let a = RationalFunction::new(&p * &r, &q * &r).unwrap();
        let b = RationalFunction::new(p, q).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn scalar_text_round_trips(s in scalar()) {
        let t = s.to_string();
        prop_assert_eq!(t.parse::<Scalar>().unwrap(), s);
    }

    #[test]
    fn composition_is_associative(p in poly(), q in poly(), r in poly(), s in poly()) {
        let rf = |p: Poly| RationalFunction::from_poly(p);
        let x = RationalFunction::var(VarSet::Affine, 0);
        let inner = [rf(r.clone()), rf(s.clone())];
        let mid = [rf(q.clone()), x.clone()];
        let left = rf(p.clone()).compose(&mid).unwrap().compose(&inner).unwrap();
        let mid_then = [rf(q).compose(&inner).unwrap(), x.compose(&inner).unwrap()];
        prop_assert_eq!(left, rf(p).compose(&mid_then).unwrap());
    }
}
