use std::time::Instant;

use cremona_core::algebra::{RationalFunction, Scalar, VarSet};
use cremona_core::birational::{check_inverse, CremonaMap, JonquieresElement, P1xP1Map};
use proptest::prelude::*;

fn x() -> RationalFunction {
    RationalFunction::var(VarSet::Affine, 0)
}

fn y() -> RationalFunction {
    RationalFunction::var(VarSet::Affine, 1)
}

fn c(s: Scalar) -> RationalFunction {
    RationalFunction::constant(VarSet::Affine, s)
}

#[test]
fn standard_involution() {
    let t = Instant::now();
    let sigma = CremonaMap::standard_quadratic_involution();
    assert_eq!(sigma.degree(), 2);
    assert!(check_inverse(&sigma, &sigma));
    assert!(sigma.compose(&sigma).is_identity());
    assert!(t.elapsed().as_secs_f64() < 1.0);
}

#[test]
fn henon_inverse() {
    // (x, y) -> (y, y^2 - x) has inverse (x, y) -> (x^2 - y, x).
    let f = CremonaMap::from_affine(&y(), &(&(&y() * &y()) - &x())).unwrap();
    let g = CremonaMap::from_affine(&(&(&x() * &x()) - &y()), &x()).unwrap();
    assert!(check_inverse(&f, &g));
    assert!(!check_inverse(&f, &f));
    assert_eq!(f.compose(&f).degree(), 4);
}

fn small() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| Scalar::gaussian(a, b))
}

fn unit() -> impl Strategy<Value = Scalar> {
    small().prop_filter("nonzero", |s| !num_traits::Zero::is_zero(s))
}

/// `(a x + b, R(x) y + S(x))` with polynomial `R = r0 + r1 x^k`, nonvanishing at a generic point.
fn jonquieres() -> impl Strategy<Value = JonquieresElement> {
    (unit(), small(), unit(), small(), 0i32..=2, small(), small()).prop_filter_map(
        "invertible",
        |(a, b, r0, r1, k, s0, s1)| {
            let r = &c(r0) + &(&c(r1) * &x().powi(k).unwrap());
            let s = &c(s0) + &(&c(s1) * &x());
            let f1 = &(&c(a) * &x()) + &c(b);
            JonquieresElement::from_affine(&f1, &(&(&r * &y()) + &s)).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn jonquieres_group_laws(f in jonquieres(), g in jonquieres(), h in jonquieres()) {
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert_eq!(f.compose(&g).inverse(), g.inverse().compose(&f.inverse()));
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
    }

    #[test]
    fn models_agree_on_composition(f in jonquieres(), g in jonquieres()) {
        let fg = f.compose(&g);
        prop_assert_eq!(f.to_cremona().compose(&g.to_cremona()), fg.to_cremona());
        prop_assert_eq!(f.to_p1xp1().compose(&g.to_p1xp1()), fg.to_p1xp1());
        prop_assert!(check_inverse(&f.to_cremona(), &f.inverse().to_cremona()));
        prop_assert!(fg.to_cremona().degree() <= f.to_cremona().degree() * g.to_cremona().degree());
        let (r1, r2) = fg.affine_images();
        prop_assert_eq!(JonquieresElement::from_affine(&r1, &r2).unwrap(), fg);
    }

    #[test]
    fn bidegree_matches_fiber_degree(f in jonquieres()) {
        let p: P1xP1Map = f.to_p1xp1();
        prop_assert_eq!(p.degree(), f.fiber_degree() + 2);
    }
}
