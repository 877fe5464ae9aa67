use cremona_core::algebra::{RationalFunction, Scalar};
use cremona_core::rng::Lcg;
use cremona_core::toric::{logform_pullback_scalar, IntMatrix, MonomialMap};
use proptest::prelude::*;

/// A random product of elementary matrices and sign changes.
fn random_matrix(rng: &mut Lcg) -> IntMatrix {
    let mut m = IntMatrix::IDENTITY;
    for _ in 0..1 + rng.below(5) {
        let k = rng.below(5) as i64 - 2;
        let e = match rng.below(3) {
            0 => IntMatrix::new(1, k, 0, 1),
            1 => IntMatrix::new(1, 0, k, 1),
            _ => IntMatrix::new(0, 1, 1, 0),
        };
        m = m.checked_mul(&e).unwrap();
    }
    m
}

fn random_scalar(rng: &mut Lcg) -> Scalar {
    loop {
        let s = Scalar::gaussian(rng.below(7) as i64 - 3, rng.below(7) as i64 - 3);
        if !num_traits::Zero::is_zero(&s) {
            return s;
        }
    }
}

fn random_map(rng: &mut Lcg) -> MonomialMap {
    let m = random_matrix(rng);
    MonomialMap::new(random_scalar(rng), random_scalar(rng), m).unwrap()
}

#[test]
fn log_form_scalar_is_multiplicative() {
    let mut rng = Lcg::new(1);
    for _ in 0..50 {
        let (f, g) = (random_map(&mut rng), random_map(&mut rng));
        let (sf, sg) = (logform_pullback_scalar(&f).unwrap(), logform_pullback_scalar(&g).unwrap());
        assert_eq!(sf, f.matrix().det());
        assert_eq!(logform_pullback_scalar(&f.compose(&g).unwrap()).unwrap(), sf * sg);
    }
}

fn compose_affine(
    f: &(RationalFunction, RationalFunction),
    g: &(RationalFunction, RationalFunction),
) -> (RationalFunction, RationalFunction) {
    let args = [g.0.clone(), g.1.clone()];
    (f.0.compose(&args).unwrap(), f.1.compose(&args).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn semidirect_law_matches_substitution(s1 in any::<u64>(), s2 in any::<u64>()) {
        let f = random_map(&mut Lcg::new(s1));
        let g = random_map(&mut Lcg::new(s2));
        let fg = f.compose(&g).unwrap();
        prop_assert_eq!(fg.affine_images(), compose_affine(&f.affine_images(), &g.affine_images()));
        prop_assert!(f.compose(&f.inverse()).unwrap().is_identity());
        prop_assert_eq!(fg.to_p1xp1(), f.to_p1xp1().compose(&g.to_p1xp1()));
    }
}
