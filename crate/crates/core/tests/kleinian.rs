use cremona_core::kleinian::{directed_hausdorff, schottky_build, Circle, CirclePair, KleinianGroup, MoebiusElement, MoebiusType};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn four_circles() -> Vec<CirclePair> {
    let circ = |re, im| Circle { center: c(re, im), radius: 1.0 };
    vec![
        CirclePair { source: circ(3.0, 0.0), target: circ(-3.0, 0.0) },
        CirclePair { source: circ(0.0, 3.0), target: circ(0.0, -3.0) },
    ]
}

#[test]
fn schottky_limit_cloud() {
    let g = schottky_build(&four_circles()).unwrap();
    assert!(g.generator_types().iter().all(|t| *t == MoebiusType::Loxodromic));
    let cloud = g.limit_set_approx(20_000, 1);
    assert!(cloud.points.len() > 1000);
    let disks: Vec<Circle> = four_circles().iter().flat_map(|p| [p.source, p.target]).collect();
    assert!(cloud.points.iter().all(|&z| disks.iter().any(|d| d.contains(z))));
    for gen in g.generators() {
        for h in [*gen, gen.inverse()] {
            let image: Vec<Complex64> = cloud.points.iter().map(|&z| h.apply(z)).collect();
            assert!(directed_hausdorff(&image, &cloud.points) < 1e-2);
        }
    }
    assert!(g.discreteness_proxy(1e-6, 8));
    assert_eq!(cloud, g.limit_set_approx(20_000, 1));
}

#[test]
fn irrational_rotation_is_caught() {
    let r = Complex64::from_polar(1.0, 2f64.sqrt());
    let g = KleinianGroup::from_generators(vec![MoebiusElement::dilation(r).unwrap()]);
    assert_eq!(g.generator_types(), [MoebiusType::Elliptic]);
    assert!(!g.discreteness_proxy(1e-2, 40));
}

#[test]
fn words_evaluate_as_products() {
    let g = schottky_build(&four_circles()).unwrap();
    let w = [0, 2, 1, 3, 2];
    let m = g.evaluate(&w);
    let z = c(0.3, -0.7);
    let by_letters = w.iter().rev().fold(z, |acc, &l| g.letter(l).apply(acc));
    assert!((m.apply(z) - by_letters).norm() < 1e-12);
    assert_eq!(g.word_label(&[0, 3]), "g1*g2^-1");
}
