use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::moebius::{MoebiusElement, MoebiusType};
use super::sphere;
use crate::error::{Error, Result};
use crate::rng::Lcg;

/// Letters `2k` and `2k + 1` stand for generator `k` and its inverse.
pub type Word = Vec<usize>;

/// Words whose matrix is this close to `+-I` act trivially and count as relations.
pub const RELATION_TOL: f64 = 1e-9;
/// Chordal tolerance for merging orbit points.
pub const DEDUP_TOL: f64 = 1e-12;
/// Length of the random words whose fixed points approximate the limit set.
pub const LIMIT_WORD_LENGTH: usize = 12;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn contains(&self, z: Complex64) -> bool {
        !sphere::is_infinite(z) && (z - self.center).norm() < self.radius
    }
}

/// A generator maps the exterior of `source` onto the interior of `target`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct CirclePair {
    pub source: Circle,
    pub target: Circle,
}

impl CirclePair {
    /// `z -> c' + r r' / (z - c)`.
    pub fn generator(&self) -> MoebiusElement {
        let (c0, r0) = (self.source.center, self.source.radius);
        let (c1, r1) = (self.target.center, self.target.radius);
        let one = Complex64::new(1.0, 0.0);
        MoebiusElement::new(c1, one * (r0 * r1) - c1 * c0, one, -c0).expect("det = -r r' != 0")
    }
}

/// A finitely generated subgroup of PGL2(C).
#[derive(Clone, Debug, PartialEq)]
pub struct KleinianGroup {
    generators: Vec<MoebiusElement>,
    labels: Vec<String>,
    circles: Option<Vec<CirclePair>>,
}

/// Orbit points, sorted along the sphere and deduplicated.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbit {
    pub points: Vec<Complex64>,
    /// Set when the point cap stopped the enumeration.
    pub truncated: bool,
}

/// Attracting fixed points of random long words.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitCloud {
    pub points: Vec<Complex64>,
    /// Why the cloud is empty, if it is.
    pub diagnostic: Option<String>,
}

impl KleinianGroup {
    pub fn new(generators: Vec<MoebiusElement>, labels: Vec<String>) -> Result<Self> {
        if generators.len() != labels.len() {
            return Err(Error::Arity { expected: generators.len(), found: labels.len() });
        }
        Ok(KleinianGroup { generators, labels, circles: None })
    }

    /// Labels `g1, g2, ...`.
    pub fn from_generators(generators: Vec<MoebiusElement>) -> Self {
        let labels = (1..=generators.len()).map(|k| format!("g{k}")).collect();
        KleinianGroup { generators, labels, circles: None }
    }

    pub fn generators(&self) -> &[MoebiusElement] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Circle pairs of a Schottky group built by [`schottky_build`].
    pub fn circle_pairs(&self) -> Option<&[CirclePair]> {
        self.circles.as_deref()
    }

    pub fn letter_count(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn letter(&self, l: usize) -> MoebiusElement {
        let g = self.generators[l / 2];
        if l.is_multiple_of(2) { g } else { g.inverse() }
    }

    pub fn word_label(&self, w: &[usize]) -> String {
        let parts: Vec<String> = w
            .iter()
            .map(|&l| {
                let s = &self.labels[l / 2];
                if l % 2 == 0 { s.clone() } else { format!("{s}^-1") }
            })
            .collect();
        if parts.is_empty() { String::from("id") } else { parts.join("*") }
    }

    pub fn evaluate(&self, w: &[usize]) -> MoebiusElement {
        w.iter().fold(MoebiusElement::identity(), |acc, &l| acc.mul(&self.letter(l)))
    }

    /// Visits every nonempty reduced word of length at most `max_len` with its matrix, depth
    /// first in lexicographic letter order. The visitor returns `false` to stop.
    fn visit_words(&self, max_len: usize, f: &mut impl FnMut(&[usize], &MoebiusElement) -> bool) {
        let mut word = Vec::with_capacity(max_len);
        let mut stack = vec![MoebiusElement::identity()];
        self.visit_rec(max_len, &mut word, &mut stack, f);
    }

    fn visit_rec(
        &self,
        max_len: usize,
        word: &mut Vec<usize>,
        stack: &mut Vec<MoebiusElement>,
        f: &mut impl FnMut(&[usize], &MoebiusElement) -> bool,
    ) -> bool {
        if word.len() == max_len {
            return true;
        }
        for l in 0..self.letter_count() {
            if word.last().is_some_and(|&p| p ^ 1 == l) {
                continue;
            }
            let m = stack.last().expect("nonempty").mul(&self.letter(l));
            word.push(l);
            stack.push(m);
            let go = f(word, &m) && self.visit_rec(max_len, word, stack, f);
            word.pop();
            stack.pop();
            if !go {
                return false;
            }
        }
        true
    }

    /// Images of `seed` under all reduced words of length at most `max_len`, stopping after
    /// `cap` images.
    pub fn orbit(&self, seed: Complex64, max_len: usize, cap: usize) -> Orbit {
        let mut points = vec![seed];
        let mut truncated = false;
        self.visit_words(max_len, &mut |_, m| {
            if points.len() >= cap {
                truncated = true;
                return false;
            }
            points.push(m.apply(seed));
            true
        });
        Orbit { points: sphere::dedup(points, DEDUP_TOL), truncated }
    }

    /// A uniformly random reduced word of the given length.
    pub fn random_word(&self, len: usize, rng: &mut Lcg) -> Word {
        let n = self.letter_count() as u64;
        let mut w: Word = Vec::with_capacity(len);
        for _ in 0..len {
            let l = match w.last() {
                None => rng.below(n) as usize,
                Some(&p) => {
                    // Skip the inverse of the previous letter.
                    let k = rng.below(n - 1) as usize;
                    if k >= (p ^ 1) { k + 1 } else { k }
                }
            };
            w.push(l);
        }
        w
    }

    /// Attracting fixed points of `budget` random reduced words of length 12.
    pub fn limit_set_approx(&self, budget: usize, seed: u64) -> LimitCloud {
        if self.generators.is_empty() {
            return LimitCloud { points: Vec::new(), diagnostic: Some("no generators".into()) };
        }
        let mut rng = Lcg::new(seed);
        let mut points = Vec::with_capacity(budget);
        for _ in 0..budget {
            let w = self.random_word(LIMIT_WORD_LENGTH, &mut rng);
            if let Some(z) = self.evaluate(&w).attracting_fixed_point() {
                points.push(z);
            }
        }
        if points.is_empty() {
            let msg = format!("no loxodromic word among {budget} samples");
            return LimitCloud { points, diagnostic: Some(msg) };
        }
        LimitCloud { points: sphere::dedup(points, DEDUP_TOL), diagnostic: None }
    }

    /// The shortest-first, then lexicographically first, nontrivial reduced word of length at
    /// most `max_len` within `eps` of `+-I`. Words within [`RELATION_TOL`] of `+-I` are relations
    /// of the group and are skipped.
    pub fn discreteness_witness(&self, eps: f64, max_len: usize) -> Option<Word> {
        (1..=max_len).find_map(|len| {
            let mut found = None;
            self.visit_words(len, &mut |w, m| {
                if w.len() == len {
                    let d = m.distance_to_identity();
                    if d > RELATION_TOL && d <= eps {
                        found = Some(w.to_vec());
                        return false;
                    }
                }
                true
            });
            found
        })
    }

    /// `true` when no nontrivial reduced word of length at most `max_len` is within `eps` of
    /// `+-I`: a necessary condition for discreteness.
    pub fn discreteness_proxy(&self, eps: f64, max_len: usize) -> bool {
        self.discreteness_witness(eps, max_len).is_none()
    }

    /// For a Schottky group, moves `z` into the closed common exterior of the circles by
    /// ping-pong. Returns the number of steps, or `None` when `z` is still inside a disk after
    /// `max_steps` steps, which happens exactly near the limit set.
    pub fn ping_pong_depth(&self, z: Complex64, max_steps: usize) -> Option<usize> {
        let pairs = self.circles.as_deref()?;
        let mut z = z;
        for step in 0..=max_steps {
            let hit = pairs.iter().enumerate().find_map(|(k, p)| {
                if p.source.contains(z) {
                    Some(2 * k)
                } else if p.target.contains(z) {
                    Some(2 * k + 1)
                } else {
                    None
                }
            });
            match hit {
                None => return Some(step),
                Some(l) => z = self.letter(l).apply(z),
            }
        }
        None
    }

    /// Elementary classification of each generator.
    pub fn generator_types(&self) -> Vec<MoebiusType> {
        self.generators.iter().map(MoebiusElement::classify).collect()
    }
}

/// Pairs the circles so that each generator maps the exterior of its source onto the interior
/// of its target. The `2k` closed disks must be pairwise disjoint; disks are numbered `2j`
/// (source) and `2j + 1` (target).
pub fn schottky_build(pairs: &[CirclePair]) -> Result<KleinianGroup> {
    let disks: Vec<Circle> = pairs.iter().flat_map(|p| [p.source, p.target]).collect();
    if let Some(bad) = disks.iter().position(|d| !(d.radius > 0.0) || !d.center.is_finite()) {
        return Err(Error::Constraint(format!("disk {bad} needs a finite center and positive radius")));
    }
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if (disks[i].center - disks[j].center).norm() <= disks[i].radius + disks[j].radius {
                return Err(Error::OverlappingDisks(i, j));
            }
        }
    }
    let generators = pairs.iter().map(CirclePair::generator).collect();
    let mut g = KleinianGroup::from_generators(generators);
    g.circles = Some(pairs.to_vec());
    Ok(g)
}

/// Largest chordal distance from a point of `from` to the nearest point of `to`.
pub fn directed_hausdorff(from: &[Complex64], to: &[Complex64]) -> f64 {
    let tagged: Vec<[f64; 3]> = {
        let mut t: Vec<[f64; 3]> = to.iter().map(|&z| sphere::to_sphere(z)).collect();
        t.sort_by(|a, b| a[0].total_cmp(&b[0]));
        t
    };
    let nearest = |p: [f64; 3]| -> f64 {
        let start = tagged.partition_point(|q| q[0] < p[0]);
        let mut best = f64::INFINITY;
        let d = |q: &[f64; 3]| {
            let s: f64 = (0..3).map(|k| (p[k] - q[k]) * (p[k] - q[k])).sum();
            num_traits::Float::sqrt(s)
        };
        for q in tagged[start..].iter() {
            if q[0] - p[0] > best {
                break;
            }
            best = best.min(d(q));
        }
        for q in tagged[..start].iter().rev() {
            if p[0] - q[0] > best {
                break;
            }
            best = best.min(d(q));
        }
        best
    };
    from.iter().map(|&z| nearest(sphere::to_sphere(z))).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn cyclic_orbit_and_limit_set() {
        let g = KleinianGroup::from_generators(vec![MoebiusElement::dilation(c(2.0, 0.0)).unwrap()]);
        let o = g.orbit(c(1.0, 0.0), 3, 1000);
        let mut re: Vec<f64> = o.points.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        assert_eq!(re, [0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]);
        let cloud = g.limit_set_approx(50, 1);
        assert_eq!(cloud.points.len(), 2);
        assert!(cloud.points.iter().any(|z| sphere::is_infinite(*z)));
        assert!(cloud.points.iter().any(|z| z.norm() < 1e-12));
    }

    #[test]
    fn lattice_orbit_and_relations() {
        let g = KleinianGroup::from_generators(vec![
            MoebiusElement::translation(c(1.0, 0.0)),
            MoebiusElement::translation(c(0.0, 1.0)),
        ]);
        assert_eq!(g.orbit(c(0.0, 0.0), 2, 1000).points.len(), 13);
        assert!(g.discreteness_proxy(1e-6, 8));
        assert!(g.limit_set_approx(10, 3).diagnostic.is_some());
    }

    #[test]
    fn irrational_rotation_fails_the_proxy() {
        let r = Complex64::from_polar(1.0, 2.0f64.sqrt());
        let g = KleinianGroup::from_generators(vec![MoebiusElement::dilation(r).unwrap()]);
        let w = g.discreteness_witness(1e-2, 40).unwrap();
        assert_eq!(w.len(), 40);
        assert!(g.discreteness_proxy(1e-2, 39));
    }

    #[test]
    fn schottky_ping_pong() {
        let g = schottky_build(&four_circles()).unwrap();
        assert!(g.discreteness_proxy(1e-6, 8));
        assert_eq!(g.ping_pong_depth(c(0.0, 0.0), 64), Some(0));
        assert_eq!(g.ping_pong_depth(c(3.2, 0.1), 64), Some(1));
        let cloud = g.limit_set_approx(2000, 1);
        let pairs = four_circles();
        assert!(cloud.points.iter().all(|&z| pairs.iter().any(|p| p.source.contains(z) || p.target.contains(z))));
        for gen in g.generators() {
            let image: Vec<Complex64> = cloud.points.iter().map(|&z| gen.apply(z)).collect();
            assert!(directed_hausdorff(&image, &cloud.points) < 1e-2);
        }
    }

    #[test]
    fn overlapping_disks_are_rejected() {
        let circ = |re| Circle { center: c(re, 0.0), radius: 1.0 };
        let tangent = [CirclePair { source: circ(1.0), target: circ(-1.0) }];
        assert_eq!(schottky_build(&tangent), Err(Error::OverlappingDisks(0, 1)));
    }
}
