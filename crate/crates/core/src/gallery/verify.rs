//! Proxy checks for the axioms of a birational Kleinian group on sampled points of `U`.
//!
//! Group elements are enumerated breadth first by word length and deduplicated by their images
//! of a few probe points, so each element is visited at its shortest length.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;


use num_traits::Float;

use super::cases::{ExactMap, GalleryCase, Relation};
use super::numeric::{distance, MapValue, SurfacePoint};
use crate::error::Result;
use crate::kleinian::sphere::to_sphere;
use crate::rng::Lcg;

/// Points of the compact cluster used by the discontinuity statistic.
pub const CLUSTER_SIZE: usize = 16;
/// Radius of the cluster around the first sample.
pub const CLUSTER_RADIUS: f64 = 0.02;
/// Chordal distance under which an element returns the cluster to itself.
pub const RETURN_THRESHOLD: f64 = 0.05;
/// Sample points whose images key an element.
pub const PROBE_COUNT: usize = 4;
/// Grid of the probe-image key on the unit sphere.
pub const KEY_GRID: f64 = 1e-10;
/// Elements moving every probe less than this act as the identity.
pub const IDENTITY_TOL: f64 = 1e-9;
/// Largest residual of a numerically checked relation.
pub const RELATION_RESIDUAL_TOL: f64 = 1e-8;
/// Smallest admissible `|det|` of the period matrix.
pub const LATTICE_DET_TOL: f64 = 1e-6;
/// Witnesses kept per check.
pub const MAX_WITNESSES: usize = 8;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub sample_count: usize,
    pub word_length: usize,
    pub epsilon: f64,
    pub rng_seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { sample_count: 200, word_length: 6, epsilon: 1e-6, rng_seed: 1 }
    }
}

/// A word and a sample point exhibiting a failure.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub word: String,
    pub point: SurfacePoint,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

impl CheckOutcome {
    fn new() -> Self {
        CheckOutcome { passed: true, witnesses: Vec::new() }
    }

    fn fail(&mut self, w: Witness) {
        self.passed = false;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiscontinuityStats {
    pub passed: bool,
    /// `counts[l]`: elements of length at most `l` bringing the cluster within the threshold
    /// of itself, the identity included.
    pub counts: Vec<usize>,
    pub threshold: f64,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LatticeCheck {
    NotApplicable,
    Checked { passed: bool, determinant: f64, rank: usize },
}

impl LatticeCheck {
    pub fn passed(&self) -> bool {
        !matches!(self, LatticeCheck::Checked { passed: false, .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationOutcome {
    pub label: String,
    pub passed: bool,
    /// Decided by exact composition rather than by the residual.
    pub exact: bool,
    /// Largest coordinate difference of the two sides on the probe points.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub row_id: u8,
    pub config: VerifyConfig,
    pub regularity: CheckOutcome,
    pub invariance: CheckOutcome,
    pub freeness: CheckOutcome,
    pub discontinuity: DiscontinuityStats,
    pub lattice_rank: LatticeCheck,
    pub relations: Vec<RelationOutcome>,
    /// Distinct non-identity elements of length at most `L`.
    pub element_count: usize,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.regularity.passed
            && self.invariance.passed
            && self.freeness.passed
            && self.discontinuity.passed
            && self.lattice_rank.passed()
            && self.relations.iter().all(|r| r.passed)
    }
}

struct Element {
    /// Letters, leftmost applied last; letter `2k + 1` is the inverse of generator `k`.
    word: Vec<usize>,
    images: Vec<Option<SurfacePoint>>,
}

fn word_label(case: &GalleryCase, w: &[usize]) -> String {
    if w.is_empty() {
        return "id".into();
    }
    let parts: Vec<String> = w
        .iter()
        .map(|&l| {
            let g = &case.generators[l / 2].label;
            if l % 2 == 0 { g.clone() } else { format!("{g}^-1") }
        })
        .collect();
    parts.join("*")
}

fn key_of(images: &[Option<SurfacePoint>]) -> Vec<i64> {
    let mut key = Vec::with_capacity(PROBE_COUNT * 6);
    for img in images.iter().take(PROBE_COUNT) {
        match img {
            Some(p) => {
                for z in p {
                    key.extend(to_sphere(*z).iter().map(|c| Float::round(c / KEY_GRID) as i64));
                }
            }
            None => key.extend([i64::MAX; 6]),
        }
    }
    key
}

fn cluster(center: SurfacePoint, case: &GalleryCase, seed: u64) -> Vec<SurfacePoint> {
    let mut rng = Lcg::new(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut out = vec![center];
    while out.len() < CLUSTER_SIZE {
        let mut p = center;
        for z in p.iter_mut() {
            let r = CLUSTER_RADIUS * Float::sqrt(rng.next_f64()) / 2.0;
            let t = rng.uniform(0.0, 2.0 * core::f64::consts::PI);
            // Chordal and Euclidean steps agree up to the conformal factor.
            let scale = (1.0 + z.norm_sqr()) / 2.0;
            *z += num_complex::Complex64::from_polar(r * scale, t);
        }
        if case.domain.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn returns(images: &[Option<SurfacePoint>], k: &[SurfacePoint]) -> bool {
    images.iter().flatten().any(|p| k.iter().any(|q| distance(p, q) < RETURN_THRESHOLD))
}

/// Runs the regularity, invariance, freeness, discontinuity, lattice and relation checks.
pub fn verify_case(case: &GalleryCase, cfg: &VerifyConfig) -> VerificationReport {
    let samples = case.domain.sample(cfg.sample_count.max(PROBE_COUNT), cfg.rng_seed);
    let n = samples.len();
    let k_points = cluster(samples[0], case, cfg.rng_seed);
    let points: Vec<SurfacePoint> = samples.iter().chain(k_points.iter()).copied().collect();
    let mut regularity = CheckOutcome::new();
    let mut invariance = CheckOutcome::new();
    let mut freeness = CheckOutcome::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let identity_images: Vec<Option<SurfacePoint>> = points.iter().map(|p| Some(*p)).collect();
    seen.insert(key_of(&identity_images));
    let mut frontier = vec![Element { word: Vec::new(), images: identity_images }];
    let mut counts = vec![1usize];
    let mut return_witnesses = Vec::new();
    let mut element_count = 0usize;
    let mut relation_words = 0usize;
    let mut at_infinity = 0usize;
    let letters = 2 * case.generators.len();

    for len in 1..=cfg.word_length {
        let mut next = Vec::new();
        let mut new_returns = 0usize;
        for el in &frontier {
            for l in 0..letters {
                if el.word.first().is_some_and(|&f| f ^ 1 == l) {
                    continue;
                }
                let g = &case.generators[l / 2];
                let map = if l % 2 == 0 { &g.forward } else { &g.inverse };
                let mut word = vec![l];
                word.extend_from_slice(&el.word);
                let mut images = Vec::with_capacity(points.len());
                for (i, img) in el.images.iter().enumerate() {
                    let Some(p) = img else {
                        images.push(None);
                        continue;
                    };
                    let out = match map.apply(p) {
                        MapValue::Point(q) => Some(q),
                        MapValue::Indeterminate => {
                            regularity.fail(Witness {
                                word: word_label(case, &word),
                                point: points[i],
                                detail: "indeterminacy point".into(),
                            });
                            None
                        }
                        MapValue::Infinite(flags) => {
                            let bad = (0..2).find(|&c| flags[c] && !case.domain.allows_infinity(c));
                            if let Some(c) = bad {
                                regularity.fail(Witness {
                                    word: word_label(case, &word),
                                    point: points[i],
                                    detail: format!("pole in coordinate {c}"),
                                });
                            } else {
                                at_infinity += 1;
                            }
                            None
                        }
                    };
                    images.push(out);
                }
                let moved = images
                    .iter()
                    .zip(&points)
                    .take(PROBE_COUNT)
                    .any(|(img, p)| img.is_none_or(|q| distance(&q, p) > IDENTITY_TOL));
                if !moved {
                    relation_words += 1;
                    continue;
                }
                if !seen.insert(key_of(&images)) {
                    continue;
                }
                element_count += 1;
                let label = word_label(case, &word);
                for (i, img) in images.iter().enumerate() {
                    let Some(q) = img else { continue };
                    if !case.domain.contains(q) {
                        invariance.fail(Witness {
                            word: label.clone(),
                            point: points[i],
                            detail: format!("image ({}, {}) leaves U", q[0], q[1]),
                        });
                    }
                    if i < n && distance(q, &points[i]) < cfg.epsilon {
                        freeness.fail(Witness {
                            word: label.clone(),
                            point: points[i],
                            detail: format!("displacement {:e} below epsilon", distance(q, &points[i])),
                        });
                    }
                }
                if returns(&images[n..], &k_points) {
                    new_returns += 1;
                    if len == cfg.word_length && return_witnesses.len() < MAX_WITNESSES {
                        return_witnesses.push(Witness {
                            word: label,
                            point: k_points[0],
                            detail: "returns the cluster at the final length".into(),
                        });
                    }
                }
                next.push(Element { word, images });
            }
        }
        counts.push(counts[len - 1] + new_returns);
        frontier = next;
    }

    let passed = cfg.word_length == 0 || counts[cfg.word_length] == counts[cfg.word_length - 1];
    let discontinuity =
        DiscontinuityStats { passed, counts, threshold: RETURN_THRESHOLD, witnesses: return_witnesses };
    let probes: Vec<SurfacePoint> = samples.iter().take(PROBE_COUNT).copied().collect();
    let relations = case.relations.iter().map(|r| check_relation(case, r, &probes)).collect();
    let lattice_rank = match &case.periods {
        None => LatticeCheck::NotApplicable,
        Some(p) => {
            let (determinant, rank) = det_and_rank(&p.vectors);
            LatticeCheck::Checked { passed: rank == 4 && determinant.abs() > LATTICE_DET_TOL, determinant, rank }
        }
    };
    let mut notes = vec![format!(
        "no violation found at (L = {}, epsilon = {:e}) unless listed; proxies are necessary conditions only",
        cfg.word_length, cfg.epsilon
    )];
    if relation_words > 0 {
        notes.push(format!("{relation_words} words act as the identity on the probes and were skipped"));
    }
    if at_infinity > 0 {
        notes.push(format!("{at_infinity} images reached an admissible point at infinity and were not followed"));
    }
    VerificationReport {
        row_id: case.row_id,
        config: *cfg,
        regularity,
        invariance,
        freeness,
        discontinuity,
        lattice_rank,
        relations,
        element_count,
        notes,
    }
}

fn apply_word(case: &GalleryCase, w: &[(usize, i64)], p: &SurfacePoint) -> Option<SurfacePoint> {
    let mut q = *p;
    for &(g, e) in w.iter().rev() {
        let gen = &case.generators[g];
        let map = if e < 0 { &gen.inverse } else { &gen.forward };
        for _ in 0..e.unsigned_abs() {
            match map.apply(&q) {
                MapValue::Point(r) => q = r,
                _ => return None,
            }
        }
    }
    Some(q)
}

fn exact_word(case: &GalleryCase, w: &[(usize, i64)]) -> Option<Result<ExactMap>> {
    let mut acc = ExactMap::identity();
    for &(g, e) in w {
        let m = case.generators[g].exact.as_ref()?;
        acc = match m.pow(e).and_then(|p| acc.compose(&p)) {
            Ok(a) => a,
            Err(err) => return Some(Err(err)),
        };
    }
    Some(Ok(acc))
}

fn check_relation(case: &GalleryCase, r: &Relation, probes: &[SurfacePoint]) -> RelationOutcome {
    let mut residual = 0.0f64;
    for p in probes {
        residual = match (apply_word(case, &r.lhs, p), apply_word(case, &r.rhs, p)) {
            (Some(a), Some(b)) => residual.max((a[0] - b[0]).norm()).max((a[1] - b[1]).norm()),
            _ => f64::INFINITY,
        };
    }
    match (exact_word(case, &r.lhs), exact_word(case, &r.rhs)) {
        (Some(Ok(a)), Some(Ok(b))) => {
            RelationOutcome { label: r.label.clone(), passed: a.forward == b.forward, exact: true, residual }
        }
        _ => RelationOutcome {
            label: r.label.clone(),
            passed: residual <= RELATION_RESIDUAL_TOL,
            exact: false,
            residual,
        },
    }
}

/// Determinant and numerical rank of the matrix with the given rows.
pub fn det_and_rank(rows: &[[f64; 4]]) -> (f64, usize) {
    let mut m: Vec<[f64; 4]> = rows.to_vec();
    let scale = m.iter().flatten().fold(0.0f64, |a, b| a.max(b.abs())).max(1.0);
    let tol = 1e-9 * scale;
    let mut det = if m.len() == 4 { 1.0 } else { 0.0 };
    let mut rank = 0;
    for col in 0..4 {
        let Some(piv) = (rank..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())) else {
            break;
        };
        if m[piv][col].abs() <= tol {
            det = 0.0;
            continue;
        }
        if piv != rank {
            m.swap(piv, rank);
            det = -det;
        }
        det *= m[rank][col];
        for r in rank + 1..m.len() {
            let f = m[r][col] / m[rank][col];
            for c in col..4 {
                m[r][c] -= f * m[rank][c];
            }
        }
        rank += 1;
    }
    (det, rank)
}
