//! Degree sequences of iterates, growth classification and dynamical degrees.

mod line;

use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;

use crate::birational::{CremonaMap, JonquieresElement, P1xP1Map};

/// Convention under which degrees are measured.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    /// Degree of the homogeneous forms on P^2.
    P2,
    /// Sum of the bidegrees of both pairs on P^1 x P^1.
    P1xP1,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::P2 => "p2",
            Model::P1xP1 => "p1xp1",
        })
    }
}

/// Work limit for iteration: the number of stored coefficients of a single iterate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub term_cap: usize,
}

impl Budget {
    pub const DEFAULT_TERM_CAP: usize = 200_000;
}

impl Default for Budget {
    fn default() -> Self {
        Budget { term_cap: Budget::DEFAULT_TERM_CAP }
    }
}

/// `deg f, deg f^2, ..., deg f^N` in a fixed model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSequence {
    pub degrees: Vec<u64>,
    pub model: Model,
    /// Fiber degrees in x for Jonquieres elements.
    pub fiber_degrees: Option<Vec<u64>>,
    /// Set when the term cap stopped iteration before `N`.
    pub truncated: bool,
}

impl DegreeSequence {
    /// Wraps a raw list of degrees, e.g. for classifying synthetic data.
    pub fn from_degrees(degrees: Vec<u64>, model: Model) -> Self {
        DegreeSequence { degrees, model, fiber_degrees: None, truncated: false }
    }

    /// `deg f^(m+n) <= deg f^m deg f^n` wherever both sides are known.
    pub fn is_submultiplicative(&self) -> bool {
        let d = &self.degrees;
        (0..d.len()).all(|m| {
            (0..d.len() - m).all(|n| m + n + 1 >= d.len() || d[m + n + 1] <= d[m] * d[n])
        })
    }
}

/// Anything whose iterates have degrees.
pub trait DegreeGrowth {
    /// Degrees of the first `n` iterates.
    fn degree_sequence_with(&self, n: usize, budget: Budget) -> DegreeSequence;

    fn degree_sequence(&self, n: usize) -> DegreeSequence {
        self.degree_sequence_with(n, Budget::default())
    }
}

impl DegreeGrowth for CremonaMap {
    /// Restricts to two fixed generic lines and keeps the larger degree.
    fn degree_sequence_with(&self, n: usize, budget: Budget) -> DegreeSequence {
        let mut orbits = [line::LineOrbit::new(self, 0), line::LineOrbit::new(self, 1)];
        let mut degrees = Vec::with_capacity(n);
        let mut truncated = false;
        for _ in 0..n {
            if orbits.iter().any(|o| o.size() > budget.term_cap) {
                truncated = true;
                break;
            }
            let d = orbits.iter_mut().map(|o| o.step()).max().unwrap_or(0);
            degrees.push(d as u64);
        }
        DegreeSequence { degrees, model: Model::P2, fiber_degrees: None, truncated }
    }
}

impl DegreeGrowth for JonquieresElement {
    /// Measured on P^1 x P^1, where a fiber degree `k` gives degree `k + 2`.
    fn degree_sequence_with(&self, n: usize, budget: Budget) -> DegreeSequence {
        let mut degrees = Vec::with_capacity(n);
        let mut fiber = Vec::with_capacity(n);
        let mut truncated = false;
        let mut g = self.clone();
        for k in 0..n {
            if k > 0 {
                let size: usize = g.fiber().iter().map(|p| p.num_terms()).sum();
                if size > budget.term_cap {
                    truncated = true;
                    break;
                }
                g = g.compose(self);
            }
            let k = g.fiber_degree() as u64;
            fiber.push(k);
            degrees.push(k + 2);
        }
        DegreeSequence { degrees, model: Model::P1xP1, fiber_degrees: Some(fiber), truncated }
    }
}

impl DegreeGrowth for P1xP1Map {
    fn degree_sequence_with(&self, n: usize, budget: Budget) -> DegreeSequence {
        let mut degrees = Vec::with_capacity(n);
        let mut truncated = false;
        let mut g = self.clone();
        for k in 0..n {
            if k > 0 {
                if g.num_terms() > budget.term_cap {
                    truncated = true;
                    break;
                }
                g = self.compose(&g);
            }
            degrees.push(g.degree() as u64);
        }
        DegreeSequence { degrees, model: Model::P1xP1, fiber_degrees: None, truncated }
    }
}

/// Growth type of a degree sequence, named after the dynamical type it indicates.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum GrowthClass {
    /// Bounded degrees.
    Elliptic,
    /// Linear growth.
    JonquieresTwist,
    /// Quadratic growth.
    HalphenTwist,
    /// Exponential growth with the ratio of the last two degrees.
    Loxodromic { lambda_estimate: f64 },
    /// Too short, or no pattern on the tail.
    Unknown,
}

impl GrowthClass {
    pub fn name(&self) -> &'static str {
        match self {
            GrowthClass::Elliptic => "Elliptic",
            GrowthClass::JonquieresTwist => "JonquieresTwist",
            GrowthClass::HalphenTwist => "HalphenTwist",
            GrowthClass::Loxodromic { .. } => "Loxodromic",
            GrowthClass::Unknown => "Unknown",
        }
    }

    /// Growth of the degrees: `bounded`, `linear`, `quadratic`, `exponential` or `unknown`.
    pub fn growth(&self) -> &'static str {
        match self {
            GrowthClass::Elliptic => "bounded",
            GrowthClass::JonquieresTwist => "linear",
            GrowthClass::HalphenTwist => "quadratic",
            GrowthClass::Loxodromic { .. } => "exponential",
            GrowthClass::Unknown => "unknown",
        }
    }

    pub fn lambda_estimate(&self) -> Option<f64> {
        match self {
            GrowthClass::Loxodromic { lambda_estimate } => Some(*lambda_estimate),
            _ => None,
        }
    }

    /// Same class, ignoring the estimate.
    pub fn same_type(&self, other: &GrowthClass) -> bool {
        self.name() == other.name()
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

const RATIO_SPREAD: f64 = 1e-2;
const MIN_RATIO: f64 = 1.05;

fn constant_positive(v: &[i128]) -> bool {
    v.first().is_some_and(|&a| a > 0 && v.iter().all(|&b| b == a))
}

/// Classifies on the tail of the last `max(4, N/2)` entries.
pub fn classify_growth(seq: &DegreeSequence) -> GrowthClass {
    let d = &seq.degrees;
    let len = 4.max(d.len() / 2);
    if d.len() < len {
        return GrowthClass::Unknown;
    }
    let tail: Vec<i128> = d[d.len() - len..].iter().map(|&x| x as i128).collect();
    if tail.iter().all(|&x| x == tail[0]) {
        return GrowthClass::Elliptic;
    }
    let d1: Vec<i128> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    if constant_positive(&d1) {
        return GrowthClass::JonquieresTwist;
    }
    let d2: Vec<i128> = d1.windows(2).map(|w| w[1] - w[0]).collect();
    if constant_positive(&d2) {
        return GrowthClass::HalphenTwist;
    }
    let last = &d[d.len() - 4..];
    if last.contains(&0) {
        return GrowthClass::Unknown;
    }
    let ratios: Vec<f64> = last.windows(2).map(|w| w[1] as f64 / w[0] as f64).collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < RATIO_SPREAD && lo > MIN_RATIO {
        return GrowthClass::Loxodromic { lambda_estimate: ratios[ratios.len() - 1] };
    }
    GrowthClass::Unknown
}

/// Estimate of `lambda = lim deg(f^n)^(1/n)` and of the translation length `log lambda`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DynamicalDegree {
    pub lambda: f64,
    pub translation_length: f64,
    /// `d_N / d_(N-1)`.
    pub ratio_estimate: f64,
    /// `d_N^(1/N)`, which converges from above.
    pub root_estimate: f64,
    pub class: GrowthClass,
}

/// Sequences of length at least this in a sub-exponential class report `lambda = 1`.
pub const SUBEXPONENTIAL_MIN_LEN: usize = 8;

pub fn dynamical_degree(seq: &DegreeSequence) -> DynamicalDegree {
    let d = &seq.degrees;
    let class = classify_growth(seq);
    let n = d.len();
    let ratio = if n >= 2 && d[n - 2] > 0 { d[n - 1] as f64 / d[n - 2] as f64 } else { f64::NAN };
    let root = if n >= 1 { Float::powf(d[n - 1] as f64, 1.0 / n as f64) } else { f64::NAN };
    let subexp = matches!(
        class,
        GrowthClass::Elliptic | GrowthClass::JonquieresTwist | GrowthClass::HalphenTwist
    );
    let lambda = if n >= SUBEXPONENTIAL_MIN_LEN && subexp { 1.0 } else { ratio };
    let translation_length = if lambda.is_nan() { f64::NAN } else { Float::ln(lambda).max(0.0) };
    DynamicalDegree { lambda, translation_length, ratio_estimate: ratio, root_estimate: root, class }
}
