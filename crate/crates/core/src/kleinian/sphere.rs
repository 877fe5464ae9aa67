//! The Riemann sphere with the chordal metric.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

pub const INFINITY: Complex64 = Complex64::new(f64::INFINITY, 0.0);

pub fn is_infinite(z: Complex64) -> bool {
    !z.re.is_finite() || !z.im.is_finite()
}

/// Inverse stereographic projection onto the unit sphere; infinity goes to the north pole.
pub fn to_sphere(z: Complex64) -> [f64; 3] {
    if is_infinite(z) {
        return [0.0, 0.0, 1.0];
    }
    let n = z.norm_sqr();
    if n > 1e300 {
        return [0.0, 0.0, 1.0];
    }
    let s = 1.0 + n;
    [2.0 * z.re / s, 2.0 * z.im / s, (n - 1.0) / s]
}

/// `2 |z - w| / sqrt((1 + |z|^2)(1 + |w|^2))`, the Euclidean distance of the images on the unit
/// sphere; at most 2.
pub fn chordal(z: Complex64, w: Complex64) -> f64 {
    let (p, q) = (to_sphere(z), to_sphere(w));
    let d: f64 = (0..3).map(|k| (p[k] - q[k]) * (p[k] - q[k])).sum();
    num_traits::Float::sqrt(d)
}

fn cmp3(a: &[f64; 3], b: &[f64; 3]) -> Ordering {
    a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])).then(a[2].total_cmp(&b[2]))
}

/// Sorts points along the sphere and drops those within `tol` of an earlier kept point.
pub fn dedup(points: Vec<Complex64>, tol: f64) -> Vec<Complex64> {
    let mut tagged: Vec<([f64; 3], Complex64)> = points
        .into_iter()
        .map(|z| {
            let z = if is_infinite(z) { INFINITY } else { z };
            (to_sphere(z), z)
        })
        .collect();
    tagged.sort_by(|a, b| cmp3(&a.0, &b.0));
    let mut kept: Vec<([f64; 3], Complex64)> = Vec::with_capacity(tagged.len());
    for (p, z) in tagged {
        let dup = kept
            .iter()
            .rev()
            .take_while(|(q, _)| q[0] >= p[0] - tol)
            .any(|(q, _)| {
                let d: f64 = (0..3).map(|k| (p[k] - q[k]) * (p[k] - q[k])).sum();
                d <= tol * tol
            });
        if !dup {
            kept.push((p, z));
        }
    }
    kept.into_iter().map(|(_, z)| z).collect()
}
