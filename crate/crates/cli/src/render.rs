//! Point-cloud artifacts: binary PPM renders and CSV tables.

use std::io::Write;

use cremona_core::kleinian::sphere::is_infinite;
use num_complex::Complex64;

/// Square view of the plane centered at the origin.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct View {
    pub size: usize,
    /// Half the side length of the square.
    pub extent: f64,
}

impl Default for View {
    fn default() -> Self {
        View { size: 800, extent: 5.0 }
    }
}

const BACKGROUND: [u8; 3] = [255, 255, 255];
const INK: [u8; 3] = [20, 20, 90];
const AXIS: [u8; 3] = [215, 215, 215];

impl View {
    /// Pixel holding `z`, row 0 at the top.
    pub fn pixel(&self, z: Complex64) -> Option<(usize, usize)> {
        if is_infinite(z) {
            return None;
        }
        let n = self.size as f64;
        let u = (z.re + self.extent) / (2.0 * self.extent) * n;
        let v = (self.extent - z.im) / (2.0 * self.extent) * n;
        (u >= 0.0 && v >= 0.0 && u < n && v < n).then_some((u as usize, v as usize))
    }

    /// Binary `P6` image of the points over faint axes.
    pub fn render(&self, points: &[Complex64]) -> Vec<u8> {
        let n = self.size;
        let mut rgb = vec![BACKGROUND; n * n];
        if let Some((cx, cy)) = self.pixel(Complex64::new(0.0, 0.0)) {
            for k in 0..n {
                rgb[cy * n + k] = AXIS;
                rgb[k * n + cx] = AXIS;
            }
        }
        for &z in points {
            if let Some((u, v)) = self.pixel(z) {
                rgb[v * n + u] = INK;
            }
        }
        let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
        out.extend(rgb.iter().flatten());
        out
    }
}

/// Density of the chordal metric relative to the Euclidean one, `2 / (1 + |z|^2)`.
pub fn chordal_weight(z: Complex64) -> f64 {
    if is_infinite(z) { 0.0 } else { 2.0 / (1.0 + z.norm_sqr()) }
}

/// CSV with columns `re, im, chordal_weight`; the point at infinity is written `inf, 0, 0`.
pub fn csv_table(points: &[Complex64]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["re", "im", "chordal_weight"]).expect("in-memory write");
    for &z in points {
        let row = if is_infinite(z) {
            ["inf".to_string(), "0".to_string(), "0".to_string()]
        } else {
            [z.re.to_string(), z.im.to_string(), chordal_weight(z).to_string()]
        };
        w.write_record(&row).expect("in-memory write");
    }
    let mut buf = w.into_inner().expect("in-memory flush");
    buf.flush().expect("in-memory flush");
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_size() {
        let v = View { size: 4, extent: 1.0 };
        let img = v.render(&[Complex64::new(0.9, 0.9)]);
        assert!(img.starts_with(b"P6\n4 4\n255\n"));
        assert_eq!(img.len(), b"P6\n4 4\n255\n".len() + 48);
        assert_eq!(v.pixel(Complex64::new(0.9, 0.9)), Some((3, 0)));
        assert_eq!(v.pixel(Complex64::new(2.0, 0.0)), None);
    }

    #[test]
    fn csv_rows() {
        let t = String::from_utf8(csv_table(&[Complex64::new(1.0, 0.0)])).unwrap();
        assert_eq!(t, "re,im,chordal_weight\n1,0,1\n");
    }
}
