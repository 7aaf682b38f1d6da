use std::ops::{Add, Mul, Sub};

use crate::C64;

/// A 2x2 complex matrix `[[a11, a12], [a21, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: C64,
    pub a12: C64,
    pub a21: C64,
    pub a22: C64,
}

impl Mat2 {
    pub fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Mat2::new(o, z, z, o)
    }

    pub fn diag(a: C64, d: C64) -> Self {
        let z = C64::new(0.0, 0.0);
        Mat2::new(a, z, z, d)
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }

    pub fn from_entries(e: [C64; 4]) -> Self {
        Mat2::new(e[0], e[1], e[2], e[3])
    }

    pub fn det(&self) -> C64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn adj(&self) -> Self {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    pub fn inv(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == 0.0 || !d.is_finite() {
            return None;
        }
        Some(self.adj().scale(d.inv()))
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }

    pub fn norm(&self) -> f64 {
        self.entries().iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().iter().fold(0.0, |m, e| m.max(e.norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|e| e.is_finite())
    }

    /// `|self - other|_F / |other|_F`.
    pub fn rel_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).norm() / other.norm().max(1e-300)
    }

    /// Least-squares scalar `c` minimising `|self - c other|_F`.
    pub fn best_scalar(&self, other: &Mat2) -> C64 {
        let num: C64 = other.entries().iter().zip(self.entries()).map(|(o, s)| o.conj() * s).sum();
        let den: f64 = other.entries().iter().map(|o| o.norm_sqr()).sum();
        num / den
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * o.a11 + self.a12 * o.a21,
            self.a11 * o.a12 + self.a12 * o.a22,
            self.a21 * o.a11 + self.a22 * o.a21,
            self.a21 * o.a12 + self.a22 * o.a22,
        )
    }
}

/// Spread of a family of matrices that should agree up to a scalar.
///
/// Each matrix is divided by its entry at the position where the first one is
/// largest; the result is the largest entrywise deviation from the first,
/// relative to the first's largest entry.
pub fn gauge_spread(ms: &[Mat2]) -> f64 {
    let Some(first) = ms.first() else { return 0.0 };
    let e0 = first.entries();
    let idx = (0..4).max_by(|&i, &j| e0[i].norm().total_cmp(&e0[j].norm())).unwrap();
    let norm = |m: &Mat2| {
        let e = m.entries();
        let s = e[idx];
        [e[0] / s, e[1] / s, e[2] / s, e[3] / s]
    };
    let n0 = norm(first);
    let scale = n0.iter().fold(0.0f64, |m, e| m.max(e.norm()));
    ms.iter()
        .map(|m| {
            let n = norm(m);
            (0..4).fold(0.0f64, |acc, k| acc.max((n[k] - n0[k]).norm()))
        })
        .fold(0.0, f64::max)
        / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample() -> Mat2 {
        Mat2::new(c(1.0, 2.0), c(-0.5, 0.1), c(0.3, -0.7), c(2.0, 0.0))
    }

    #[test]
    fn inverse_and_adjugate() {
        let m = sample();
        let p = m * m.inv().unwrap();
        assert!(p.rel_diff(&Mat2::identity()) < 1e-15);
        let d = m * m.adj();
        assert!(d.rel_diff(&Mat2::diag(m.det(), m.det())) < 1e-15);
        assert!(Mat2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).inv().is_none());
    }

    #[test]
    fn gauge_spread_ignores_scalars() {
        let m = sample();
        let ms = [m, m.scale(c(0.0, 3.0)), m.scale(c(-1e-5, 2.0))];
        assert!(gauge_spread(&ms) < 1e-15);
        let bad = [m, m + Mat2::diag(c(0.1, 0.0), c(0.0, 0.0))];
        assert!(gauge_spread(&bad) > 1e-3);
    }

    #[test]
    fn best_scalar_recovers_factor() {
        let m = sample();
        let s = m.scale(c(0.2, -3.0)).best_scalar(&m);
        assert!((s - c(0.2, -3.0)).norm() < 1e-15);
    }
}
