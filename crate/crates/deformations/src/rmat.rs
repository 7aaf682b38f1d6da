use garnier_system::{BEval, GarnierState};
use proj_linalg::{Mat2, ProjPoint};
use theta_core::{Theta, C64};

use crate::DeformError;

/// Kernel at slot `k`: stored for `k < 2m+3`, read off `B(u_k)` otherwise.
pub fn kernel_at(s: &GarnierState, b: &BEval, k: usize) -> Result<ProjPoint, DeformError> {
    if k < s.n_ker() {
        Ok(s.ker[k])
    } else {
        Ok(b.kernel_at(k)?)
    }
}

pub(crate) fn check_pair(s: &GarnierState, i: usize, j: usize) -> Result<(), DeformError> {
    if i == j || i >= s.n_points() || j >= s.n_points() {
        return Err(DeformError::BadIndices(i, j));
    }
    Ok(())
}

/// `R_r(z)` for the pair `(i, j)`: rank one at `u_i`, `u_j` with images the
/// kernels there, `R_r(v) = I`.
#[derive(Debug, Clone)]
pub struct RRight {
    th: Theta,
    ki: [C64; 2],
    kj: [C64; 2],
    d: C64,
    u: [C64; 2],
    eta: C64,
    den: [C64; 2],
}

impl RRight {
    pub fn new(s: &GarnierState, i: usize, j: usize) -> Result<Self, DeformError> {
        let b = BEval::framed(s)?;
        Self::with_b(s, &b, i, j)
    }

    pub fn with_b(s: &GarnierState, b: &BEval, i: usize, j: usize) -> Result<Self, DeformError> {
        check_pair(s, i, j)?;
        let (pi, pj) = (kernel_at(s, b, i)?, kernel_at(s, b, j)?);
        let (xi, yi, xj, yj) = (pi.x(), pi.y(), pj.x(), pj.y());
        let d = xj * yi - xi * yj;
        if d.norm() <= 1e-13 {
            return Err(DeformError::ProportionalKernels(i, j));
        }
        let th = b.theta().clone();
        let eta = s.eta();
        let u = [s.u[i], s.u[j]];
        let den = [0, 1].map(|k| th.eval(s.v / u[k]) * th.eval(s.v * u[k] / eta));
        Ok(RRight { th, ki: [xi, yi], kj: [xj, yj], d, u, eta, den })
    }

    /// `a_k(z) = theta(z/u_k) theta(z u_k/eta) / theta(v/u_k) theta(v u_k/eta)`.
    pub fn scalar(&self, k: usize, z: C64) -> C64 {
        self.th.eval(z / self.u[k]) * self.th.eval(z * self.u[k] / self.eta) / self.den[k]
    }

    pub fn eval(&self, z: C64) -> Mat2 {
        let ([xi, yi], [xj, yj]) = (self.ki, self.kj);
        let (ai, aj) = (self.scalar(0, z), self.scalar(1, z));
        Mat2::new(xj * yi * ai - xi * yj * aj, xi * xj * (aj - ai), yi * yj * (ai - aj), xj * yi * aj - xi * yj * ai)
            .scale(self.d.inv())
    }
}

/// `R_l(z)` for the pair `(i, j)`: kernels at `u_i`, `u_j` are the images of
/// `B` there, `R_l(w) = I`, `R_l(eta/(qz)) = R_l(z)`.
#[derive(Debug, Clone)]
pub struct RLeft {
    th: Theta,
    bi: [C64; 2],
    bj: [C64; 2],
    d: C64,
    u: [C64; 2],
    eq: C64,
    den: [C64; 2],
}

impl RLeft {
    pub fn new(s: &GarnierState, i: usize, j: usize) -> Result<Self, DeformError> {
        let b = BEval::framed(s)?;
        Self::with_b(s, &b, i, j)
    }

    pub fn with_b(s: &GarnierState, b: &BEval, i: usize, j: usize) -> Result<Self, DeformError> {
        check_pair(s, i, j)?;
        let (mi, mj) = (b.eval(s.u[i]), b.eval(s.u[j]));
        let (bi, bj) = ([mi.a11, mi.a21], [mj.a11, mj.a21]);
        let d = bi[0] * bj[1] - bj[0] * bi[1];
        let scale = (bi[0].norm() + bi[1].norm()) * (bj[0].norm() + bj[1].norm());
        if d.norm() <= 1e-13 * scale {
            return Err(DeformError::DegenerateImages(i, j));
        }
        let th = b.theta().clone();
        let eq = s.eta() / s.q();
        let u = [s.u[i], s.u[j]];
        let den = [0, 1].map(|k| th.eval(s.w / u[k]) * th.eval(eq / (s.w * u[k])));
        Ok(RLeft { th, bi, bj, d, u, eq, den })
    }

    /// `b_k(z) = theta(z/u_k) theta(eta/(q z u_k)) / (same at w)`.
    pub fn scalar(&self, k: usize, z: C64) -> C64 {
        self.th.eval(z / self.u[k]) * self.th.eval(self.eq / (z * self.u[k])) / self.den[k]
    }

    pub fn eval(&self, z: C64) -> Mat2 {
        let ([b11i, b21i], [b11j, b21j]) = (self.bi, self.bj);
        let (ai, aj) = (self.scalar(0, z), self.scalar(1, z));
        Mat2::new(
            b11i * b21j * ai - b21i * b11j * aj,
            b11i * b11j * (aj - ai),
            b21i * b21j * (ai - aj),
            b11i * b21j * aj - b21i * b11j * ai,
        )
        .scale(self.d.inv())
    }
}

pub fn r_right(s: &GarnierState, i: usize, j: usize, z: C64) -> Result<Mat2, DeformError> {
    Ok(RRight::new(s, i, j)?.eval(z))
}

pub fn r_left(s: &GarnierState, i: usize, j: usize, z: C64) -> Result<Mat2, DeformError> {
    Ok(RLeft::new(s, i, j)?.eval(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use garnier_system::fixture1;
    use proj_linalg::{image_of, kernel_of, proj_eq};

    fn id_err(m: &Mat2) -> f64 {
        (*m - Mat2::identity()).max_abs()
    }

    #[test]
    fn normalised_at_v_and_w() {
        let s = fixture1(3);
        for (i, j) in [(0, 1), (3, 4), (2, 7)] {
            assert!(id_err(&r_right(&s, i, j, s.v).unwrap()) <= 1e-10);
            assert!(id_err(&r_left(&s, i, j, s.w).unwrap()) <= 1e-10);
        }
    }

    #[test]
    fn right_factor_has_kernel_images_at_its_points() {
        let s = fixture1(3);
        let b = BEval::new(&s).unwrap();
        let (i, j) = (1, 4);
        let r = RRight::with_b(&s, &b, i, j).unwrap();
        for k in [i, j] {
            let rk = r.eval(s.u[k]);
            assert!(proj_eq(&image_of(&rk, 1e-10).unwrap(), &s.ker[k], 1e-10));
            // B R_r vanishes at the point
            assert!((b.eval(s.u[k]) * rk).max_abs() <= 1e-10 * b.eval(s.u[k]).max_abs());
        }
        let e = s.eta();
        for k in [i, j] {
            let rk = r.eval(e / s.u[k]);
            assert!(rk.det().norm() <= 1e-10 * rk.norm().powi(2));
        }
    }

    #[test]
    fn left_factor_kills_images() {
        let s = fixture1(3);
        let b = BEval::new(&s).unwrap();
        let (i, j) = (0, 2);
        let r = RLeft::with_b(&s, &b, i, j).unwrap();
        for k in [i, j] {
            let bk = b.eval(s.u[k]);
            let rk = r.eval(s.u[k]);
            let ker = kernel_of(&rk, 1e-10).unwrap();
            let img = ProjPoint::new(bk.a11, bk.a21).unwrap();
            assert!(proj_eq(&ker, &img, 1e-10));
        }
    }

    #[test]
    fn determinants() {
        let s = fixture1(5);
        let (i, j) = (2, 5);
        let rr = RRight::new(&s, i, j).unwrap();
        let rl = RLeft::new(&s, i, j).unwrap();
        for z in garnier_system::SAMPLE_Z {
            let d = rr.eval(z).det();
            let want = rr.scalar(0, z) * rr.scalar(1, z);
            assert!((d - want).norm() <= 1e-10 * want.norm());
            let d = rl.eval(z).det();
            let want = rl.scalar(0, z) * rl.scalar(1, z);
            assert!((d - want).norm() <= 1e-10 * want.norm());
        }
    }

    #[test]
    fn reflection_symmetry() {
        let s = fixture1(5);
        let (e, q) = (s.eta(), s.q());
        let rl = RLeft::new(&s, 1, 3).unwrap();
        let rr = RRight::new(&s, 1, 3).unwrap();
        for z in garnier_system::SAMPLE_Z {
            assert!(rl.eval(e / (q * z)).rel_diff(&rl.eval(z)) <= 1e-10);
            let (a, b) = (rr.eval(e / z), rr.eval(z));
            let c = a.best_scalar(&b);
            assert!(b.scale(c).rel_diff(&a) <= 1e-10);
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        let s = fixture1(1);
        assert!(matches!(RRight::new(&s, 2, 2), Err(DeformError::BadIndices(2, 2))));
        assert!(matches!(RLeft::new(&s, 0, 8), Err(DeformError::BadIndices(0, 8))));
        let mut t = s.clone();
        t.ker[1] = t.ker[0];
        assert!(matches!(RRight::new(&t, 0, 1), Err(DeformError::ProportionalKernels(0, 1))));
    }
}
