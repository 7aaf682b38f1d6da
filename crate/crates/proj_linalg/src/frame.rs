use crate::{proj_dist, LinalgError, Mat2, ProjPoint, C64};

fn rank_one_check(m: &Mat2, tol: f64) -> Result<(), LinalgError> {
    let norm2 = m.norm().powi(2);
    if norm2 == 0.0 || !norm2.is_finite() {
        return Err(LinalgError::ZeroMatrix);
    }
    let det = m.det().norm();
    if det > tol * norm2 {
        return Err(LinalgError::NotSingular { det, norm2 });
    }
    Ok(())
}

/// Kernel of a rank-one matrix, read off the larger-norm row.
pub fn kernel_of(m: &Mat2, tol: f64) -> Result<ProjPoint, LinalgError> {
    rank_one_check(m, tol)?;
    let r1 = m.a11.norm_sqr() + m.a12.norm_sqr();
    let r2 = m.a21.norm_sqr() + m.a22.norm_sqr();
    let (a, b) = if r1 >= r2 { (m.a11, m.a12) } else { (m.a21, m.a22) };
    ProjPoint::new(b, -a)
}

/// Image of a rank-one matrix, the larger-norm column.
pub fn image_of(m: &Mat2, tol: f64) -> Result<ProjPoint, LinalgError> {
    rank_one_check(m, tol)?;
    let c1 = m.a11.norm_sqr() + m.a21.norm_sqr();
    let c2 = m.a12.norm_sqr() + m.a22.norm_sqr();
    if c1 >= c2 {
        ProjPoint::new(m.a11, m.a21)
    } else {
        ProjPoint::new(m.a12, m.a22)
    }
}

/// The frame matrix sending `(1,0), (0,1), (1,1)` to `p_i, p_j, p_k`
/// (each up to scale).
pub fn n_ijk(pi: &ProjPoint, pj: &ProjPoint, pk: &ProjPoint) -> Result<Mat2, LinalgError> {
    let pts = [pi, pj, pk];
    for a in 0..3 {
        for b in (a + 1)..3 {
            if proj_dist(pts[a], pts[b]) <= 1e-14 {
                return Err(LinalgError::DegenerateTriple(a, b));
            }
        }
    }
    let (xi, yi, xj, yj, xk, yk) = (pi.x(), pi.y(), pj.x(), pj.y(), pk.x(), pk.y());
    let s: C64 = xj * yk - xk * yj;
    let t: C64 = xk * yi - xi * yk;
    Ok(Mat2::new(xi * s, xj * t, yi * s, yj * t))
}
