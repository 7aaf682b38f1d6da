use garnier_system::{BEval, GarnierState};
use proj_linalg::ProjPoint;

use crate::rmat::check_pair;
use crate::DeformError;

use crate::rmat::kernel_at;

/// `F_{i,j}`: right action. Kernels at `k != i, j` follow the closed-form
/// update, kernels at `i`, `j` swap, `u_{i,j} -> eta/u_{i,j}`,
/// `L -> L eta/(u_i u_j)`.
pub fn apply_f(s: &GarnierState, i: usize, j: usize) -> Result<GarnierState, DeformError> {
    check_pair(s, i, j)?;
    let b = BEval::framed(s)?;
    let th = b.theta();
    let (ki, kj) = (kernel_at(s, &b, i)?, kernel_at(s, &b, j)?);
    let (xi, yi, xj, yj) = (ki.x(), ki.y(), kj.x(), kj.y());
    if (xj * yi - xi * yj).norm() <= 1e-13 {
        return Err(DeformError::ProportionalKernels(i, j));
    }
    let (u, e, v) = (&s.u, s.eta(), s.v);
    let (ui, uj) = (u[i], u[j]);
    let mut t = s.clone();
    for k in 0..s.n_ker() {
        if k == i || k == j {
            continue;
        }
        let (xk, yk) = (s.ker[k].x(), s.ker[k].y());
        let t1 = th.prod(&[ui / u[k], v / uj, e / (ui * u[k]), e / (uj * v)]);
        let t2 = th.prod(&[uj / u[k], v / ui, e / (uj * u[k]), e / (ui * v)]);
        let c1 = uj * (yj * xk - xj * yk) * t1;
        let c2 = ui * (xi * yk - yi * xk) * t2;
        t.ker[k] = ProjPoint::new(xi * c1 + xj * c2, yi * c1 + yj * c2)?;
    }
    if i < s.n_ker() {
        t.ker[i] = kj;
    }
    if j < s.n_ker() {
        t.ker[j] = ki;
    }
    t.u[i] = e / ui;
    t.u[j] = e / uj;
    t.l = s.l * e / (ui * uj);
    t.refresh_vw();
    Ok(t)
}

/// `E_{i,j}`: left action. Kernels at `k != i, j` are untouched; at `k = i, j`
/// the new kernel is `(b21 c12 - b11 c22 : b11 c21 - b21 c11)` with
/// `b = B(u_k)`, `c = B(eta/(q u_k))`. `u_{i,j} -> eta/(q u_{i,j})`,
/// `L -> L eta/(q u_i u_j)`.
pub fn apply_e(s: &GarnierState, i: usize, j: usize) -> Result<GarnierState, DeformError> {
    check_pair(s, i, j)?;
    let bev = BEval::framed(s)?;
    let (e, q) = (s.eta(), s.q());
    let (bi, bj) = (bev.eval(s.u[i]), bev.eval(s.u[j]));
    let d = bi.a11 * bj.a21 - bj.a11 * bi.a21;
    if d.norm() <= 1e-13 * bi.norm() * bj.norm() {
        return Err(DeformError::DegenerateImages(i, j));
    }
    let mut t = s.clone();
    for (k, b) in [(i, bi), (j, bj)] {
        if k >= s.n_ker() {
            continue;
        }
        let c = bev.eval(e / (q * s.u[k]));
        t.ker[k] = ProjPoint::new(b.a21 * c.a12 - b.a11 * c.a22, b.a11 * c.a21 - b.a21 * c.a11)?;
    }
    t.u[i] = e / (q * s.u[i]);
    t.u[j] = e / (q * s.u[j]);
    t.l = s.l * e / (q * s.u[i] * s.u[j]);
    t.refresh_vw();
    Ok(t)
}

/// `T_{i,j} = F_{i,j} o E_{i,j}`: `u_i, u_j -> q u_i, q u_j`, `L -> q L`.
pub fn apply_t(s: &GarnierState, i: usize, j: usize) -> Result<GarnierState, DeformError> {
    let mid = apply_e(s, i, j)?;
    let mut t = apply_f(&mid, i, j)?;
    // exact in the parameter slots
    t.u[i] = s.q() * s.u[i];
    t.u[j] = s.q() * s.u[j];
    Ok(t)
}

/// `iota`: `u_k -> eta/u_k`, kernels `-> (B11(u_k) : B21(u_k))` (second column
/// when the first is small), `eta -> q eta`, `L -> eta^{m+3}/L`,
/// `v -> w`, `w -> q v`.
pub fn apply_iota(s: &GarnierState) -> Result<GarnierState, DeformError> {
    let bev = BEval::framed(s)?;
    let e = s.eta();
    let mut t = s.clone();
    let scale = bev.eval(garnier_system::SAMPLE_Z[0]).max_abs();
    for k in 0..s.n_ker() {
        let b = bev.eval(s.u[k]);
        let c1 = (b.a11.norm_sqr() + b.a21.norm_sqr()).sqrt();
        let c2 = (b.a12.norm_sqr() + b.a22.norm_sqr()).sqrt();
        if c1.max(c2) <= 1e-14 * scale {
            return Err(DeformError::BothColumnsVanish(k));
        }
        t.ker[k] = if c1 >= 1e-3 * c2 { ProjPoint::new(b.a11, b.a21)? } else { ProjPoint::new(b.a12, b.a22)? };
    }
    t.u = s.u.iter().map(|&x| e / x).collect();
    t.base.eta = s.q() * e;
    t.l = e.powi(s.m as i32 + 3) / s.l;
    t.v = s.w;
    t.w = s.q() * s.v;
    Ok(t)
}

/// Linear-solve path for the kernels after `F_{i,j}`: for `k != i, j` the new
/// kernel solves `R_r(u_k) x = ker_k`. Kept as an independent check on
/// [`apply_f`].
pub fn f_kernels_by_solve(s: &GarnierState, i: usize, j: usize) -> Result<Vec<ProjPoint>, DeformError> {
    let bev = BEval::framed(s)?;
    let r = crate::RRight::with_b(s, &bev, i, j)?;
    let mut out = Vec::with_capacity(s.n_ker());
    for k in 0..s.n_ker() {
        if k == i || k == j {
            out.push(kernel_at(s, &bev, if k == i { j } else { i })?);
            continue;
        }
        let inv = r.eval(s.u[k]).inv().ok_or(DeformError::ProportionalKernels(i, j))?;
        let [x, y] = inv.apply([s.ker[k].x(), s.ker[k].y()]);
        out.push(ProjPoint::new(x, y)?);
    }
    Ok(out)
}

/// Linear-solve path for the kernels after `E_{i,j}`: at `k = i, j` the new
/// kernel solves `B(eta/(q u_k)) x = (B11(u_k), B21(u_k))`.
pub fn e_kernels_by_solve(s: &GarnierState, i: usize, j: usize) -> Result<Vec<ProjPoint>, DeformError> {
    check_pair(s, i, j)?;
    let bev = BEval::framed(s)?;
    let (e, q) = (s.eta(), s.q());
    let mut out = s.ker.clone();
    for k in [i, j] {
        if k >= s.n_ker() {
            continue;
        }
        let b = bev.eval(s.u[k]);
        let c = bev.eval(e / (q * s.u[k]));
        let inv = c.inv().ok_or(DeformError::DegenerateImages(i, j))?;
        let [x, y] = inv.apply([b.a11, b.a21]);
        out[k] = ProjPoint::new(x, y)?;
    }
    Ok(out)
}
