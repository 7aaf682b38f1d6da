//! Birational maps on normalised states.

use proj_linalg::ProjPoint;
use theta_core::C64;

use crate::formulas::{column, ratio};
use crate::{check_collision, g_from_ker4, image_u4, kernel_u4, E8Eval, PainleveError, PainleveState};

/// Left action on `u_3, u_4`: `u_k -> eta/(q u_k)`, `L -> L eta/(q u_3 u_4)`.
pub fn bar_e34(x: &PainleveState) -> Result<PainleveState, PainleveError> {
    check_collision(x)?;
    let b = E8Eval::new(x)?;
    let (e, q) = (x.eta(), x.q());
    let mut nk = Vec::with_capacity(2);
    for k in [3, 4] {
        let bk = b.eval(x.u[k]);
        let c = b.eval(e / (q * x.u[k]));
        let [b1, b2] = column(&bk);
        let scale = b1.norm().max(b2.norm()) * c.max_abs();
        nk.push(ratio(b2 * c.a12 - b1 * c.a22, b1 * c.a21 - b2 * c.a11, scale, "left kernel update")?);
    }
    let mut t = x.clone();
    t.u[3] = e / (q * x.u[3]);
    t.u[4] = e / (q * x.u[4]);
    t.l = x.l * e / (q * x.u[3] * x.u[4]);
    t.f = nk[0].flip();
    t.g = g_from_ker4(&t.theta()?, &t.u, t.l, &nk[1])?;
    Ok(t)
}

/// Right action on `u_3, u_4`: `u_k -> eta/u_k`, `L -> L eta/(u_3 u_4)`.
pub fn bar_f34(x: &PainleveState) -> Result<PainleveState, PainleveError> {
    check_collision(x)?;
    let th = x.theta()?;
    let t = |zs: &[C64]| th.prod(zs);
    let [u0, u1, u2, u3, u4, ..] = x.u;
    let e = x.eta();
    let k3 = x.kernel3();
    let k4 = kernel_u4(x)?;
    let (x3, y3, x4, y4) = (k3.x(), k3.y(), k4.x(), k4.y());
    let t1 = t(&[e / (u2 * u3), u3 / u2, e / (u0 * u4), u4 / u0]);
    let t2 = t(&[e / (u0 * u3), u3 / u0, e / (u2 * u4), u4 / u2]);
    let t3 = t(&[e / (u2 * u3), u3 / u2, e / (u1 * u4), u4 / u1]);
    let t4 = t(&[e / (u1 * u3), u3 / u1, e / (u2 * u4), u4 / u2]);
    let (o13, o03) = (t(&[e / (u1 * u3), u3 / u1]), t(&[e / (u0 * u3), u3 / u0]));
    let (o14, o04) = (t(&[e / (u1 * u4), u4 / u1]), t(&[e / (u0 * u4), u4 / u0]));
    let s1 = (y3 * (x4 - y4) * t1).norm() + ((y3 - x3) * y4 * t2).norm();
    let s2 = (x3 * (x4 - y4) * t3).norm() + (x4 * (y3 - x3) * t4).norm();
    let nx3 = x4 * o13 * (y3 * (x4 - y4) * t1 + (y3 - x3) * y4 * t2);
    let ny3 = y4 * o03 * (x3 * (x4 - y4) * t3 + x4 * (y3 - x3) * t4);
    let nx4 = x3 * o14 * (y3 * (y4 - x4) * t1 + (x3 - y3) * y4 * t2);
    let ny4 = y3 * o04 * (x3 * (y4 - x4) * t3 + x4 * (x3 - y3) * t4);
    let sc3 = (x4 * o13).norm().max((y4 * o03).norm()) * s1.max(s2);
    let sc4 = (x3 * o14).norm().max((y3 * o04).norm()) * s1.max(s2);
    let n3 = ratio(nx3, ny3, sc3, "right kernel update at u_3")?;
    let n4 = ratio(nx4, ny4, sc4, "right kernel update at u_4")?;
    let mut r = x.clone();
    r.u[3] = e / u3;
    r.u[4] = e / u4;
    r.l = x.l * e / (u3 * u4);
    r.f = n3.flip();
    r.g = g_from_ker4(&th, &r.u, r.l, &n4)?;
    Ok(r)
}

/// One step of the elliptic Painlevé equation, `bar_F34 o bar_E34`:
/// `u_3, u_4 -> q u_3, q u_4`.
pub fn step(x: &PainleveState) -> Result<PainleveState, PainleveError> {
    let mut t = bar_f34(&bar_e34(x)?)?;
    // exact in the parameter slots
    t.u[3] = x.q() * x.u[3];
    t.u[4] = x.q() * x.u[4];
    t.l = x.q() * x.l;
    Ok(t)
}

/// Inverse step, `bar_E34 o bar_F34`.
pub fn step_inverse(x: &PainleveState) -> Result<PainleveState, PainleveError> {
    let mut t = bar_e34(&bar_f34(x)?)?;
    t.u[3] = x.u[3] / x.q();
    t.u[4] = x.u[4] / x.q();
    t.l = x.l / x.q();
    Ok(t)
}

/// The generator `s_i`, `0 <= i <= 6`, swapping `u_i` and `u_{i+1}`.
pub fn gen(x: &PainleveState, i: usize) -> Result<PainleveState, PainleveError> {
    if i > 6 {
        return Err(PainleveError::IndexOutOfRange(i));
    }
    let mut t = x.clone();
    t.u.swap(i, i + 1);
    let (fx, fy, gx, gy) = (x.f.x(), x.f.y(), x.g.x(), x.g.y());
    match i {
        0 => t.f = x.f.flip(),
        1 => t.f = ProjPoint::new(fx, fx - fy)?,
        2 => {
            t.f = x.f.flip();
            // kernel at u_4 seen from the swapped frame: y_4/x_4 divided by f
            let k4 = kernel_u4(x)?;
            let k = ratio(k4.x() * fx, k4.y() * fy, 1.0, "s_2")?;
            t.g = g_from_ker4(&t.theta()?, &t.u, t.l, &k)?;
        }
        3 => {
            t.f = kernel_u4(x)?.flip();
            t.g = image_u4(x)?;
        }
        4 => {
            let h = image_u4(x)?;
            t.g = ratio(gx * h.y(), gy * h.x(), 1.0, "s_4")?;
        }
        5 => t.g = ProjPoint::new(gx, gx - gy)?,
        _ => t.g = x.g.flip(),
    }
    Ok(t)
}

/// `u_k -> eta/u_{7-k}` (with `u_3, u_4` kept in place), `L -> eta^4/L`,
/// `eta -> q eta`, `f <-> g`.
pub fn iota_x(x: &PainleveState) -> PainleveState {
    let e = x.eta();
    let u = x.u;
    let mut t = x.clone();
    t.u = [e / u[7], e / u[6], e / u[5], e / u[3], e / u[4], e / u[2], e / u[1], e / u[0]];
    t.l = e.powi(4) / x.l;
    t.base.eta = x.q() * e;
    t.f = x.g;
    t.g = x.f;
    t
}

/// `eta -> q L / eta`; `B` is untouched.
pub fn fourier_laplace(x: &PainleveState) -> PainleveState {
    let mut t = x.clone();
    t.base.eta = x.q() * x.l / x.eta();
    t
}

/// Right action on `u_0, u_1` followed by `s_0`: diagonal, `f` scaled.
pub fn bar_e01(x: &PainleveState) -> Result<PainleveState, PainleveError> {
    let th = x.theta()?;
    let t = |zs: &[C64]| th.prod(zs);
    let [u0, u1, u2, u3, ..] = x.u;
    let e = x.eta();
    let rn = t(&[e / (u0 * u2), u2 / u0, e / (u1 * u3), u3 / u1]);
    let rd = t(&[e / (u1 * u2), u2 / u1, e / (u0 * u3), u3 / u0]);
    let mut r = x.clone();
    r.u[0] = e / u1;
    r.u[1] = e / u0;
    r.l = x.l * e / (u0 * u1);
    r.f = ratio(x.f.x() * rn, x.f.y() * rd, rn.norm().max(rd.norm()), "bar E_01")?;
    Ok(r)
}

/// Left action on `u_6, u_7` followed by `s_6`: diagonal, `g` scaled.
pub fn bar_f67(x: &PainleveState) -> Result<PainleveState, PainleveError> {
    let th = x.theta()?;
    let t = |zs: &[C64]| th.prod(zs);
    let [_, _, _, u3, _, u5, u6, u7] = x.u;
    let (e, q) = (x.eta(), x.q());
    let eq = e / q;
    let rn = t(&[eq / (u3 * u6), u3 / u6, eq / (u5 * u7), u5 / u7]);
    let rd = t(&[eq / (u5 * u6), u5 / u6, eq / (u3 * u7), u3 / u7]);
    let mut r = x.clone();
    r.u[6] = eq / u7;
    r.u[7] = eq / u6;
    r.l = x.l * eq / (u6 * u7);
    r.g = ratio(x.g.x() * rn, x.g.y() * rd, rn.norm().max(rd.norm()), "bar F_67")?;
    Ok(r)
}
