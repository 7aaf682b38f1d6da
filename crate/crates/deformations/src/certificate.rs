//! Gauge certificates: a claimed z-independent factor `G` is evaluated at
//! five sample points and compared after scalar normalisation
//! ([`proj_linalg::gauge_spread`]).

use garnier_system::{good_samples, BEval, GarnierState};
use proj_linalg::{gauge_spread, Mat2};
use theta_core::C64;

use crate::{DeformError, RLeft, RRight};

pub const GAUGE_TOL: f64 = 1e-7;

/// Five well-separated points where `B_old` is best conditioned.
fn samples(old: &GarnierState, new: &GarnierState, b0: &BEval) -> Vec<C64> {
    let mut bad: Vec<C64> = Vec::new();
    for st in [old, new] {
        let (e, q) = (st.eta(), st.q());
        bad.extend(&st.u);
        bad.extend(st.u.iter().map(|&x| e / x));
        bad.extend(st.u.iter().map(|&x| e / (q * x)));
    }
    let mut zs: Vec<(f64, C64)> = good_samples(&bad, old.p(), 16)
        .into_iter()
        .map(|z| {
            let m = b0.eval(z);
            (m.norm().powi(2) / m.det().norm(), z)
        })
        .collect();
    zs.sort_by(|a, b| a.0.total_cmp(&b.0));
    zs.into_iter().take(5).map(|(_, z)| z).collect()
}

fn spread(ms: Vec<Option<Mat2>>) -> f64 {
    if ms.iter().any(|m| m.is_none()) {
        return f64::INFINITY;
    }
    gauge_spread(&ms.into_iter().flatten().collect::<Vec<_>>())
}

/// `B_new(z) (B_old(z) R_r(z) / theta(z/u_i, z/u_j))^{-1}`.
pub fn gauge_f(old: &GarnierState, new: &GarnierState, i: usize, j: usize) -> Result<f64, DeformError> {
    let (b0, b1) = (BEval::framed(old)?, BEval::framed(new)?);
    let r = RRight::with_b(old, &b0, i, j)?;
    let th = b0.theta();
    let g = samples(old, new, &b0)
        .into_iter()
        .map(|z| {
            let lam = th.eval(z / old.u[i]) * th.eval(z / old.u[j]);
            (b0.eval(z) * r.eval(z)).scale(lam.inv()).inv().map(|m| b1.eval(z) * m)
        })
        .collect();
    Ok(spread(g))
}

/// `B_new(z) (R_l(z) B_old(z) / theta(z/u_i, z/u_j))^{-1}`.
pub fn gauge_e(old: &GarnierState, new: &GarnierState, i: usize, j: usize) -> Result<f64, DeformError> {
    let (b0, b1) = (BEval::framed(old)?, BEval::framed(new)?);
    let r = RLeft::with_b(old, &b0, i, j)?;
    let th = b0.theta();
    let g = samples(old, new, &b0)
        .into_iter()
        .map(|z| {
            let lam = th.eval(z / old.u[i]) * th.eval(z / old.u[j]);
            (r.eval(z) * b0.eval(z)).scale(lam.inv()).inv().map(|m| b1.eval(z) * m)
        })
        .collect();
    Ok(spread(g))
}

/// `B_new(z) B_old(z)^{-1}`.
pub fn gauge_sym(old: &GarnierState, new: &GarnierState) -> Result<f64, DeformError> {
    let (b0, b1) = (BEval::framed(old)?, BEval::framed(new)?);
    let g = samples(old, new, &b0).into_iter().map(|z| b0.eval(z).inv().map(|m| b1.eval(z) * m)).collect();
    Ok(spread(g))
}

/// `B_new(z) adj(B_old(eta_old/z))^{-1}`.
pub fn gauge_iota(old: &GarnierState, new: &GarnierState) -> Result<f64, DeformError> {
    let (b0, b1) = (BEval::framed(old)?, BEval::framed(new)?);
    let e = old.eta();
    let g = samples(old, new, &b0).into_iter().map(|z| b0.eval(e / z).adj().inv().map(|m| b1.eval(z) * m)).collect();
    Ok(spread(g))
}
