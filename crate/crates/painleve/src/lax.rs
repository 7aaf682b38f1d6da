//! Compatibility certificate for one step: with `R(z) = R_r(z) N_{012}` built
//! from the intermediate state, `R(qz) A_{X'}(z)` and `A_X(z) R(z)` agree up
//! to a scalar.

use deformations::{apply_f, RRight};
use garnier_system::good_samples;
use proj_linalg::n_ijk;
use theta_core::C64;

use crate::{bar_e34, step, E8Eval, PainleveError, PainleveState};

/// Points kept away from the singular points of both sides.
fn lax_samples(x: &PainleveState) -> Vec<C64> {
    let (e, q) = (x.eta(), x.q());
    let mut bad = x.u.to_vec();
    for &u in &x.u {
        bad.extend([e / (q * u), e / u, e / (q * q * u), q * u]);
    }
    good_samples(&bad, x.p(), 5)
}

/// The step together with its relative compatibility residual; `seed` fixes
/// the normalisation point `v` of `R_r`.
pub fn certified_step(x: &PainleveState, seed: u64) -> Result<(PainleveState, f64), PainleveError> {
    let x1 = bar_e34(x)?;
    let x2 = step(x)?;
    let s1 = x1.to_garnier(seed)?;
    let r = apply_f(&s1, 3, 4)?;
    let n = n_ijk(&r.ker[0], &r.ker[1], &r.ker[2])?;
    let rr = RRight::new(&s1, 3, 4)?;
    let (b0, b2) = (E8Eval::new(x)?, E8Eval::new(&x2)?);
    let q = x.q();
    let mut res = 0.0f64;
    for z in lax_samples(x) {
        let m1 = b0.a(z)? * rr.eval(z) * n;
        let m2 = rr.eval(q * z) * n * b2.a(z)?;
        let c = m1.best_scalar(&m2);
        res = res.max(m1.rel_diff(&m2.scale(c)));
    }
    Ok((x2, res))
}

pub fn lax_residual(x: &PainleveState, seed: u64) -> Result<f64, PainleveError> {
    Ok(certified_step(x, seed)?.1)
}
