use proj_linalg::{proj_dist, ProjPoint};
use theta_core::C64;

use crate::{PainleveError, PainleveState};

/// A point of `P^1 x P^1` as `(f, g)`.
pub type BasePoint = (ProjPoint, ProjPoint);

/// Cross-ratio distance under which a state counts as sitting on a base point.
pub const COLLISION_TOL: f64 = 1e-8;

/// The curve `z -> (f, g)` carrying the eight base points. `chi(pz) = chi(z)`.
pub fn chi(x: &PainleveState, z: C64) -> Result<BasePoint, PainleveError> {
    let th = x.theta()?;
    let t = |zs: &[C64]| th.prod(zs);
    let [u0, u1, u2, u3, _, u5, u6, u7] = x.u;
    let l = x.l;
    let f = ProjPoint::new(
        t(&[z / (u1 * u2), u1 / u2, z / (u0 * u3), u0 / u3]),
        t(&[z / (u0 * u2), u0 / u2, z / (u1 * u3), u1 / u3]),
    )?;
    let g = ProjPoint::new(
        u6 * t(&[l / (z * u5 * u6), u5 / u6, z * u3 * u7 / l, u3 / u7]),
        u7 * t(&[l / (z * u5 * u7), u5 / u7, z * u3 * u6 / l, u3 / u6]),
    )?;
    Ok((f, g))
}

/// The points of `chi` at which the curve meets the eight base points.
pub fn base_point_params(x: &PainleveState) -> [C64; 8] {
    let [u0, u1, u2, _, _, u5, u6, u7] = x.u;
    let (l, e, q) = (x.l, x.eta(), x.q());
    [l / (u5 * u6), l / (u5 * u7), l / (u6 * u7), u1 * u2, u0 * u2, u0 * u1, e, q * l / e]
}

/// `P_1, ..., P_8`.
pub fn base_points(x: &PainleveState) -> Result<Vec<BasePoint>, PainleveError> {
    base_point_params(x).iter().map(|&z| chi(x, z)).collect()
}

pub fn point_dist(a: &BasePoint, b: &BasePoint) -> f64 {
    proj_dist(&a.0, &b.0).max(proj_dist(&a.1, &b.1))
}

/// Rejects a state within [`COLLISION_TOL`] of one of its base points.
pub fn check_collision(x: &PainleveState) -> Result<(), PainleveError> {
    let here = (x.f, x.g);
    for (k, p) in base_points(x)?.iter().enumerate() {
        if point_dist(&here, p) < COLLISION_TOL {
            return Err(PainleveError::BasePointCollision(k + 1));
        }
    }
    Ok(())
}
