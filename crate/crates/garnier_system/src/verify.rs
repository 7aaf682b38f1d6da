use proj_linalg::Mat2;
use serde::Serialize;
use theta_core::C64;

use crate::{batch, BEval, GarnierError, GarnierState, SAMPLE_Z};

/// One named residual with its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        VerifyReport { pass: checks.iter().all(|c| c.pass), checks }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl Check {
    pub fn new(name: &str, residual: f64, tol: f64) -> Self {
        // NaN residuals fail
        Check { name: name.to_string(), residual, tol, pass: residual <= tol }
    }
}

fn max(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
}

/// Factor `B(pz) = mult(z) B(z)`: every entry is a product of `m+3` thetas
/// whose argument scalings multiply to `1/L`, so `mult = (-1)^{m+1} L z^{-(m+3)}`.
pub fn multiplier(s: &GarnierState, z: C64) -> C64 {
    let sign = if s.m % 2 == 1 { 1.0 } else { -1.0 };
    sign * s.l * z.powi(-(s.m as i32 + 3))
}

/// Verifies (det zeros, kernels, images, multiplier law, symmetry) for `s`.
pub fn verify_state(s: &GarnierState, tol: f64) -> Result<VerifyReport, GarnierError> {
    s.validate()?;
    let b = BEval::framed(s)?;
    Ok(verify_with(&b, s, tol))
}

/// Like [`verify_state`] but with `B` supplied separately, so the stored
/// kernels can be checked against a matrix built from other data.
pub fn verify_with(b: &BEval, s: &GarnierState, tol: f64) -> VerifyReport {
    let m = s.m;
    let idx: Vec<usize> = (0..s.n_points()).collect();
    let at_u: Vec<Mat2> = batch::map(&idx, |&k| b.eval(s.u[k]));

    let det = max(at_u.iter().map(|bu| bu.det().norm() / bu.norm().powi(2)));
    let ker = max((0..s.n_ker()).map(|k| {
        let kv = [s.ker[k].x(), s.ker[k].y()];
        let r = at_u[k].apply(kv);
        (r[0].norm_sqr() + r[1].norm_sqr()).sqrt() / (at_u[k].norm() * (kv[0].norm_sqr() + kv[1].norm_sqr()).sqrt())
    }));
    let (o, z) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let targets = [(2 * m + 3, o, o), (2 * m + 4, z, o), (2 * m + 5, o, z)];
    let img = max(targets.iter().map(|&(k, a, c)| {
        // covector (c, -a) annihilates every column when the image is (a : c)
        let bu = &at_u[k];
        let r1 = c * bu.a11 - a * bu.a21;
        let r2 = c * bu.a12 - a * bu.a22;
        (r1.norm_sqr() + r2.norm_sqr()).sqrt() / (bu.norm() * (a.norm_sqr() + c.norm_sqr()).sqrt())
    }));
    let per_z: Vec<(f64, f64)> = batch::map(&SAMPLE_Z, |&zz| {
        let bp = b.eval(s.p() * zz);
        let mult = bp.rel_diff(&b.eval(zz).scale(multiplier(s, zz)));
        let sym = match (b.a(zz), b.a(s.eta() / (s.q() * zz))) {
            (Ok(a1), Ok(a2)) => (a1 * a2 - Mat2::identity()).norm() / (a1.norm() * a2.norm()),
            _ => f64::INFINITY,
        };
        (mult, sym)
    });
    VerifyReport::from_checks(vec![
        Check::new("det_zeros", det, tol),
        Check::new("kernels", ker, tol),
        Check::new("images", img, tol),
        Check::new("multiplier", max(per_z.iter().map(|r| r.0)), tol),
        Check::new("symmetry", max(per_z.iter().map(|r| r.1)), tol),
    ])
}

/// `det B(z) = C prod_k theta(z/u_k)`: returns `C` from the first sample and
/// the largest relative deviation of the ratio over all samples.
pub fn det_profile(s: &GarnierState, samples: &[C64]) -> Result<(C64, f64), GarnierError> {
    let b = BEval::new(s)?;
    let th = b.theta();
    let ratios: Vec<C64> = batch::map(samples, |&z| {
        let d: C64 = s.u.iter().map(|&uk| th.eval(z / uk)).product();
        b.eval(z).det() / d
    });
    let c = *ratios.first().ok_or_else(|| GarnierError::InvalidState("no samples".into()))?;
    let res = max(ratios.iter().map(|r| (r - c).norm() / c.norm()));
    Ok((c, res))
}
