use garnier_system::{fixture1, lattice_exponents, BEval, GarnierState};
use proj_linalg::{n_ijk, proj_dist, ProjPoint};
use serde::{Deserialize, Serialize};
use theta_core::{EllipticBase, Theta, C64};

use crate::{kernel_u4, PainleveError};

/// The normalised `m = 1` state `X = (u_0, ..., u_7; L; eta; f, g)`.
///
/// In this frame `B(u_0), B(u_1), B(u_2)` have kernels `(1:0), (0:1), (1:1)`
/// and `B(u_7), B(u_6), B(u_5)` images `(1:0), (0:1), (1:1)`. `f` is the
/// kernel coordinate `y_3/x_3` at `u_3`, `g` the image coordinate
/// `B21(u_3)/B11(u_3)`; both are stored with affine value `x/y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PainleveState {
    #[serde(rename = "L")]
    pub l: C64,
    pub u: [C64; 8],
    pub f: ProjPoint,
    pub g: ProjPoint,
    pub base: EllipticBase,
}

impl PainleveState {
    pub fn p(&self) -> C64 {
        self.base.p
    }

    pub fn q(&self) -> C64 {
        self.base.q
    }

    pub fn eta(&self) -> C64 {
        self.base.eta
    }

    pub fn theta(&self) -> Result<Theta, PainleveError> {
        Ok(Theta::with_policy(self.p(), &self.base.policy)?)
    }

    /// Kernel `(x_3 : y_3)` of `B(u_3)`.
    pub fn kernel3(&self) -> ProjPoint {
        self.f.flip()
    }

    pub fn with_fg(&self, f: ProjPoint, g: ProjPoint) -> Self {
        PainleveState { f, g, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), PainleveError> {
        self.to_garnier(0)?.validate()?;
        Ok(())
    }

    /// The general `m = 1` state with kernels `(1:0), (0:1), (1:1), (x_3:y_3)`
    /// and the kernel at `u_4` read from `g`; `v, w` drawn from `seed`.
    pub fn to_garnier(&self, seed: u64) -> Result<GarnierState, PainleveError> {
        let ker = vec![ProjPoint::INF, ProjPoint::ZERO, ProjPoint::ONE, self.kernel3(), kernel_u4(self)?];
        let mut s = GarnierState {
            m: 1,
            seed: None,
            l: self.l,
            v: C64::new(1.0, 0.0),
            w: C64::new(1.0, 0.0),
            u: self.u.to_vec(),
            ker,
            base: self.base,
        };
        s.resample_vw(seed);
        Ok(s)
    }

    /// Moves every `u_k` towards the unit circle by a power of `p`
    /// (`L` adjusted); `f` and `g` are unchanged.
    pub fn reduce(&self) -> Self {
        let p = self.p();
        let n = lattice_exponents(&self.u, p);
        let mut t = self.clone();
        for (u, &k) in t.u.iter_mut().zip(&n) {
            *u *= p.powi(k);
        }
        t.l = self.l * p.powi(n.iter().sum::<i32>() / 2);
        t
    }

    /// Largest of the parameter differences (relative) and the projective
    /// distances of `f` and `g`.
    pub fn distance(&self, o: &Self) -> f64 {
        let rel = |a: C64, b: C64| (a - b).norm() / a.norm().max(b.norm()).max(1e-300);
        let mut d = rel(self.l, o.l).max(rel(self.eta(), o.eta()));
        for k in 0..8 {
            d = d.max(rel(self.u[k], o.u[k]));
        }
        d.max(proj_dist(&self.f, &o.f)).max(proj_dist(&self.g, &o.g))
    }

    /// Normalisation of the general random `m = 1` state with this seed.
    pub fn random(seed: u64) -> Result<Self, PainleveError> {
        normalize(&GarnierState::random(1, seed)?)
    }

    /// The reference state, normalised.
    pub fn fixture() -> Self {
        normalize(&fixture1(1)).expect("reference state normalises")
    }

    pub fn to_text(&self) -> Result<String, PainleveError> {
        toml::to_string(self).map_err(|e| PainleveError::Format(e.to_string()))
    }

    pub fn from_text(s: &str) -> Result<Self, PainleveError> {
        let st: PainleveState = toml::from_str(s).map_err(|e| PainleveError::Format(e.to_string()))?;
        st.validate()?;
        Ok(st)
    }
}

/// Right-multiplies `B` by `N_{012}` so that the kernels at `u_0, u_1, u_2`
/// become `(1:0), (0:1), (1:1)`, and reads off `f` and `g`.
pub fn normalize(s: &GarnierState) -> Result<PainleveState, PainleveError> {
    if s.m != 1 {
        return Err(PainleveError::WrongRank(s.m));
    }
    let n = n_ijk(&s.ker[0], &s.ker[1], &s.ker[2])?;
    let ni = n.inv().ok_or(proj_linalg::LinalgError::DegenerateTriple(0, 1))?;
    let k3 = ni.apply([s.ker[3].x(), s.ker[3].y()]);
    let f = ProjPoint::new(k3[1], k3[0])?;
    // right multiplication leaves the column space alone
    let b = BEval::framed(s)?.eval(s.u[3]);
    let (c1, c2) = (b.a11.norm_sqr() + b.a21.norm_sqr(), b.a12.norm_sqr() + b.a22.norm_sqr());
    let g = if c1 >= c2 { ProjPoint::new(b.a21, b.a11)? } else { ProjPoint::new(b.a22, b.a12)? };
    let mut u = [C64::new(0.0, 0.0); 8];
    u.copy_from_slice(&s.u);
    Ok(PainleveState { l: s.l, u, f, g, base: s.base })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip_is_exact() {
        let x = PainleveState::random(11).unwrap();
        let back = PainleveState::from_text(&x.to_text().unwrap()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn already_normalised_state_keeps_f() {
        let mut s = fixture1(2);
        s.ker[0] = ProjPoint::INF;
        s.ker[1] = ProjPoint::ZERO;
        s.ker[2] = ProjPoint::ONE;
        let x = normalize(&s).unwrap();
        assert!(proj_dist(&x.kernel3(), &s.ker[3]) < 1e-15);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let s = GarnierState::random(2, 1).unwrap();
        assert_eq!(normalize(&s), Err(PainleveError::WrongRank(2)));
        let mut s = fixture1(1);
        s.ker[1] = s.ker[0];
        assert!(matches!(normalize(&s), Err(PainleveError::Linalg(_))));
    }

    #[test]
    fn reduce_is_idempotent() {
        let x = PainleveState::fixture();
        assert_eq!(x.reduce(), x.reduce().reduce());
    }
}
