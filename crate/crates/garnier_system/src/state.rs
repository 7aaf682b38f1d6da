use proj_linalg::ProjPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use theta_core::{EllipticBase, C64};

use crate::{torus_dist, GarnierError};

/// Parameters of the linear system for a given `m >= 1`.
///
/// `ker[k]` is the kernel of `B(u_k)` for `k < 2m+3`; the images at
/// `u_{2m+3}, u_{2m+4}, u_{2m+5}` are fixed to `(1:1), (0:1), (1:0)` by the
/// construction of `B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GarnierState {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(rename = "L")]
    pub l: C64,
    pub v: C64,
    pub w: C64,
    pub u: Vec<C64>,
    pub ker: Vec<ProjPoint>,
    pub base: EllipticBase,
}

/// Distinctness threshold for singular points modulo `p^Z`.
const COLLIDE: f64 = 1e-6;

impl GarnierState {
    pub fn n_points(&self) -> usize {
        2 * self.m + 6
    }

    pub fn n_ker(&self) -> usize {
        2 * self.m + 3
    }

    pub fn p(&self) -> C64 {
        self.base.p
    }

    pub fn q(&self) -> C64 {
        self.base.q
    }

    pub fn eta(&self) -> C64 {
        self.base.eta
    }

    pub fn u_product(&self) -> C64 {
        self.u.iter().product()
    }

    /// Points that `v` and `w` must avoid modulo `p^Z`.
    pub fn forbidden_points(&self) -> Vec<C64> {
        let (e, q) = (self.eta(), self.q());
        self.u.iter().flat_map(|&x| [x, e / (q * x), e / x]).collect()
    }

    pub fn validate(&self) -> Result<(), GarnierError> {
        self.base.validate()?;
        if self.m == 0 {
            return Err(GarnierError::InvalidState("m must be at least 1".into()));
        }
        if self.u.len() != self.n_points() || self.ker.len() != self.n_ker() {
            return Err(GarnierError::InvalidState(format!(
                "m = {} needs {} points and {} kernels, got {} and {}",
                self.m,
                self.n_points(),
                self.n_ker(),
                self.u.len(),
                self.ker.len()
            )));
        }
        if self.u.iter().any(|x| !(x.is_finite() && x.norm() > 0.0)) {
            return Err(GarnierError::InvalidState("singular points must be finite and nonzero".into()));
        }
        let prod = self.u_product();
        if (self.l * self.l - prod).norm() > 1e-10 * prod.norm() {
            return Err(GarnierError::InvalidState("L^2 differs from the product of the u_k".into()));
        }
        let p = self.p();
        for i in 0..self.u.len() {
            for j in (i + 1)..self.u.len() {
                if torus_dist(self.u[i], self.u[j], p) < COLLIDE {
                    return Err(GarnierError::CollidingParameters(format!("u_{i} and u_{j}")));
                }
            }
        }
        for (name, x) in [("v", self.v), ("w", self.w)] {
            if self.forbidden_points().iter().any(|&f| torus_dist(x, f, p) < 1e-9) {
                return Err(GarnierError::CollidingParameters(format!("{name} hits a forbidden point")));
            }
        }
        Ok(())
    }

    /// Redraws `v` and `w` on the unit circle from `seed`, rejecting draws
    /// within `1e-3` of a forbidden point.
    pub fn resample_vw(&mut self, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0f76);
        let bad = self.forbidden_points();
        let p = self.p();
        let draw = |rng: &mut ChaCha8Rng| loop {
            let z = C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU));
            if bad.iter().all(|&b| torus_dist(z, b, p) > 1e-3) {
                return z;
            }
        };
        self.v = draw(&mut rng);
        self.w = draw(&mut rng);
        self.seed = Some(seed);
    }

    /// Keeps `v`, `w` unless a transported singular point came too close.
    pub fn refresh_vw(&mut self) {
        let bad = self.forbidden_points();
        let p = self.p();
        let near = |x: C64| bad.iter().any(|&b| torus_dist(x, b, p) <= 1e-3);
        if near(self.v) || near(self.w) {
            let s = self.seed.unwrap_or(0).wrapping_add(1);
            self.resample_vw(s);
        }
    }

    /// Moves every `u_k` by a power `p^{n_k}` towards the unit circle, with
    /// `sum n_k` even and `L -> L p^{sum n_k / 2}`. `B` changes only by a
    /// constant left factor.
    pub fn reduce_lattice(&self) -> GarnierState {
        let n = lattice_exponents(&self.u, self.p());
        let mut t = self.clone();
        let p = self.p();
        for (u, &k) in t.u.iter_mut().zip(&n) {
            *u *= p.powi(k);
        }
        t.l = self.l * p.powi(n.iter().sum::<i32>() / 2);
        t
    }

    /// A random state: `u_k` jittered around the circle, kernels `(1 : c_k)`,
    /// `p = 0.3`, `q = 0.17`, `eta` near `0.9`.
    pub fn random(m: usize, seed: u64) -> Result<Self, GarnierError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 * m + 6;
        let u: Vec<C64> = (0..n)
            .map(|k| {
                let r = rng.random_range(0.75..1.35);
                let a = std::f64::consts::TAU * (k as f64 + rng.random_range(-0.3..0.3)) / n as f64;
                C64::from_polar(r, a)
            })
            .collect();
        let ker = (0..2 * m + 3)
            .map(|_| {
                let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                ProjPoint::new(C64::new(1.0, 0.0), c)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let eta = C64::from_polar(0.9, rng.random_range(-0.5..0.5));
        let base = EllipticBase::new(C64::new(0.3, 0.0), C64::new(0.17, 0.0), eta)?;
        let l = u.iter().product::<C64>().sqrt();
        let mut s = GarnierState { m, seed: None, l, v: C64::new(1.0, 0.0), w: C64::new(1.0, 0.0), u, ker, base };
        s.resample_vw(seed);
        s.validate()?;
        Ok(s)
    }

    pub fn to_text(&self) -> Result<String, GarnierError> {
        toml::to_string(self).map_err(|e| GarnierError::Format(e.to_string()))
    }

    pub fn from_text(s: &str) -> Result<Self, GarnierError> {
        let st: GarnierState = toml::from_str(s).map_err(|e| GarnierError::Format(e.to_string()))?;
        st.validate()?;
        Ok(st)
    }
}

/// Exponents `n_k` with `|p^{n_k} u_k|` closest to one and `sum n_k` even.
pub fn lattice_exponents(u: &[C64], p: C64) -> Vec<i32> {
    let lp = p.norm().ln();
    let x: Vec<f64> = u.iter().map(|u| -u.norm().ln() / lp).collect();
    let mut n: Vec<i32> = x.iter().map(|v| v.round() as i32).collect();
    let total: i32 = n.iter().sum();
    if total % 2 != 0 {
        // flip the rounding that was closest to a half
        let k =
            (0..n.len()).max_by(|&a, &b| (x[a] - n[a] as f64).abs().total_cmp(&(x[b] - n[b] as f64).abs())).unwrap();
        n[k] += if x[k] > n[k] as f64 { 1 } else { -1 };
    }
    n
}

/// The reference state: `m = 1`, `p = 0.3`, `q = 0.17`, `eta = 0.9`,
/// `u_k = 1.1 e^{2 pi i k/8} (1 + 0.03k)`, kernels `(1 : 0.4 + 0.1k i)`,
/// `L` the principal root; `v`, `w` drawn from `seed`.
pub fn fixture1(seed: u64) -> GarnierState {
    let u: Vec<C64> = (0..8)
        .map(|k| C64::from_polar(1.1 * (1.0 + 0.03 * k as f64), std::f64::consts::TAU * k as f64 / 8.0))
        .collect();
    let ker = (0..5).map(|k| ProjPoint::new(C64::new(1.0, 0.0), C64::new(0.4, 0.1 * k as f64)).unwrap()).collect();
    let base = EllipticBase::new(C64::new(0.3, 0.0), C64::new(0.17, 0.0), C64::new(0.9, 0.0)).unwrap();
    let l = u.iter().product::<C64>().sqrt();
    let mut s = GarnierState { m: 1, seed: None, l, v: C64::new(1.0, 0.0), w: C64::new(1.0, 0.0), u, ker, base };
    s.resample_vw(seed);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_valid() {
        let s = fixture1(1);
        assert!(s.validate().is_ok());
        assert_eq!(s.u.len(), 8);
        assert_eq!(s.ker.len(), 5);
    }

    #[test]
    fn text_round_trip() {
        let s = GarnierState::random(2, 9).unwrap();
        let t = s.to_text().unwrap();
        let back = GarnierState::from_text(&t).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn collisions_rejected() {
        let mut s = fixture1(1);
        s.u[3] = s.u[2] * s.p();
        s.l = s.u_product().sqrt();
        assert!(matches!(s.validate(), Err(GarnierError::CollidingParameters(_))));
        let mut s = fixture1(1);
        s.l = s.l * 1.01;
        assert!(matches!(s.validate(), Err(GarnierError::InvalidState(_))));
    }

    #[test]
    fn same_seed_same_state() {
        assert_eq!(GarnierState::random(1, 4).unwrap(), GarnierState::random(1, 4).unwrap());
        assert_ne!(GarnierState::random(1, 4).unwrap(), GarnierState::random(1, 5).unwrap());
    }
}
