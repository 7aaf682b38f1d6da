use proj_linalg::{n_ijk, proj_dist, Mat2, ProjPoint};
use theta_core::{Theta, C64};

use crate::{GarnierError, GarnierState};

/// One subset `S` of `{0, .., 2m+2}` with its z-independent coefficients.
#[derive(Debug, Clone)]
struct Term {
    /// indices whose `theta(z/u_i)` enter the product
    zidx: Vec<usize>,
    c: [C64; 2],
    k: [C64; 2],
}

/// Compiled evaluator for `B(z)` of one state.
///
/// Construction caches the grid `theta(u_i/u_j)`, the subset coefficients and
/// the row prefactor denominators, so `eval` costs `2m+3 + 4 * #subsets`
/// theta evaluations.
#[derive(Debug, Clone)]
pub struct BEval {
    th: Theta,
    m: usize,
    u: Vec<C64>,
    eta: C64,
    q: C64,
    rows: [Vec<Term>; 2],
    pre_den: [C64; 2],
    /// right factor applied after evaluation, see [`BEval::framed`]
    frame: Option<Mat2>,
}

/// Neumaier summation, real and imaginary parts separately.
fn nsum(xs: impl Iterator<Item = C64>) -> C64 {
    let (mut s, mut c) = ([0.0f64; 2], [0.0f64; 2]);
    for x in xs {
        for (k, v) in [x.re, x.im].into_iter().enumerate() {
            let t = s[k] + v;
            c[k] += if s[k].abs() >= v.abs() { (s[k] - t) + v } else { (v - t) + s[k] };
            s[k] = t;
        }
    }
    C64::new(s[0] + c[0], s[1] + c[1])
}

/// Lexicographic `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl BEval {
    pub fn new(s: &GarnierState) -> Result<Self, GarnierError> {
        let ker: Vec<[C64; 2]> = s.ker.iter().map(|k| [k.x(), k.y()]).collect();
        Self::with_kernels(s, &ker)
    }

    /// Builds from raw kernel representatives `(x_k, y_k)` instead of `s.ker`.
    pub fn with_kernels(s: &GarnierState, ker: &[[C64; 2]]) -> Result<Self, GarnierError> {
        if s.u.len() != s.n_points() || ker.len() != s.n_ker() {
            return Err(GarnierError::InvalidState("length mismatch".into()));
        }
        let th = Theta::with_policy(s.p(), &s.base.policy)?;
        let (m, n) = (s.m, s.n_ker());
        let u = &s.u;
        let l = s.l;
        let a = [u[2 * m + 4], u[2 * m + 5]];
        let a3 = u[2 * m + 3];

        // pre(S) = prod_{i in S, j not in S} 1 / (u_j theta(u_i/u_j))
        let mut grid = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    grid[i * n + j] = (u[j] * th.eval(u[i] / u[j])).inv();
                }
            }
        }
        let pre = |sub: &[usize], comp: &[usize]| -> C64 {
            let mut r = C64::new(1.0, 0.0);
            for &i in sub {
                for &j in comp {
                    r *= grid[i * n + j];
                }
            }
            r
        };
        let x: Vec<C64> = ker.iter().map(|k| k[0]).collect();
        let y: Vec<C64> = ker.iter().map(|k| k[1]).collect();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };

        let mut rows = [Vec::new(), Vec::new()];
        for (col, size) in [(0usize, m + 1), (1usize, m + 2)] {
            for sub in combinations(n, size) {
                let comp: Vec<usize> = (0..n).filter(|j| !sub.contains(j)).collect();
                let xs: C64 = sub.iter().map(|&i| x[i]).product();
                let ys: C64 = comp.iter().map(|&i| y[i]).product();
                let us: C64 = sub.iter().map(|&i| u[i]).product();
                let uc: C64 = comp.iter().map(|&i| u[i]).product();
                let pr = pre(&sub, &comp);
                let mut c = [C64::new(0.0, 0.0); 2];
                let mut k = [C64::new(0.0, 0.0); 2];
                for r in 0..2 {
                    if col == 0 {
                        c[r] = xs * ys / (uc * a[r]) * th.eval(uc * a[r] / l) * pr;
                        k[r] = us * a[r] / l;
                    } else {
                        c[r] = sign * xs * ys / (us * a[r]) * th.eval(a[r] * us / l) * pr;
                        k[r] = a[r] * uc / l;
                    }
                }
                let zidx = if col == 0 { sub } else { comp };
                rows[col].push(Term { zidx, c, k });
            }
        }
        let pre_den = [th.eval(a3 / a[0]), th.eval(a3 / a[1])];
        Ok(BEval { th, m, u: u.clone(), eta: s.eta(), q: s.q(), rows, pre_den, frame: None })
    }

    /// `B` up to a constant scalar, evaluated in an adapted kernel frame.
    ///
    /// For constant `C`, the kernels `C ker_k` give `B_C(z) = kappa B(z) C^{-1}`.
    /// The kernel with the smallest summed log-distance to the others (the
    /// centre of the tightest cluster) is sent to `(1:0)`, the one farthest
    /// from it to `(0:1)`, and a third, far from both, to `(1:1)`; `B_C(z) C`
    /// is returned. Clustered kernels then enter the subset sums as small
    /// coordinates rather than through cancellation.
    pub fn framed(s: &GarnierState) -> Result<Self, GarnierError> {
        let n = s.n_ker();
        let d = |a: usize, b: usize| proj_dist(&s.ker[a], &s.ker[b]).max(1e-300);
        let argmax = |f: &dyn Fn(usize) -> f64, skip: &[usize]| {
            (0..n).filter(|k| !skip.contains(k)).max_by(|&a, &b| f(a).total_cmp(&f(b))).unwrap()
        };
        let i = argmax(&|k| -(0..n).filter(|&l| l != k).map(|l| d(k, l).ln()).sum::<f64>(), &[]);
        let j = argmax(&|k| d(i, k), &[i]);
        let k = argmax(&|k| d(i, k).min(d(j, k)), &[i, j]);
        let c = n_ijk(&s.ker[i], &s.ker[j], &s.ker[k])?
            .inv()
            .ok_or_else(|| GarnierError::InvalidState("degenerate kernel frame".into()))?;
        let ker: Vec<[C64; 2]> = s.ker.iter().map(|p| c.apply([p.x(), p.y()])).collect();
        let mut b = Self::with_kernels(s, &ker)?;
        b.frame = Some(c);
        Ok(b)
    }

    pub fn theta(&self) -> &Theta {
        &self.th
    }

    pub fn eval(&self, z: C64) -> Mat2 {
        let n = 2 * self.m + 3;
        let tz: Vec<C64> = (0..n).map(|i| self.th.eval(z / self.u[i])).collect();
        let mut e = [[C64::new(0.0, 0.0); 2]; 2];
        for col in 0..2 {
            for r in 0..2 {
                e[r][col] = nsum(self.rows[col].iter().map(|t| {
                    let tp: C64 = t.zidx.iter().map(|&i| tz[i]).product();
                    t.c[r] * self.th.eval(t.k[r] * z) * tp
                }));
            }
        }
        let f4 = self.th.eval(z / self.u[2 * self.m + 4]) / self.pre_den[0];
        let f5 = self.th.eval(z / self.u[2 * self.m + 5]) / self.pre_den[1];
        let b = Mat2::new(f4 * e[0][0], f4 * e[0][1], f5 * e[1][0], f5 * e[1][1]);
        match self.frame {
            Some(c) => b * c,
            None => b,
        }
    }

    /// `A(z) = B(eta/(qz))^{-1} B(z)`.
    pub fn a(&self, z: C64) -> Result<Mat2, GarnierError> {
        let bs = self.eval(self.eta / (self.q * z));
        if bs.det().norm() <= 1e-13 * bs.norm().powi(2) {
            return Err(GarnierError::SingularAtPoint(z.to_string()));
        }
        Ok(bs.inv().ok_or_else(|| GarnierError::SingularAtPoint(z.to_string()))? * self.eval(z))
    }

    /// Kernel of `B(u_k)` read off its larger row (no rank test).
    pub fn kernel_at(&self, k: usize) -> Result<ProjPoint, GarnierError> {
        let b = self.eval(self.u[k]);
        let r1 = b.a11.norm_sqr() + b.a12.norm_sqr();
        let r2 = b.a21.norm_sqr() + b.a22.norm_sqr();
        let (a, c) = if r1 >= r2 { (b.a11, b.a12) } else { (b.a21, b.a22) };
        Ok(ProjPoint::new(c, -a)?)
    }
}

pub fn build_b(s: &GarnierState, z: C64) -> Result<Mat2, GarnierError> {
    Ok(BEval::new(s)?.eval(z))
}

pub fn build_a(s: &GarnierState, z: C64) -> Result<Mat2, GarnierError> {
    BEval::new(s)?.a(z)
}
