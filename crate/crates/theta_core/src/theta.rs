use crate::base::check_nome;
use crate::{pochhammer_inf_with, NumPolicy, ThetaError, C64};

/// Reusable evaluator for `theta_p(z) = (z; p)_inf (p/z; p)_inf` with the
/// powers of `p` cached.
///
/// The argument is first moved into the annulus `|p| < |z| <= 1` with
/// `theta(z) = -z theta(pz)`; the remaining product then converges like `|p|^k`
/// from the first factor. `eval(0)` is not finite.
#[derive(Debug, Clone)]
pub struct Theta {
    p: C64,
    pa: f64,
    pows: Vec<C64>,
}

impl Theta {
    pub fn new(p: C64) -> Result<Self, ThetaError> {
        Self::with_policy(p, &NumPolicy::default())
    }

    pub fn with_policy(p: C64, pol: &NumPolicy) -> Result<Self, ThetaError> {
        let pa = check_nome(p)?;
        let n = pol.terms_for(pa) + 1;
        let mut pows = Vec::with_capacity(n + 1);
        let mut t = C64::new(1.0, 0.0);
        for _ in 0..=n {
            pows.push(t);
            t *= p;
        }
        Ok(Theta { p, pa, pows })
    }

    pub fn nome(&self) -> C64 {
        self.p
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut z = z;
        let mut pre = C64::new(1.0, 0.0);
        let mut guard = 0;
        while z.norm() > 1.0 && guard < 4096 {
            pre *= -z;
            z *= self.p;
            guard += 1;
        }
        while z.norm() <= self.pa && guard < 4096 {
            pre *= -self.p / z;
            z /= self.p;
            guard += 1;
        }
        let zi = z.inv();
        let n = self.pows.len() - 1;
        let mut acc = C64::new(1.0, 0.0);
        for k in 0..n {
            acc *= (1.0 - self.pows[k] * z) * (1.0 - self.pows[k + 1] * zi);
        }
        pre * acc
    }

    /// Product `theta(z_1) ... theta(z_n)`.
    pub fn prod(&self, zs: &[C64]) -> C64 {
        zs.iter().fold(C64::new(1.0, 0.0), |a, &z| a * self.eval(z))
    }
}

/// `theta_p(z)`; rejects `z = 0` and nomes outside the unit disc.
pub fn theta(z: C64, p: C64) -> Result<C64, ThetaError> {
    if z.norm() == 0.0 {
        return Err(ThetaError::ZeroArgument);
    }
    Ok(Theta::new(p)?.eval(z))
}

/// `theta_p(z_1, ..., z_n) = prod theta_p(z_i)`.
pub fn theta_multi(zs: &[C64], p: C64) -> Result<C64, ThetaError> {
    if zs.iter().any(|z| z.norm() == 0.0) {
        return Err(ThetaError::ZeroArgument);
    }
    Ok(Theta::new(p)?.prod(zs))
}

/// Triple-product series `(1/(p;p)_inf) sum_n (-1)^n p^{n(n-1)/2} z^n`.
///
/// Independent of [`Theta`]: the sum runs outward from `n = 0` in both
/// directions and stops once two consecutive terms fall below `eps/100` of the
/// largest term seen.
pub fn theta_series(z: C64, p: C64) -> Result<C64, ThetaError> {
    check_nome(p)?;
    if z.norm() == 0.0 {
        return Err(ThetaError::ZeroArgument);
    }
    let pol = NumPolicy::default();
    let stop = pol.eps * 0.01;
    let one = C64::new(1.0, 0.0);

    let mut big = 1.0f64;
    let mut pos = C64::new(0.0, 0.0);
    let mut t = one;
    let mut pn = one; // p^n
    let mut small = 0;
    for _ in 0..100_000 {
        t *= -pn * z;
        pn *= p;
        pos += t;
        big = big.max(t.norm());
        if t.norm() < stop * big {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }

    let mut neg = C64::new(0.0, 0.0);
    let mut t = one;
    let mut pn = p; // p^{-(n-1)} at n = 0
    let zi = z.inv();
    small = 0;
    for _ in 0..100_000 {
        t *= -pn * zi;
        pn *= p;
        neg += t;
        big = big.max(t.norm());
        if t.norm() < stop * big {
            small += 1;
            if small == 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok((one + pos + neg) / pochhammer_inf_with(p, p, &pol)?)
}
