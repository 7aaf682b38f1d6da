use crate::base::check_nome;
use crate::{NumPolicy, ThetaError, C64};

/// `(z; q)_inf = prod_{k>=0} (1 - q^k z)` with the default policy.
pub fn pochhammer_inf(z: C64, q: C64) -> Result<C64, ThetaError> {
    pochhammer_inf_with(z, q, &NumPolicy::default())
}

pub fn pochhammer_inf_with(z: C64, q: C64, pol: &NumPolicy) -> Result<C64, ThetaError> {
    let qa = check_nome(q)?;
    // the tail starts once |q^k z| < eps/100; large |z| needs extra factors first
    let lead = if z.norm() > 1.0 { (z.norm().ln() / -qa.ln()).ceil() as usize } else { 0 };
    let n = pol.terms_for(qa) + lead;
    let mut acc = C64::new(1.0, 0.0);
    let mut t = z;
    let stop = pol.eps * 0.01;
    for _ in 0..n {
        acc *= 1.0 - t;
        if t.norm() < stop {
            break;
        }
        t *= q;
    }
    Ok(acc)
}

/// `(z; q)_k`; for `k < 0` this is `(z;q)_inf / (q^k z;q)_inf = 1 / prod_{j=1}^{|k|} (1 - q^{-j} z)`.
pub fn pochhammer_k(z: C64, q: C64, k: i64) -> Result<C64, ThetaError> {
    check_nome(q)?;
    let mut acc = C64::new(1.0, 0.0);
    if k >= 0 {
        let mut t = z;
        for _ in 0..k {
            acc *= 1.0 - t;
            t *= q;
        }
        return Ok(acc);
    }
    let qi = q.inv();
    let mut t = z * qi;
    for j in 1..=(-k) {
        let f = 1.0 - t;
        if f.norm() <= 1e-14 * (1.0 + t.norm()) {
            return Err(ThetaError::Pole(format!("q^-{j} z")));
        }
        acc /= f;
        t *= qi;
    }
    Ok(acc)
}
