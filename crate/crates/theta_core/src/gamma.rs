use crate::base::check_nome;
use crate::{NumPolicy, ThetaError, C64};

/// Elliptic Gamma function
/// `Gamma_{p,q}(z) = prod_{i,j>=0} (1 - p^{i+1} q^{j+1} / z) / (1 - p^i q^j z)`.
pub fn elliptic_gamma(z: C64, p: C64, q: C64) -> Result<C64, ThetaError> {
    elliptic_gamma_with(z, p, q, &NumPolicy::default())
}

pub fn elliptic_gamma_with(z: C64, p: C64, q: C64, pol: &NumPolicy) -> Result<C64, ThetaError> {
    check_nome(p)?;
    check_nome(q)?;
    if z.norm() == 0.0 {
        return Err(ThetaError::ZeroArgument);
    }
    let stop = pol.eps * 0.01;
    let zi = z.inv();
    let pq = p * q;
    let cap = 4 * pol.max_terms;
    let mut acc = C64::new(1.0, 0.0);
    let mut pi = C64::new(1.0, 0.0); // p^i
    for i in 0..cap {
        let mut pij = pi; // p^i q^j
        let mut row_done_at_start = false;
        for j in 0..cap {
            let a = pij * z;
            let b = pij * pq * zi;
            let den = 1.0 - a;
            if den.norm() <= 1e-14 {
                return Err(ThetaError::Pole(format!("p^{i} q^{j} z")));
            }
            acc *= (1.0 - b) / den;
            if a.norm() < stop && b.norm() < stop {
                row_done_at_start = j == 0;
                break;
            }
            pij *= q;
        }
        if row_done_at_start {
            break;
        }
        pi *= p;
        if i + 1 == cap {
            return Err(ThetaError::Policy("elliptic gamma did not converge".into()));
        }
    }
    Ok(acc)
}
