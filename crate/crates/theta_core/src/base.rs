use serde::{Deserialize, Serialize};

use crate::{ThetaError, C64};

/// Default relative tolerance for truncated products and series.
pub const DEFAULT_EPS: f64 = 1e-15;

/// Truncation policy shared by every product and series evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumPolicy {
    pub eps: f64,
    pub max_terms: usize,
}

impl Default for NumPolicy {
    fn default() -> Self {
        NumPolicy { eps: DEFAULT_EPS, max_terms: 400 }
    }
}

impl NumPolicy {
    /// Number of factors needed so that the tail `|nome|^N` drops below `eps/100`.
    pub fn terms_for(&self, nome_abs: f64) -> usize {
        if nome_abs == 0.0 {
            return 1;
        }
        let n = ((self.eps * 0.01).ln() / nome_abs.ln()).ceil();
        (n.max(1.0) as usize).min(self.max_terms)
    }

    pub fn validate(&self, nome_abs: f64) -> Result<(), ThetaError> {
        if !(self.eps > f64::EPSILON * 0.5) {
            return Err(ThetaError::Policy(format!("eps {} below machine precision", self.eps)));
        }
        let need = ((self.eps * 0.01).ln() / nome_abs.ln()).ceil() as usize;
        if self.max_terms < need {
            return Err(ThetaError::Policy(format!(
                "max_terms {} < {} required for |nome| = {}",
                self.max_terms, need, nome_abs
            )));
        }
        Ok(())
    }
}

pub(crate) fn check_nome(n: C64) -> Result<f64, ThetaError> {
    let a = n.norm();
    if !(a > 0.0 && a < 1.0) {
        return Err(ThetaError::NomeOutOfRange(a));
    }
    Ok(a)
}

/// The nomes `p` (theta period), `q` (shift base), the symmetry parameter `eta`
/// and the numerical policy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticBase {
    pub p: C64,
    pub q: C64,
    pub eta: C64,
    #[serde(default)]
    pub policy: NumPolicy,
}

impl EllipticBase {
    pub fn new(p: C64, q: C64, eta: C64) -> Result<Self, ThetaError> {
        let b = EllipticBase { p, q, eta, policy: NumPolicy::default() };
        b.validate()?;
        Ok(b)
    }

    /// Checks nome ranges, the policy, and non-resonance `p^a q^b != 1` for
    /// `|a|, |b| <= window` with `(a, b) != (0, 0)`.
    pub fn validate(&self) -> Result<(), ThetaError> {
        let pa = check_nome(self.p)?;
        let qa = check_nome(self.q)?;
        self.policy.validate(pa.max(qa))?;
        if self.eta.norm() == 0.0 {
            return Err(ThetaError::ZeroArgument);
        }
        let (lp, lq) = (self.p.ln(), self.q.ln());
        let window = 6;
        for a in -window..=window {
            for b in -window..=window {
                if a == 0 && b == 0 {
                    continue;
                }
                let dist = ((lp * a as f64 + lq * b as f64).exp() - 1.0).norm();
                if dist < 1e-9 {
                    return Err(ThetaError::Resonant { a, b, dist });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    #[test]
    fn rejects_bad_nomes() {
        assert!(EllipticBase::new(c64(1.0, 0.0), c64(0.2, 0.0), c64(0.9, 0.0)).is_err());
        assert!(EllipticBase::new(c64(0.3, 0.0), c64(0.0, 0.0), c64(0.9, 0.0)).is_err());
        assert!(EllipticBase::new(c64(0.3, 0.0), c64(0.17, 0.0), c64(0.9, 0.0)).is_ok());
    }

    #[test]
    fn rejects_resonance() {
        // q = p^2
        let e = EllipticBase::new(c64(0.3, 0.0), c64(0.09, 0.0), c64(0.9, 0.0));
        assert!(matches!(e, Err(ThetaError::Resonant { .. })));
    }

    #[test]
    fn terms_cover_tail() {
        let pol = NumPolicy::default();
        let n = pol.terms_for(0.6);
        assert!(0.6f64.powi(n as i32) < pol.eps * 0.011);
        assert!(pol.validate(0.6).is_ok());
        let tight = NumPolicy { eps: 1e-15, max_terms: 5 };
        assert!(tight.validate(0.6).is_err());
    }
}
