//! Special functions on the multiplicative elliptic curve `C*/p^Z`.
//!
//! Everything here is a pure function of its arguments. The product forms are
//! the primary evaluators; [`theta_series`] is an independent series oracle
//! used by the test suites.

mod base;
mod error;
mod gamma;
mod pochhammer;
mod theta;

pub use base::{EllipticBase, NumPolicy, DEFAULT_EPS};
pub use error::ThetaError;
pub use gamma::{elliptic_gamma, elliptic_gamma_with};
pub use pochhammer::{pochhammer_inf, pochhammer_inf_with, pochhammer_k};
pub use theta::{theta, theta_multi, theta_series, Theta};

pub use num_complex::Complex64 as C64;

/// Shorthand for building a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
