//! Projective points of `P^1` and 2x2 complex matrices.

mod frame;
mod mat;
mod point;

pub use frame::{image_of, kernel_of, n_ijk};
pub use mat::{gauge_spread, Mat2};
pub use point::{proj_dist, proj_eq, ProjPoint};

pub use num_complex::Complex64 as C64;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("(0 : 0) is not a projective point")]
    ZeroPoint,
    #[error("matrix is not singular: |det| = {det:e}, |M|^2 = {norm2:e}")]
    NotSingular { det: f64, norm2: f64 },
    #[error("matrix vanishes")]
    ZeroMatrix,
    #[error("points {0} and {1} coincide")]
    DegenerateTriple(usize, usize),
}
