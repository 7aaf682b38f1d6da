//! Discrete isomonodromic deformations for general `m`.
//!
//! `F_{i,j}` acts on `B` from the right by [`r_right`] and sends
//! `u_i, u_j -> eta/u_i, eta/u_j`; `E_{i,j}` acts from the left by [`r_left`]
//! and sends `u_i, u_j -> eta/(q u_i), eta/(q u_j)`. Their composition `T_{i,j}`
//! multiplies `u_i, u_j` by `q`. [`apply_iota`] is the reflection
//! `u -> eta/u, eta -> q eta`.

mod actions;
mod certificate;
mod error;
mod program;
mod rmat;

pub use actions::{apply_e, apply_f, apply_iota, apply_t, e_kernels_by_solve, f_kernels_by_solve};
pub use certificate::{gauge_e, gauge_f, gauge_iota, gauge_sym, GAUGE_TOL};
pub use error::DeformError;
pub use program::{parse_program, run_op, run_program, DeformationStep, Op, StepKind};
pub use rmat::kernel_at;
pub use rmat::{r_left, r_right, RLeft, RRight};
