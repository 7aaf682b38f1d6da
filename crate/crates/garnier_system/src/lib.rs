//! The 2x2 linear system of the elliptic Garnier hierarchy.
//!
//! A [`GarnierState`] holds `2m+6` singular points, the kernels at the first
//! `2m+3`, the square root `L` of their product, the symmetry parameter and
//! two normalisation points. [`BEval`] compiles a state into an evaluator for
//! `B(z)`; `A(z) = B(eta/(qz))^{-1} B(z)`.

pub mod batch;
mod build;
mod error;
mod sampling;
mod state;
mod sym;
mod verify;

pub use build::{build_a, build_b, BEval};
pub use error::GarnierError;
pub use sampling::{good_samples, torus_dist, SAMPLE_Z};
pub use state::{fixture1, lattice_exponents, GarnierState};
pub use sym::sym_action;
pub use verify::{det_profile, multiplier, verify_state, verify_with, Check, VerifyReport};

pub use proj_linalg::{Mat2, ProjPoint};
pub use theta_core::{c64, EllipticBase, C64};
