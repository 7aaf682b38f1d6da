//! The elliptic Painlevé equation as the `m = 1` case of the Garnier system.
//!
//! A [`PainleveState`] is the normalised parameter point `(u; L; eta; f, g)`.
//! [`step`] is the translation `u_3, u_4 -> q u_3, q u_4`; [`gen`] gives the
//! adjacent transpositions `s_0..s_6`; [`base_points`] lists the eight points
//! of indeterminacy on the curve [`chi`].

mod error;
mod formulas;
mod geometry;
mod lax;
mod maps;
mod orbit;
mod state;

pub use error::PainleveError;
pub use formulas::{build_b_e8, g_from_ker4, image_u4, ker4_coeffs, kernel_u4, verify_px, E8Eval};
pub use geometry::{base_point_params, base_points, check_collision, chi, point_dist, BasePoint, COLLISION_TOL};
pub use lax::{certified_step, lax_residual};
pub use maps::{bar_e01, bar_e34, bar_f34, bar_f67, fourier_laplace, gen, iota_x, step, step_inverse};
pub use orbit::{ensemble, orbit, OrbitStep};
pub use state::{normalize, PainleveState};
