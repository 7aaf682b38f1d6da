use garnier_system::GarnierError;
use proj_linalg::LinalgError;
use theta_core::ThetaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeformError {
    #[error(transparent)]
    Garnier(#[from] GarnierError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error("kernels at u_{0} and u_{1} are proportional")]
    ProportionalKernels(usize, usize),
    #[error("images of B at u_{0} and u_{1} are proportional")]
    DegenerateImages(usize, usize),
    #[error("both columns of B(u_{0}) vanish")]
    BothColumnsVanish(usize),
    #[error("bad index pair ({0}, {1})")]
    BadIndices(usize, usize),
    #[error("program: {0}")]
    Program(String),
}
