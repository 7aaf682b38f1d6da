use proj_linalg::LinalgError;
use theta_core::ThetaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GarnierError {
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("colliding parameters: {0}")]
    CollidingParameters(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("B(eta/(qz)) is singular at z = {0}")]
    SingularAtPoint(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("state text: {0}")]
    Format(String),
}
