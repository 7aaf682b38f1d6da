use deformations::DeformError;
use garnier_system::GarnierError;
use proj_linalg::LinalgError;
use theta_core::ThetaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PainleveError {
    #[error(transparent)]
    Theta(#[from] ThetaError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Garnier(#[from] GarnierError),
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error("{0} is 0/0 here")]
    PoleInFormula(&'static str),
    #[error("state lies on base point P_{0}")]
    BasePointCollision(usize),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("needs m = 1, got m = {0}")]
    WrongRank(usize),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("state text: {0}")]
    Format(String),
}
