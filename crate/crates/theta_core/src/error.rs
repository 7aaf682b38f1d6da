use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ThetaError {
    #[error("nome must satisfy 0 < |nome| < 1, got modulus {0}")]
    NomeOutOfRange(f64),
    #[error("argument is zero (essential singularity)")]
    ZeroArgument,
    #[error("pole: factor 1 - {0} vanishes")]
    Pole(String),
    #[error("resonant nomes: |p^{a} q^{b} - 1| = {dist:e}")]
    Resonant { a: i32, b: i32, dist: f64 },
    #[error("invalid numeric policy: {0}")]
    Policy(String),
}
