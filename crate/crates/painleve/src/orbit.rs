use garnier_system::batch;
use serde::Serialize;

use crate::{certified_step, PainleveError, PainleveState};

/// State after `step` iterations, lattice-reduced, with the residual of the
/// step that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitStep {
    pub step: usize,
    pub state: PainleveState,
    pub lax_residual: f64,
}

/// Iterates the step `steps` times, stopping at the first failure.
pub fn orbit(x0: &PainleveState, steps: usize, seed: u64) -> (Vec<OrbitStep>, Option<PainleveError>) {
    let mut out = Vec::with_capacity(steps);
    let mut x = x0.clone();
    for k in 1..=steps {
        match certified_step(&x, seed) {
            Ok((next, res)) => {
                x = next.reduce();
                out.push(OrbitStep { step: k, state: x.clone(), lax_residual: res });
            }
            Err(e) => return (out, Some(e)),
        }
    }
    (out, None)
}

/// Independent orbits from several initial states, in input order.
pub fn ensemble(starts: &[PainleveState], steps: usize, seed: u64) -> Vec<(Vec<OrbitStep>, Option<PainleveError>)> {
    batch::map(starts, |x| orbit(x, steps, seed))
}
