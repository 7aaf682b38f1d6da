//! Line-delimited output records. Field order is fixed by the struct
//! definitions, so identical runs write identical bytes.

use garnier_system::{Check, GarnierState};
use painleve::PainleveState;
use proj_linalg::ProjPoint;
use serde::Serialize;
use theta_core::C64;

/// Affine value `[re, im]`, or `"inf"` when the second coordinate of the
/// normalised representative is below `1e-14`.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Affine {
    Finite([f64; 2]),
    Inf(&'static str),
}

impl From<&ProjPoint> for Affine {
    fn from(p: &ProjPoint) -> Self {
        match p.affine() {
            Some(v) if p.y().norm() >= 1e-14 => Affine::Finite([v.re, v.im]),
            _ => Affine::Inf("inf"),
        }
    }
}

pub fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Debug, Serialize)]
pub struct Header<'a> {
    pub record: &'static str,
    pub command: &'a str,
    pub state: &'a str,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<&'a str>,
}

impl<'a> Header<'a> {
    pub fn new(command: &'a str, state: &'a str, seed: u64) -> Self {
        Header { record: "header", command, state, seed, tol: None, steps: None, program: None }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckRecord<'a> {
    pub record: &'static str,
    pub name: &'a str,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl<'a> From<&'a Check> for CheckRecord<'a> {
    fn from(c: &'a Check) -> Self {
        CheckRecord { record: "check", name: &c.name, residual: c.residual, tol: c.tol, pass: c.pass }
    }
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub record: &'static str,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct OrbitRecord {
    pub record: &'static str,
    pub step: usize,
    pub u: Vec<[f64; 2]>,
    pub eta: [f64; 2],
    #[serde(rename = "L")]
    pub l: [f64; 2],
    pub f: Affine,
    pub g: Affine,
    pub lax_residual: f64,
}

impl OrbitRecord {
    pub fn new(step: usize, x: &PainleveState, lax_residual: f64) -> Self {
        OrbitRecord {
            record: "step",
            step,
            u: x.u.iter().map(|&z| pair(z)).collect(),
            eta: pair(x.eta()),
            l: pair(x.l),
            f: (&x.f).into(),
            g: (&x.g).into(),
            lax_residual,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub record: &'static str,
    pub step: usize,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct DeformRecord<'a> {
    pub record: &'static str,
    pub step: usize,
    pub kind: deformations::StepKind,
    pub indices: &'a [usize],
    pub gauge_residual: f64,
    pub verify_residual: f64,
    pub after: &'a GarnierState,
}

#[derive(Debug, Serialize)]
pub struct BasePointRecord {
    pub record: &'static str,
    pub index: usize,
    pub param: [f64; 2],
    pub f: ProjPoint,
    pub g: ProjPoint,
    pub f_affine: Affine,
    pub g_affine: Affine,
}

#[derive(Debug, Serialize)]
pub struct ThetaRecord {
    pub record: &'static str,
    pub z: [f64; 2],
    pub nome: [f64; 2],
    pub theta: [f64; 2],
    pub series: [f64; 2],
    pub rel_diff: f64,
}
