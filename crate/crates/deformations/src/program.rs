use garnier_system::{sym_action, verify_state, GarnierState};
use serde::Serialize;

use crate::{apply_e, apply_f, apply_iota, gauge_e, gauge_f, gauge_iota, gauge_sym, DeformError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    E,
    F,
    T,
    Iota,
    Sym,
}

/// One letter of a step program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E(usize, usize),
    F(usize, usize),
    T(usize, usize),
    S(usize),
    Iota,
}

/// A completed step with its diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct DeformationStep {
    pub kind: StepKind,
    pub indices: Vec<usize>,
    pub after: GarnierState,
    /// largest gauge-certificate spread of the step
    pub gauge_residual: f64,
    /// largest residual of `verify_state` on the after-state
    pub verify_residual: f64,
}

/// Parses words such as `"E(3,4) F(3,4) s2 iota T(0,1)"`.
pub fn parse_program(src: &str) -> Result<Vec<Op>, DeformError> {
    let bad = |m: String| DeformError::Program(m);
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut k = 0;
    while k < cs.len() {
        if cs[k].is_whitespace() || cs[k] == ';' {
            k += 1;
            continue;
        }
        let start = k;
        while k < cs.len() && (cs[k].is_alphabetic()) {
            k += 1;
        }
        let name: String = cs[start..k].iter().collect();
        if name.is_empty() {
            return Err(bad(format!("unexpected '{}' at {}", cs[k], k)));
        }
        let args: Vec<usize> = if k < cs.len() && cs[k] == '(' {
            let close = cs[k..].iter().position(|&c| c == ')').ok_or_else(|| bad("missing ')'".into()))? + k;
            let inner: String = cs[k + 1..close].iter().collect();
            k = close + 1;
            inner
                .split(',')
                .map(|a| a.trim().parse::<usize>().map_err(|_| bad(format!("bad index '{a}'"))))
                .collect::<Result<_, _>>()?
        } else {
            let ds = k;
            while k < cs.len() && cs[k].is_ascii_digit() {
                k += 1;
            }
            let d: String = cs[ds..k].iter().collect();
            if d.is_empty() {
                vec![]
            } else {
                vec![d.parse().map_err(|_| bad(format!("bad index '{d}'")))?]
            }
        };
        let op = match (name.as_str(), args.as_slice()) {
            ("E", [i, j]) => Op::E(*i, *j),
            ("F", [i, j]) => Op::F(*i, *j),
            ("T", [i, j]) => Op::T(*i, *j),
            ("s" | "S", [i]) => Op::S(*i),
            ("iota" | "ι", []) => Op::Iota,
            _ => return Err(bad(format!("unknown step '{name}' with {} indices", args.len()))),
        };
        out.push(op);
    }
    Ok(out)
}

fn verify_residual(s: &GarnierState) -> Result<f64, DeformError> {
    let r = verify_state(s, 1e-7)?;
    Ok(r.checks.iter().map(|c| c.residual).fold(0.0, f64::max))
}

/// Applies one op and certifies it. After a translation the singular points
/// are moved back towards the unit circle by [`GarnierState::reduce_lattice`].
pub fn run_op(s: &GarnierState, op: Op) -> Result<DeformationStep, DeformError> {
    let (kind, indices, after, gauge) = match op {
        Op::E(i, j) => {
            let t = apply_e(s, i, j)?;
            let g = gauge_e(s, &t, i, j)?;
            (StepKind::E, vec![i, j], t, g)
        }
        Op::F(i, j) => {
            let t = apply_f(s, i, j)?;
            let g = gauge_f(s, &t, i, j)?;
            (StepKind::F, vec![i, j], t, g)
        }
        Op::T(i, j) => {
            let mid = apply_e(s, i, j)?;
            let g1 = gauge_e(s, &mid, i, j)?;
            let mut t = apply_f(&mid, i, j)?;
            let g2 = gauge_f(&mid, &t, i, j)?;
            t.u[i] = s.q() * s.u[i];
            t.u[j] = s.q() * s.u[j];
            (StepKind::T, vec![i, j], t.reduce_lattice(), g1.max(g2))
        }
        Op::S(i) => {
            let t = sym_action(s, i)?;
            let g = gauge_sym(s, &t)?;
            (StepKind::Sym, vec![i], t, g)
        }
        Op::Iota => {
            let t = apply_iota(s)?;
            let g = gauge_iota(s, &t)?;
            (StepKind::Iota, vec![], t, g)
        }
    };
    let verify_residual = verify_residual(&after)?;
    Ok(DeformationStep { kind, indices, after, gauge_residual: gauge, verify_residual })
}

/// Runs a program; stops at the first failing step and returns it alongside
/// the completed ones.
pub fn run_program(s: &GarnierState, ops: &[Op]) -> (Vec<DeformationStep>, Option<DeformError>) {
    let mut out: Vec<DeformationStep> = Vec::new();
    let mut cur = s.clone();
    for &op in ops {
        match run_op(&cur, op) {
            Ok(step) => {
                cur = step.after.clone();
                out.push(step);
            }
            Err(e) => return (out, Some(e)),
        }
    }
    (out, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_words() {
        let p = parse_program("E(3,4) F(3, 4)  s2 iota T(0,1)").unwrap();
        assert_eq!(p, vec![Op::E(3, 4), Op::F(3, 4), Op::S(2), Op::Iota, Op::T(0, 1)]);
        assert!(parse_program("E(3)").is_err());
        assert!(parse_program("Q(1,2)").is_err());
        assert!(parse_program("E(3,4").is_err());
        assert_eq!(parse_program("").unwrap(), vec![]);
    }
}
