//! The `garnier` command-line tool.
//!
//! Exit codes: `0` pass, `1` verification failure, `2` usage or I/O error.
//! Reports are line-delimited JSON; a config file is TOML holding one
//! [`Command`] (`command = "orbit"`, `steps = 20`, ...).

mod config;
mod records;
mod source;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use garnier_system::{det_profile, good_samples, verify_state, Check, VerifyReport, SAMPLE_Z};
use painleve::{base_point_params, base_points, orbit, verify_px};
use serde::Serialize;
use theta_core::{theta, theta_series};
use thiserror::Error;

pub use config::{parse_config, parse_pair, Cli, Command};
pub use records::Affine;
pub use source::{load, load_garnier, load_painleve, Loaded};

use records::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Runs one command; `Ok(pass)` or a usage/I/O error.
pub fn execute(cmd: &Command, out: &mut dyn Write) -> Result<bool, CliError> {
    let mut buf = Lines::default();
    let (pass, dest) = match cmd {
        Command::Run { config } => {
            let text =
                std::fs::read_to_string(config).map_err(|e| CliError::Io(format!("{}: {e}", config.display())))?;
            let inner = parse_config(&text).map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
            return execute(&inner, out);
        }
        Command::ThetaEval { z, nome } => {
            let t = theta(*z, *nome).map_err(|e| CliError::Usage(e.to_string()))?;
            let s = theta_series(*z, *nome).map_err(|e| CliError::Usage(e.to_string()))?;
            let rel_diff = (t - s).norm() / s.norm().max(1e-300);
            buf.push(&ThetaRecord {
                record: "theta",
                z: pair(*z),
                nome: pair(*nome),
                theta: pair(t),
                series: pair(s),
                rel_diff,
            });
            (true, None)
        }
        Command::Verify { state, tol, seed, out } => {
            check_tol(*tol)?;
            let mut h = Header::new("verify", state, *seed);
            h.tol = Some(*tol);
            buf.push(&h);
            let report = verify_source(state, *seed, *tol)?;
            for c in &report.checks {
                buf.push(&CheckRecord::from(c));
            }
            buf.push(&Summary { record: "summary", pass: report.pass });
            (report.pass, out.as_deref())
        }
        Command::Orbit { steps, seed, out, state, tol } => {
            check_tol(*tol)?;
            let x0 = load_painleve(state, *seed)?;
            let mut h = Header::new("orbit", state, *seed);
            h.tol = Some(*tol);
            h.steps = Some(*steps);
            buf.push(&h);
            let (recs, fail) = orbit(&x0, *steps, *seed);
            let mut pass = true;
            for r in &recs {
                pass &= r.lax_residual <= *tol;
                buf.push(&OrbitRecord::new(r.step, &r.state, r.lax_residual));
            }
            if let Some(e) = fail {
                pass = false;
                buf.push(&ErrorRecord { record: "error", step: recs.len() + 1, error: e.to_string() });
            }
            (pass, out.as_deref())
        }
        Command::Deform { program, state, seed, out, tol } => {
            check_tol(*tol)?;
            let s = load_garnier(state, *seed)?;
            let ops = deformations::parse_program(program).map_err(|e| CliError::Usage(e.to_string()))?;
            let mut h = Header::new("deform", state, *seed);
            h.tol = Some(*tol);
            h.program = Some(program);
            buf.push(&h);
            let (steps, fail) = deformations::run_program(&s, &ops);
            let mut pass = true;
            for (k, st) in steps.iter().enumerate() {
                pass &= st.gauge_residual <= *tol && st.verify_residual <= *tol;
                buf.push(&DeformRecord {
                    record: "step",
                    step: k + 1,
                    kind: st.kind,
                    indices: &st.indices,
                    gauge_residual: st.gauge_residual,
                    verify_residual: st.verify_residual,
                    after: &st.after,
                });
            }
            if let Some(e) = fail {
                pass = false;
                buf.push(&ErrorRecord { record: "error", step: steps.len() + 1, error: e.to_string() });
            }
            (pass, out.as_deref())
        }
        Command::BasePoints { state, seed, out } => {
            let x = load_painleve(state, *seed)?;
            buf.push(&Header::new("base-points", state, *seed));
            let pts = base_points(&x).map_err(|e| CliError::Usage(e.to_string()))?;
            for (k, (z, (f, g))) in base_point_params(&x).iter().zip(&pts).enumerate() {
                buf.push(&BasePointRecord {
                    record: "base_point",
                    index: k + 1,
                    param: pair(*z),
                    f: *f,
                    g: *g,
                    f_affine: f.into(),
                    g_affine: g.into(),
                });
            }
            (true, out.as_deref())
        }
        Command::State { state, normalize, seed, out } => {
            let text = if *normalize {
                load_painleve(state, *seed)?.to_text()
            } else {
                match load(state, *seed)? {
                    Loaded::Garnier(s) => s.to_text().map_err(Into::into),
                    Loaded::Painleve(x) => x.to_text(),
                }
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            buf.0.push_str(&text);
            (true, out.as_deref())
        }
    };
    match dest {
        Some(p) => write_file(p, &buf.0)?,
        None => out.write_all(buf.0.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?,
    }
    Ok(pass)
}

#[derive(Default)]
struct Lines(String);

impl Lines {
    fn push<T: Serialize>(&mut self, rec: &T) {
        self.0.push_str(&serde_json::to_string(rec).expect("records serialise"));
        self.0.push('\n');
    }
}

fn write_file(p: &Path, s: &str) -> Result<(), CliError> {
    std::fs::write(p, s).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("tolerance must be positive, got {tol}")))
    }
}

/// Checks of `verify` for either kind of state. Numerical breakdown while
/// checking is reported as a failed check, not an error.
fn verify_source(src: &str, seed: u64, tol: f64) -> Result<VerifyReport, CliError> {
    let loaded = load(src, seed)?;
    let mut checks = Vec::new();
    let s = match &loaded {
        Loaded::Garnier(s) => s.clone(),
        Loaded::Painleve(x) => {
            match verify_px(x, tol) {
                Ok(r) => checks.extend(r.checks.into_iter().map(|c| rename(c, "frame"))),
                Err(e) => checks.push(broken("frame", &e.to_string(), tol)),
            }
            x.to_garnier(seed).map_err(|e| CliError::Usage(e.to_string()))?
        }
    };
    match verify_state(&s, tol) {
        Ok(r) => checks.extend(r.checks),
        Err(e) => checks.push(broken("verify_state", &e.to_string(), tol)),
    }
    let mut zs = SAMPLE_Z.to_vec();
    zs.extend(good_samples(&s.u, s.p(), 5));
    match det_profile(&s, &zs) {
        Ok((_, r)) => checks.push(Check::new("det_profile", r, tol)),
        Err(e) => checks.push(broken("det_profile", &e.to_string(), tol)),
    }
    Ok(VerifyReport::from_checks(checks))
}

fn rename(mut c: Check, prefix: &str) -> Check {
    c.name = format!("{prefix}.{}", c.name);
    c
}

fn broken(name: &str, why: &str, tol: f64) -> Check {
    Check::new(&format!("{name} ({why})"), f64::INFINITY, tol)
}
