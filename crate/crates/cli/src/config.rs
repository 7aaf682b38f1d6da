use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use theta_core::C64;

#[derive(Parser, Debug)]
#[command(name = "garnier", version, about = "Elliptic Garnier system and elliptic Painlevé equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// One run. Also the layout of a config file (`command = "orbit"`, ...),
/// with complex numbers written as `[re, im]`.
#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    /// Evaluate theta_p(z) by the product and by the series
    ThetaEval {
        /// z as re,im
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: C64,
        /// p as re,im
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        nome: C64,
    },
    /// Check the defining conditions of a state
    Verify {
        /// fixture1, random:<m>:<seed>, or a state file
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1e-8)]
        #[serde(default = "tol_verify")]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        seed: u64,
        #[arg(long)]
        #[serde(default)]
        out: Option<PathBuf>,
    },
    /// Iterate the elliptic Painlevé step with its compatibility certificate
    Orbit {
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        seed: u64,
        #[arg(long)]
        #[serde(default)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "fixture1")]
        #[serde(default = "fixture")]
        state: String,
        #[arg(long, default_value_t = 1e-6)]
        #[serde(default = "tol_orbit")]
        tol: f64,
    },
    /// Run a word in E(i,j), F(i,j), T(i,j), s_i and iota on a state
    Deform {
        #[arg(long)]
        program: String,
        #[arg(long, default_value = "fixture1")]
        #[serde(default = "fixture")]
        state: String,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        seed: u64,
        #[arg(long)]
        #[serde(default)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-7)]
        #[serde(default = "tol_deform")]
        tol: f64,
    },
    /// The eight base points of an m = 1 state
    BasePoints {
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        seed: u64,
        #[arg(long)]
        #[serde(default)]
        out: Option<PathBuf>,
    },
    /// Write a state as text (normalised to (u; L; eta; f, g) with --normalize)
    State {
        #[arg(long)]
        state: String,
        #[arg(long)]
        #[serde(default)]
        normalize: bool,
        #[arg(long, default_value_t = 1)]
        #[serde(default = "one")]
        seed: u64,
        #[arg(long)]
        #[serde(default)]
        out: Option<PathBuf>,
    },
    /// Run the command described in a config file
    #[serde(skip)]
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn one() -> u64 {
    1
}
fn fixture() -> String {
    "fixture1".into()
}
fn tol_verify() -> f64 {
    1e-8
}
fn tol_orbit() -> f64 {
    1e-6
}
fn tol_deform() -> f64 {
    1e-7
}

/// `"a,b"` as `a + bi`.
pub fn parse_pair(s: &str) -> Result<C64, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re = a.trim().parse::<f64>().map_err(|e| format!("{a:?}: {e}"))?;
    let im = b.trim().parse::<f64>().map_err(|e| format!("{b:?}: {e}"))?;
    Ok(C64::new(re, im))
}

pub fn parse_config(text: &str) -> Result<Command, String> {
    toml::from_str(text).map_err(|e| e.to_string())
}
