use garnier_system::{fixture1, GarnierState};
use painleve::{normalize, PainleveState};

use crate::CliError;

/// A state as read from a source string.
#[derive(Debug, Clone)]
pub enum Loaded {
    Garnier(GarnierState),
    Painleve(PainleveState),
}

/// `fixture1` (with `v, w` from `seed`), `random:<m>:<seed>`, or a path to a
/// state file in either layout.
pub fn load(src: &str, seed: u64) -> Result<Loaded, CliError> {
    if src == "fixture1" {
        return Ok(Loaded::Garnier(fixture1(seed)));
    }
    if let Some(rest) = src.strip_prefix("random:") {
        let (m, s) = rest.split_once(':').ok_or_else(|| CliError::Usage(format!("bad source {src:?}")))?;
        let m: usize = m.parse().map_err(|_| CliError::Usage(format!("bad m in {src:?}")))?;
        let s: u64 = s.parse().map_err(|_| CliError::Usage(format!("bad seed in {src:?}")))?;
        if m == 0 || m > 6 {
            return Err(CliError::Usage(format!("m = {m} outside 1..=6")));
        }
        return GarnierState::random(m, s).map(Loaded::Garnier).map_err(|e| CliError::Usage(e.to_string()));
    }
    let text = std::fs::read_to_string(src).map_err(|e| CliError::Io(format!("{src}: {e}")))?;
    match GarnierState::from_text(&text) {
        Ok(s) => Ok(Loaded::Garnier(s)),
        Err(e1) => PainleveState::from_text(&text)
            .map(Loaded::Painleve)
            .map_err(|e2| CliError::Usage(format!("{src}: not a state ({e1}; {e2})"))),
    }
}

/// The normalised `m = 1` state of a source.
pub fn load_painleve(src: &str, seed: u64) -> Result<PainleveState, CliError> {
    match load(src, seed)? {
        Loaded::Painleve(x) => Ok(x),
        Loaded::Garnier(s) if s.m == 1 => normalize(&s).map_err(|e| CliError::Usage(e.to_string())),
        Loaded::Garnier(s) => Err(CliError::Usage(format!("needs an m = 1 state, got m = {}", s.m))),
    }
}

/// The general state of a source; normalised states get `v, w` from `seed`.
pub fn load_garnier(src: &str, seed: u64) -> Result<GarnierState, CliError> {
    match load(src, seed)? {
        Loaded::Garnier(s) => Ok(s),
        Loaded::Painleve(x) => x.to_garnier(seed).map_err(|e| CliError::Usage(e.to_string())),
    }
}
