//! JSON state files: `{"sites": n, "local_dim": d, "amplitudes": [[re, im], ...]}`.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex;
use serde::Deserialize;

use super::State;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Deserialize)]
struct StateFile {
    sites: usize,
    local_dim: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// Serializes with 17 significant digits per component.
pub fn state_to_json<T: Real>(state: &State<T>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"sites\": {},", state.sites());
    let _ = writeln!(out, "  \"local_dim\": {},", state.local_dim());
    let _ = writeln!(out, "  \"amplitudes\": [");
    let n = state.dim();
    for (i, a) in state.amplitudes().iter().enumerate() {
        let sep = if i + 1 == n { "" } else { "," };
        let _ = writeln!(out, "    [{:.16e}, {:.16e}]{sep}", a.re.as_f64(), a.im.as_f64());
    }
    let _ = writeln!(out, "  ]");
    let _ = writeln!(out, "}}");
    out
}

pub fn state_from_json<T: Real>(text: &str) -> Result<State<T>> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let amps = file.amplitudes.iter().map(|&[re, im]| Complex::new(T::lit(re), T::lit(im))).collect();
    let state = State::from_amplitudes(file.local_dim, file.sites, amps)?;
    if !state.is_normalized(T::check_tol().max(T::lit(1e-8))) {
        return Err(Error::Validation(format!("state file is not normalized (norm² = {})", state.norm_sqr())));
    }
    Ok(state)
}

pub fn write_state<T: Real>(path: impl AsRef<Path>, state: &State<T>) -> Result<()> {
    std::fs::write(path, state_to_json(state))?;
    Ok(())
}

pub fn read_state<T: Real>(path: impl AsRef<Path>) -> Result<State<T>> {
    state_from_json(&std::fs::read_to_string(path)?)
}
