//! `key = value` configuration files for the numerical settings.

use std::fs;
use std::path::Path;

use homsphere::{Error, Settings};

pub const CONFIG_ENV: &str = "HOMSPHERE_CONFIG";

/// Applies the `key = value` lines of `text` to `settings`. Blank lines and
/// lines starting with `#` are ignored.
pub fn apply(text: &str, settings: &mut Settings) -> Result<(), Error> {
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(n, format!("expected key = value, got '{line}'")))?;
        let value = value.trim();
        let float = || {
            value
                .parse::<f64>()
                .map_err(|e| bad(n, format!("{key}: {e}")))
        };
        match key.trim() {
            "solver_tol" => settings.solver_tol = float()?,
            "cluster_rel_tol" => settings.cluster_rel_tol = float()?,
            "merge_warn_rel_tol" => settings.merge_warn_rel_tol = float()?,
            "k_cap" => settings.k_cap = value.parse().map_err(|e| bad(n, format!("k_cap: {e}")))?,
            other => return Err(bad(n, format!("unknown key '{other}'"))),
        }
    }
    Ok(())
}

fn bad(line: usize, msg: String) -> Error {
    Error::InvalidArgument(format!("config line {}: {msg}", line + 1))
}

pub fn load(path: &Path, settings: &mut Settings) -> Result<(), Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    apply(&text, settings)
}
