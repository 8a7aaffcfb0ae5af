//! Flat `key = value` files overriding numerical defaults.

use std::fs;
use std::path::Path;

use gausscoh::fock::TruncationSpec;
use gausscoh::OptimizerOptions;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Settings {
    pub optimizer: OptimizerOptions,
    pub truncation: TruncationSpec,
}

impl Settings {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// Blank lines and lines starting with `#` are ignored. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| format!("config line {}: {key}: {e}", lineno + 1);
            let real = || value.parse::<f64>().map_err(|e| bad(&e));
            let int = || value.parse::<usize>().map_err(|e| bad(&e));
            match key {
                "grid_lo" => s.optimizer.grid_lo = real()?,
                "grid_hi" => s.optimizer.grid_hi = real()?,
                "points_per_decade" => s.optimizer.points_per_decade = int()?,
                "value_tol" => s.optimizer.value_tol = real()?,
                "domain_tol" => s.optimizer.domain_tol = real()?,
                "max_iters" => s.optimizer.max_iters = int()?,
                "dim" => s.truncation.dim = int()?,
                "tail_tol" => s.truncation.tail_tol = real()?,
                _ => return Err(format!("config line {}: unknown key `{key}`", lineno + 1)),
            }
        }
        s.optimizer.validate().map_err(|e| e.to_string())?;
        s.truncation.validate().map_err(|e| e.to_string())?;
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_and_comments() {
        let s = Settings::parse("# tolerances\n\ngrid_hi = 1e9\nmax_iters=50\n  dim = 64 \n").unwrap();
        assert_eq!(s.optimizer.grid_hi, 1e9);
        assert_eq!(s.optimizer.max_iters, 50);
        assert_eq!(s.optimizer.grid_lo, OptimizerOptions::default().grid_lo);
        assert_eq!(s.truncation.dim, 64);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Settings::parse("grid_hi 1e9").is_err());
        assert!(Settings::parse("grid_top = 1").is_err());
        assert!(Settings::parse("dim = -3").is_err());
        assert!(Settings::parse("grid_lo = 5\ngrid_hi = 1").is_err());
        assert!(Settings::parse("dim = 2").is_err());
    }
}
