//! Plain-text `key = value` configuration.
//!
//! Blank lines and lines starting with `#` are ignored. Unknown keys are
//! rejected, and every value is checked against the preconditions of the
//! computation that consumes it.

use std::path::{Path, PathBuf};

use thurston_core::envelope::{default_epsilon, uniform_steps, SweepGrid};
use thurston_core::stretch::FNPoint;
use thurston_core::torus::DEFAULT_MAX_Q;

use crate::KitError;

pub const CONFIG_ENV: &str = "THURSTON_KIT_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Residual tolerance for oracle comparisons.
    pub tol: f64,
    pub epsilon: f64,
    pub max_q: u32,
    pub sweep_l0: Vec<f64>,
    pub sweep_t_max: f64,
    pub sweep_t_step: f64,
    pub base_lengths: [f64; 3],
    pub base_twists: [f64; 3],
    pub out: PathBuf,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            epsilon: default_epsilon(),
            max_q: DEFAULT_MAX_Q,
            sweep_l0: vec![0.1, 0.5, 1.0, 2.0, 5.0],
            sweep_t_max: 12.0,
            sweep_t_step: 0.25,
            base_lengths: [1.0; 3],
            base_twists: [0.0; 3],
            out: PathBuf::from("out"),
        }
    }
}

fn bad(key: &str, msg: impl std::fmt::Display) -> KitError {
    KitError::Config(format!("{key}: {msg}"))
}

fn parse_f64(key: &str, v: &str) -> Result<f64, KitError> {
    let x: f64 = v.parse().map_err(|_| bad(key, format!("not a number: {v:?}")))?;
    if !x.is_finite() {
        return Err(bad(key, "must be finite"));
    }
    Ok(x)
}

pub fn parse_list(key: &str, v: &str) -> Result<Vec<f64>, KitError> {
    v.split(',').map(|s| parse_f64(key, s.trim())).collect()
}

pub fn parse_triple(key: &str, v: &str) -> Result<[f64; 3], KitError> {
    let xs = parse_list(key, v)?;
    xs.try_into().map_err(|_| bad(key, "expected three comma-separated values"))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, KitError> {
        let mut c = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| KitError::Config(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k {
                "tol" => c.tol = parse_f64(k, v)?,
                "epsilon" => c.epsilon = parse_f64(k, v)?,
                "max_q" => c.max_q = v.parse().map_err(|_| bad(k, "not a positive integer"))?,
                "sweep_l0" => c.sweep_l0 = parse_list(k, v)?,
                "sweep_t_max" => c.sweep_t_max = parse_f64(k, v)?,
                "sweep_t_step" => c.sweep_t_step = parse_f64(k, v)?,
                "base_lengths" => c.base_lengths = parse_triple(k, v)?,
                "base_twists" => c.base_twists = parse_triple(k, v)?,
                "out" => c.out = PathBuf::from(v),
                _ => return Err(KitError::Config(format!("line {}: unknown key {k:?}", n + 1))),
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, KitError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| KitError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Explicit path if given, else `$THURSTON_KIT_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self, KitError> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn validate(&self) -> Result<(), KitError> {
        if !(self.tol > 0.0) {
            return Err(bad("tol", "must be positive"));
        }
        if !(self.sweep_t_step > 0.0) || !(self.sweep_t_max >= 0.0) {
            return Err(bad("sweep_t_step", "need t_step > 0 and t_max >= 0"));
        }
        self.sweep_grid()?;
        self.base_point()?;
        Ok(())
    }

    pub fn sweep_grid(&self) -> Result<SweepGrid, KitError> {
        SweepGrid::new(
            self.sweep_l0.clone(),
            uniform_steps(self.sweep_t_max, self.sweep_t_step),
            self.epsilon,
            self.max_q,
        )
        .map_err(|e| KitError::Config(format!("sweep grid: {e}")))
    }

    pub fn base_point(&self) -> Result<FNPoint, KitError> {
        FNPoint::s2(self.base_lengths, self.base_twists)
            .map_err(|e| KitError::Config(format!("base point: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_defaults() {
        let c = Config::parse("# comment\n\nmax_q = 12\nsweep_l0 = 0.5, 1\nout=/tmp/x\n").unwrap();
        assert_eq!(c.max_q, 12);
        assert_eq!(c.sweep_l0, [0.5, 1.0]);
        assert_eq!(c.out, PathBuf::from("/tmp/x"));
        assert_eq!(c.epsilon, 0.3);
    }

    #[test]
    fn rejects_unknown_and_invalid() {
        assert!(matches!(Config::parse("colour = red"), Err(KitError::Config(_))));
        assert!(Config::parse("epsilon = 0.9").is_err());
        assert!(Config::parse("sweep_l0 = 2, 1").is_err());
        assert!(Config::parse("base_lengths = 1, 0, 1").is_err());
        assert!(Config::parse("max_q = 0").is_err());
        assert!(Config::parse("tol").is_err());
    }
}
