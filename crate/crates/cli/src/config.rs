//! Flat `key = value` run configuration.
//!
//! ```text
//! dimension = 1
//! radius = 2
//! system = normalized
//! dt = 1e-3
//! steps = 5000
//! s_list = 0.5, 1
//! seed = 7
//! out = run.csv
//! # optional explicit initial data, one block per mode
//! init_mode = 1
//! init_re = 0.004
//! init_im = -0.001
//! ```
//!
//! Without `init_mode` blocks the initial state is drawn from `seed` with
//! `m1`-norm `amplitude`.

use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::Arc;

use kirchhoff_nf::functional::RegularityParams;
use kirchhoff_nf::integrate::System;
use kirchhoff_nf::sample::Sampler;
use kirchhoff_nf::{FieldPair, ModeIndex, ModeSet, SpectralField};
use num_complex::Complex64;

use crate::CliError;

/// Largest simulated time span `dt * steps`.
pub const MAX_HORIZON: f64 = 1e6;

#[derive(Clone, Debug, PartialEq)]
pub struct InitialMode {
    pub mode: Vec<i64>,
    pub value: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimulationConfig {
    pub dimension: usize,
    pub radius: f64,
    pub system: System,
    pub dt: f64,
    pub steps: usize,
    pub s_list: Vec<f64>,
    pub delta: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub init: Vec<InitialMode>,
    /// `m1`-norm of random initial data.
    pub amplitude: f64,
    /// Steps between written rows.
    pub sample_every: usize,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            dimension: 1,
            radius: 2.0,
            system: System::Normalized,
            dt: 1e-3,
            steps: 1000,
            s_list: vec![0.5, 1.0],
            delta: kirchhoff_nf::functional::DEFAULT_DELTA,
            seed: 0,
            out: None,
            init: Vec::new(),
            amplitude: 1e-2,
            sample_every: 1,
        }
    }
}

/// `line` 0 marks errors not tied to one line.
fn bad(line: usize, msg: impl Into<String>) -> CliError {
    let msg = msg.into();
    CliError::Config(if line == 0 { msg } else { format!("line {line}: {msg}") })
}

fn number<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T, CliError> {
    v.parse().map_err(|_| bad(line, format!("{key}: cannot parse {v:?}")))
}

fn list<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<Vec<T>, CliError> {
    v.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()).map(|s| number(line, key, s)).collect()
}

impl SimulationConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        let mut seen = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let n = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| bad(n, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            let repeatable = key.starts_with("init_");
            if !repeatable && !seen.insert(key.to_string()) {
                return Err(bad(n, format!("{key} given twice")));
            }
            match key {
                "dimension" => cfg.dimension = number(n, key, value)?,
                "radius" => cfg.radius = number(n, key, value)?,
                "system" => cfg.system = value.parse().map_err(|e| bad(n, format!("{e}")))?,
                "dt" => cfg.dt = number(n, key, value)?,
                "steps" => cfg.steps = number(n, key, value)?,
                "s_list" => cfg.s_list = list(n, key, value)?,
                "delta" => cfg.delta = number(n, key, value)?,
                "seed" => cfg.seed = number(n, key, value)?,
                "out" => cfg.out = Some(PathBuf::from(value)),
                "amplitude" => cfg.amplitude = number(n, key, value)?,
                "sample_every" => cfg.sample_every = number(n, key, value)?,
                "init_mode" => cfg.init.push(InitialMode { mode: list(n, key, value)?, value: Complex64::new(0.0, 0.0) }),
                "init_re" | "init_im" => {
                    let x: f64 = number(n, key, value)?;
                    let block = cfg.init.last_mut().ok_or_else(|| bad(n, format!("{key} before any init_mode")))?;
                    if key == "init_re" {
                        block.value.re = x;
                    } else {
                        block.value.im = x;
                    }
                }
                other => return Err(bad(n, format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let fail = |msg: String| Err(bad(0, msg));
        if !(1..=3).contains(&self.dimension) {
            return fail(format!("dimension {} not in 1..=3", self.dimension));
        }
        if !(self.radius >= 1.0 && self.radius.is_finite()) {
            return fail(format!("radius {} must be at least 1", self.radius));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return fail(format!("dt {} must be positive", self.dt));
        }
        if self.steps == 0 {
            return fail("steps must be positive".into());
        }
        if !(self.dt * self.steps as f64 <= MAX_HORIZON) {
            return fail(format!("dt * steps exceeds {MAX_HORIZON}"));
        }
        if self.s_list.is_empty() || self.s_list.iter().any(|s| !s.is_finite()) {
            return fail("s_list needs at least one finite value".into());
        }
        if !(self.delta > 0.0) {
            return fail(format!("delta {} must be positive", self.delta));
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return fail(format!("amplitude {} must be nonnegative", self.amplitude));
        }
        if self.sample_every == 0 {
            return fail("sample_every must be positive".into());
        }
        for m in &self.init {
            if m.mode.len() != self.dimension {
                return fail(format!("init_mode {:?} does not have {} components", m.mode, self.dimension));
            }
            if !(m.value.re.is_finite() && m.value.im.is_finite()) {
                return fail(format!("init value at {:?} is not finite", m.mode));
            }
        }
        Ok(())
    }

    pub fn regularity(&self) -> RegularityParams {
        RegularityParams::for_dimension(self.dimension).expect("validated dimension").with_delta(self.delta)
    }

    pub fn modes(&self) -> Result<Arc<ModeSet>, CliError> {
        Ok(ModeSet::ball(self.dimension, self.radius)?)
    }

    /// First component of the initial conjugate pair on `modes`.
    pub fn initial_first(&self, modes: &Arc<ModeSet>) -> Result<SpectralField, CliError> {
        if self.init.is_empty() {
            let s = self.regularity().m1;
            return Ok(Sampler::new(self.seed).complex_field(modes, s, self.amplitude));
        }
        let mut f = SpectralField::zeros(modes);
        for m in &self.init {
            let k = ModeIndex::new(&m.mode).map_err(|e| bad(0, e.to_string()))?;
            f.set(&k, m.value).map_err(|_| bad(0, format!("init_mode {:?} lies outside radius {}", m.mode, self.radius)))?;
        }
        Ok(f)
    }

    pub fn initial_pair(&self, modes: &Arc<ModeSet>) -> Result<FieldPair, CliError> {
        Ok(FieldPair::conjugate(self.initial_first(modes)?))
    }
}
