//! Run configuration: flag/file merging, defaults, and invariant checks.
//!
//! Every parameter can come from the command line or from a line-oriented
//! `key=value` file passed with `--config`; flags win over file entries.
//! All violations surface as a [`ConfigError`] naming the offending field.

use std::fmt;
use std::fs;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum ConfigError {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{field}: required for this invocation but not set")]
    Missing { field: String },
    #[error("config file {path}: {message}")]
    File { path: String, message: String },
}

impl ConfigError {
    fn invalid(field: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn missing(field: &str) -> Self {
        ConfigError::Missing {
            field: field.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    PacsSensitivity,
    CsSensitivity,
    SsSensitivity,
    RatioCs,
    RatioSs,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "pacs-sensitivity" => Ok(Mode::PacsSensitivity),
            "cs-sensitivity" => Ok(Mode::CsSensitivity),
            "ss-sensitivity" => Ok(Mode::SsSensitivity),
            "ratio-cs" => Ok(Mode::RatioCs),
            "ratio-ss" => Ok(Mode::RatioSs),
            other => Err(ConfigError::invalid(
                "mode",
                format!(
                    "unknown mode '{other}' (expected pacs-sensitivity, cs-sensitivity, \
                     ss-sensitivity, ratio-cs or ratio-ss)"
                ),
            )),
        }
    }

    /// Does the mode involve the photon-addition count at all?
    pub fn uses_m(&self) -> bool {
        !matches!(self, Mode::CsSensitivity | Mode::SsSensitivity)
    }

    pub fn result_column(&self) -> &'static str {
        match self {
            Mode::PacsSensitivity | Mode::CsSensitivity | Mode::SsSensitivity => "sensitivity",
            Mode::RatioCs | Mode::RatioSs => "ratio",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mode::PacsSensitivity => "pacs-sensitivity",
            Mode::CsSensitivity => "cs-sensitivity",
            Mode::SsSensitivity => "ss-sensitivity",
            Mode::RatioCs => "ratio-cs",
            Mode::RatioSs => "ratio-ss",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVar {
    Phi,
    Gamma,
    M,
    Alpha,
    Y,
}

impl SweepVar {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "phi" => Ok(SweepVar::Phi),
            "gamma" => Ok(SweepVar::Gamma),
            "m" => Ok(SweepVar::M),
            "alpha" => Ok(SweepVar::Alpha),
            "y" => Ok(SweepVar::Y),
            other => Err(ConfigError::invalid(
                "var",
                format!("unknown sweep variable '{other}' (expected phi, gamma, m, alpha or y)"),
            )),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SweepVar::Phi => "phi",
            SweepVar::Gamma => "gamma",
            SweepVar::M => "m",
            SweepVar::Alpha => "alpha",
            SweepVar::Y => "y",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(ConfigError::invalid(
                "format",
                format!("unknown format '{other}' (expected csv or json)"),
            )),
        }
    }
}

/// Values held fixed while one variable sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedParams {
    pub m: u32,
    pub alpha: f64,
    pub y: f64,
    pub gamma: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    pub var: SweepVar,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub fixed: FixedParams,
    pub format: OutputFormat,
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeConfig {
    pub mode: Mode,
    pub bracket: (f64, f64),
    pub fixed: FixedParams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateConfig {
    pub max_m: u32,
    pub alphas: Vec<f64>,
    pub dim: usize,
}

/// Options as they arrive from flags, before file merging and defaulting.
#[derive(Debug, Clone, Default)]
pub struct RawOptions {
    pub mode: Option<String>,
    pub var: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub steps: Option<usize>,
    pub m: Option<u32>,
    pub alpha: Option<f64>,
    pub y: Option<f64>,
    pub gamma: Option<f64>,
    pub phi: Option<f64>,
    pub format: Option<String>,
    pub threads: Option<usize>,
}

impl RawOptions {
    /// Fills unset fields from a `key=value` file. Blank lines and lines
    /// starting with `#` are skipped; unknown keys are rejected.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text = fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::File {
                path: path.display().to_string(),
                message: format!("line {}: expected key=value, got '{line}'", lineno + 1),
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "mode" => fill(&mut self.mode, value.to_string()),
                "var" => fill(&mut self.var, value.to_string()),
                "from" => fill(&mut self.from, parse_num(key, value)?),
                "to" => fill(&mut self.to, parse_num(key, value)?),
                "steps" => fill(&mut self.steps, parse_int(key, value)?),
                "m" => fill(&mut self.m, parse_int(key, value)?),
                "alpha" => fill(&mut self.alpha, parse_num(key, value)?),
                "y" => fill(&mut self.y, parse_num(key, value)?),
                "gamma" => fill(&mut self.gamma, parse_num(key, value)?),
                "phi" => fill(&mut self.phi, parse_num(key, value)?),
                "format" => fill(&mut self.format, value.to_string()),
                "threads" => fill(&mut self.threads, parse_int(key, value)?),
                other => {
                    return Err(ConfigError::File {
                        path: path.display().to_string(),
                        message: format!("line {}: unknown key '{other}'", lineno + 1),
                    })
                }
            }
        }
        Ok(())
    }

    pub fn into_sweep(self) -> Result<SweepConfig, ConfigError> {
        let mode = Mode::parse(
            self.mode
                .as_deref()
                .ok_or_else(|| ConfigError::missing("mode"))?,
        )?;
        let var = match self.var.as_deref() {
            Some(v) => SweepVar::parse(v)?,
            None => SweepVar::Phi,
        };

        // the phi axis has a documented default range; all others must be
        // given explicitly
        let (from, to, steps) = match (self.from, self.to, self.steps, var) {
            (None, None, None, SweepVar::Phi) => (0.0, 2.0 * std::f64::consts::PI, 2001),
            (f, t, s, _) => (
                f.ok_or_else(|| ConfigError::missing("from"))?,
                t.ok_or_else(|| ConfigError::missing("to"))?,
                s.unwrap_or(2001),
            ),
        };

        let fixed = FixedParams {
            m: self.m.unwrap_or(0),
            alpha: self.alpha.unwrap_or(1.0),
            y: self.y.unwrap_or(1.0),
            gamma: self.gamma.unwrap_or(1.0),
            phi: self.phi.unwrap_or(std::f64::consts::FRAC_PI_4),
        };
        let format = match self.format.as_deref() {
            Some(f) => OutputFormat::parse(f)?,
            None => OutputFormat::Csv,
        };

        let config = SweepConfig {
            mode,
            var,
            from,
            to,
            steps,
            fixed,
            format,
            threads: self.threads,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn into_optimize(self) -> Result<OptimizeConfig, ConfigError> {
        let mode = Mode::parse(
            self.mode
                .as_deref()
                .ok_or_else(|| ConfigError::missing("mode"))?,
        )?;
        if !matches!(mode, Mode::RatioCs | Mode::RatioSs) {
            return Err(ConfigError::invalid(
                "mode",
                format!("optimize supports ratio-cs and ratio-ss, got '{mode}'"),
            ));
        }
        let lo = self.from.ok_or_else(|| ConfigError::missing("from"))?;
        let hi = self.to.ok_or_else(|| ConfigError::missing("to"))?;
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(ConfigError::invalid(
                "from",
                format!("bracket [{lo}, {hi}] must be finite with from < to"),
            ));
        }
        if hi - lo > 2.0 * std::f64::consts::PI {
            return Err(ConfigError::invalid(
                "to",
                "bracket must not exceed one period (2 pi)",
            ));
        }
        let fixed = FixedParams {
            m: self.m.unwrap_or(0),
            alpha: self.alpha.unwrap_or(1.0),
            y: self.y.unwrap_or(1.0),
            gamma: self.gamma.unwrap_or(1.0),
            phi: self.phi.unwrap_or(std::f64::consts::FRAC_PI_4),
        };
        check_fixed(&fixed, true)?;
        Ok(OptimizeConfig {
            mode,
            bracket: (lo, hi),
            fixed,
        })
    }
}

fn fill<T>(slot: &mut Option<T>, value: T) {
    if slot.is_none() {
        *slot = Some(value);
    }
}

fn parse_num(field: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse::<f64>()
        .map_err(|_| ConfigError::invalid(field, format!("cannot parse '{value}' as a number")))
}

fn parse_int<T: std::str::FromStr>(field: &str, value: &str) -> Result<T, ConfigError> {
    value
        .parse::<T>()
        .map_err(|_| ConfigError::invalid(field, format!("cannot parse '{value}' as an integer")))
}

fn check_fixed(fixed: &FixedParams, gamma_matters: bool) -> Result<(), ConfigError> {
    if !fixed.alpha.is_finite() {
        return Err(ConfigError::invalid("alpha", "must be finite"));
    }
    if !fixed.y.is_finite() {
        return Err(ConfigError::invalid("y", "must be finite"));
    }
    if !fixed.phi.is_finite() {
        return Err(ConfigError::invalid("phi", "must be finite"));
    }
    if gamma_matters && !(fixed.gamma > 0.0 && fixed.gamma <= 1.0) {
        return Err(ConfigError::invalid(
            "gamma",
            format!("must lie in (0, 1], got {}", fixed.gamma),
        ));
    }
    Ok(())
}

impl SweepConfig {
    fn validate(&self) -> Result<(), ConfigError> {
        if self.steps < 2 {
            return Err(ConfigError::invalid(
                "steps",
                format!("need at least 2 grid points, got {}", self.steps),
            ));
        }
        if !self.from.is_finite() || !self.to.is_finite() || self.from >= self.to {
            return Err(ConfigError::invalid(
                "from",
                format!(
                    "range [{}, {}] must be finite with from < to",
                    self.from, self.to
                ),
            ));
        }
        if self.var == SweepVar::M && !self.mode.uses_m() {
            return Err(ConfigError::invalid(
                "var",
                format!("mode '{}' has no photon-addition count to sweep", self.mode),
            ));
        }
        check_fixed(&self.fixed, self.var != SweepVar::Gamma)?;
        match self.var {
            SweepVar::Gamma => {
                if self.from <= 0.0 {
                    return Err(ConfigError::invalid(
                        "from",
                        "transmissivity sweep must start above 0",
                    ));
                }
                if self.to > 1.0 {
                    return Err(ConfigError::invalid(
                        "to",
                        "transmissivity sweep must end at or below 1",
                    ));
                }
            }
            SweepVar::M => {
                if self.from < 0.0 {
                    return Err(ConfigError::invalid("from", "m sweep must start at >= 0"));
                }
                for k in 0..self.steps {
                    let v = grid_value(self.from, self.to, self.steps, k);
                    if (v - v.round()).abs() > 1e-6 {
                        return Err(ConfigError::invalid(
                            "steps",
                            format!(
                                "m sweep grid must land on integers; point {k} is {v} \
                                 (use steps = to - from + 1)"
                            ),
                        ));
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

/// `k`-th point of the `steps`-point uniform grid on `[from, to]`; the last
/// point is exactly `to`.
pub fn grid_value(from: f64, to: f64, steps: usize, k: usize) -> f64 {
    if k + 1 == steps {
        to
    } else {
        from + k as f64 * ((to - from) / (steps - 1) as f64)
    }
}

pub fn validate_config(
    max_m: u32,
    alphas: Vec<f64>,
    dim: usize,
) -> Result<ValidateConfig, ConfigError> {
    if alphas.is_empty() {
        return Err(ConfigError::invalid(
            "alphas",
            "need at least one amplitude",
        ));
    }
    if let Some(bad) = alphas.iter().find(|a| !a.is_finite()) {
        return Err(ConfigError::invalid(
            "alphas",
            format!("amplitude {bad} not finite"),
        ));
    }
    if dim < 2 {
        return Err(ConfigError::invalid(
            "dim",
            "truncation needs at least 2 states",
        ));
    }
    Ok(ValidateConfig { max_m, alphas, dim })
}
