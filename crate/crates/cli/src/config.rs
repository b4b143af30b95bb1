//! Flat dotted key = value run configuration.
//!
//! The format is deliberately minimal: one `section.key = value` pair per
//! line, `#` comments, no nesting. Every key is validated against the
//! schema for the selected task; unknown keys are rejected, and all
//! problems are reported together rather than one at a time.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

/// One parse/validation problem, tagged with the line it came from when
/// there is one.
#[derive(Debug, Clone)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Raw key-value view of a config file with typed, error-collecting
/// accessors. Keys are consumed as they are read; whatever is left at
/// `finish` is unknown.
pub struct ConfigMap {
    entries: BTreeMap<String, (usize, String)>,
    used: BTreeSet<String>,
    errors: Vec<ConfigError>,
}

impl ConfigMap {
    pub fn parse(text: &str) -> Self {
        let mut entries = BTreeMap::new();
        let mut errors = Vec::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                errors.push(ConfigError {
                    line: Some(line_no),
                    message: format!("expected `key = value`, got `{line}`"),
                });
                continue;
            };
            let key = key.trim().to_string();
            let value = value.trim().to_string();
            if key.is_empty() {
                errors.push(ConfigError {
                    line: Some(line_no),
                    message: "empty key".into(),
                });
                continue;
            }
            if entries.insert(key.clone(), (line_no, value)).is_some() {
                errors.push(ConfigError {
                    line: Some(line_no),
                    message: format!("duplicate key `{key}`"),
                });
            }
        }
        Self {
            entries,
            used: BTreeSet::new(),
            errors,
        }
    }

    pub fn error(&mut self, key: &str, message: String) {
        let line = self.entries.get(key).map(|&(n, _)| n);
        self.errors.push(ConfigError { line, message });
    }

    fn take_raw(&mut self, key: &str) -> Option<(usize, String)> {
        self.used.insert(key.to_string());
        self.entries.get(key).cloned()
    }

    pub fn has(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn take_str(&mut self, key: &str, default: &str) -> String {
        match self.take_raw(key) {
            Some((_, v)) => v,
            None => default.to_string(),
        }
    }

    pub fn take_required_str(&mut self, key: &str) -> Option<String> {
        match self.take_raw(key) {
            Some((_, v)) => Some(v),
            None => {
                self.errors.push(ConfigError {
                    line: None,
                    message: format!("missing required key `{key}`"),
                });
                None
            }
        }
    }

    pub fn take_f64(&mut self, key: &str, default: f64) -> f64 {
        match self.take_raw(key) {
            Some((line, v)) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => x,
                _ => {
                    self.errors.push(ConfigError {
                        line: Some(line),
                        message: format!("`{key}` must be a finite number, got `{v}`"),
                    });
                    default
                }
            },
            None => default,
        }
    }

    pub fn take_usize(&mut self, key: &str, default: usize) -> usize {
        match self.take_raw(key) {
            Some((line, v)) => match v.parse::<usize>() {
                Ok(x) => x,
                Err(_) => {
                    self.errors.push(ConfigError {
                        line: Some(line),
                        message: format!("`{key}` must be a non-negative integer, got `{v}`"),
                    });
                    default
                }
            },
            None => default,
        }
    }

    /// Echo of every key = value pair for the manifest.
    pub fn echo(&self) -> BTreeMap<String, String> {
        self.entries
            .iter()
            .map(|(k, (_, v))| (k.clone(), v.clone()))
            .collect()
    }

    /// Flag unknown keys and hand back everything collected.
    pub fn finish(mut self) -> Vec<ConfigError> {
        for (key, (line, _)) in &self.entries {
            if !self.used.contains(key) {
                self.errors.push(ConfigError {
                    line: Some(*line),
                    message: format!("unknown key `{key}`"),
                });
            }
        }
        self.errors
            .sort_by_key(|e| (e.line.unwrap_or(usize::MAX), e.message.clone()));
        self.errors
    }
}

/// Model family plus its named parameters, straight from the config.
#[derive(Debug, Clone)]
pub enum ModelSpec {
    Lkc { u: f64, j: f64, delta: f64, v: f64 },
    NnnLkc { u: f64, j1: f64, j2: f64, delta1: f64, delta2: f64, v: f64 },
    Nrssh { j1: f64, j2: f64, gamma: f64 },
}

impl ModelSpec {
    /// Read `model.*` keys; records errors instead of failing fast.
    pub fn from_config(cfg: &mut ConfigMap) -> Option<Self> {
        let family = cfg.take_required_str("model.family")?;
        match family.as_str() {
            "lkc" => Some(ModelSpec::Lkc {
                u: cfg.take_f64("model.u", 0.0),
                j: cfg.take_f64("model.j", 1.0),
                delta: cfg.take_f64("model.delta", 1.0),
                v: cfg.take_f64("model.v", 0.0),
            }),
            "nnn-lkc" => Some(ModelSpec::NnnLkc {
                u: cfg.take_f64("model.u", 0.0),
                j1: cfg.take_f64("model.j1", 1.0),
                j2: cfg.take_f64("model.j2", 0.0),
                delta1: cfg.take_f64("model.delta1", 1.0),
                delta2: cfg.take_f64("model.delta2", 0.0),
                v: cfg.take_f64("model.v", 0.0),
            }),
            "nrssh" => Some(ModelSpec::Nrssh {
                j1: cfg.take_f64("model.j1", 1.0),
                j2: cfg.take_f64("model.j2", 0.5),
                gamma: cfg.take_f64("model.gamma", 0.2),
            }),
            other => {
                cfg.error(
                    "model.family",
                    format!("unknown model family `{other}` (expected lkc, nnn-lkc, or nrssh)"),
                );
                None
            }
        }
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            ModelSpec::Lkc { .. } => &["u", "j", "delta", "v"],
            ModelSpec::NnnLkc { .. } => &["u", "j1", "j2", "delta1", "delta2", "v"],
            ModelSpec::Nrssh { .. } => &["j1", "j2", "gamma"],
        }
    }

    /// Copy of this spec with one named parameter replaced.
    pub fn with_param(&self, name: &str, value: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            ModelSpec::Lkc { u, j, delta, v } => match name {
                "u" => *u = value,
                "j" => *j = value,
                "delta" => *delta = value,
                "v" => *v = value,
                _ => unreachable!("validated parameter name"),
            },
            ModelSpec::NnnLkc {
                u,
                j1,
                j2,
                delta1,
                delta2,
                v,
            } => match name {
                "u" => *u = value,
                "j1" => *j1 = value,
                "j2" => *j2 = value,
                "delta1" => *delta1 = value,
                "delta2" => *delta2 = value,
                "v" => *v = value,
                _ => unreachable!("validated parameter name"),
            },
            ModelSpec::Nrssh { j1, j2, gamma } => match name {
                "j1" => *j1 = value,
                "j2" => *j2 = value,
                "gamma" => *gamma = value,
                _ => unreachable!("validated parameter name"),
            },
        }
        out
    }

    pub fn build(&self) -> nhband::Result<nhband::ChiralTwoBandModel> {
        match *self {
            ModelSpec::Lkc { u, j, delta, v } => {
                Ok(nhband::build_lkc(nhband::ModelParamsLkc { u, j, delta, v }))
            }
            ModelSpec::NnnLkc {
                u,
                j1,
                j2,
                delta1,
                delta2,
                v,
            } => Ok(nhband::build_nnn_lkc(nhband::ModelParamsNnnLkc {
                u,
                j1,
                j2,
                delta1,
                delta2,
                v,
            })),
            ModelSpec::Nrssh { j1, j2, gamma } => {
                nhband::build_nrssh(nhband::ModelParamsNrssh { j1, j2, gamma })
            }
        }
    }
}

/// Uniform time grid for quench / order-parameter series.
#[derive(Debug, Clone, Copy)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl TimeGrid {
    pub fn from_config(cfg: &mut ConfigMap, default_stop: f64, default_step: f64) -> Self {
        let grid = Self {
            start: cfg.take_f64("time.start", 0.0),
            stop: cfg.take_f64("time.stop", default_stop),
            step: cfg.take_f64("time.step", default_step),
        };
        if grid.step <= 0.0 {
            cfg.error("time.step", format!("`time.step` must be > 0, got {}", grid.step));
        } else if grid.stop <= grid.start {
            cfg.error(
                "time.stop",
                format!(
                    "`time.stop` ({}) must exceed `time.start` ({})",
                    grid.stop, grid.start
                ),
            );
        } else if grid.points() < 2 {
            cfg.error("time.step", "time grid needs at least 2 points".into());
        }
        grid
    }

    pub fn points(&self) -> usize {
        ((self.stop - self.start) / self.step).floor() as usize + 1
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points())
            .map(|i| self.start + i as f64 * self.step)
            .collect()
    }
}

/// One sweep axis of a phase diagram.
pub fn axis_from_config(cfg: &mut ConfigMap, section: &str, names: &[&str]) -> Option<nhband::AxisSpec> {
    let param = cfg.take_required_str(&format!("{section}.param"))?;
    if !names.contains(&param.as_str()) {
        cfg.error(
            &format!("{section}.param"),
            format!("`{param}` is not a parameter of this model family (expected one of {names:?})"),
        );
        return None;
    }
    let start = cfg.take_f64(&format!("{section}.start"), 0.0);
    let stop = cfg.take_f64(&format!("{section}.stop"), 1.0);
    let steps = cfg.take_usize(&format!("{section}.steps"), 2);
    if steps < 2 {
        cfg.error(
            &format!("{section}.steps"),
            format!("`{section}.steps` must be >= 2, got {steps}"),
        );
        return None;
    }
    Some(nhband::AxisSpec {
        name: param,
        start,
        stop,
        steps,
    })
}
