//! Flat `key = value` scenario files.
//!
//! ```text
//! # two-state problem
//! scenario = riemann
//! f_left = 1.24
//! ...
//! ```
//!
//! Blank lines and `#` comments are ignored. Unknown keys are errors.

use std::collections::BTreeMap;
use std::fmt;

use thinfilm_core::fvm::{Grid1D, Scheme, SchemeConfig, DEFAULT_CFL, DEFAULT_X_MAX, DEFAULT_X_MIN};
use thinfilm_core::{AdmissibilityLevel, State, DEFAULT_HYPERBOLICITY_MARGIN};

pub const DEFAULT_CELLS: usize = 320;
pub const DEFAULT_T_END: f64 = 1.0;
pub const DEFAULT_CONVERGENCE_CELLS: [usize; 4] = [160, 320, 640, 1280];
pub const DEFAULT_CHECK_SAMPLES: usize = 1000;
pub const DEFAULT_SEED: u64 = 1;

const COMPONENTS: [&str; 4] = ["f", "b", "g", "q"];

const SCALAR_KEYS: &[&str] = &[
    "scenario",
    "cells",
    "cfl",
    "scheme",
    "t_end",
    "out",
    "x_min",
    "x_max",
    "dump_interval",
    "convergence_cells",
    "samples",
    "seed",
    "center",
    "width",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// `base + amp * exp(-((x - center) / width)^2)` per component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpProfile {
    pub base: State,
    pub amp: [f64; 4],
    pub center: f64,
    pub width: f64,
}

impl BumpProfile {
    pub fn eval(&self, x: f64) -> State {
        let d = (x - self.center) / self.width;
        let e = (-d * d).exp();
        let base = self.base.to_array();
        State::from_array(std::array::from_fn(|k| base[k] + self.amp[k] * e))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScenarioKind {
    Riemann { left: State, right: State },
    Gaussian,
    Custom(BumpProfile),
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Riemann { .. } => "riemann",
            ScenarioKind::Gaussian => "gaussian",
            ScenarioKind::Custom(_) => "custom",
        }
    }

    pub fn initial(&self, x: f64) -> State {
        match self {
            ScenarioKind::Riemann { left, right } => {
                if x < 0.0 {
                    *left
                } else {
                    *right
                }
            }
            ScenarioKind::Gaussian => thinfilm_core::fvm::gaussian_initial(x),
            ScenarioKind::Custom(p) => p.eval(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub grid: Grid1D,
    pub scheme: SchemeConfig,
    pub out: Option<String>,
    pub dump_interval: Option<f64>,
    pub convergence_cells: Vec<usize>,
    pub samples: usize,
    pub seed: u64,
    pub warnings: Vec<String>,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<String>,
    pub scheme: Option<Scheme>,
    pub cells: Option<usize>,
    pub t_end: Option<f64>,
    pub cfl: Option<f64>,
}

struct Entries {
    values: BTreeMap<String, (usize, String)>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::at(
                    line,
                    format!("expected key = value, got '{content}'"),
                ));
            };
            let key = key.trim().to_ascii_lowercase();
            let value = value.trim().to_string();
            if !is_known_key(&key) {
                return Err(ConfigError::at(line, format!("unknown key '{key}'")));
            }
            if value.is_empty() {
                return Err(ConfigError::at(line, format!("empty value for '{key}'")));
            }
            if let Some((first, _)) = values.insert(key.clone(), (line, value)) {
                return Err(ConfigError::at(
                    line,
                    format!("duplicate key '{key}' (first set on line {first})"),
                ));
            }
        }
        Ok(Self { values })
    }

    fn line(&self, key: &str) -> Option<usize> {
        self.values.get(key).map(|(l, _)| *l)
    }

    fn str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(_, v)| v.as_str())
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.values.get(key) {
            None => Ok(None),
            Some((line, v)) => v.parse::<T>().map(Some).map_err(|_| {
                ConfigError::at(*line, format!("'{key}' expects a number, got '{v}'"))
            }),
        }
    }

    fn finite(&self, key: &str) -> Result<Option<f64>, ConfigError> {
        let v: Option<f64> = self.number(key)?;
        if let Some(x) = v {
            if !x.is_finite() {
                return Err(ConfigError::at(
                    self.line(key).unwrap(),
                    format!("'{key}' must be finite"),
                ));
            }
        }
        Ok(v)
    }

    /// Four components `{f,b,g,q}_{suffix}` with their lines; also returns
    /// the missing keys.
    #[allow(clippy::type_complexity)]
    fn state(
        &self,
        suffix: &str,
    ) -> Result<(Option<[f64; 4]>, Vec<String>, [usize; 4]), ConfigError> {
        let mut out = [0.0; 4];
        let mut missing = Vec::new();
        let mut lines = [0; 4];
        for (k, c) in COMPONENTS.iter().enumerate() {
            let key = format!("{c}_{suffix}");
            match self.finite(&key)? {
                Some(v) => {
                    out[k] = v;
                    lines[k] = self.line(&key).unwrap();
                }
                None => missing.push(key),
            }
        }
        Ok((missing.is_empty().then_some(out), missing, lines))
    }

    /// Suffixes of the per-component keys present, with their lines.
    fn component_suffixes(&self) -> impl Iterator<Item = (&str, usize)> {
        self.values.iter().filter_map(|(k, (l, _))| {
            k.split_once('_')
                .filter(|(c, _)| COMPONENTS.contains(c))
                .map(|(_, s)| (s, *l))
        })
    }
}

fn is_known_key(key: &str) -> bool {
    if SCALAR_KEYS.contains(&key) {
        return true;
    }
    match key.split_once('_') {
        Some((c, suffix)) => {
            COMPONENTS.contains(&c) && ["left", "right", "base", "amp"].contains(&suffix)
        }
        None => false,
    }
}

fn positive_state(
    a: [f64; 4],
    lines: [usize; 4],
    what: &str,
    warnings: &mut Vec<String>,
) -> Result<State, ConfigError> {
    let s = State::from_array(a);
    if !s.is_admissible(AdmissibilityLevel::Positive, 0.0) {
        let k = a.iter().position(|x| !(*x > 0.0)).unwrap_or(0);
        return Err(ConfigError::at(
            lines[k],
            format!("{what} state {a:?} is not positive"),
        ));
    }
    if !s.is_admissible(AdmissibilityLevel::Strict, DEFAULT_HYPERBOLICITY_MARGIN) {
        warnings.push(format!(
            "{what} state {a:?} is not strictly hyperbolic (gq - fb = {:.6e})",
            s.hyperbolicity_gap()
        ));
    }
    Ok(s)
}

pub fn parse_config(text: &str) -> Result<Scenario, ConfigError> {
    parse_config_with(text, &Overrides::default())
}

pub fn parse_config_with(text: &str, ov: &Overrides) -> Result<Scenario, ConfigError> {
    let e = Entries::parse(text)?;
    let mut warnings = Vec::new();

    let kind_name = e.str("scenario").unwrap_or("riemann").to_ascii_lowercase();
    let kind = match kind_name.as_str() {
        "riemann" => {
            let (l, mut missing, l_line) = e.state("left")?;
            let (r, missing_r, r_line) = e.state("right")?;
            missing.extend(missing_r);
            match (l, r) {
                (Some(l), Some(r)) => ScenarioKind::Riemann {
                    left: positive_state(l, l_line, "left", &mut warnings)?,
                    right: positive_state(r, r_line, "right", &mut warnings)?,
                },
                _ => {
                    return Err(ConfigError::general(format!(
                        "scenario riemann is missing keys: {}",
                        missing.join(", ")
                    )))
                }
            }
        }
        "gaussian" => ScenarioKind::Gaussian,
        "custom" => {
            let (base, missing, base_lines) = e.state("base")?;
            let Some(base) = base else {
                return Err(ConfigError::general(format!(
                    "scenario custom is missing keys: {}",
                    missing.join(", ")
                )));
            };
            let mut amp = [0.0; 4];
            for (k, c) in COMPONENTS.iter().enumerate() {
                amp[k] = e.finite(&format!("{c}_amp"))?.unwrap_or(0.0);
            }
            let width = e.finite("width")?.unwrap_or(1.0);
            if !(width > 0.0) {
                return Err(ConfigError::at(
                    e.line("width").unwrap(),
                    "width must be positive",
                ));
            }
            let lowest: [f64; 4] = std::array::from_fn(|k| base[k] + amp[k].min(0.0));
            positive_state(lowest, base_lines, "lowest profile", &mut Vec::new())?;
            ScenarioKind::Custom(BumpProfile {
                base: State::from_array(base),
                amp,
                center: e.finite("center")?.unwrap_or(5.0),
                width,
            })
        }
        other => {
            return Err(ConfigError::at(
                e.line("scenario").unwrap(),
                format!("unknown scenario '{other}' (expected riemann, gaussian or custom)"),
            ))
        }
    };
    for (suffix, line) in e.component_suffixes() {
        let used = match &kind {
            ScenarioKind::Riemann { .. } => matches!(suffix, "left" | "right"),
            ScenarioKind::Custom(_) => matches!(suffix, "base" | "amp"),
            ScenarioKind::Gaussian => false,
        };
        if !used {
            warnings.push(format!(
                "line {line}: key ignored by scenario {}",
                kind.name()
            ));
        }
    }
    if matches!(kind, ScenarioKind::Gaussian | ScenarioKind::Riemann { .. })
        && (e.line("center").is_some() || e.line("width").is_some())
    {
        warnings.push(format!(
            "center/width are ignored by scenario {}",
            kind.name()
        ));
    }

    let cells = match ov.cells {
        Some(n) => n,
        None => e.number::<usize>("cells")?.unwrap_or(DEFAULT_CELLS),
    };
    let x_min = e.finite("x_min")?.unwrap_or(DEFAULT_X_MIN);
    let x_max = e.finite("x_max")?.unwrap_or(DEFAULT_X_MAX);
    let grid = Grid1D::new(x_min, x_max, cells).map_err(|err| ConfigError {
        line: e
            .line("cells")
            .or(e.line("x_max"))
            .filter(|_| ov.cells.is_none()),
        message: err.to_string(),
    })?;

    let scheme = match ov.scheme {
        Some(s) => s,
        None => match e.str("scheme") {
            Some(v) => v
                .parse::<Scheme>()
                .map_err(|err| ConfigError::at(e.line("scheme").unwrap(), err.to_string()))?,
            None => Scheme::Godunov,
        },
    };
    let cfl = match ov.cfl {
        Some(c) => c,
        None => e.finite("cfl")?.unwrap_or(DEFAULT_CFL),
    };
    let t_end = match ov.t_end {
        Some(t) => t,
        None => e.finite("t_end")?.unwrap_or(DEFAULT_T_END),
    };
    let scheme = SchemeConfig::new(scheme, cfl, t_end).map_err(|err| ConfigError {
        line: if ov.cfl.is_none() && !(cfl > 0.0 && cfl <= 1.0) {
            e.line("cfl")
        } else if ov.t_end.is_none() {
            e.line("t_end")
        } else {
            None
        },
        message: err.to_string(),
    })?;

    let dump_interval = e.finite("dump_interval")?;
    if let Some(h) = dump_interval {
        if !(h > 0.0) {
            return Err(ConfigError::at(
                e.line("dump_interval").unwrap(),
                "dump_interval must be positive",
            ));
        }
    }

    let convergence_cells = match e.values.get("convergence_cells") {
        None => DEFAULT_CONVERGENCE_CELLS.to_vec(),
        Some((line, v)) => {
            let mut out = Vec::new();
            for part in v.split(',') {
                let n: usize = part.trim().parse().map_err(|_| {
                    ConfigError::at(
                        *line,
                        format!("convergence_cells: '{}' is not a cell count", part.trim()),
                    )
                })?;
                if n < 2 {
                    return Err(ConfigError::at(
                        *line,
                        "convergence_cells entries must be at least 2",
                    ));
                }
                out.push(n);
            }
            out
        }
    };

    let samples = e
        .number::<usize>("samples")?
        .unwrap_or(DEFAULT_CHECK_SAMPLES);
    let seed = e.number::<u64>("seed")?.unwrap_or(DEFAULT_SEED);
    let out = ov.out.clone().or_else(|| e.str("out").map(str::to_string));

    Ok(Scenario {
        kind,
        grid,
        scheme,
        out,
        dump_interval,
        convergence_cells,
        samples,
        seed,
        warnings,
    })
}
