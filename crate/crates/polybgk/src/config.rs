//! Run configuration: `key = value` lines grouped in `[model]`, `[grid]`,
//! `[solver]`, `[init]` and `[output]` sections. `#` starts a comment.
//! Unknown sections and keys are rejected; every default that gets applied
//! is logged.

use std::collections::BTreeMap;
use std::path::PathBuf;

use polybgk_core::init::{InitSpec, DEFAULT_TAIL_FRACTION};
use polybgk_core::solver::{Interpolation, Mode, SolverConfig, Splitting};
use polybgk_core::{GridConfig, InternalSpacing, RelaxationParams};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    Validation(String),
}

/// Initial data: an analytic preset or a field file.
#[derive(Debug, Clone, PartialEq)]
pub enum InitSource {
    Preset(InitSpec),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: RelaxationParams,
    pub grid: GridConfig,
    pub solver: SolverConfig,
    pub init: InitSource,
    pub tail_fraction: f64,
    /// Final time of the successive-approximation diagnostic.
    pub picard_time: f64,
    pub seed: u64,
    pub threads: usize,
    /// Number of random fields drawn by `check`.
    pub check_samples: usize,
    pub output_path: Option<PathBuf>,
}

const KEYS: &[(&str, &[&str])] = &[
    ("model", &["nu", "theta", "delta", "q"]),
    ("grid", &["x_count", "x_length", "v_count", "v_max", "i_count", "i_max", "internal_spacing"]),
    (
        "solver",
        &[
            "dt",
            "t_final",
            "interpolation",
            "conservation_fix",
            "splitting",
            "mode",
            "picard_iterations",
            "picard_time_nodes",
            "picard_time",
            "seed",
            "threads",
            "check_samples",
        ],
    ),
    ("init", &["preset", "rho", "ux", "uy", "uz", "T", "T_tr", "T_int", "amplitude", "mode", "path", "tail_fraction"]),
    ("output", &["path", "interval"]),
];

struct Entry {
    value: String,
    line: usize,
}

struct Table {
    entries: BTreeMap<(String, String), Entry>,
}

impl Table {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries = BTreeMap::new();
        let mut section: Option<String> = None;
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::Parse { line, message: "unterminated section header".into() })?
                    .trim();
                if !KEYS.iter().any(|(s, _)| *s == name) {
                    return Err(ConfigError::Parse { line, message: format!("unknown section [{name}]") });
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| ConfigError::Parse { line, message: format!("expected key = value, found `{content}`") })?;
            let (key, value) = (key.trim(), value.trim());
            let sec = section
                .clone()
                .ok_or_else(|| ConfigError::Parse { line, message: format!("key `{key}` outside any section") })?;
            let allowed = KEYS.iter().find(|(s, _)| *s == sec).map(|(_, k)| *k).unwrap_or(&[]);
            if !allowed.contains(&key) {
                return Err(ConfigError::Parse { line, message: format!("unknown key `{key}` in [{sec}]") });
            }
            if value.is_empty() {
                return Err(ConfigError::Parse { line, message: format!("empty value for `{key}`") });
            }
            if entries.insert((sec.clone(), key.to_string()), Entry { value: value.to_string(), line }).is_some() {
                return Err(ConfigError::Parse { line, message: format!("duplicate key `{key}` in [{sec}]") });
            }
        }
        Ok(Self { entries })
    }

    fn raw(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    fn parsed<T: std::str::FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, ConfigError> {
        match self.raw(section, key) {
            None => Ok(None),
            Some(e) => e.value.parse::<T>().map(Some).map_err(|_| ConfigError::Parse {
                line: e.line,
                message: format!("cannot parse `{}` for {section}.{key}", e.value),
            }),
        }
    }

    fn get<T: std::str::FromStr + std::fmt::Debug>(&self, section: &str, key: &str, default: T) -> Result<T, ConfigError> {
        match self.parsed(section, key)? {
            Some(v) => Ok(v),
            None => {
                log::info!("default {section}.{key} = {default:?}");
                Ok(default)
            }
        }
    }

    fn required<T: std::str::FromStr>(&self, section: &str, key: &str) -> Result<T, ConfigError> {
        self.parsed(section, key)?
            .ok_or_else(|| ConfigError::Validation(format!("missing required key {section}.{key}")))
    }

    fn choice<T: Copy + std::fmt::Debug>(&self, section: &str, key: &str, options: &[(&str, T)], default: T) -> Result<T, ConfigError> {
        match self.raw(section, key) {
            None => {
                log::info!("default {section}.{key} = {default:?}");
                Ok(default)
            }
            Some(e) => options.iter().find(|(name, _)| *name == e.value).map(|(_, v)| *v).ok_or_else(|| {
                let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
                ConfigError::Parse { line: e.line, message: format!("{section}.{key} must be one of {}", names.join(", ")) }
            }),
        }
    }
}

fn check_model(nu: f64, theta: f64, delta: f64, q: f64) -> Result<RelaxationParams, ConfigError> {
    if !(nu > -0.5 && nu < 1.0) {
        return Err(ConfigError::Validation(format!("nu = {nu} must lie in (-1/2, 1)")));
    }
    if !(0.0..=1.0).contains(&theta) {
        return Err(ConfigError::Validation(format!("theta = {theta} must lie in [0, 1]")));
    }
    if !(delta > 0.0) {
        return Err(ConfigError::Validation(format!("delta = {delta} must be positive")));
    }
    if !(q > 5.0 + delta) {
        return Err(ConfigError::Validation(format!("q must exceed 5+delta (q = {q}, delta = {delta})")));
    }
    RelaxationParams::new(nu, theta, delta, q).map_err(|e| ConfigError::Validation(e.to_string()))
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let t = Table::parse(text)?;

    let params = check_model(
        t.required("model", "nu")?,
        t.required("model", "theta")?,
        t.required("model", "delta")?,
        t.required("model", "q")?,
    )?;
    let delta = params.delta();

    let preset = t.choice(
        "init",
        "preset",
        &[("equilibrium", 0u8), ("two_temperature", 1), ("spatial_wave", 2), ("file", 3)],
        0,
    )?;
    let rho = t.get("init", "rho", 1.0)?;
    let u = [t.get("init", "ux", 0.0)?, t.get("init", "uy", 0.0)?, t.get("init", "uz", 0.0)?];
    let (init, t_max) = match preset {
        0 => {
            let temp = t.get("init", "T", 1.0)?;
            (InitSource::Preset(InitSpec::equilibrium(rho, u, temp)), temp)
        }
        1 => {
            let t_tr = t.get("init", "T_tr", 2.0)?;
            let t_int = t.get("init", "T_int", 1.0)?;
            (InitSource::Preset(InitSpec::two_temperature(rho, u, t_tr, t_int)), t_tr.max(t_int))
        }
        2 => {
            let temp = t.get("init", "T", 1.0)?;
            let amplitude = t.get("init", "amplitude", 0.1)?;
            let mode = t.get("init", "mode", 1u32)?;
            (InitSource::Preset(InitSpec::spatial_wave(rho, u, temp, amplitude, mode)), temp)
        }
        _ => {
            let path: String = t.required("init", "path")?;
            (InitSource::File(PathBuf::from(path)), 1.0)
        }
    };
    let tail_fraction = t.get("init", "tail_fraction", DEFAULT_TAIL_FRACTION)?;

    let speed = u.iter().map(|c| c * c).sum::<f64>().sqrt();
    let (v_default, i_default) = GridConfig::default_cutoffs(speed, t_max, delta);
    let x_count = t.get("grid", "x_count", 1usize)?;
    let grid = GridConfig {
        x_count,
        x_length: t.get("grid", "x_length", 1.0)?,
        v_count: t.get("grid", "v_count", 24usize)?,
        v_max: t.get("grid", "v_max", v_default)?,
        i_count: t.get("grid", "i_count", 32usize)?,
        i_max: t.get("grid", "i_max", i_default)?,
        spacing: t.choice(
            "grid",
            "internal_spacing",
            &[("mapped", InternalSpacing::Mapped), ("uniform", InternalSpacing::Uniform)],
            InternalSpacing::Mapped,
        )?,
    };
    if grid.x_count < 1 || grid.v_count < 2 || grid.i_count < 1 {
        return Err(ConfigError::Validation("grid needs x_count >= 1, v_count >= 2, i_count >= 1".into()));
    }
    if !(grid.x_length > 0.0 && grid.v_max > 0.0 && grid.i_max > 0.0) {
        return Err(ConfigError::Validation("grid lengths and cutoffs must be positive".into()));
    }

    let solver = SolverConfig {
        dt: t.get("solver", "dt", 0.01)?,
        t_final: t.get("solver", "t_final", 1.0)?,
        interpolation: t.choice(
            "solver",
            "interpolation",
            &[("linear", Interpolation::Linear), ("cubic", Interpolation::Cubic)],
            Interpolation::Linear,
        )?,
        conservation_fix: t.get("solver", "conservation_fix", false)?,
        splitting: t.choice("solver", "splitting", &[("lie", Splitting::Lie), ("strang", Splitting::Strang)], Splitting::Lie)?,
        mode: t.choice("solver", "mode", &[("evolve", Mode::Evolve), ("picard", Mode::Picard)], Mode::Evolve)?,
        picard_iterations: t.get("solver", "picard_iterations", 8usize)?,
        picard_time_nodes: t.get("solver", "picard_time_nodes", 33usize)?,
        output_interval: t.get("output", "interval", 1usize)?,
    };
    solver.validate().map_err(|e| ConfigError::Validation(e.to_string()))?;
    if solver.interpolation == Interpolation::Cubic {
        log::warn!("cubic interpolation may produce negative values; they are clipped to zero and the clipped mass is reported");
    }
    let picard_time = t.get("solver", "picard_time", 0.25 / params.a())?;
    if !(picard_time > 0.0) {
        return Err(ConfigError::Validation("picard_time must be positive".into()));
    }
    let threads = t.get("solver", "threads", 1usize)?;
    if threads == 0 {
        return Err(ConfigError::Validation("threads must be at least 1".into()));
    }

    Ok(RunConfig {
        params,
        grid,
        solver,
        init,
        tail_fraction,
        picard_time,
        seed: t.get("solver", "seed", 0u64)?,
        threads,
        check_samples: t.get("solver", "check_samples", 100usize)?,
        output_path: t.parsed::<String>("output", "path")?.map(PathBuf::from),
    })
}
