use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::dynamics::SystemParams;
use crate::error::{Error, Result};
use crate::field::TruncationPolicy;

/// Everything needed to run and write one time sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub alpha: Complex64,
    pub g: f64,
    pub omega_a: f64,
    pub delta: f64,
    /// Weight of `|g><g|` in the initial atomic state.
    pub atom_ground_weight: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
    pub tail_tolerance: f64,
    pub buffer: usize,
    pub oracle_check: bool,
    /// Every `oracle_stride`-th grid point is re-evaluated by the oracle.
    pub oracle_stride: usize,
    pub output_path: PathBuf,
}

impl Default for SweepConfig {
    fn default() -> Self {
        let policy = TruncationPolicy::default();
        SweepConfig {
            alpha: Complex64::new(5f64.sqrt(), 0.0),
            g: 1.0,
            omega_a: 1.0,
            delta: 0.0,
            atom_ground_weight: 0.5,
            t_start: 0.0,
            t_end: 25.0,
            n_points: 1001,
            tail_tolerance: policy.tail_tolerance,
            buffer: policy.buffer,
            oracle_check: false,
            oracle_stride: 10,
            output_path: PathBuf::from("sweep.csv"),
        }
    }
}

impl SweepConfig {
    pub fn from_preset(preset: Preset) -> Self {
        let mut config = SweepConfig::default();
        preset.apply(&mut config);
        config
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.re.is_finite() || !self.alpha.im.is_finite() {
            return Err(Error::config("alpha", "must be finite"));
        }
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(Error::config(
                "g",
                format!("must be positive, got {}", self.g),
            ));
        }
        if !self.omega_a.is_finite() {
            return Err(Error::config("omega-a", "must be finite"));
        }
        if !self.delta.is_finite() {
            return Err(Error::config("delta", "must be finite"));
        }
        if !(0.0..=1.0).contains(&self.atom_ground_weight) {
            return Err(Error::config(
                "atom-ground-weight",
                format!("must lie in [0, 1], got {}", self.atom_ground_weight),
            ));
        }
        if !(self.t_start >= 0.0 && self.t_start.is_finite()) {
            return Err(Error::config(
                "t-start",
                format!("must be finite and non-negative, got {}", self.t_start),
            ));
        }
        if !(self.t_end > self.t_start && self.t_end.is_finite()) {
            return Err(Error::config(
                "t-end",
                format!(
                    "must be finite and exceed t-start ({}), got {}",
                    self.t_start, self.t_end
                ),
            ));
        }
        if self.n_points < 2 {
            return Err(Error::config(
                "n-points",
                format!("must be at least 2, got {}", self.n_points),
            ));
        }
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance.is_finite()) {
            return Err(Error::config(
                "tail-tolerance",
                format!("must be positive, got {}", self.tail_tolerance),
            ));
        }
        if self.buffer < 1 {
            return Err(Error::config("buffer", "must be at least 1"));
        }
        if self.oracle_stride < 1 {
            return Err(Error::config("oracle-stride", "must be at least 1"));
        }
        Ok(())
    }

    pub fn system_params(&self) -> Result<SystemParams> {
        SystemParams::new(self.g, self.omega_a, self.delta, self.atom_ground_weight)
    }

    pub fn truncation_policy(&self) -> Result<TruncationPolicy> {
        TruncationPolicy::new(self.tail_tolerance, self.buffer)
    }

    /// Evenly spaced times from `t_start` to `t_end` inclusive.
    pub fn time_grid(&self) -> Vec<f64> {
        let last = self.n_points - 1;
        let step = (self.t_end - self.t_start) / last as f64;
        (0..self.n_points)
            .map(|k| {
                if k == last {
                    self.t_end
                } else {
                    self.t_start + k as f64 * step
                }
            })
            .collect()
    }
}

/// Parameter sets of the five reference figures: `alpha = sqrt(5)`, `g = 1`,
/// `omega_A = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Preset {
    /// Resonant, atom initially excited (pure joint state).
    Fig1,
    /// Resonant, equal mixture.
    Fig2,
    /// `delta = 5`, equal mixture.
    Fig3,
    /// `delta = 10`, equal mixture.
    Fig4,
    /// Same state as `Fig4`; used for the mutual entropy against its classical bound.
    Fig5,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Fig1,
        Preset::Fig2,
        Preset::Fig3,
        Preset::Fig4,
        Preset::Fig5,
    ];

    pub fn delta(self) -> f64 {
        match self {
            Preset::Fig1 | Preset::Fig2 => 0.0,
            Preset::Fig3 => 5.0,
            Preset::Fig4 | Preset::Fig5 => 10.0,
        }
    }

    pub fn atom_ground_weight(self) -> f64 {
        match self {
            Preset::Fig1 => 0.0,
            _ => 0.5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
        }
    }

    /// Overwrites the physical parameters, leaving grid and I/O settings alone.
    pub fn apply(self, config: &mut SweepConfig) {
        config.alpha = Complex64::new(5f64.sqrt(), 0.0);
        config.g = 1.0;
        config.omega_a = 1.0;
        config.delta = self.delta();
        config.atom_ground_weight = self.atom_ground_weight();
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::config("preset", format!("unknown preset `{s}`")))
    }
}

/// A partial configuration layer; unset fields leave the layer below intact.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub preset: Option<Preset>,
    /// `|alpha|`
    pub alpha: Option<f64>,
    /// `|alpha|^2`
    pub alpha_squared: Option<f64>,
    /// `arg(alpha)` in radians.
    pub alpha_phase: Option<f64>,
    pub g: Option<f64>,
    pub omega_a: Option<f64>,
    pub delta: Option<f64>,
    pub atom_ground_weight: Option<f64>,
    pub t_start: Option<f64>,
    pub t_end: Option<f64>,
    pub n_points: Option<usize>,
    pub tail_tolerance: Option<f64>,
    pub buffer: Option<usize>,
    pub oracle_check: Option<bool>,
    pub oracle_stride: Option<usize>,
    pub output: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::config(key, format!("cannot parse `{}`", value.trim())))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(Error::config(
            key,
            format!("expected a boolean, got `{other}`"),
        )),
    }
}

impl ConfigOverrides {
    /// Parses the flat `key = value` format. `#` starts a comment; keys may be
    /// written in kebab-case or snake_case.
    pub fn parse(text: &str) -> Result<Self> {
        let mut layer = ConfigOverrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::config(
                    format!("line {}", lineno + 1),
                    format!("expected `key = value`, got `{line}`"),
                )
            })?;
            layer.set(&key.trim().replace('_', "-"), value)?;
        }
        Ok(layer)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "preset" => self.preset = Some(value.parse()?),
            "alpha" => self.alpha = Some(parse_value(key, value)?),
            "alpha-squared" => self.alpha_squared = Some(parse_value(key, value)?),
            "alpha-phase" => self.alpha_phase = Some(parse_value(key, value)?),
            "g" => self.g = Some(parse_value(key, value)?),
            "omega-a" => self.omega_a = Some(parse_value(key, value)?),
            "delta" => self.delta = Some(parse_value(key, value)?),
            "atom-ground-weight" => self.atom_ground_weight = Some(parse_value(key, value)?),
            "t-start" => self.t_start = Some(parse_value(key, value)?),
            "t-end" => self.t_end = Some(parse_value(key, value)?),
            "n-points" => self.n_points = Some(parse_value(key, value)?),
            "tail-tolerance" => self.tail_tolerance = Some(parse_value(key, value)?),
            "buffer" => self.buffer = Some(parse_value(key, value)?),
            "oracle-check" => self.oracle_check = Some(parse_bool(key, value)?),
            "oracle-stride" => self.oracle_stride = Some(parse_value(key, value)?),
            "output" | "output-path" => self.output = Some(PathBuf::from(value.trim())),
            other => return Err(Error::config(other, "unknown key")),
        }
        Ok(())
    }

    /// Applies every set field except `preset` on top of `config`.
    pub fn apply(&self, config: &mut SweepConfig) -> Result<()> {
        let modulus = match (self.alpha, self.alpha_squared) {
            (Some(_), Some(_)) => {
                return Err(Error::config(
                    "alpha",
                    "give either alpha or alpha-squared, not both",
                ))
            }
            (Some(a), None) => Some(a),
            (None, Some(a2)) => {
                if a2.is_nan() || a2 < 0.0 {
                    return Err(Error::config(
                        "alpha-squared",
                        format!("must be non-negative, got {a2}"),
                    ));
                }
                Some(a2.sqrt())
            }
            (None, None) => None,
        };
        if let Some(m) = modulus {
            if m.is_nan() || m < 0.0 {
                return Err(Error::config(
                    "alpha",
                    format!("modulus must be non-negative, got {m}"),
                ));
            }
            config.alpha = Complex64::from_polar(m, config.alpha.arg());
        }
        if let Some(phase) = self.alpha_phase {
            config.alpha = Complex64::from_polar(config.alpha.norm(), phase);
        }
        macro_rules! copy {
            ($($field:ident => $target:ident),* $(,)?) => {
                $(if let Some(v) = self.$field.clone() { config.$target = v; })*
            };
        }
        copy!(
            g => g,
            omega_a => omega_a,
            delta => delta,
            atom_ground_weight => atom_ground_weight,
            t_start => t_start,
            t_end => t_end,
            n_points => n_points,
            tail_tolerance => tail_tolerance,
            buffer => buffer,
            oracle_check => oracle_check,
            oracle_stride => oracle_stride,
            output => output_path,
        );
        Ok(())
    }
}

/// Resolves defaults, preset, config file and command-line layers in that
/// order. The command-line preset wins over one named in the file.
pub fn resolve_config(
    file: Option<&ConfigOverrides>,
    cli: &ConfigOverrides,
) -> Result<SweepConfig> {
    let mut config = SweepConfig::default();
    if let Some(preset) = cli.preset.or(file.and_then(|f| f.preset)) {
        preset.apply(&mut config);
    }
    if let Some(file) = file {
        file.apply(&mut config)?;
    }
    cli.apply(&mut config)?;
    config.validate()?;
    Ok(config)
}
