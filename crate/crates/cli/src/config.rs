//! Run configuration: a flat sectioned key = value format, fully validated.
//!
//! ```text
//! scenario = spectrum            # spectrum | ratio_table | nr_error | fibre | table_1d
//!
//! [geometry]
//! rho_over_l = 0.5
//!
//! [detector]
//! omega_l = 20.0
//! state = excited                # excited | ground | both
//!
//! [trajectory]
//! kind = uniform_acceleration    # | constant_velocity | galilean
//! a_l = 0.05                     # v_bar = ... for constant_velocity
//!
//! [sweep]                        # optional, scenario-dependent
//! a_l = 5e-5, 5e-4               # ratio_table / spectrum / nr_error / table_1d
//! v_bar = 0.005, 0.16            # ratio_table / spectrum
//! omega_l = 5.75, 20, 50         # ratio_table blocks
//! mass_gap = 0:3.14, 2.41:3.95   # table_1d (mL:ΩL pairs)
//!
//! [cutoffs]
//! l = 200
//! n = 10000
//!
//! [numerics]
//! tol = 1e-8
//! resonance_threshold = 0.02
//! selection = window             # window | single_closest
//! tail_extrapolation = true
//!
//! [output]
//! format = csv                   # csv | json
//! path = out.csv
//! ```
//!
//! Unknown sections or keys, duplicate keys, type mismatches and
//! out-of-range values are hard errors carrying the line and key path.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: cannot parse '{text}' (expected 'key = value' or '[section]')")]
    Syntax { line: usize, text: String },
    #[error("line {line}: unknown section [{section}]")]
    UnknownSection { line: usize, section: String },
    #[error("line {line}: unknown key '{path}'")]
    UnknownKey { line: usize, path: String },
    #[error("line {line}: duplicate key '{path}'")]
    DuplicateKey { line: usize, path: String },
    #[error("line {line}: key '{path}': expected {expected}, got '{value}'")]
    Type {
        line: usize,
        path: String,
        expected: &'static str,
        value: String,
    },
    #[error("key '{path}': {reason}")]
    Range { path: String, reason: String },
    #[error("missing required key '{path}'")]
    Missing { path: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Spectrum,
    RatioTable,
    NrError,
    Fibre,
    Table1d,
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Spectrum => "spectrum",
            Scenario::RatioTable => "ratio_table",
            Scenario::NrError => "nr_error",
            Scenario::Fibre => "fibre",
            Scenario::Table1d => "table_1d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateChoice {
    Ground,
    Excited,
    Both,
}

impl StateChoice {
    pub fn states(&self) -> Vec<udw_cavity::InitialState> {
        match self {
            StateChoice::Ground => vec![udw_cavity::InitialState::Ground],
            StateChoice::Excited => vec![udw_cavity::InitialState::Excited],
            StateChoice::Both => vec![
                udw_cavity::InitialState::Excited,
                udw_cavity::InitialState::Ground,
            ],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrajectoryKind {
    UniformAcceleration,
    ConstantVelocity,
    Galilean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionKind {
    Window,
    SingleClosest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully validated run configuration.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub rho_over_l: f64,
    pub omega_l: f64,
    pub state: StateChoice,
    pub trajectory_kind: TrajectoryKind,
    /// `aL` for accelerated kinds, ignored for constant velocity.
    pub a_l: Option<f64>,
    /// `v̄` for constant velocity.
    pub v_bar: Option<f64>,
    pub sweep_a_l: Vec<f64>,
    pub sweep_v_bar: Vec<f64>,
    pub sweep_omega_l: Vec<f64>,
    /// `(mL, ΩL)` blocks for the 1+1D tables.
    pub sweep_mass_gap: Vec<(f64, f64)>,
    pub cutoff_l: u32,
    pub cutoff_n: u64,
    pub tol: f64,
    pub resonance_threshold: f64,
    pub selection: SelectionKind,
    pub tail_extrapolation: bool,
    pub format: OutputFormat,
    pub out_path: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            scenario: Scenario::Spectrum,
            rho_over_l: 0.5,
            omega_l: 20.0,
            state: StateChoice::Excited,
            trajectory_kind: TrajectoryKind::UniformAcceleration,
            a_l: None,
            v_bar: None,
            sweep_a_l: Vec::new(),
            sweep_v_bar: Vec::new(),
            sweep_omega_l: Vec::new(),
            sweep_mass_gap: Vec::new(),
            cutoff_l: 200,
            cutoff_n: 10_000,
            tol: 1e-8,
            resonance_threshold: 0.02,
            selection: SelectionKind::Window,
            tail_extrapolation: false,
            format: OutputFormat::Csv,
            out_path: None,
        }
    }
}

struct RawItem {
    line: usize,
    path: String,
    value: String,
}

/// Parses and validates the key-value text into a `RunConfig`.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    const SECTIONS: [&str; 6] = [
        "geometry",
        "detector",
        "trajectory",
        "sweep",
        "cutoffs",
        "numerics",
    ];
    const KEYS: [&str; 19] = [
        "scenario",
        "geometry.rho_over_l",
        "detector.omega_l",
        "detector.state",
        "trajectory.kind",
        "trajectory.a_l",
        "trajectory.v_bar",
        "sweep.a_l",
        "sweep.v_bar",
        "sweep.omega_l",
        "sweep.mass_gap",
        "cutoffs.l",
        "cutoffs.n",
        "numerics.tol",
        "numerics.resonance_threshold",
        "numerics.selection",
        "numerics.tail_extrapolation",
        "output.format",
        "output.path",
    ];

    let mut items: Vec<RawItem> = Vec::new();
    let mut section = String::new();
    for (i, raw_line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            if !SECTIONS.contains(&name) && name != "output" {
                return Err(ConfigError::UnknownSection {
                    line: line_no,
                    section: name.to_string(),
                });
            }
            section = name.to_string();
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                line: line_no,
                text: line.to_string(),
            });
        };
        let key = key.trim();
        let path = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        if !KEYS.contains(&path.as_str()) {
            return Err(ConfigError::UnknownKey {
                line: line_no,
                path,
            });
        }
        if items.iter().any(|it| it.path == path) {
            return Err(ConfigError::DuplicateKey {
                line: line_no,
                path,
            });
        }
        items.push(RawItem {
            line: line_no,
            path,
            value: value.trim().to_string(),
        });
    }

    let mut cfg = RunConfig::default();
    let mut saw_scenario = false;
    let mut saw_rho = false;
    let mut saw_gap = false;
    let mut saw_state = false;
    let mut saw_kind = false;

    for it in &items {
        let type_err = |expected: &'static str| ConfigError::Type {
            line: it.line,
            path: it.path.clone(),
            expected,
            value: it.value.clone(),
        };
        match it.path.as_str() {
            "scenario" => {
                cfg.scenario = match it.value.as_str() {
                    "spectrum" => Scenario::Spectrum,
                    "ratio_table" => Scenario::RatioTable,
                    "nr_error" => Scenario::NrError,
                    "fibre" => Scenario::Fibre,
                    "table_1d" => Scenario::Table1d,
                    _ => {
                        return Err(type_err(
                            "one of spectrum|ratio_table|nr_error|fibre|table_1d",
                        ))
                    }
                };
                saw_scenario = true;
            }
            "geometry.rho_over_l" => {
                cfg.rho_over_l = parse_f64(&it.value).ok_or_else(|| type_err("a number"))?;
                saw_rho = true;
            }
            "detector.omega_l" => {
                cfg.omega_l = parse_f64(&it.value).ok_or_else(|| type_err("a number"))?;
                saw_gap = true;
            }
            "detector.state" => {
                cfg.state = match it.value.as_str() {
                    "ground" => StateChoice::Ground,
                    "excited" => StateChoice::Excited,
                    "both" => StateChoice::Both,
                    _ => return Err(type_err("one of ground|excited|both")),
                };
                saw_state = true;
            }
            "trajectory.kind" => {
                cfg.trajectory_kind = match it.value.as_str() {
                    "uniform_acceleration" => TrajectoryKind::UniformAcceleration,
                    "constant_velocity" => TrajectoryKind::ConstantVelocity,
                    "galilean" => TrajectoryKind::Galilean,
                    _ => {
                        return Err(type_err(
                            "one of uniform_acceleration|constant_velocity|galilean",
                        ))
                    }
                };
                saw_kind = true;
            }
            "trajectory.a_l" => {
                cfg.a_l = Some(parse_f64(&it.value).ok_or_else(|| type_err("a number"))?)
            }
            "trajectory.v_bar" => {
                cfg.v_bar = Some(parse_f64(&it.value).ok_or_else(|| type_err("a number"))?)
            }
            "sweep.a_l" => {
                cfg.sweep_a_l = parse_f64_list(&it.value)
                    .ok_or_else(|| type_err("a comma-separated number list"))?
            }
            "sweep.v_bar" => {
                cfg.sweep_v_bar = parse_f64_list(&it.value)
                    .ok_or_else(|| type_err("a comma-separated number list"))?
            }
            "sweep.omega_l" => {
                cfg.sweep_omega_l = parse_f64_list(&it.value)
                    .ok_or_else(|| type_err("a comma-separated number list"))?
            }
            "sweep.mass_gap" => {
                cfg.sweep_mass_gap = parse_pair_list(&it.value)
                    .ok_or_else(|| type_err("a comma-separated list of mL:omegaL pairs"))?
            }
            "cutoffs.l" => {
                cfg.cutoff_l = it
                    .value
                    .parse()
                    .map_err(|_| type_err("a positive integer"))?
            }
            "cutoffs.n" => {
                cfg.cutoff_n = it
                    .value
                    .parse()
                    .map_err(|_| type_err("a positive integer"))?
            }
            "numerics.tol" => cfg.tol = parse_f64(&it.value).ok_or_else(|| type_err("a number"))?,
            "numerics.resonance_threshold" => {
                cfg.resonance_threshold =
                    parse_f64(&it.value).ok_or_else(|| type_err("a number"))?
            }
            "numerics.selection" => {
                cfg.selection = match it.value.as_str() {
                    "window" => SelectionKind::Window,
                    "single_closest" => SelectionKind::SingleClosest,
                    _ => return Err(type_err("one of window|single_closest")),
                };
            }
            "numerics.tail_extrapolation" => {
                cfg.tail_extrapolation = match it.value.as_str() {
                    "true" => true,
                    "false" => false,
                    _ => return Err(type_err("true or false")),
                };
            }
            "output.format" => {
                cfg.format = match it.value.as_str() {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(type_err("csv or json")),
                };
            }
            "output.path" => cfg.out_path = Some(it.value.clone()),
            _ => unreachable!("key list is exhaustive"),
        }
    }

    for (seen, path) in [
        (saw_scenario, "scenario"),
        (saw_rho, "geometry.rho_over_l"),
        (saw_gap, "detector.omega_l"),
        (saw_state, "detector.state"),
        (saw_kind, "trajectory.kind"),
    ] {
        if !seen {
            return Err(ConfigError::Missing { path: path.into() });
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_f64(s: &str) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    v.is_finite().then_some(v)
}

fn parse_f64_list(s: &str) -> Option<Vec<f64>> {
    s.split(',').map(|tok| parse_f64(tok.trim())).collect()
}

fn parse_pair_list(s: &str) -> Option<Vec<(f64, f64)>> {
    s.split(',')
        .map(|tok| {
            let (a, b) = tok.trim().split_once(':')?;
            Some((parse_f64(a.trim())?, parse_f64(b.trim())?))
        })
        .collect()
}

impl RunConfig {
    /// Cross-field validation; every failure names its key.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |v: f64, path: &str| -> Result<(), ConfigError> {
            if v > 0.0 {
                Ok(())
            } else {
                Err(ConfigError::Range {
                    path: path.into(),
                    reason: format!("must be positive, got {v}"),
                })
            }
        };
        positive(self.rho_over_l, "geometry.rho_over_l")?;
        positive(self.omega_l, "detector.omega_l")?;
        positive(self.tol, "numerics.tol")?;
        positive(self.resonance_threshold, "numerics.resonance_threshold")?;
        if self.cutoff_l < 1 || self.cutoff_n < 1 {
            return Err(ConfigError::Range {
                path: "cutoffs".into(),
                reason: "cutoffs must be >= 1".into(),
            });
        }
        for (i, &v) in self.sweep_v_bar.iter().enumerate() {
            if !(v > 0.0 && v < 1.0) {
                return Err(ConfigError::Range {
                    path: format!("sweep.v_bar[{i}]"),
                    reason: format!("velocity must lie in (0,1), got {v}"),
                });
            }
        }
        for (i, &a) in self.sweep_a_l.iter().enumerate() {
            positive(a, &format!("sweep.a_l[{i}]"))?;
        }
        for (i, &(m, g)) in self.sweep_mass_gap.iter().enumerate() {
            if m < 0.0 {
                return Err(ConfigError::Range {
                    path: format!("sweep.mass_gap[{i}]"),
                    reason: format!("mass must be nonnegative, got {m}"),
                });
            }
            positive(g, &format!("sweep.mass_gap[{i}].omega_l"))?;
        }
        match self.trajectory_kind {
            TrajectoryKind::ConstantVelocity => {
                if self.v_bar.is_none() && self.sweep_v_bar.is_empty() {
                    return Err(ConfigError::Missing {
                        path: "trajectory.v_bar (or sweep.v_bar)".into(),
                    });
                }
                if let Some(v) = self.v_bar {
                    if !(v > 0.0 && v < 1.0) {
                        return Err(ConfigError::Range {
                            path: "trajectory.v_bar".into(),
                            reason: format!("velocity must lie in (0,1), got {v}"),
                        });
                    }
                }
            }
            _ => {
                if self.a_l.is_none() && self.sweep_a_l.is_empty() {
                    return Err(ConfigError::Missing {
                        path: "trajectory.a_l (or sweep.a_l)".into(),
                    });
                }
                if let Some(a) = self.a_l {
                    positive(a, "trajectory.a_l")?;
                }
            }
        }
        match self.scenario {
            Scenario::RatioTable => {
                let pts = self.sweep_points();
                if pts.is_empty() {
                    return Err(ConfigError::Invalid(
                        "ratio_table requires a non-empty sweep ([sweep] a_l or v_bar)".into(),
                    ));
                }
            }
            Scenario::Table1d => {
                if self.sweep_mass_gap.is_empty() {
                    return Err(ConfigError::Missing {
                        path: "sweep.mass_gap".into(),
                    });
                }
                if self.sweep_a_l.is_empty() && self.a_l.is_none() {
                    return Err(ConfigError::Missing {
                        path: "sweep.a_l (or trajectory.a_l)".into(),
                    });
                }
            }
            Scenario::Fibre => {
                if self.v_bar.is_none() {
                    return Err(ConfigError::Missing {
                        path: "trajectory.v_bar".into(),
                    });
                }
                if self.trajectory_kind != TrajectoryKind::ConstantVelocity {
                    return Err(ConfigError::Invalid(
                        "fibre requires trajectory.kind = constant_velocity".into(),
                    ));
                }
            }
            Scenario::NrError => {
                if self.trajectory_kind == TrajectoryKind::ConstantVelocity {
                    return Err(ConfigError::Invalid(
                        "nr_error requires an accelerated trajectory".into(),
                    ));
                }
            }
            Scenario::Spectrum => {}
        }
        Ok(())
    }

    /// Sweep points over the trajectory parameter: `(kind, value)` pairs.
    /// Falls back to the single `[trajectory]` value when no sweep is given.
    pub fn sweep_points(&self) -> Vec<(TrajectoryKind, f64)> {
        let mut out = Vec::new();
        if !self.sweep_a_l.is_empty() || !self.sweep_v_bar.is_empty() {
            for &a in &self.sweep_a_l {
                out.push((TrajectoryKind::UniformAcceleration, a));
            }
            for &v in &self.sweep_v_bar {
                out.push((TrajectoryKind::ConstantVelocity, v));
            }
            return out;
        }
        match self.trajectory_kind {
            TrajectoryKind::ConstantVelocity => {
                if let Some(v) = self.v_bar {
                    out.push((TrajectoryKind::ConstantVelocity, v));
                }
            }
            k => {
                if let Some(a) = self.a_l {
                    out.push((k, a));
                }
            }
        }
        out
    }

    /// Gap blocks for `ratio_table`: the swept `ΩL` list, or the single gap.
    pub fn gap_blocks(&self) -> Vec<f64> {
        if self.sweep_omega_l.is_empty() {
            vec![self.omega_l]
        } else {
            self.sweep_omega_l.clone()
        }
    }
}
