//! Run configuration: JSON document in, validated spec + endpoints out.
//!
//! Every key is optional; an empty object resolves to the default surface
//! parameters (occupations 0.5/0.3, KT_hot = 5, KT_cold = 1, gaps 1,
//! widths 2 and 1). Unknown keys are rejected. Energies are in units of
//! KT_cold = 1; the optional `kt_l` key rescales emitted energies only and
//! never enters the math.

use serde::{Deserialize, Serialize};

use ottoband::medium::{validate_spec, CycleSpec, LevelStructure, PopulationEndpoints};
use ottoband::oracle::OracleConfig;
use ottoband::sweep::{Axis, CycleParams, EndpointRule, GridSpec, SweepParam};

#[derive(Debug)]
pub enum ConfigError {
    /// Malformed JSON or unknown keys, with serde's line/column context.
    Parse(String),
    /// Well-formed but inconsistent configuration.
    Semantic(String),
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConfigError::Parse(msg) => write!(f, "config parse error: {msg}"),
            ConfigError::Semantic(msg) => write!(f, "config error: {msg}"),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Free,
    Equilibrium,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureConfig {
    pub delta_gap: f64,
    pub broadening: f64,
    /// Omitted cold density is derived from the rescaling constraint.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default)]
    pub e0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisConfig {
    fn to_axis(&self) -> Result<Axis, ConfigError> {
        let param = SweepParam::parse(&self.param).ok_or_else(|| {
            ConfigError::Semantic(format!(
                "unknown sweep parameter `{}` (expected one of delta_h, delta_l, \
                 delta_gap_h, delta_gap_l, t_hot, t_cold, p0_hot, p0_cold)",
                self.param
            ))
        })?;
        Axis::new(param, self.min, self.max, self.count)
            .map_err(|e| ConfigError::Semantic(format!("axis `{}`: {e}", self.param)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axes: Vec<AxisConfig>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance of the adaptive quadrature oracle.
    pub quad: f64,
    /// Largest accepted relative error between closed forms and oracles.
    #[serde(rename = "match")]
    pub match_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            quad: 1e-12,
            match_tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_mode")]
    pub mode: Mode,
    #[serde(default = "default_hot")]
    pub hot: StructureConfig,
    #[serde(default = "default_cold")]
    pub cold: StructureConfig,
    #[serde(default = "default_t_hot")]
    pub t_hot: f64,
    #[serde(default = "default_t_cold")]
    pub t_cold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0_hot: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0_cold: Option<f64>,
    #[serde(default = "default_sweep")]
    pub sweep: SweepConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
    /// Output energy scale; never enters the math.
    #[serde(default = "default_kt_l")]
    pub kt_l: f64,
}

fn default_mode() -> Mode {
    Mode::Free
}

fn default_hot() -> StructureConfig {
    StructureConfig {
        delta_gap: 1.0,
        broadening: 2.0,
        rho: Some(1.0),
        e0: 0.0,
    }
}

fn default_cold() -> StructureConfig {
    StructureConfig {
        delta_gap: 1.0,
        broadening: 1.0,
        rho: None,
        e0: 0.0,
    }
}

fn default_t_hot() -> f64 {
    5.0
}

fn default_t_cold() -> f64 {
    1.0
}

fn default_sweep() -> SweepConfig {
    SweepConfig {
        axes: vec![
            AxisConfig {
                param: "delta_h".into(),
                min: 0.05,
                max: 5.0,
                count: 101,
            },
            AxisConfig {
                param: "delta_l".into(),
                min: 0.05,
                max: 5.0,
                count: 101,
            },
        ],
    }
}

fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

fn default_kt_l() -> f64 {
    1.0
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty object must resolve to defaults")
    }
}

/// Default occupations when free mode leaves them unset.
pub const DEFAULT_P0_HOT: f64 = 0.3;
pub const DEFAULT_P0_COLD: f64 = 0.5;

/// Parse a JSON configuration document. Defaults fill every omitted key;
/// semantic violations (constraint breaches, endpoint/mode clashes) are
/// separate from parse errors.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let config: RunConfig =
        serde_json::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
    config.check_semantics()?;
    Ok(config)
}

impl RunConfig {
    fn check_semantics(&self) -> Result<(), ConfigError> {
        if self.mode == Mode::Equilibrium && (self.p0_hot.is_some() || self.p0_cold.is_some()) {
            return Err(ConfigError::Semantic(
                "endpoints not allowed in equilibrium mode".into(),
            ));
        }
        if self.kt_l <= 0.0 || !self.kt_l.is_finite() {
            return Err(ConfigError::Semantic(format!(
                "kt_l must be positive and finite, got {}",
                self.kt_l
            )));
        }
        self.build_spec()?;
        Ok(())
    }

    /// Occupations in effect (free mode), with defaults filled.
    pub fn occupations(&self) -> (f64, f64) {
        (
            self.p0_hot.unwrap_or(DEFAULT_P0_HOT),
            self.p0_cold.unwrap_or(DEFAULT_P0_COLD),
        )
    }

    /// Assemble and validate the cycle spec described by the config.
    pub fn build_spec(&self) -> Result<CycleSpec, ConfigError> {
        let hot = LevelStructure::new(
            self.hot.e0,
            self.hot.delta_gap,
            self.hot.broadening,
            self.hot.rho.unwrap_or(1.0),
        )
        .map_err(|e| ConfigError::Semantic(format!("hot structure: {e}")))?;
        let cold_rho = match self.cold.rho {
            Some(rho) => rho,
            None => hot.rho() * hot.broadening() / self.cold.broadening,
        };
        let cold = LevelStructure::new(self.cold.e0, self.cold.delta_gap, self.cold.broadening, cold_rho)
            .map_err(|e| ConfigError::Semantic(format!("cold structure: {e}")))?;
        let spec = CycleSpec {
            hot,
            cold,
            t_hot: self.t_hot,
            t_cold: self.t_cold,
        };
        let report = validate_spec(&spec);
        if !report.is_valid() {
            let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            return Err(ConfigError::Semantic(lines.join("; ")));
        }
        Ok(spec)
    }

    /// Spec plus resolved endpoints (free values or equilibrium-derived).
    pub fn resolve(&self) -> Result<(CycleSpec, PopulationEndpoints), ConfigError> {
        let spec = self.build_spec()?;
        let endpoints = match self.mode {
            Mode::Free => {
                let (p0_hot, p0_cold) = self.occupations();
                PopulationEndpoints::free(p0_hot, p0_cold)
                    .map_err(|e| ConfigError::Semantic(e.to_string()))?
            }
            Mode::Equilibrium => PopulationEndpoints::equilibrium(&spec)
                .map_err(|e| ConfigError::Semantic(e.to_string()))?,
        };
        Ok((spec, endpoints))
    }

    /// Validation warnings worth echoing to the user.
    pub fn warnings(&self) -> Vec<String> {
        match self.build_spec() {
            Ok(spec) => validate_spec(&spec)
                .warnings
                .iter()
                .map(|w| w.to_string())
                .collect(),
            Err(_) => Vec::new(),
        }
    }

    /// Sweep definition over the configured axes, perturbing this config's
    /// base parameters.
    pub fn grid_spec(&self) -> Result<GridSpec, ConfigError> {
        let spec = self.build_spec()?;
        let endpoints = match self.mode {
            Mode::Free => {
                let (p0_hot, p0_cold) = self.occupations();
                EndpointRule::Free { p0_hot, p0_cold }
            }
            Mode::Equilibrium => EndpointRule::Equilibrium,
        };
        let base = CycleParams {
            gap_hot: spec.hot.delta_gap(),
            broadening_hot: spec.hot.broadening(),
            gap_cold: spec.cold.delta_gap(),
            broadening_cold: spec.cold.broadening(),
            rho_hot: spec.hot.rho(),
            e0_hot: spec.hot.e0(),
            e0_cold: spec.cold.e0(),
            t_hot: spec.t_hot,
            t_cold: spec.t_cold,
            endpoints,
        };
        let mut axes = Vec::new();
        for axis in &self.sweep.axes {
            axes.push(axis.to_axis()?);
        }
        if axes.is_empty() || axes.len() > 2 {
            return Err(ConfigError::Semantic(format!(
                "sweep needs 1 or 2 axes, got {}",
                axes.len()
            )));
        }
        Ok(GridSpec { base, axes })
    }

    /// The two width axes for the work-difference surface: the configured
    /// sweep axes when they are exactly (delta_h, delta_l), the default
    /// 101 x 101 grid over [0.05, 5] otherwise.
    pub fn surface_axes(&self) -> Result<(Axis, Axis), ConfigError> {
        if self.sweep.axes.len() == 2
            && self.sweep.axes[0].param == "delta_h"
            && self.sweep.axes[1].param == "delta_l"
        {
            return Ok((self.sweep.axes[0].to_axis()?, self.sweep.axes[1].to_axis()?));
        }
        let default = default_sweep();
        Ok((default.axes[0].to_axis()?, default.axes[1].to_axis()?))
    }

    /// Oracle knobs from the configured tolerances.
    pub fn oracle_config(&self) -> OracleConfig {
        OracleConfig {
            quad_tol: self.tolerances.quad,
            match_tol: self.tolerances.match_tol,
            ..OracleConfig::default()
        }
    }
}
