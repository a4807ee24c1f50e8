//! Working-medium data model: one bound level below a flat band of states,
//! a hot/cold pair of such structures, and the cross-structure constraint
//! that the band's microstate count is the same on both sides of a stroke.
//!
//! Unit convention: the Boltzmann constant is 1 and energies, temperatures
//! and inverse temperatures are all expressed with the cold reservoir scale
//! KT_cold = 1 as the default unit.

use serde::Serialize;

use crate::error::{require_positive, require_probability, Error, Result};

/// Relative tolerance on the microstate-rescaling constraint
/// rho_hot * broadening_hot == rho_cold * broadening_cold.
pub const RESCALING_REL_TOL: f64 = 1e-12;

/// Spectrum of one engine configuration: a bound level at `e0`, then a gap,
/// then a band `[e_min, e_max]` carrying a constant density of states.
///
/// Width and density are strictly positive at the type level; the gap may
/// be zero (band touching the bound level) but not negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LevelStructure {
    e0: f64,
    delta_gap: f64,
    broadening: f64,
    rho: f64,
}

impl LevelStructure {
    pub fn new(e0: f64, delta_gap: f64, broadening: f64, rho: f64) -> Result<Self> {
        if !e0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "e0",
                value: e0,
                constraint: "must be finite",
            });
        }
        if delta_gap < 0.0 || !delta_gap.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta_gap",
                value: delta_gap,
                constraint: "must be finite and >= 0",
            });
        }
        require_positive("broadening", broadening)?;
        require_positive("rho", rho)?;
        Ok(Self {
            e0,
            delta_gap,
            broadening,
            rho,
        })
    }

    pub fn e0(&self) -> f64 {
        self.e0
    }

    /// Gap between the bound level and the band bottom.
    pub fn delta_gap(&self) -> f64 {
        self.delta_gap
    }

    /// Band width `e_max - e_min`.
    pub fn broadening(&self) -> f64 {
        self.broadening
    }

    /// Density of states over the band (constant).
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn e_min(&self) -> f64 {
        self.e0 + self.delta_gap
    }

    pub fn e_max(&self) -> f64 {
        self.e_min() + self.broadening
    }

    /// Same spectrum shifted by a constant energy offset.
    pub fn shifted(&self, offset: f64) -> Self {
        Self {
            e0: self.e0 + offset,
            ..*self
        }
    }

    /// Same spectrum with every energy and the origin scaled by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            e0: c * self.e0,
            delta_gap: c * self.delta_gap,
            broadening: c * self.broadening,
            rho: self.rho / c,
        }
    }
}

/// Hot and cold structures plus the two reservoir temperatures (as energies).
///
/// Construction is open so that invalid combinations can still be inspected;
/// [`validate_spec`] reports every violated invariant instead of aborting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleSpec {
    pub hot: LevelStructure,
    pub cold: LevelStructure,
    pub t_hot: f64,
    pub t_cold: f64,
}

impl CycleSpec {
    pub fn beta_hot(&self) -> f64 {
        1.0 / self.t_hot
    }

    pub fn beta_cold(&self) -> f64 {
        1.0 / self.t_cold
    }

    /// Every energy and both temperatures multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            hot: self.hot.scaled(c),
            cold: self.cold.scaled(c),
            t_hot: c * self.t_hot,
            t_cold: c * self.t_cold,
        }
    }
}

/// How the bound-level occupations at the stroke endpoints were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EndpointMode {
    /// Occupations are free parameters of the run.
    Free,
    /// Occupations derived from thermal equilibrium of each structure at its
    /// reservoir temperature.
    Equilibrium,
}

/// Bound-level occupations at the two isothermal endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PopulationEndpoints {
    p0_hot: f64,
    p0_cold: f64,
    mode: EndpointMode,
}

impl PopulationEndpoints {
    /// Endpoints fixed by hand, as in a parameter sweep.
    pub fn free(p0_hot: f64, p0_cold: f64) -> Result<Self> {
        require_probability("p0_hot", p0_hot)?;
        require_probability("p0_cold", p0_cold)?;
        Ok(Self {
            p0_hot,
            p0_cold,
            mode: EndpointMode::Free,
        })
    }

    /// Endpoints derived from Boltzmann equilibrium of each structure at its
    /// reservoir temperature.
    pub fn equilibrium(spec: &CycleSpec) -> Result<Self> {
        let p0_hot = crate::equilibrium::equilibrium_p0(&spec.hot, spec.beta_hot())?;
        let p0_cold = crate::equilibrium::equilibrium_p0(&spec.cold, spec.beta_cold())?;
        Ok(Self {
            p0_hot,
            p0_cold,
            mode: EndpointMode::Equilibrium,
        })
    }

    pub fn p0_hot(&self) -> f64 {
        self.p0_hot
    }

    pub fn p0_cold(&self) -> f64 {
        self.p0_cold
    }

    pub fn mode(&self) -> EndpointMode {
        self.mode
    }
}

/// One violated hard invariant, with the offending values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Violation {
    NonPositiveTemperature { name: &'static str, value: f64 },
    /// rho_hot * broadening_hot != rho_cold * broadening_cold: the stroke
    /// would change the number of band microstates.
    RescalingConstraint { hot_product: f64, cold_product: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NonPositiveTemperature { name, value } => {
                write!(f, "non-positive temperature {name} = {value}")
            }
            Violation::RescalingConstraint {
                hot_product,
                cold_product,
            } => write!(
                f,
                "rescaling constraint violated: rho_hot*broadening_hot = {hot_product} \
                 != rho_cold*broadening_cold = {cold_product}"
            ),
        }
    }
}

/// A suspicious-but-legal configuration worth flagging.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Warning {
    /// t_hot <= t_cold: the cycle runs as a dud or in reverse.
    ColdAtLeastAsHot { t_hot: f64, t_cold: f64 },
    /// Hot and cold structures share gap and broadening, so the net work
    /// vanishes identically whatever the occupations do.
    DegenerateZeroWork,
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::ColdAtLeastAsHot { t_hot, t_cold } => {
                write!(f, "t_hot = {t_hot} <= t_cold = {t_cold}: dud or reversed engine")
            }
            Warning::DegenerateZeroWork => {
                write!(f, "degenerate: zero-work cycle candidate (identical gap and broadening)")
            }
        }
    }
}

/// Outcome of [`validate_spec`]: all hard violations plus soft warnings.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every cross-structure invariant of a spec and report the findings.
/// Never aborts; a fully valid spec yields an empty report.
pub fn validate_spec(spec: &CycleSpec) -> ValidationReport {
    let mut report = ValidationReport::default();

    if spec.t_hot <= 0.0 || !spec.t_hot.is_finite() {
        report.violations.push(Violation::NonPositiveTemperature {
            name: "t_hot",
            value: spec.t_hot,
        });
    }
    if spec.t_cold <= 0.0 || !spec.t_cold.is_finite() {
        report.violations.push(Violation::NonPositiveTemperature {
            name: "t_cold",
            value: spec.t_cold,
        });
    }

    let hot_product = spec.hot.rho() * spec.hot.broadening();
    let cold_product = spec.cold.rho() * spec.cold.broadening();
    if (hot_product - cold_product).abs() > RESCALING_REL_TOL * hot_product.abs().max(cold_product.abs())
    {
        report.violations.push(Violation::RescalingConstraint {
            hot_product,
            cold_product,
        });
    }

    if spec.t_hot <= spec.t_cold && spec.t_hot > 0.0 && spec.t_cold > 0.0 {
        report.warnings.push(Warning::ColdAtLeastAsHot {
            t_hot: spec.t_hot,
            t_cold: spec.t_cold,
        });
    }
    if spec.hot.delta_gap() == spec.cold.delta_gap()
        && spec.hot.broadening() == spec.cold.broadening()
    {
        report.warnings.push(Warning::DegenerateZeroWork);
    }

    report
}

/// Build a spec that satisfies the rescaling constraint by construction:
/// the cold density of states is derived as rho_hot * broadening_hot /
/// broadening_cold rather than taken as an input.
#[allow(clippy::too_many_arguments)]
pub fn make_spec_from_broadenings(
    delta_gap_hot: f64,
    broadening_hot: f64,
    delta_gap_cold: f64,
    broadening_cold: f64,
    rho_hot: f64,
    t_hot: f64,
    t_cold: f64,
    e0_hot: f64,
    e0_cold: f64,
) -> Result<CycleSpec> {
    require_positive("t_hot", t_hot)?;
    require_positive("t_cold", t_cold)?;
    let hot = LevelStructure::new(e0_hot, delta_gap_hot, broadening_hot, rho_hot)?;
    let rho_cold = rho_hot * broadening_hot / broadening_cold;
    let cold = LevelStructure::new(e0_cold, delta_gap_cold, broadening_cold, rho_cold)?;
    Ok(CycleSpec {
        hot,
        cold,
        t_hot,
        t_cold,
    })
}
