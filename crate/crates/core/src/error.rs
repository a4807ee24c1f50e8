use thiserror::Error;

/// Errors produced by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violated a hard precondition (non-positive width, bad probability, ...).
    #[error("invalid parameter `{name}`: {value} ({constraint})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// No structure with a non-negative gap reaches the requested bound-level occupation.
    #[error("unreachable occupation: p0 = {target_p0} would need gap {gap} < 0")]
    UnreachableOccupation { target_p0: f64, gap: f64 },

    /// Energy handed to the band map lies outside the source band.
    #[error("energy {value} outside band [{min}, {max}]")]
    OutOfBand { value: f64, min: f64, max: f64 },

    /// Total heat intake is zero within tolerance; the efficiency ratio is undefined.
    #[error("degenerate cycle: heat intake {heat_in} is zero within tolerance")]
    DegenerateCycle { heat_in: f64 },

    /// Heat intake is negative, so the cycle is not running as an engine and the
    /// work-over-intake ratio is not reported as an efficiency.
    #[error("not in engine mode: heat intake {heat_in} < 0")]
    NotEngineMode { heat_in: f64 },

    /// Adaptive quadrature hit its depth limit before meeting the tolerance.
    #[error("quadrature did not converge: error estimate {error_estimate} > budget {budget} at depth limit {depth_limit}")]
    QuadratureNonConvergence {
        error_estimate: f64,
        budget: f64,
        depth_limit: usize,
    },

    /// A grid search found no cell with a usable value.
    #[error("no feasible cell for objective `{objective}`")]
    NoFeasibleCell { objective: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint: "must be positive and finite",
        })
    }
}

pub(crate) fn require_probability(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint: "must lie strictly inside (0, 1)",
        })
    }
}
