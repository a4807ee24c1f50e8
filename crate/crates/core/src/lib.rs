//! Thermodynamics of a four-stroke heat engine whose working medium is a
//! single bound level plus a flat band of states.
//!
//! The crate computes per-stroke work/heat ledgers, net work, efficiency
//! and their limiting cases in closed form, and validates every closed
//! form against two independent numerical oracles: adaptive quadrature of
//! the defining integrals and an N-level ladder discretization of the band.
//!
//! Energies are expressed in units of the cold reservoir scale
//! (KT_cold = 1) with the Boltzmann constant set to 1.

pub mod cycle;
pub mod equilibrium;
pub mod error;
pub mod medium;
pub mod numeric;
pub mod oracle;
pub mod sweep;

pub use cycle::{
    adiabatic_energy_map, adiabatic_energy_map_inverse, branch_work_2, branch_work_4,
    efficiency, engine_f, evaluate_cycle, heat_aggregates, limit_frozen_population_work,
    limit_high_temperature_work, limit_two_level_work, net_work, BranchLedger, CycleResult,
    Efficiency,
};
pub use equilibrium::{
    continuum_mean_energy, corner_state, equilibrium_p0, partition_function, solve_gap_for_p0,
    CornerState,
};
pub use error::{Error, Result};
pub use medium::{
    make_spec_from_broadenings, validate_spec, CycleSpec, EndpointMode, LevelStructure,
    PopulationEndpoints, ValidationReport,
};
pub use oracle::{
    ladder_oracle, oracle_branch_quantities, quad_integrate, run_verification, OracleReport,
};
pub use sweep::{best_point, fig3_surface, positive_work_region, SweepGrid};
