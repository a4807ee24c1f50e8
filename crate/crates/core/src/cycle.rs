//! Closed-form cycle thermodynamics: the band energy map, per-branch
//! ledgers, net work, heat aggregates, efficiency, and the three limiting
//! cases (equal broadening, high temperature, frozen population).
//!
//! Sign convention: `work_out` is work delivered BY the medium, so positive
//! net work means engine output and each ledger satisfies
//! `heat_in = delta_u + work_out`. Heat totals are reported as intake
//! (branches 1 and 4) and release (branches 2 and 3), both positive in
//! engine mode, with `net_work = heat_in_total - heat_out_total`.

use serde::Serialize;

use crate::equilibrium::corner_state;
use crate::error::{require_probability, Error, Result};
use crate::medium::{CycleSpec, PopulationEndpoints};
use crate::numeric::band_offset;

/// |heat_in_total| below this (times the spec's leading energy scale) means
/// the efficiency ratio is treated as undefined rather than amplified noise.
pub const DEGENERATE_HEAT_TOL: f64 = 1e-12;

/// Work/heat bookkeeping for one stroke. `heat_in` is constructed as
/// `delta_u + work_out`, so the first law holds bit-exactly per ledger.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchLedger {
    pub branch_id: u8,
    pub delta_u: f64,
    pub work_out: f64,
    pub heat_in: f64,
}

impl BranchLedger {
    pub fn new(branch_id: u8, delta_u: f64, work_out: f64) -> Self {
        debug_assert!((1..=4).contains(&branch_id));
        Self {
            branch_id,
            delta_u,
            work_out,
            heat_in: delta_u + work_out,
        }
    }
}

/// Efficiency of one cycle, or the reason it is not reported.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "kebab-case")]
pub enum Efficiency {
    Defined(f64),
    /// Heat intake is zero within tolerance.
    DegenerateCycle,
    /// Heat intake is negative: the cycle is not running as an engine.
    NotEngineMode(f64),
}

impl Efficiency {
    pub fn value(&self) -> Option<f64> {
        match self {
            Efficiency::Defined(v) => Some(*v),
            _ => None,
        }
    }
}

/// Full bookkeeping for one cycle evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleResult {
    pub ledgers: [BranchLedger; 4],
    pub net_work: f64,
    pub heat_in_total: f64,
    pub heat_out_total: f64,
    pub efficiency: Efficiency,
}

fn x_hot(spec: &CycleSpec) -> f64 {
    spec.hot.broadening() / spec.t_hot
}

fn x_cold(spec: &CycleSpec) -> f64 {
    spec.cold.broadening() / spec.t_cold
}

/// Affine map carrying a hot-band energy to its cold-band image while
/// preserving the microstate count below it. Maps the hot band onto the
/// cold band bijectively; out-of-band inputs are rejected.
pub fn adiabatic_energy_map(spec: &CycleSpec, e_hot: f64) -> Result<f64> {
    let (min, max) = (spec.hot.e_min(), spec.hot.e_max());
    if !(e_hot >= min && e_hot <= max) {
        return Err(Error::OutOfBand {
            value: e_hot,
            min,
            max,
        });
    }
    Ok(spec.hot.rho() / spec.cold.rho() * (e_hot - min) + spec.cold.e_min())
}

/// Inverse of [`adiabatic_energy_map`]: cold-band energy to its hot-band
/// preimage.
pub fn adiabatic_energy_map_inverse(spec: &CycleSpec, e_cold: f64) -> Result<f64> {
    let (min, max) = (spec.cold.e_min(), spec.cold.e_max());
    if !(e_cold >= min && e_cold <= max) {
        return Err(Error::OutOfBand {
            value: e_cold,
            min,
            max,
        });
    }
    Ok(spec.cold.rho() / spec.hot.rho() * (e_cold - min) + spec.hot.e_min())
}

/// Work delivered by the medium on the stroke that reshapes the hot
/// structure into the cold one with the bound-level occupation frozen at
/// `p0_hot`. Closed form of the microstate-transport integral.
pub fn branch_work_2(spec: &CycleSpec, p0_hot: f64) -> Result<f64> {
    require_probability("p0_hot", p0_hot)?;
    let (h, c) = (&spec.hot, &spec.cold);
    let x = spec.beta_hot() * h.broadening();
    let density_shift = (c.rho() - h.rho()) / c.rho();
    Ok(p0_hot * (h.e0() - c.e0())
        + (1.0 - p0_hot)
            * ((h.rho() * h.e_min() - c.rho() * c.e_min()) / c.rho()
                + density_shift * (h.e_max() + h.broadening() * band_offset(x))))
}

/// Work delivered by the medium on the closing stroke (cold structure back
/// to hot, occupation frozen at `p0_cold`). Negative when restoring the
/// hot structure costs work.
pub fn branch_work_4(spec: &CycleSpec, p0_cold: f64) -> Result<f64> {
    require_probability("p0_cold", p0_cold)?;
    let (h, c) = (&spec.hot, &spec.cold);
    // band shaped at the cold temperature inside the hot-band variable:
    // the exponent rescales by rho_hot/rho_cold
    let x = spec.beta_cold() * (h.rho() / c.rho()) * h.broadening();
    let density_shift = (c.rho() - h.rho()) / c.rho();
    Ok(-(p0_cold * (h.e0() - c.e0())
        + (1.0 - p0_cold)
            * ((h.rho() * h.e_min() - c.rho() * c.e_min()) / c.rho()
                + density_shift * (h.e_max() + h.broadening() * band_offset(x)))))
}

/// Band contribution to the net work per unit broadening difference:
///
///   f = (1 - p0_hot) * band_offset(x_hot) - (1 - p0_cold) * band_offset(x_cold)
///
/// with x = broadening / temperature for each reservoir. Occupations may
/// sit on the closed interval [0, 1]; the frozen-population limit uses 0.
pub fn engine_f(p0_hot: f64, p0_cold: f64, x_hot: f64, x_cold: f64) -> Result<f64> {
    for (name, p) in [("p0_hot", p0_hot), ("p0_cold", p0_cold)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name,
                value: p,
                constraint: "must lie in [0, 1]",
            });
        }
    }
    for (name, x) in [("x_hot", x_hot), ("x_cold", x_cold)] {
        if x <= 0.0 || !x.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                value: x,
                constraint: "must be positive and finite",
            });
        }
    }
    Ok((1.0 - p0_hot) * band_offset(x_hot) - (1.0 - p0_cold) * band_offset(x_cold))
}

/// Net work output of the whole cycle in closed form:
///
///   (p0_cold - p0_hot) * ((gap_h + width_h) - (gap_c + width_c))
///   + (width_h - width_c) * f
///
/// Equals `branch_work_2 + branch_work_4` for every valid spec.
pub fn net_work(spec: &CycleSpec, endpoints: &PopulationEndpoints) -> Result<f64> {
    let f = engine_f(
        endpoints.p0_hot(),
        endpoints.p0_cold(),
        x_hot(spec),
        x_cold(spec),
    )?;
    let dp = endpoints.p0_cold() - endpoints.p0_hot();
    let top_hot = spec.hot.delta_gap() + spec.hot.broadening();
    let top_cold = spec.cold.delta_gap() + spec.cold.broadening();
    Ok(dp * (top_hot - top_cold) + (spec.hot.broadening() - spec.cold.broadening()) * f)
}

/// Closed-form heat aggregates: (intake over branches 1+4, release over
/// branches 2+3). Their difference is the net work identically.
pub fn heat_aggregates(spec: &CycleSpec, endpoints: &PopulationEndpoints) -> Result<(f64, f64)> {
    let f = engine_f(
        endpoints.p0_hot(),
        endpoints.p0_cold(),
        x_hot(spec),
        x_cold(spec),
    )?;
    let dp = endpoints.p0_cold() - endpoints.p0_hot();
    let heat_in = dp * (spec.hot.delta_gap() + spec.hot.broadening()) + spec.hot.broadening() * f;
    let heat_out =
        dp * (spec.cold.delta_gap() + spec.cold.broadening()) + spec.cold.broadening() * f;
    Ok((heat_in, heat_out))
}

/// Efficiency as work over heat intake, `1 - heat_out/heat_in`.
///
/// Errors when the intake vanishes within tolerance (degenerate cycle) or
/// is negative (not running as an engine).
pub fn efficiency(spec: &CycleSpec, endpoints: &PopulationEndpoints) -> Result<f64> {
    let (heat_in, heat_out) = heat_aggregates(spec, endpoints)?;
    efficiency_from_heats(spec, heat_in, heat_out).into_result()
}

fn efficiency_from_heats(spec: &CycleSpec, heat_in: f64, heat_out: f64) -> Efficiency {
    let scale = (spec.hot.delta_gap() + spec.hot.broadening()).max(1.0);
    if heat_in.abs() <= DEGENERATE_HEAT_TOL * scale {
        Efficiency::DegenerateCycle
    } else if heat_in < 0.0 {
        Efficiency::NotEngineMode(heat_in)
    } else {
        Efficiency::Defined(1.0 - heat_out / heat_in)
    }
}

impl Efficiency {
    fn into_result(self) -> Result<f64> {
        match self {
            Efficiency::Defined(v) => Ok(v),
            Efficiency::DegenerateCycle => Err(Error::DegenerateCycle { heat_in: 0.0 }),
            Efficiency::NotEngineMode(heat_in) => Err(Error::NotEngineMode { heat_in }),
        }
    }
}

/// Net work when both broadenings are equal: only the gap change works.
pub fn limit_two_level_work(spec: &CycleSpec, endpoints: &PopulationEndpoints) -> f64 {
    (endpoints.p0_cold() - endpoints.p0_hot()) * (spec.hot.delta_gap() - spec.cold.delta_gap())
}

/// Net work in the printed high-temperature limit: the band behaves as a
/// single level at its top edge. (The exact expression keeps a residual
/// band term; see the verification report.)
pub fn limit_high_temperature_work(spec: &CycleSpec, endpoints: &PopulationEndpoints) -> f64 {
    (endpoints.p0_cold() - endpoints.p0_hot())
        * ((spec.hot.delta_gap() + spec.hot.broadening())
            - (spec.cold.delta_gap() + spec.cold.broadening()))
}

/// Net work with no population transfer between the bound level and the
/// band (`p0_hot = p0_cold = p`): the whole output comes from the band.
pub fn limit_frozen_population_work(spec: &CycleSpec, p: f64) -> Result<f64> {
    require_probability("p", p)?;
    let f0 = engine_f(0.0, 0.0, x_hot(spec), x_cold(spec))?;
    Ok((spec.hot.broadening() - spec.cold.broadening()) * (1.0 - p) * f0)
}

/// Corner states of the cycle in stroke order: start of the hot contact,
/// end of the hot contact, end of the first reshaping stroke, end of the
/// cold contact.
pub fn cycle_corners(
    spec: &CycleSpec,
    endpoints: &PopulationEndpoints,
) -> Result<[crate::equilibrium::CornerState; 4]> {
    let a = corner_state(&spec.hot, spec.beta_cold(), endpoints.p0_cold())?;
    let b = corner_state(&spec.hot, spec.beta_hot(), endpoints.p0_hot())?;
    let c = corner_state(&spec.cold, spec.beta_hot(), endpoints.p0_hot())?;
    let d = corner_state(&spec.cold, spec.beta_cold(), endpoints.p0_cold())?;
    Ok([a, b, c, d])
}

/// Evaluate the whole cycle: four first-law-consistent ledgers, closed-form
/// net work and heat aggregates, and the efficiency outcome.
pub fn evaluate_cycle(spec: &CycleSpec, endpoints: &PopulationEndpoints) -> Result<CycleResult> {
    let [a, b, c, d] = cycle_corners(spec, endpoints)?;
    let w2 = branch_work_2(spec, endpoints.p0_hot())?;
    let w4 = branch_work_4(spec, endpoints.p0_cold())?;

    let ledgers = [
        BranchLedger::new(1, b.mean_energy - a.mean_energy, 0.0),
        BranchLedger::new(2, c.mean_energy - b.mean_energy, w2),
        BranchLedger::new(3, d.mean_energy - c.mean_energy, 0.0),
        BranchLedger::new(4, a.mean_energy - d.mean_energy, w4),
    ];

    let net = net_work(spec, endpoints)?;
    let (heat_in, heat_out) = heat_aggregates(spec, endpoints)?;

    Ok(CycleResult {
        ledgers,
        net_work: net,
        heat_in_total: heat_in,
        heat_out_total: heat_out,
        efficiency: efficiency_from_heats(spec, heat_in, heat_out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::medium::make_spec_from_broadenings;

    /// Default surface parameters: equal gaps, widths 2 and 1, reservoir
    /// temperatures 5 and 1, occupations 0.3 and 0.5.
    fn default_spec() -> CycleSpec {
        make_spec_from_broadenings(1.0, 2.0, 1.0, 1.0, 1.0, 5.0, 1.0, 0.0, 0.0).unwrap()
    }

    fn default_endpoints() -> PopulationEndpoints {
        PopulationEndpoints::free(0.3, 0.5).unwrap()
    }

    fn identical_spec() -> CycleSpec {
        // bit-identical structures on both sides of the stroke
        let s = crate::medium::LevelStructure::new(0.0, 1.5, 1.5, 0.8).unwrap();
        CycleSpec {
            hot: s,
            cold: s,
            t_hot: 5.0,
            t_cold: 1.0,
        }
    }

    #[test]
    fn map_sends_band_edges_to_band_edges() {
        let spec = default_spec();
        let lo = adiabatic_energy_map(&spec, spec.hot.e_min()).unwrap();
        let hi = adiabatic_energy_map(&spec, spec.hot.e_max()).unwrap();
        assert!((lo - spec.cold.e_min()).abs() < 1e-15);
        assert!((hi - spec.cold.e_max()).abs() < 1e-12);
    }

    #[test]
    fn map_preserves_fractional_band_position() {
        let spec = default_spec();
        let mid_hot = spec.hot.e_min() + 0.5 * spec.hot.broadening();
        let mapped = adiabatic_energy_map(&spec, mid_hot).unwrap();
        let mid_cold = spec.cold.e_min() + 0.5 * spec.cold.broadening();
        assert!((mapped - mid_cold).abs() < 1e-14);
    }

    #[test]
    fn map_round_trip_is_identity() {
        let spec = default_spec();
        for t in [0.0, 0.13, 0.5, 0.987, 1.0] {
            let e = spec.hot.e_min() + t * spec.hot.broadening();
            let back = adiabatic_energy_map_inverse(&spec, adiabatic_energy_map(&spec, e).unwrap())
                .unwrap();
            assert!((back - e).abs() <= 1e-14 * e.abs().max(1.0));
        }
    }

    #[test]
    fn map_rejects_out_of_band_energy() {
        let spec = default_spec();
        assert!(matches!(
            adiabatic_energy_map(&spec, spec.hot.e_max() + 0.1),
            Err(Error::OutOfBand { .. })
        ));
    }

    #[test]
    fn branch_works_vanish_for_identical_structures() {
        let spec = identical_spec();
        assert_eq!(branch_work_2(&spec, 0.37).unwrap(), 0.0);
        assert_eq!(branch_work_4(&spec, 0.61).unwrap(), 0.0);
    }

    #[test]
    fn branch_work_2_equal_broadening_reduction() {
        // equal widths mean equal densities; only the level shifts work
        let spec = make_spec_from_broadenings(2.0, 1.0, 0.5, 1.0, 1.3, 5.0, 1.0, 0.2, -0.1).unwrap();
        let p0 = 0.3;
        let expected = p0 * (spec.hot.e0() - spec.cold.e0())
            + (1.0 - p0) * (spec.hot.e_min() - spec.cold.e_min());
        assert!((branch_work_2(&spec, p0).unwrap() - expected).abs() < 1e-14);

        let p0c = 0.5;
        let expected4 = -(p0c * (spec.hot.e0() - spec.cold.e0())
            + (1.0 - p0c) * (spec.hot.e_min() - spec.cold.e_min()));
        assert!((branch_work_4(&spec, p0c).unwrap() - expected4).abs() < 1e-14);
    }

    #[test]
    fn branch_work_signs_at_default_point() {
        // the hot structure has the wider band: reshaping it outward gives
        // work, restoring it costs work
        let spec = default_spec();
        assert!(branch_work_2(&spec, 0.3).unwrap() > 0.0);
        assert!(branch_work_4(&spec, 0.5).unwrap() < 0.0);
    }

    #[test]
    fn engine_f_trivial_zeros() {
        assert_eq!(engine_f(1.0, 1.0, 0.4, 1.0).unwrap(), 0.0);
        assert_eq!(engine_f(0.25, 0.25, 0.7, 0.7).unwrap(), 0.0);
    }

    #[test]
    fn engine_f_default_point_value() {
        // frozen from the quadrature-backed evaluation of the two band terms
        let f = engine_f(0.3, 0.5, 0.4, 1.0).unwrap();
        assert!((f - (-0.082_282_993_769_15)).abs() < 1e-11, "f = {f}");
    }

    #[test]
    fn engine_f_rejects_bad_arguments() {
        assert!(engine_f(-0.1, 0.5, 1.0, 1.0).is_err());
        assert!(engine_f(0.3, 0.5, 0.0, 1.0).is_err());
        assert!(engine_f(0.3, 0.5, 1.0, -2.0).is_err());
    }

    #[test]
    fn net_work_dead_cycle_is_zero() {
        let spec = identical_spec();
        let endpoints = PopulationEndpoints::free(0.4, 0.4).unwrap();
        assert_eq!(net_work(&spec, &endpoints).unwrap(), 0.0);
    }

    #[test]
    fn net_work_default_point_value() {
        let w = net_work(&default_spec(), &default_endpoints()).unwrap();
        assert!((w - 0.117_717_006_230_85).abs() < 1e-11, "net work = {w}");
    }

    #[test]
    fn net_work_equals_branch_sum_at_default_point() {
        let spec = default_spec();
        let endpoints = default_endpoints();
        let sum = branch_work_2(&spec, endpoints.p0_hot()).unwrap()
            + branch_work_4(&spec, endpoints.p0_cold()).unwrap();
        let closed = net_work(&spec, &endpoints).unwrap();
        assert!((sum - closed).abs() < 1e-13, "{sum} vs {closed}");
    }

    #[test]
    fn net_work_reduces_to_gap_form_for_equal_broadenings() {
        let spec = make_spec_from_broadenings(2.0, 1.5, 0.5, 1.5, 1.0, 5.0, 1.0, 0.0, 0.0).unwrap();
        let endpoints = default_endpoints();
        let full = net_work(&spec, &endpoints).unwrap();
        let reduced = limit_two_level_work(&spec, &endpoints);
        assert!((full - reduced).abs() < 1e-15);
        assert!((reduced - 0.2 * 1.5).abs() < 1e-15);
    }

    #[test]
    fn heat_aggregates_default_point() {
        let (heat_in, heat_out) = heat_aggregates(&default_spec(), &default_endpoints()).unwrap();
        assert!((heat_in - 0.435_434_012_461_70).abs() < 1e-11, "in = {heat_in}");
        assert!((heat_out - 0.317_717_006_230_85).abs() < 1e-11, "out = {heat_out}");
        let net = net_work(&default_spec(), &default_endpoints()).unwrap();
        assert!((heat_in - heat_out - net).abs() < 1e-15);
    }

    #[test]
    fn heat_aggregates_identical_inputs_cancel() {
        let spec = identical_spec();
        let endpoints = PopulationEndpoints::free(0.4, 0.4).unwrap();
        let (heat_in, heat_out) = heat_aggregates(&spec, &endpoints).unwrap();
        assert_eq!(heat_in, heat_out);
        assert_eq!(net_work(&spec, &endpoints).unwrap(), 0.0);
    }

    #[test]
    fn frozen_population_heats_scale_with_band_widths() {
        let spec = default_spec();
        let p = 0.35;
        let endpoints = PopulationEndpoints::free(p, p).unwrap();
        let (heat_in, heat_out) = heat_aggregates(&spec, &endpoints).unwrap();
        let f0 = engine_f(0.0, 0.0, 2.0 / 5.0, 1.0).unwrap();
        let f = (1.0 - p) * f0;
        assert!((heat_in - spec.hot.broadening() * f).abs() < 1e-15);
        assert!((heat_out - spec.cold.broadening() * f).abs() < 1e-15);
    }

    #[test]
    fn efficiency_default_point_value() {
        let eta = efficiency(&default_spec(), &default_endpoints()).unwrap();
        assert!((eta - 0.270_344_077_086_09).abs() < 1e-11, "eta = {eta}");
    }

    #[test]
    fn efficiency_equal_occupations_is_width_ratio() {
        let spec = default_spec();
        let endpoints = PopulationEndpoints::free(0.25, 0.25).unwrap();
        let eta = efficiency(&spec, &endpoints).unwrap();
        assert!((eta - 0.5).abs() < 1e-12, "eta = {eta}");
    }

    #[test]
    fn efficiency_equal_broadening_is_not_gap_ratio() {
        // with gaps 2 and 1 at equal widths the net work matches the
        // gap-only engine but the efficiency does not
        let spec = make_spec_from_broadenings(2.0, 1.0, 1.0, 1.0, 1.0, 5.0, 1.0, 0.0, 0.0).unwrap();
        let endpoints = default_endpoints();
        let eta = efficiency(&spec, &endpoints).unwrap();
        let gap_ratio_eta = 1.0 - spec.cold.delta_gap() / spec.hot.delta_gap();
        assert!((eta - gap_ratio_eta).abs() > 1e-3, "{eta} vs {gap_ratio_eta}");
    }

    #[test]
    fn efficiency_degenerate_cycle_rejected() {
        // identical structures, equal temperatures, equal occupations:
        // nothing moves and no heat is taken in
        let spec = CycleSpec {
            t_hot: 1.0,
            t_cold: 1.0,
            ..identical_spec()
        };
        let endpoints = PopulationEndpoints::free(0.4, 0.4).unwrap();
        assert!(matches!(
            efficiency(&spec, &endpoints),
            Err(Error::DegenerateCycle { .. })
        ));
    }

    #[test]
    fn efficiency_reverse_mode_diagnosed() {
        // swap occupations so the population transfer runs backwards
        let spec = default_spec();
        let endpoints = PopulationEndpoints::free(0.5, 0.3).unwrap();
        assert!(matches!(
            efficiency(&spec, &endpoints),
            Err(Error::NotEngineMode { .. })
        ));
    }

    #[test]
    fn frozen_population_limit_matches_net_work() {
        let spec = default_spec();
        for &p in &[0.2, 0.5, 0.8] {
            let endpoints = PopulationEndpoints::free(p, p).unwrap();
            let full = net_work(&spec, &endpoints).unwrap();
            let frozen = limit_frozen_population_work(&spec, p).unwrap();
            assert!((full - frozen).abs() < 1e-15, "p = {p}");
        }
    }

    #[test]
    fn frozen_population_positive_under_stated_conditions() {
        // wider hot band and hot/cold temperature ratio above the width ratio
        for &(wh, wl, th) in &[(2.0, 1.0, 5.0), (3.0, 1.0, 4.0), (1.5, 1.0, 2.0)] {
            let spec =
                make_spec_from_broadenings(1.0, wh, 1.0, wl, 1.0, th, 1.0, 0.0, 0.0).unwrap();
            assert!(th / 1.0 > wh / wl);
            let w = limit_frozen_population_work(&spec, 0.4).unwrap();
            assert!(w > 0.0, "widths {wh}/{wl}, t_hot {th}: {w}");
        }
    }

    #[test]
    fn ledgers_close_the_cycle() {
        let spec = default_spec();
        let result = evaluate_cycle(&spec, &default_endpoints()).unwrap();
        let du_sum: f64 = result.ledgers.iter().map(|l| l.delta_u).sum();
        let heat_sum: f64 = result.ledgers.iter().map(|l| l.heat_in).sum();
        let work_sum: f64 = result.ledgers.iter().map(|l| l.work_out).sum();
        assert!(du_sum.abs() < 1e-14, "state function must close: {du_sum}");
        assert!((heat_sum - work_sum).abs() < 1e-14);
        assert_eq!(result.ledgers[0].work_out, 0.0);
        assert_eq!(result.ledgers[2].work_out, 0.0);
        for ledger in &result.ledgers {
            assert_eq!(ledger.heat_in, ledger.delta_u + ledger.work_out);
        }
    }

    #[test]
    fn cycle_result_consistency() {
        let result = evaluate_cycle(&default_spec(), &default_endpoints()).unwrap();
        assert!(
            (result.net_work - (result.heat_in_total - result.heat_out_total)).abs() < 1e-14
        );
        let eta = result.efficiency.value().unwrap();
        assert!((eta - result.net_work / result.heat_in_total).abs() < 1e-12);
    }
}
