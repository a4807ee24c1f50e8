//! Parameter sweeps over the closed forms: the work-difference surface on
//! a broadening grid, positive-work masks, and grid argmax search.
//!
//! Cells are independent pure evaluations assembled in row-major order, so
//! the output is bit-identical however the cells are scheduled.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cycle::{engine_f, evaluate_cycle, Efficiency};
use crate::error::{Error, Result};
use crate::medium::{make_spec_from_broadenings, PopulationEndpoints};

/// Parameters a sweep axis may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    BroadeningHot,
    BroadeningCold,
    GapHot,
    GapCold,
    THot,
    TCold,
    P0Hot,
    P0Cold,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::BroadeningHot => "delta_h",
            SweepParam::BroadeningCold => "delta_l",
            SweepParam::GapHot => "delta_gap_h",
            SweepParam::GapCold => "delta_gap_l",
            SweepParam::THot => "t_hot",
            SweepParam::TCold => "t_cold",
            SweepParam::P0Hot => "p0_hot",
            SweepParam::P0Cold => "p0_cold",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "delta_h" => SweepParam::BroadeningHot,
            "delta_l" => SweepParam::BroadeningCold,
            "delta_gap_h" => SweepParam::GapHot,
            "delta_gap_l" => SweepParam::GapCold,
            "t_hot" => SweepParam::THot,
            "t_cold" => SweepParam::TCold,
            "p0_hot" => SweepParam::P0Hot,
            "p0_cold" => SweepParam::P0Cold,
            _ => return None,
        })
    }
}

/// One linearly spaced sweep axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(param: SweepParam, min: f64, max: f64, count: usize) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::InvalidParameter {
                name: "axis range",
                value: min,
                constraint: "min and max must be finite with min <= max",
            });
        }
        if count == 0 || (count == 1 && min != max) {
            return Err(Error::InvalidParameter {
                name: "axis count",
                value: count as f64,
                constraint: "count must be >= 1 (and >= 2 unless min == max)",
            });
        }
        Ok(Self {
            param,
            min,
            max,
            count,
        })
    }

    pub fn value(&self, index: usize) -> f64 {
        debug_assert!(index < self.count);
        if self.count == 1 {
            self.min
        } else {
            self.min + index as f64 * (self.max - self.min) / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Per-cell outcome of a sweep evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Ok,
    InvalidSpec,
    UndefinedEfficiency,
    /// Only produced by the positive-work mask: |net work| below the
    /// boundary tolerance.
    Boundary,
}

impl CellStatus {
    pub fn label(&self) -> &'static str {
        match self {
            CellStatus::Ok => "ok",
            CellStatus::InvalidSpec => "invalid-spec",
            CellStatus::UndefinedEfficiency => "undefined-efficiency",
            CellStatus::Boundary => "boundary",
        }
    }
}

/// Row-major grid of one scalar per cell plus a status flag, with the axis
/// definitions and the fixed parameters that produced it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub axes: Vec<Axis>,
    pub fixed: BTreeMap<String, f64>,
    pub values: Vec<f64>,
    pub status: Vec<CellStatus>,
}

impl SweepGrid {
    pub fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    /// Axis values of one row-major cell index.
    pub fn coords(&self, index: usize) -> Vec<f64> {
        let mut rem = index;
        let mut coords = vec![0.0; self.axes.len()];
        for (slot, axis) in self.axes.iter().enumerate().rev() {
            coords[slot] = axis.value(rem % axis.count);
            rem /= axis.count;
        }
        coords
    }
}

/// Work difference between the full cycle and its equal-broadening
/// reduction, which factorizes as
///
///   (width_hot - width_cold) * ((p0_cold - p0_hot) + f)
///
/// independent of the gaps, hence exactly zero when the widths coincide.
pub fn work_difference(
    p0_hot: f64,
    p0_cold: f64,
    t_hot: f64,
    t_cold: f64,
    width_hot: f64,
    width_cold: f64,
) -> Result<f64> {
    let f = engine_f(p0_hot, p0_cold, width_hot / t_hot, width_cold / t_cold)?;
    Ok((width_hot - width_cold) * ((p0_cold - p0_hot) + f))
}

/// The work-difference surface over a (hot width, cold width) grid at fixed
/// occupations and temperatures. Cells on the width diagonal are exactly 0.
pub fn fig3_surface(
    p0_cold: f64,
    p0_hot: f64,
    t_hot: f64,
    t_cold: f64,
    axis_h: &Axis,
    axis_l: &Axis,
) -> Result<SweepGrid> {
    for axis in [axis_h, axis_l] {
        if axis.min <= 0.0 || !axis.min.is_finite() {
            return Err(Error::InvalidParameter {
                name: "axis min",
                value: axis.min,
                constraint: "width axes must be positive",
            });
        }
        if axis.count < 2 {
            return Err(Error::InvalidParameter {
                name: "axis count",
                value: axis.count as f64,
                constraint: "surface axes need at least 2 points",
            });
        }
    }
    let mut fixed = BTreeMap::new();
    fixed.insert("p0_cold".to_string(), p0_cold);
    fixed.insert("p0_hot".to_string(), p0_hot);
    fixed.insert("t_cold".to_string(), t_cold);
    fixed.insert("t_hot".to_string(), t_hot);

    let mut values = Vec::with_capacity(axis_h.count * axis_l.count);
    let mut status = Vec::with_capacity(axis_h.count * axis_l.count);
    for i in 0..axis_h.count {
        let width_h = axis_h.value(i);
        for j in 0..axis_l.count {
            let width_l = axis_l.value(j);
            match work_difference(p0_hot, p0_cold, t_hot, t_cold, width_h, width_l) {
                Ok(v) => {
                    values.push(v);
                    status.push(CellStatus::Ok);
                }
                Err(_) => {
                    values.push(f64::NAN);
                    status.push(CellStatus::InvalidSpec);
                }
            }
        }
    }
    Ok(SweepGrid {
        axes: vec![axis_h.clone(), axis_l.clone()],
        fixed,
        values,
        status,
    })
}

/// Measured findings about a work-difference surface: slope signs probed
/// by central finite differences at two hot-width columns, the diagonal
/// zeros, and the observed sign pattern on each side of the diagonal.
pub fn fig3_annotations(
    p0_cold: f64,
    p0_hot: f64,
    t_hot: f64,
    t_cold: f64,
    grid: &SweepGrid,
) -> Vec<String> {
    let mut notes = Vec::new();

    for &width_h in &[0.1, 4.5] {
        let probe_l = 1.5;
        let h = 1e-3;
        let up =
            work_difference(p0_hot, p0_cold, t_hot, t_cold, width_h, probe_l + h).unwrap_or(f64::NAN);
        let down =
            work_difference(p0_hot, p0_cold, t_hot, t_cold, width_h, probe_l - h).unwrap_or(f64::NAN);
        let slope = (up - down) / (2.0 * h);
        let direction = if slope < 0.0 { "decreasing" } else { "increasing" };
        notes.push(format!(
            "slope in delta_l at delta_h={width_h}: {direction} (finite difference {slope:.6e} at delta_l={probe_l})"
        ));
    }

    if grid.axes.len() == 2 {
        let (nh, nl) = (grid.axes[0].count, grid.axes[1].count);
        let (mut diag, mut diag_zero) = (0usize, 0usize);
        let (mut above, mut above_pos) = (0usize, 0usize);
        let (mut below, mut below_neg) = (0usize, 0usize);
        for i in 0..nh {
            let wh = grid.axes[0].value(i);
            for j in 0..nl {
                let wl = grid.axes[1].value(j);
                let v = grid.values[i * nl + j];
                if wh == wl {
                    diag += 1;
                    if v == 0.0 {
                        diag_zero += 1;
                    }
                } else if wh > wl {
                    above += 1;
                    if v > 0.0 {
                        above_pos += 1;
                    }
                } else {
                    below += 1;
                    if v < 0.0 {
                        below_neg += 1;
                    }
                }
            }
        }
        notes.push(format!(
            "diagonal cells exactly zero: {diag_zero}/{diag}"
        ));
        notes.push(format!(
            "sign pattern: delta_h > delta_l cells positive {above_pos}/{above}, \
             delta_h < delta_l cells negative {below_neg}/{below} \
             (sign flips across the diagonal, not positive on both sides)"
        ));
    }
    notes
}

/// How the bound-level occupations are produced while sweeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EndpointRule {
    Free { p0_hot: f64, p0_cold: f64 },
    Equilibrium,
}

/// Base parameter set a sweep perturbs cell by cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleParams {
    pub gap_hot: f64,
    pub broadening_hot: f64,
    pub gap_cold: f64,
    pub broadening_cold: f64,
    pub rho_hot: f64,
    pub e0_hot: f64,
    pub e0_cold: f64,
    pub t_hot: f64,
    pub t_cold: f64,
    pub endpoints: EndpointRule,
}

impl CycleParams {
    fn apply(&self, param: SweepParam, value: f64) -> Self {
        let mut next = *self;
        match param {
            SweepParam::BroadeningHot => next.broadening_hot = value,
            SweepParam::BroadeningCold => next.broadening_cold = value,
            SweepParam::GapHot => next.gap_hot = value,
            SweepParam::GapCold => next.gap_cold = value,
            SweepParam::THot => next.t_hot = value,
            SweepParam::TCold => next.t_cold = value,
            SweepParam::P0Hot => {
                if let EndpointRule::Free { ref mut p0_hot, .. } = next.endpoints {
                    *p0_hot = value;
                }
            }
            SweepParam::P0Cold => {
                if let EndpointRule::Free { ref mut p0_cold, .. } = next.endpoints {
                    *p0_cold = value;
                }
            }
        }
        next
    }

    fn evaluate(&self) -> Result<(f64, Efficiency)> {
        let spec = make_spec_from_broadenings(
            self.gap_hot,
            self.broadening_hot,
            self.gap_cold,
            self.broadening_cold,
            self.rho_hot,
            self.t_hot,
            self.t_cold,
            self.e0_hot,
            self.e0_cold,
        )?;
        let endpoints = match self.endpoints {
            EndpointRule::Free { p0_hot, p0_cold } => PopulationEndpoints::free(p0_hot, p0_cold)?,
            EndpointRule::Equilibrium => PopulationEndpoints::equilibrium(&spec)?,
        };
        let result = evaluate_cycle(&spec, &endpoints)?;
        Ok((result.net_work, result.efficiency))
    }

    fn fixed_map(&self, axes: &[Axis]) -> BTreeMap<String, f64> {
        let mut fixed = BTreeMap::new();
        let swept: Vec<SweepParam> = axes.iter().map(|a| a.param).collect();
        let mut put = |param: SweepParam, value: f64| {
            if !swept.contains(&param) {
                fixed.insert(param.name().to_string(), value);
            }
        };
        put(SweepParam::GapHot, self.gap_hot);
        put(SweepParam::BroadeningHot, self.broadening_hot);
        put(SweepParam::GapCold, self.gap_cold);
        put(SweepParam::BroadeningCold, self.broadening_cold);
        put(SweepParam::THot, self.t_hot);
        put(SweepParam::TCold, self.t_cold);
        if let EndpointRule::Free { p0_hot, p0_cold } = self.endpoints {
            put(SweepParam::P0Hot, p0_hot);
            put(SweepParam::P0Cold, p0_cold);
        }
        fixed.insert("rho_h".to_string(), self.rho_hot);
        fixed.insert("e0_h".to_string(), self.e0_hot);
        fixed.insert("e0_l".to_string(), self.e0_cold);
        fixed
    }
}

/// A sweep definition: base parameters plus one or two axes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub base: CycleParams,
    pub axes: Vec<Axis>,
}

impl GridSpec {
    fn cell_params(&self, index: usize) -> CycleParams {
        let mut rem = index;
        let mut params = self.base;
        for axis in self.axes.iter().rev() {
            params = params.apply(axis.param, axis.value(rem % axis.count));
            rem /= axis.count;
        }
        params
    }

    fn cell_count(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }
}

/// Net work and efficiency over a grid; cells that fail to build or whose
/// efficiency is undefined are flagged, not fatal.
pub fn cycle_grid(grid: &GridSpec) -> Result<(SweepGrid, SweepGrid)> {
    if grid.axes.is_empty() || grid.axes.len() > 2 {
        return Err(Error::InvalidParameter {
            name: "axes",
            value: grid.axes.len() as f64,
            constraint: "sweep supports 1 or 2 axes",
        });
    }
    let cells = grid.cell_count();
    let mut net_values = Vec::with_capacity(cells);
    let mut net_status = Vec::with_capacity(cells);
    let mut eta_values = Vec::with_capacity(cells);
    let mut eta_status = Vec::with_capacity(cells);
    for index in 0..cells {
        match grid.cell_params(index).evaluate() {
            Ok((net, eta)) => {
                net_values.push(net);
                net_status.push(CellStatus::Ok);
                match eta {
                    Efficiency::Defined(v) => {
                        eta_values.push(v);
                        eta_status.push(CellStatus::Ok);
                    }
                    _ => {
                        eta_values.push(f64::NAN);
                        eta_status.push(CellStatus::UndefinedEfficiency);
                    }
                }
            }
            Err(_) => {
                net_values.push(f64::NAN);
                net_status.push(CellStatus::InvalidSpec);
                eta_values.push(f64::NAN);
                eta_status.push(CellStatus::InvalidSpec);
            }
        }
    }
    let fixed = grid.base.fixed_map(&grid.axes);
    Ok((
        SweepGrid {
            axes: grid.axes.clone(),
            fixed: fixed.clone(),
            values: net_values,
            status: net_status,
        },
        SweepGrid {
            axes: grid.axes.clone(),
            fixed,
            values: eta_values,
            status: eta_status,
        },
    ))
}

/// Boolean mask (1.0/0.0) of net work > 0 over the grid; cells with
/// |net work| below `boundary_tol` are flagged [`CellStatus::Boundary`].
pub fn positive_work_region(grid: &GridSpec, boundary_tol: f64) -> Result<SweepGrid> {
    let (net, _) = cycle_grid(grid)?;
    let values: Vec<f64> = net
        .values
        .iter()
        .map(|&v| if v > 0.0 { 1.0 } else { 0.0 })
        .collect();
    let status: Vec<CellStatus> = net
        .values
        .iter()
        .zip(&net.status)
        .map(|(&v, &s)| match s {
            CellStatus::Ok if v.abs() < boundary_tol => CellStatus::Boundary,
            other => other,
        })
        .collect();
    Ok(SweepGrid {
        axes: net.axes,
        fixed: net.fixed,
        values,
        status,
    })
}

/// Grid objectives for [`best_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    NetWork,
    Efficiency,
}

/// Argmax cell of a grid under the objective.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BestPoint {
    /// Row-major cell index.
    pub index: usize,
    /// Axis values at the cell, in axis order.
    pub coords: Vec<f64>,
    pub value: f64,
}

/// Deterministic argmax over the grid. Ties keep the lowest row-major
/// index; cells whose value is unusable for the objective are skipped.
pub fn best_point(grid: &GridSpec, objective: Objective) -> Result<BestPoint> {
    let (net, eta) = cycle_grid(grid)?;
    let source = match objective {
        Objective::NetWork => &net,
        Objective::Efficiency => &eta,
    };
    let mut best: Option<(usize, f64)> = None;
    for (index, (&value, &status)) in source.values.iter().zip(&source.status).enumerate() {
        if status != CellStatus::Ok {
            continue;
        }
        match best {
            Some((_, current)) if value <= current => {}
            _ => best = Some((index, value)),
        }
    }
    let (index, value) = best.ok_or(Error::NoFeasibleCell {
        objective: match objective {
            Objective::NetWork => "net_work",
            Objective::Efficiency => "efficiency",
        },
    })?;
    Ok(BestPoint {
        index,
        coords: source.coords(index),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::{limit_two_level_work, net_work};

    fn default_axes() -> (Axis, Axis) {
        (
            Axis::new(SweepParam::BroadeningHot, 0.05, 5.0, 21).unwrap(),
            Axis::new(SweepParam::BroadeningCold, 0.05, 5.0, 21).unwrap(),
        )
    }

    fn base_params() -> CycleParams {
        CycleParams {
            gap_hot: 1.0,
            broadening_hot: 2.0,
            gap_cold: 1.0,
            broadening_cold: 1.0,
            rho_hot: 1.0,
            e0_hot: 0.0,
            e0_cold: 0.0,
            t_hot: 5.0,
            t_cold: 1.0,
            endpoints: EndpointRule::Free {
                p0_hot: 0.3,
                p0_cold: 0.5,
            },
        }
    }

    #[test]
    fn axis_endpoints_are_exact() {
        let axis = Axis::new(SweepParam::BroadeningHot, 0.05, 5.0, 101).unwrap();
        assert_eq!(axis.value(0), 0.05);
        assert_eq!(axis.value(100), 5.0);
        assert_eq!(axis.values().len(), 101);
    }

    #[test]
    fn surface_diagonal_is_exactly_zero() {
        let (axis_h, axis_l) = default_axes();
        let grid = fig3_surface(0.5, 0.3, 5.0, 1.0, &axis_h, &axis_l).unwrap();
        assert_eq!(grid.values.len(), 21 * 21);
        for i in 0..21 {
            assert_eq!(grid.values[i * 21 + i], 0.0, "diagonal cell {i}");
        }
        assert!(grid.status.iter().all(|&s| s == CellStatus::Ok));
    }

    #[test]
    fn surface_cell_matches_full_cycle_difference() {
        // factorized surface against net work minus the gap-only reduction
        let (axis_h, axis_l) = default_axes();
        let grid = fig3_surface(0.5, 0.3, 5.0, 1.0, &axis_h, &axis_l).unwrap();
        let endpoints = PopulationEndpoints::free(0.3, 0.5).unwrap();
        for i in 0..axis_h.count {
            for j in 0..axis_l.count {
                let spec = make_spec_from_broadenings(
                    1.0,
                    axis_h.value(i),
                    1.0,
                    axis_l.value(j),
                    1.0,
                    5.0,
                    1.0,
                    0.0,
                    0.0,
                )
                .unwrap();
                let expected =
                    net_work(&spec, &endpoints).unwrap() - limit_two_level_work(&spec, &endpoints);
                let got = grid.values[i * axis_l.count + j];
                assert!(
                    (got - expected).abs() <= 1e-12 * expected.abs().max(1.0),
                    "cell ({i},{j}): {got} vs {expected}"
                );
            }
        }
    }

    #[test]
    fn surface_default_point_cell_value() {
        // frozen from the quadrature oracle: net work at widths (2, 1) with
        // equal gaps, which the factorization reproduces directly
        let v = work_difference(0.3, 0.5, 5.0, 1.0, 2.0, 1.0).unwrap();
        assert!((v - 0.117_717_006_230_85).abs() < 1e-11, "{v}");
    }

    #[test]
    fn surface_values_independent_of_evaluation_order() {
        let (axis_h, axis_l) = default_axes();
        let grid = fig3_surface(0.5, 0.3, 5.0, 1.0, &axis_h, &axis_l).unwrap();
        // re-evaluate a scattered selection of cells in reverse order
        for &(i, j) in &[(20, 3), (11, 11), (0, 17), (7, 0)] {
            let lone =
                work_difference(0.3, 0.5, 5.0, 1.0, axis_h.value(i), axis_l.value(j)).unwrap();
            assert_eq!(lone.to_bits(), grid.values[i * axis_l.count + j].to_bits());
        }
    }

    #[test]
    fn surface_swap_symmetry() {
        // swapping (width, temperature, occupation) between the reservoirs
        // flips the sign of both factors, leaving the product unchanged
        let a = work_difference(0.3, 0.5, 5.0, 1.0, 2.0, 0.7).unwrap();
        let b = work_difference(0.5, 0.3, 1.0, 5.0, 0.7, 2.0).unwrap();
        assert!((a - b).abs() < 1e-15, "{a} vs {b}");
    }

    #[test]
    fn surface_rejects_degenerate_axes() {
        let bad = Axis::new(SweepParam::BroadeningHot, 0.0, 5.0, 5).unwrap();
        let good = Axis::new(SweepParam::BroadeningCold, 0.05, 5.0, 5).unwrap();
        assert!(fig3_surface(0.5, 0.3, 5.0, 1.0, &bad, &good).is_err());
    }

    #[test]
    fn annotations_report_measured_slopes() {
        let (axis_h, axis_l) = default_axes();
        let grid = fig3_surface(0.5, 0.3, 5.0, 1.0, &axis_h, &axis_l).unwrap();
        let notes = fig3_annotations(0.5, 0.3, 5.0, 1.0, &grid);
        assert!(notes[0].contains("delta_h=0.1") && notes[0].contains("decreasing"));
        assert!(notes[1].contains("delta_h=4.5") && notes[1].contains("increasing"));
        assert!(notes.iter().any(|n| n.contains("diagonal cells exactly zero: 21/21")));
    }

    #[test]
    fn grid_cells_follow_row_major_order() {
        let grid = GridSpec {
            base: base_params(),
            axes: vec![
                Axis::new(SweepParam::BroadeningHot, 1.0, 2.0, 2).unwrap(),
                Axis::new(SweepParam::BroadeningCold, 0.5, 1.5, 3).unwrap(),
            ],
        };
        let (net, _) = cycle_grid(&grid).unwrap();
        assert_eq!(net.cell_count(), 6);
        assert_eq!(net.coords(0), vec![1.0, 0.5]);
        assert_eq!(net.coords(5), vec![2.0, 1.5]);
        // cell (1, 2): widths (2.0, 1.5)
        let endpoints = PopulationEndpoints::free(0.3, 0.5).unwrap();
        let spec =
            make_spec_from_broadenings(1.0, 2.0, 1.0, 1.5, 1.0, 5.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(net.values[5], net_work(&spec, &endpoints).unwrap());
    }

    #[test]
    fn positive_region_identical_endpoints_all_zero() {
        let mut base = base_params();
        base.endpoints = EndpointRule::Free {
            p0_hot: 0.4,
            p0_cold: 0.4,
        };
        base.broadening_hot = 1.0;
        let grid = GridSpec {
            base,
            axes: vec![Axis::new(SweepParam::GapHot, 0.5, 1.5, 5).unwrap()],
        };
        // equal widths and equal occupations: every cell is exactly zero work
        let mask = positive_work_region(&grid, 1e-12).unwrap();
        assert!(mask.values.iter().all(|&v| v == 0.0));
        assert!(mask.status.iter().all(|&s| s == CellStatus::Boundary));
    }

    #[test]
    fn positive_region_frozen_population_conditions() {
        // wider hot band, temperature ratio above width ratio: positive work
        let mut base = base_params();
        base.endpoints = EndpointRule::Free {
            p0_hot: 0.4,
            p0_cold: 0.4,
        };
        let grid = GridSpec {
            base,
            axes: vec![Axis::new(SweepParam::THot, 3.0, 8.0, 4).unwrap()],
        };
        let mask = positive_work_region(&grid, 1e-12).unwrap();
        assert!(mask.values.iter().all(|&v| v == 1.0));

        // both conditions reversed: still positive
        let mut swapped = base_params();
        swapped.endpoints = EndpointRule::Free {
            p0_hot: 0.4,
            p0_cold: 0.4,
        };
        swapped.broadening_hot = 1.0;
        swapped.broadening_cold = 2.0;
        swapped.t_hot = 1.0;
        swapped.t_cold = 5.0;
        let grid = GridSpec {
            base: swapped,
            axes: vec![Axis::new(SweepParam::GapHot, 1.0, 1.0, 1).unwrap()],
        };
        let mask = positive_work_region(&grid, 1e-12).unwrap();
        assert_eq!(mask.values, vec![1.0]);
    }

    #[test]
    fn best_point_single_cell_grid() {
        let grid = GridSpec {
            base: base_params(),
            axes: vec![Axis::new(SweepParam::BroadeningHot, 2.0, 2.0, 1).unwrap()],
        };
        let best = best_point(&grid, Objective::NetWork).unwrap();
        assert_eq!(best.index, 0);
        assert_eq!(best.coords, vec![2.0]);
    }

    #[test]
    fn best_point_monotone_column_picks_corner() {
        // net work grows with the hot width here, so the top corner wins
        let grid = GridSpec {
            base: base_params(),
            axes: vec![Axis::new(SweepParam::BroadeningHot, 1.0, 4.0, 7).unwrap()],
        };
        let best = best_point(&grid, Objective::NetWork).unwrap();
        assert_eq!(best.index, 6);
        assert_eq!(best.coords, vec![4.0]);
        // monotonicity backing the corner claim
        let (net, _) = cycle_grid(&grid).unwrap();
        for pair in net.values.windows(2) {
            assert!(pair[1] > pair[0]);
        }
    }

    #[test]
    fn best_point_efficiency_skips_undefined_cells() {
        // p0_hot above p0_cold puts some cells out of engine mode
        let grid = GridSpec {
            base: base_params(),
            axes: vec![Axis::new(SweepParam::P0Hot, 0.1, 0.9, 9).unwrap()],
        };
        let best = best_point(&grid, Objective::Efficiency).unwrap();
        let (_, eta) = cycle_grid(&grid).unwrap();
        assert!(eta.status.contains(&CellStatus::UndefinedEfficiency));
        assert!(best.value.is_finite());
    }

    #[test]
    fn best_point_errors_when_nothing_feasible() {
        let mut base = base_params();
        base.endpoints = EndpointRule::Free {
            p0_hot: 0.5,
            p0_cold: 0.3,
        };
        let grid = GridSpec {
            base,
            axes: vec![Axis::new(SweepParam::BroadeningHot, 1.5, 2.5, 3).unwrap()],
        };
        assert!(matches!(
            best_point(&grid, Objective::Efficiency),
            Err(Error::NoFeasibleCell { .. })
        ));
    }
}
