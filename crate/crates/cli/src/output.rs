//! Serializers: CSV and JSON emitters for grids, cycle results and
//! verification reports. Floats are printed with 17 significant digits,
//! '.' decimal separator, no locale dependence, so repeated runs emit
//! identical bytes.

use serde::Serialize;

use ottoband::cycle::{CycleResult, Efficiency};
use ottoband::sweep::SweepGrid;

/// 17 significant digits, locale-independent.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Work-difference surface as CSV: fixed header, one row per cell in
/// row-major order, then the annotations block.
pub fn fig3_csv(grid: &SweepGrid, annotations: &[String], kt_l: f64) -> String {
    let mut out = String::from("delta_h,delta_l,work_diff,status\n");
    let axis_l_count = grid.axes[1].count;
    for (index, (&value, status)) in grid.values.iter().zip(&grid.status).enumerate() {
        let width_h = grid.axes[0].value(index / axis_l_count);
        let width_l = grid.axes[1].value(index % axis_l_count);
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_float(width_h),
            fmt_float(width_l),
            fmt_float(value * kt_l),
            status.label()
        ));
    }
    push_annotations(&mut out, annotations);
    out
}

/// Generic sweep as CSV: one column per axis, then net work, efficiency
/// and status, then the annotations block.
pub fn sweep_csv(
    net: &SweepGrid,
    eta: &SweepGrid,
    annotations: &[String],
    kt_l: f64,
) -> String {
    let mut out = String::new();
    for axis in &net.axes {
        out.push_str(axis.param.name());
        out.push(',');
    }
    out.push_str("net_work,efficiency,status\n");
    for index in 0..net.values.len() {
        for coord in net.coords(index) {
            out.push_str(&fmt_float(coord));
            out.push(',');
        }
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_float(net.values[index] * kt_l),
            fmt_float(eta.values[index]),
            eta.status[index].label()
        ));
    }
    push_annotations(&mut out, annotations);
    out
}

/// Cycle ledgers as CSV with the summary lines in the annotations block.
pub fn cycle_csv(result: &CycleResult, kt_l: f64) -> String {
    let mut out = String::from("branch,delta_u,work_out,heat_in\n");
    for ledger in &result.ledgers {
        out.push_str(&format!(
            "{},{},{},{}\n",
            ledger.branch_id,
            fmt_float(ledger.delta_u * kt_l),
            fmt_float(ledger.work_out * kt_l),
            fmt_float(ledger.heat_in * kt_l),
        ));
    }
    let annotations = [
        format!("net_work = {}", fmt_float(result.net_work * kt_l)),
        format!("heat_in_total = {}", fmt_float(result.heat_in_total * kt_l)),
        format!("heat_out_total = {}", fmt_float(result.heat_out_total * kt_l)),
        format!("efficiency = {}", efficiency_label(&result.efficiency)),
    ];
    push_annotations(&mut out, &annotations);
    out
}

fn push_annotations(out: &mut String, annotations: &[String]) {
    for line in annotations {
        out.push_str("# annotation: ");
        out.push_str(line);
        out.push('\n');
    }
}

pub fn efficiency_label(efficiency: &Efficiency) -> String {
    match efficiency {
        Efficiency::Defined(v) => fmt_float(*v),
        Efficiency::DegenerateCycle => "undefined (degenerate cycle: zero heat intake)".into(),
        Efficiency::NotEngineMode(heat_in) => format!(
            "undefined (not engine mode: heat intake {})",
            fmt_float(*heat_in)
        ),
    }
}

/// Grid plus annotations as a JSON document (pretty, trailing newline).
pub fn grid_json(grid: &SweepGrid, annotations: &[String]) -> String {
    #[derive(Serialize)]
    struct GridDoc<'a> {
        grid: &'a SweepGrid,
        annotations: &'a [String],
    }
    to_json(&GridDoc { grid, annotations })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

/// Human-readable cycle table for stdout.
pub fn cycle_table(result: &CycleResult, kt_l: f64) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>6}  {:>24}  {:>24}  {:>24}\n",
        "branch", "delta_u", "work_out", "heat_in"
    ));
    for ledger in &result.ledgers {
        out.push_str(&format!(
            "{:>6}  {:>24.16e}  {:>24.16e}  {:>24.16e}\n",
            ledger.branch_id,
            ledger.delta_u * kt_l,
            ledger.work_out * kt_l,
            ledger.heat_in * kt_l,
        ));
    }
    out.push_str(&format!("net_work       = {}\n", fmt_float(result.net_work * kt_l)));
    out.push_str(&format!(
        "heat_in_total  = {}\n",
        fmt_float(result.heat_in_total * kt_l)
    ));
    out.push_str(&format!(
        "heat_out_total = {}\n",
        fmt_float(result.heat_out_total * kt_l)
    ));
    out.push_str(&format!(
        "efficiency     = {}\n",
        efficiency_label(&result.efficiency)
    ));
    out
}
