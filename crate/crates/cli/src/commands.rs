//! Subcommand implementations. Exit-code contract: 0 success, 1
//! verification failure, 2 usage/config errors (including I/O).

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use ottoband::cycle::{evaluate_cycle, CycleResult};
use ottoband::medium::{CycleSpec, PopulationEndpoints};
use ottoband::oracle::{run_battery, run_verification, BatteryReport, OracleReport};
use ottoband::sweep::{best_point, fig3_annotations, fig3_surface, Objective, SweepGrid};

use crate::config::{parse_config, OutputFormat, RunConfig};
use crate::output;

/// Why a run failed, mapped onto the exit-code contract by `main`.
#[derive(Debug)]
pub enum CliError {
    /// Usage, configuration or I/O problem: exit 2.
    Config(String),
    /// A verification tolerance was not met: exit 1.
    Verification(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Verification(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

type CliResult = Result<(), CliError>;

fn config_err(context: &str, detail: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{context}: {detail}"))
}

fn load_config(path: Option<&Path>) -> Result<RunConfig, CliError> {
    match path {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| config_err(&format!("cannot read {}", path.display()), e))?;
            parse_config(&text).map_err(|e| CliError::Config(e.to_string()))
        }
        None => Ok(RunConfig::default()),
    }
}

fn write_out(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents)
        .map_err(|e| config_err(&format!("cannot write {}", path.display()), e))
}

fn echo_warnings(config: &RunConfig) {
    for warning in config.warnings() {
        eprintln!("warning: {warning}");
    }
}

/// Energies of a cycle result rescaled for output; the efficiency and the
/// first-law structure are untouched.
fn scale_result(result: &CycleResult, kt_l: f64) -> CycleResult {
    let mut scaled = result.clone();
    for ledger in &mut scaled.ledgers {
        ledger.delta_u *= kt_l;
        ledger.work_out *= kt_l;
        ledger.heat_in *= kt_l;
    }
    scaled.net_work *= kt_l;
    scaled.heat_in_total *= kt_l;
    scaled.heat_out_total *= kt_l;
    scaled
}

fn scale_grid(grid: &SweepGrid, kt_l: f64) -> SweepGrid {
    let mut scaled = grid.clone();
    for v in &mut scaled.values {
        *v *= kt_l;
    }
    scaled
}

pub fn cmd_cycle(
    config_path: &Path,
    out: Option<&Path>,
    format_override: Option<OutputFormat>,
) -> CliResult {
    let config = load_config(Some(config_path))?;
    echo_warnings(&config);
    let (spec, endpoints) = config
        .resolve()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let result =
        evaluate_cycle(&spec, &endpoints).map_err(|e| config_err("cycle evaluation", e))?;

    print!("{}", output::cycle_table(&result, config.kt_l));

    if let Some(path) = out {
        let format = format_override.unwrap_or(config.format);
        let contents = match format {
            OutputFormat::Csv => output::cycle_csv(&result, config.kt_l),
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct CycleDoc<'a> {
                    kt_l: f64,
                    spec: &'a CycleSpec,
                    endpoints: &'a PopulationEndpoints,
                    result: CycleResult,
                }
                output::to_json(&CycleDoc {
                    kt_l: config.kt_l,
                    spec: &spec,
                    endpoints: &endpoints,
                    result: scale_result(&result, config.kt_l),
                })
            }
        };
        write_out(path, &contents)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn cmd_sweep(config_path: &Path, out: &Path) -> CliResult {
    let config = load_config(Some(config_path))?;
    echo_warnings(&config);
    let grid_spec = config
        .grid_spec()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let (net, eta) =
        ottoband::sweep::cycle_grid(&grid_spec).map_err(|e| config_err("sweep", e))?;

    let mut annotations = Vec::new();
    match best_point(&grid_spec, Objective::NetWork) {
        Ok(best) => annotations.push(format!(
            "best net_work = {} at index {} ({})",
            output::fmt_float(best.value * config.kt_l),
            best.index,
            best.coords
                .iter()
                .map(|c| output::fmt_float(*c))
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Err(e) => annotations.push(format!("best net_work: {e}")),
    }
    match best_point(&grid_spec, Objective::Efficiency) {
        Ok(best) => annotations.push(format!(
            "best efficiency = {} at index {} ({})",
            output::fmt_float(best.value),
            best.index,
            best.coords
                .iter()
                .map(|c| output::fmt_float(*c))
                .collect::<Vec<_>>()
                .join(", ")
        )),
        Err(e) => annotations.push(format!("best efficiency: {e}")),
    }
    let positive = net.values.iter().filter(|&&v| v > 0.0).count();
    annotations.push(format!(
        "positive net_work cells: {positive}/{}",
        net.values.len()
    ));

    let contents = match config.format {
        OutputFormat::Csv => output::sweep_csv(&net, &eta, &annotations, config.kt_l),
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct SweepDoc<'a> {
                kt_l: f64,
                net_work: SweepGrid,
                efficiency: &'a SweepGrid,
                annotations: &'a [String],
            }
            output::to_json(&SweepDoc {
                kt_l: config.kt_l,
                net_work: scale_grid(&net, config.kt_l),
                efficiency: &eta,
                annotations: &annotations,
            })
        }
    };
    write_out(out, &contents)?;
    println!(
        "wrote {} ({} cells, {} positive)",
        out.display(),
        net.values.len(),
        positive
    );
    Ok(())
}

pub fn cmd_fig3(config_path: Option<&Path>, out: &Path) -> CliResult {
    let config = load_config(config_path)?;
    let (axis_h, axis_l) = config
        .surface_axes()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let (p0_hot, p0_cold) = config.occupations();
    let grid = fig3_surface(p0_cold, p0_hot, config.t_hot, config.t_cold, &axis_h, &axis_l)
        .map_err(|e| config_err("surface", e))?;
    let annotations = fig3_annotations(p0_cold, p0_hot, config.t_hot, config.t_cold, &grid);

    let contents = match config.format {
        OutputFormat::Csv => output::fig3_csv(&grid, &annotations, config.kt_l),
        OutputFormat::Json => {
            let scaled = scale_grid(&grid, config.kt_l);
            output::grid_json(&scaled, &annotations)
        }
    };
    write_out(out, &contents)?;
    println!("wrote {} ({} cells)", out.display(), grid.values.len());
    Ok(())
}

/// Full verification document: the configured-point report plus the seeded
/// random battery.
#[derive(Serialize)]
struct VerifyDoc {
    seed: u64,
    samples: u32,
    quad_tol: f64,
    match_tol: f64,
    default_point: OracleReport,
    battery: BatteryReport,
    pass: bool,
}

pub fn cmd_verify(
    config_path: Option<&Path>,
    seed: u64,
    samples: u32,
    out: Option<&Path>,
) -> CliResult {
    let config = load_config(config_path)?;
    echo_warnings(&config);
    let oracle_config = config.oracle_config();
    let (spec, endpoints) = config
        .resolve()
        .map_err(|e| CliError::Config(e.to_string()))?;

    let default_point = run_verification(&spec, &endpoints, &oracle_config)
        .map_err(|e| config_err("verification", e))?;
    let battery = run_battery(samples, seed, &oracle_config)
        .map_err(|e| config_err("battery", e))?;

    for entry in &default_point.entries {
        println!(
            "point {}: closed {:.12e}, quadrature {:.12e}, rel error {:.3e}",
            entry.name, entry.closed_form_value, entry.quadrature_value, entry.rel_error
        );
    }
    for note in &default_point.notes {
        println!("note: {note}");
    }
    for quantity in &battery.per_quantity {
        println!(
            "battery {}: {} compared, worst rel error {:.3e}",
            quantity.name, quantity.compared, quantity.max_rel_error
        );
    }

    let pass = default_point.pass && battery.pass;
    let doc = VerifyDoc {
        seed,
        samples,
        quad_tol: oracle_config.quad_tol,
        match_tol: oracle_config.match_tol,
        default_point,
        battery,
        pass,
    };
    let report_path: PathBuf = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("verify_report.json"));
    write_out(&report_path, &output::to_json(&doc))?;

    if pass {
        println!("verify: PASS (report at {})", report_path.display());
        Ok(())
    } else {
        println!("verify: FAIL (report at {})", report_path.display());
        Err(CliError::Verification(format!(
            "verification failed; report at {}",
            report_path.display()
        )))
    }
}
