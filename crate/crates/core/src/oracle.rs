//! Independent numerical ground truth for every closed form in the crate:
//! adaptive quadrature of the defining band integrals, and an N-level
//! ladder discretization of the band that reduces the whole cycle to
//! finite sums. The two oracles are separate roads to the same numbers;
//! [`run_verification`] compares all three routes and assembles a report.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cycle::{
    branch_work_2, branch_work_4, heat_aggregates, limit_high_temperature_work,
    limit_two_level_work, net_work, BranchLedger, CycleResult, Efficiency,
};
use crate::error::{Error, Result};
use crate::medium::{
    make_spec_from_broadenings, validate_spec, CycleSpec, EndpointMode, PopulationEndpoints,
};
use crate::numeric::rel_error;

/// Depth limit for interval bisection; ample for smooth exponentials.
const MAX_DEPTH: usize = 60;

/// Unit energy scale used as the floor of relative comparisons.
const REL_FLOOR: f64 = 1.0;

/// Heat intakes smaller than this are too ill-conditioned to compare the
/// efficiency ratio against the oracle; such samples are counted, not
/// compared.
const EFFICIENCY_INTAKE_MIN: f64 = 0.05;

// 15-point Kronrod extension of the 7-point Gauss rule, full published
// digits.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_2,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

/// One Kronrod/Gauss pass over [a, b]: (kronrod value, |kronrod - gauss|
/// error estimate, integral of |f|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_gauss = fc * WG[3];
    let mut res_kronrod = fc * WGK[7];
    let mut res_abs = fc.abs() * WGK[7];
    for j in 0..7 {
        let offset = half * XGK[j];
        let f1 = f(center - offset);
        let f2 = f(center + offset);
        let fsum = f1 + f2;
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * fsum;
        }
        res_kronrod += WGK[j] * fsum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }
    (
        res_kronrod * half,
        ((res_kronrod - res_gauss) * half).abs(),
        res_abs * half,
    )
}

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    budget: f64,
    depth: usize,
    worst_excess: &mut f64,
) -> f64 {
    let (value, err, _) = gk15(f, a, b);
    if err <= budget {
        return value;
    }
    if depth >= MAX_DEPTH {
        *worst_excess = worst_excess.max(err / budget.max(f64::MIN_POSITIVE));
        return value;
    }
    let mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * budget, depth + 1, worst_excess)
        + adapt(f, mid, b, 0.5 * budget, depth + 1, worst_excess)
}

/// Adaptive quadrature of `f` over [a, b]: interval bisection with the
/// embedded Kronrod/Gauss error estimate, converging to roughly `tol`
/// relative to the integral of |f|. Hitting the depth limit with the
/// budget still unmet is an error, never a silent truncation.
pub fn quad_integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a >= b || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "a..b",
            value: a,
            constraint: "bounds must be finite with a < b",
        });
    }
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            constraint: "must lie in (0, 1e-3]",
        });
    }
    let (_, _, res_abs) = gk15(&f, a, b);
    let budget = tol * res_abs.max(f64::MIN_POSITIVE);
    let mut worst_excess = 0.0;
    let value = adapt(&f, a, b, budget, 0, &mut worst_excess);
    if worst_excess > 0.0 {
        return Err(Error::QuadratureNonConvergence {
            error_estimate: worst_excess * budget,
            budget,
            depth_limit: MAX_DEPTH,
        });
    }
    Ok(value)
}

/// Boltzmann mean energy of one band by quadrature (exponent shifted by
/// e_min so nothing underflows).
fn quad_band_mean(structure: &crate::medium::LevelStructure, beta: f64, tol: f64) -> Result<f64> {
    let (a, b) = (structure.e_min(), structure.e_max());
    let weight = quad_integrate(|e| (-beta * (e - a)).exp(), a, b, tol)?;
    let moment = quad_integrate(|e| (-beta * (e - a)).exp() * (e - a), a, b, tol)?;
    Ok(a + moment / weight)
}

/// Per-branch ledgers evaluated from the defining integrals instead of the
/// simplified closed forms: microstate-transport integrals for the two
/// reshaping strokes, corner mean energies for every energy change, heats
/// by the first law.
pub fn oracle_branch_quantities(
    spec: &CycleSpec,
    endpoints: &PopulationEndpoints,
    tol: f64,
) -> Result<[BranchLedger; 4]> {
    let (h, c) = (&spec.hot, &spec.cold);
    let (p0h, p0l) = (endpoints.p0_hot(), endpoints.p0_cold());
    let (beta_h, beta_l) = (spec.beta_hot(), spec.beta_cold());
    let slope = h.rho() / c.rho();
    let map = move |e: f64| slope * (e - h.e_min()) + c.e_min();

    // stroke 2: state-B band weight carries each microstate to its image
    let (a, b) = (h.e_min(), h.e_max());
    let w_b = quad_integrate(|e| (-beta_h * (e - a)).exp(), a, b, tol)?;
    let t_b = quad_integrate(|e| (-beta_h * (e - a)).exp() * (e - map(e)), a, b, tol)?;
    let work_2 = p0h * (h.e0() - c.e0()) + (1.0 - p0h) * t_b / w_b;

    // stroke 4: state-D band weight, written in the hot-band variable
    let w_d = quad_integrate(|e| (-beta_l * (map(e) - c.e_min())).exp(), a, b, tol)?;
    let t_d = quad_integrate(
        |e| (-beta_l * (map(e) - c.e_min())).exp() * (e - map(e)),
        a,
        b,
        tol,
    )?;
    let work_4 = -(p0l * (h.e0() - c.e0()) + (1.0 - p0l) * t_d / w_d);

    let u_a = p0l * h.e0() + (1.0 - p0l) * quad_band_mean(h, beta_l, tol)?;
    let u_b = p0h * h.e0() + (1.0 - p0h) * quad_band_mean(h, beta_h, tol)?;
    let u_c = p0h * c.e0() + (1.0 - p0h) * quad_band_mean(c, beta_h, tol)?;
    let u_d = p0l * c.e0() + (1.0 - p0l) * quad_band_mean(c, beta_l, tol)?;

    Ok([
        BranchLedger::new(1, u_b - u_a, 0.0),
        BranchLedger::new(2, u_c - u_b, work_2),
        BranchLedger::new(3, u_d - u_c, 0.0),
        BranchLedger::new(4, u_a - u_d, work_4),
    ])
}

fn ladder_band_stats(
    structure: &crate::medium::LevelStructure,
    beta: f64,
    n: usize,
) -> (f64, Vec<f64>) {
    // midpoints of n equal sub-bands; constant degeneracy cancels in the
    // normalized weights
    let step = structure.broadening() / n as f64;
    let mut weights = Vec::with_capacity(n);
    let mut total = 0.0;
    for i in 0..n {
        let offset = (i as f64 + 0.5) * step;
        let q = (-beta * offset).exp();
        weights.push(q);
        total += q;
    }
    for w in &mut weights {
        *w /= total;
    }
    let mean = structure.e_min()
        + weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * (i as f64 + 0.5) * step)
            .sum::<f64>();
    (mean, weights)
}

/// Replace each band by `n_levels` equally spaced levels (sub-band
/// midpoints, sub-band degeneracy) and compute the entire cycle by finite
/// sums, exactly as for a medium with only discrete levels. Converges to
/// the closed forms as `n_levels` grows.
pub fn ladder_oracle(
    spec: &CycleSpec,
    endpoints: &PopulationEndpoints,
    n_levels: usize,
) -> Result<CycleResult> {
    if n_levels < 2 {
        return Err(Error::InvalidParameter {
            name: "n_levels",
            value: n_levels as f64,
            constraint: "ladder needs at least 2 levels",
        });
    }
    let (h, c) = (&spec.hot, &spec.cold);
    let (p0h, p0l) = (endpoints.p0_hot(), endpoints.p0_cold());
    let n = n_levels;
    let (step_h, step_l) = (h.broadening() / n as f64, c.broadening() / n as f64);

    let (mean_a, _) = ladder_band_stats(h, spec.beta_cold(), n);
    let (mean_b, weights_b) = ladder_band_stats(h, spec.beta_hot(), n);
    let (mean_c, _) = ladder_band_stats(c, spec.beta_hot(), n);
    let (mean_d, weights_d) = ladder_band_stats(c, spec.beta_cold(), n);

    let u_a = p0l * h.e0() + (1.0 - p0l) * mean_a;
    let u_b = p0h * h.e0() + (1.0 - p0h) * mean_b;
    let u_c = p0h * c.e0() + (1.0 - p0h) * mean_c;
    let u_d = p0l * c.e0() + (1.0 - p0l) * mean_d;

    // level i of the hot ladder maps onto level i of the cold ladder
    let level_shift = |i: usize| {
        (h.e_min() - c.e_min()) + (i as f64 + 0.5) * (step_h - step_l)
    };
    let transport_b: f64 = weights_b
        .iter()
        .enumerate()
        .map(|(i, w)| w * level_shift(i))
        .sum();
    let transport_d: f64 = weights_d
        .iter()
        .enumerate()
        .map(|(i, w)| w * level_shift(i))
        .sum();
    let work_2 = p0h * (h.e0() - c.e0()) + (1.0 - p0h) * transport_b;
    let work_4 = -(p0l * (h.e0() - c.e0()) + (1.0 - p0l) * transport_d);

    let ledgers = [
        BranchLedger::new(1, u_b - u_a, 0.0),
        BranchLedger::new(2, u_c - u_b, work_2),
        BranchLedger::new(3, u_d - u_c, 0.0),
        BranchLedger::new(4, u_a - u_d, work_4),
    ];
    let heat_in = ledgers[0].heat_in + ledgers[3].heat_in;
    let heat_out = -(ledgers[1].heat_in + ledgers[2].heat_in);
    let scale = (h.delta_gap() + h.broadening()).max(1.0);
    let efficiency = if heat_in.abs() <= crate::cycle::DEGENERATE_HEAT_TOL * scale {
        Efficiency::DegenerateCycle
    } else if heat_in < 0.0 {
        Efficiency::NotEngineMode(heat_in)
    } else {
        Efficiency::Defined(1.0 - heat_out / heat_in)
    };

    Ok(CycleResult {
        ledgers,
        net_work: work_2 + work_4,
        heat_in_total: heat_in,
        heat_out_total: heat_out,
        efficiency,
    })
}

/// Knobs for a verification pass.
#[derive(Debug, Clone, Serialize)]
pub struct OracleConfig {
    /// Relative tolerance handed to the adaptive quadrature.
    pub quad_tol: f64,
    /// Largest accepted relative error between routes.
    pub match_tol: f64,
    /// Ladder size used for the ladder column of the report.
    pub ladder_levels: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            quad_tol: 1e-12,
            match_tol: 1e-9,
            ladder_levels: 1000,
        }
    }
}

/// One compared quantity: the closed form against both oracles.
#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub name: String,
    pub closed_form_value: f64,
    pub quadrature_value: f64,
    pub ladder_value: Option<f64>,
    pub abs_error: f64,
    pub rel_error: f64,
}

/// Everything a verification pass produced: per-quantity comparisons, an
/// overall verdict, and free-form findings (reduction checks, limit gaps,
/// branch decompositions).
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub entries: Vec<OracleEntry>,
    pub pass: bool,
    pub notes: Vec<String>,
}

fn push_entry(
    entries: &mut Vec<OracleEntry>,
    name: &str,
    closed: f64,
    quad: f64,
    ladder: Option<f64>,
) {
    entries.push(OracleEntry {
        name: name.to_string(),
        closed_form_value: closed,
        quadrature_value: quad,
        ladder_value: ladder,
        abs_error: (closed - quad).abs(),
        rel_error: rel_error(closed, quad, REL_FLOOR),
    });
}

/// Run every comparison for one parameter point and assemble the report:
/// closed forms of the branch works, net work, heat aggregates and
/// efficiency against the quadrature and ladder oracles, the exact
/// reductions where they apply, and the measured gap of the printed
/// high-temperature limit.
pub fn run_verification(
    spec: &CycleSpec,
    endpoints: &PopulationEndpoints,
    config: &OracleConfig,
) -> Result<OracleReport> {
    let validation = validate_spec(spec);
    if !validation.is_valid() {
        let notes = validation
            .violations
            .iter()
            .map(|v| format!("validation failed: {v}; no comparisons run"))
            .collect();
        return Ok(OracleReport {
            entries: Vec::new(),
            pass: false,
            notes,
        });
    }

    let mut entries = Vec::new();
    let mut notes = Vec::new();

    let closed_w2 = branch_work_2(spec, endpoints.p0_hot())?;
    let closed_w4 = branch_work_4(spec, endpoints.p0_cold())?;
    let closed_net = net_work(spec, endpoints)?;
    let (closed_in, closed_out) = heat_aggregates(spec, endpoints)?;
    let closed_cycle = crate::cycle::evaluate_cycle(spec, endpoints)?;

    let quad_ledgers = oracle_branch_quantities(spec, endpoints, config.quad_tol)?;
    let quad_w2 = quad_ledgers[1].work_out;
    let quad_w4 = quad_ledgers[3].work_out;
    let quad_net = quad_w2 + quad_w4;
    let quad_in = quad_ledgers[0].heat_in + quad_ledgers[3].heat_in;
    let quad_out = -(quad_ledgers[1].heat_in + quad_ledgers[2].heat_in);

    let ladder = ladder_oracle(spec, endpoints, config.ladder_levels)?;

    push_entry(
        &mut entries,
        "branch_work_2",
        closed_w2,
        quad_w2,
        Some(ladder.ledgers[1].work_out),
    );
    push_entry(
        &mut entries,
        "branch_work_4",
        closed_w4,
        quad_w4,
        Some(ladder.ledgers[3].work_out),
    );
    push_entry(&mut entries, "net_work", closed_net, quad_net, Some(ladder.net_work));
    push_entry(
        &mut entries,
        "heat_in_total",
        closed_in,
        quad_in,
        Some(ladder.heat_in_total),
    );
    push_entry(
        &mut entries,
        "heat_out_total",
        closed_out,
        quad_out,
        Some(ladder.heat_out_total),
    );

    if let (Efficiency::Defined(eta_closed), true) = (
        closed_cycle.efficiency,
        closed_in.abs() >= EFFICIENCY_INTAKE_MIN,
    ) {
        let eta_quad = 1.0 - quad_out / quad_in;
        push_entry(
            &mut entries,
            "efficiency",
            eta_closed,
            eta_quad,
            ladder.efficiency.value(),
        );
    } else {
        notes.push("efficiency not compared: undefined or ill-conditioned heat intake".into());
    }

    // branch decomposition of the closed-form aggregates over first-law heats
    notes.push(format!(
        "branch-heat decomposition: |Q1+Q4 - heat_in| = {:.3e}, |-(Q2+Q3) - heat_out| = {:.3e}",
        (quad_in - closed_in).abs(),
        (quad_out - closed_out).abs()
    ));

    // exact reductions where the parameters allow them
    if spec.hot.broadening() == spec.cold.broadening() {
        let reduced = limit_two_level_work(spec, endpoints);
        notes.push(format!(
            "equal-broadening reduction exact: |net_work - gap_only| = {:.3e}",
            (closed_net - reduced).abs()
        ));
    }
    if endpoints.p0_hot() == endpoints.p0_cold() {
        let reduced = crate::cycle::limit_frozen_population_work(spec, endpoints.p0_hot())?;
        notes.push(format!(
            "frozen-population reduction exact: |net_work - band_only| = {:.3e}",
            (closed_net - reduced).abs()
        ));
    }

    // the printed high-temperature limit drops a band term that does not
    // vanish; measure the residual at two temperature scales
    for scale in [1e2, 1e3] {
        let hot_spec = CycleSpec {
            t_hot: scale * spec.hot.broadening(),
            t_cold: scale * spec.cold.broadening(),
            ..*spec
        };
        let exact = net_work(&hot_spec, endpoints)?;
        let printed = limit_high_temperature_work(&hot_spec, endpoints);
        let surviving = (spec.hot.broadening() - spec.cold.broadening())
            * (endpoints.p0_hot() - endpoints.p0_cold())
            / 2.0;
        let eta_printed = 1.0
            - (spec.cold.delta_gap() + spec.cold.broadening())
                / (spec.hot.delta_gap() + spec.hot.broadening());
        let eta_exact = crate::cycle::efficiency(&hot_spec, endpoints)
            .map(|v| format!("{v:.9e}"))
            .unwrap_or_else(|_| "undefined".into());
        notes.push(format!(
            "high-temperature gap at KT = {scale:.0}*width: exact - printed = {:.6e} \
             (predicted surviving band term {:.6e}); efficiency exact = {eta_exact}, \
             printed limit = {eta_printed:.9e}",
            exact - printed,
            surviving
        ));
    }

    // ladder convergence of the net work
    let mut conv = Vec::new();
    for n in [10usize, 100, 1000] {
        let err = (ladder_oracle(spec, endpoints, n)?.net_work - closed_net).abs();
        conv.push(format!("n={n} -> {err:.3e}"));
    }
    notes.push(format!("ladder net-work error: {}", conv.join(", ")));

    if endpoints.mode() == EndpointMode::Equilibrium {
        let carnot = 1.0 - spec.t_cold / spec.t_hot;
        let eta = closed_cycle.efficiency.value();
        notes.push(match eta {
            Some(eta) => format!(
                "carnot check (equilibrium mode): eta = {eta:.9e}, bound 1 - t_cold/t_hot = \
                 {carnot:.9e}, within bound: {}",
                eta <= carnot + 1e-12
            ),
            None => format!(
                "carnot check (equilibrium mode): efficiency undefined, bound = {carnot:.9e}"
            ),
        });
    }
    for warning in &validation.warnings {
        notes.push(format!("validation warning: {warning}"));
    }

    entries.sort_by(|a, b| a.name.cmp(&b.name));
    let pass = entries.iter().all(|e| e.rel_error <= config.match_tol);
    Ok(OracleReport {
        entries,
        pass,
        notes,
    })
}

/// Draw one valid parameter set: gaps in [0, 5], widths in [0.05, 5],
/// hot density in [0.1, 10], temperatures in [0.1, 20], occupations in
/// [0.05, 0.95]; the cold density comes from the rescaling constraint.
pub fn random_valid_sample<R: Rng>(rng: &mut R) -> (CycleSpec, PopulationEndpoints) {
    let gap_h = rng.gen_range(0.0..=5.0);
    let gap_l = rng.gen_range(0.0..=5.0);
    let width_h = rng.gen_range(0.05..=5.0);
    let width_l = rng.gen_range(0.05..=5.0);
    let rho_h = rng.gen_range(0.1..=10.0);
    let t_hot = rng.gen_range(0.1..=20.0);
    let t_cold = rng.gen_range(0.1..=20.0);
    let p0_hot = rng.gen_range(0.05..=0.95);
    let p0_cold = rng.gen_range(0.05..=0.95);
    let spec = make_spec_from_broadenings(
        gap_h, width_h, gap_l, width_l, rho_h, t_hot, t_cold, 0.0, 0.0,
    )
    .expect("ranges are valid by construction");
    let endpoints = PopulationEndpoints::free(p0_hot, p0_cold).expect("probabilities in range");
    (spec, endpoints)
}

/// Worst observed disagreement for one quantity across the battery.
#[derive(Debug, Clone, Serialize)]
pub struct QuantityWorst {
    pub name: String,
    pub compared: u32,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    pub worst_sample: u32,
    pub closed_form_value: f64,
    pub quadrature_value: f64,
}

/// Summary of a seeded random battery: closed forms against the quadrature
/// oracle over many parameter sets, tracked by worst case per quantity.
#[derive(Debug, Clone, Serialize)]
pub struct BatteryReport {
    pub samples: u32,
    pub seed: u64,
    pub quad_tol: f64,
    pub match_tol: f64,
    pub per_quantity: Vec<QuantityWorst>,
    pub efficiency_skipped: u32,
    pub pass: bool,
}

struct WorstTracker {
    name: &'static str,
    compared: u32,
    max_abs: f64,
    max_rel: f64,
    worst_sample: u32,
    closed_at_worst: f64,
    quad_at_worst: f64,
}

impl WorstTracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            compared: 0,
            max_abs: 0.0,
            max_rel: 0.0,
            worst_sample: 0,
            closed_at_worst: 0.0,
            quad_at_worst: 0.0,
        }
    }

    fn record(&mut self, sample: u32, closed: f64, quad: f64) {
        self.compared += 1;
        let rel = rel_error(closed, quad, REL_FLOOR);
        if rel >= self.max_rel {
            self.max_rel = rel;
            self.max_abs = (closed - quad).abs();
            self.worst_sample = sample;
            self.closed_at_worst = closed;
            self.quad_at_worst = quad;
        }
    }

    fn finish(self) -> QuantityWorst {
        QuantityWorst {
            name: self.name.to_string(),
            compared: self.compared,
            max_abs_error: self.max_abs,
            max_rel_error: self.max_rel,
            worst_sample: self.worst_sample,
            closed_form_value: self.closed_at_worst,
            quadrature_value: self.quad_at_worst,
        }
    }
}

/// Compare the closed forms of both branch works, the net work, both heat
/// aggregates and the efficiency against the quadrature oracle over
/// `samples` seeded random parameter sets.
pub fn run_battery(samples: u32, seed: u64, config: &OracleConfig) -> Result<BatteryReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trackers = [
        WorstTracker::new("branch_work_2"),
        WorstTracker::new("branch_work_4"),
        WorstTracker::new("efficiency"),
        WorstTracker::new("heat_in_total"),
        WorstTracker::new("heat_out_total"),
        WorstTracker::new("net_work"),
    ];
    let mut efficiency_skipped = 0;

    for sample in 0..samples {
        let (spec, endpoints) = random_valid_sample(&mut rng);
        let closed_w2 = branch_work_2(&spec, endpoints.p0_hot())?;
        let closed_w4 = branch_work_4(&spec, endpoints.p0_cold())?;
        let closed_net = net_work(&spec, &endpoints)?;
        let (closed_in, closed_out) = heat_aggregates(&spec, &endpoints)?;

        let ledgers = oracle_branch_quantities(&spec, &endpoints, config.quad_tol)?;
        let quad_w2 = ledgers[1].work_out;
        let quad_w4 = ledgers[3].work_out;
        let quad_in = ledgers[0].heat_in + ledgers[3].heat_in;
        let quad_out = -(ledgers[1].heat_in + ledgers[2].heat_in);

        trackers[0].record(sample, closed_w2, quad_w2);
        trackers[1].record(sample, closed_w4, quad_w4);
        trackers[3].record(sample, closed_in, quad_in);
        trackers[4].record(sample, closed_out, quad_out);
        trackers[5].record(sample, closed_net, quad_w2 + quad_w4);

        if closed_in >= EFFICIENCY_INTAKE_MIN {
            trackers[2].record(sample, 1.0 - closed_out / closed_in, 1.0 - quad_out / quad_in);
        } else {
            efficiency_skipped += 1;
        }
    }

    let per_quantity: Vec<QuantityWorst> = trackers.into_iter().map(WorstTracker::finish).collect();
    let pass = per_quantity.iter().all(|q| q.max_rel_error <= config.match_tol);
    Ok(BatteryReport {
        samples,
        seed,
        quad_tol: config.quad_tol,
        match_tol: config.match_tol,
        per_quantity,
        efficiency_skipped,
        pass,
    })
}
