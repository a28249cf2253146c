//! The five subcommands: parameter resolution, computation, file layout.
//!
//! Each command resolves its parameters (flag over config file over
//! default), runs the corresponding library calls, and hands fully built
//! tables plus a metadata document to the output sink.  Sweep-style
//! commands record per-point failures as "nan" cells and a metadata note
//! instead of aborting the whole run.

use bjj_core::continuum::{self, CatEnvelope, ContinuumParams, EnvelopeKind};
use bjj_core::model::{
    build_hamiltonian, distribution_peak, fidelity_noon, imbalance_coordinate,
    imbalance_distribution, is_bimodal, ModelParams,
};
use bjj_core::solver::{spectrum, DEFAULT_TOLERANCE};
use bjj_core::thermal::{
    critical_temperature, crossover_exponent, damping_factor, dissipative_rate,
    metastability_check, regime_classify, thermon_frequency, ThermalParams,
    DEFAULT_METASTABILITY_THRESHOLD,
};
use bjj_core::units::{derive_units, PhysicalParams, BOLTZMANN, HBAR};
use bjj_core::wigner::{wigner_grid, PhaseSpaceGrid};
use serde_json::{json, Value};

use crate::config::{parse_range, require, FileConfig};
use crate::error::CliResult;
use crate::output::{Cell, Sink, Table};
use crate::{GroundArgs, SweepArgs, ThermalArgs, UnitsArgs, WignerArgs};

/// Sample count for the effective-potential export (x ∈ [−1, 1]).
const POTENTIAL_SAMPLES: usize = 201;

fn kind_label(kind: EnvelopeKind) -> &'static str {
    match kind {
        EnvelopeKind::Single => "single",
        EnvelopeKind::Double => "double",
    }
}

fn tool_meta() -> Value {
    json!({ "name": "bjj", "version": env!("CARGO_PKG_VERSION") })
}

fn constants_meta() -> Value {
    json!({ "boltzmann_j_per_k": BOLTZMANN, "hbar_j_s": HBAR })
}

fn common_config(sink: &Sink) -> Value {
    json!({
        "format": sink.format.label(),
        "out": sink.dir.display().to_string(),
        "precision": sink.precision,
    })
}

fn merge(base: Value, extra: Value) -> Value {
    let (Value::Object(mut a), Value::Object(b)) = (base, extra) else {
        unreachable!("metadata fragments are always objects");
    };
    a.extend(b);
    Value::Object(a)
}

/// Builds the ground-state envelope, treating the degenerate point λ = 1
/// (where no Gaussian packet exists) as "no envelope" rather than an error.
fn try_envelope(cp: &ContinuumParams) -> CliResult<Option<CatEnvelope>> {
    match continuum::envelope(cp) {
        Ok(env) => Ok(Some(env)),
        Err(bjj_core::Error::DegeneratePoint) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn ground(args: &GroundArgs, file: &FileConfig, sink: &Sink) -> CliResult<()> {
    let n = require("n", args.n.or(file.n))?;
    let lambda = require("lambda", args.lambda.or(file.lambda))?;
    let params = ModelParams::new(n, lambda)?;
    let h = build_hamiltonian(&params);
    let result = spectrum(&h, 2, DEFAULT_TOLERANCE)?;
    let state = &result.states[0];
    let probabilities = imbalance_distribution(state);
    let cp = ContinuumParams::from_model(&params);
    let env = try_envelope(&cp)?;
    let bin = 2.0 / n as f64;
    let fit = match &env {
        Some(e) => continuum::fit_error(&probabilities, e)?,
        None => f64::NAN,
    };

    let coefficients = state.coefficients();
    let mut state_rows = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = imbalance_coordinate(i, n);
        let model = env.as_ref().map_or(f64::NAN, |e| e.density(x) * bin);
        state_rows.push(vec![
            Cell::Int(i as i64),
            Cell::Num(x),
            Cell::Num(coefficients[i]),
            Cell::Num(probabilities[i]),
            Cell::Num(model),
        ]);
    }

    let mut potential_rows = Vec::with_capacity(POTENTIAL_SAMPLES);
    let half = (POTENTIAL_SAMPLES - 1) / 2;
    for i in 0..POTENTIAL_SAMPLES {
        let x = (i as f64 - half as f64) / half as f64;
        let v = continuum::effective_potential(x, &cp)?;
        let mass = match continuum::effective_mass(x, &cp) {
            Ok(m) => m,
            Err(bjj_core::Error::MassSingular) => f64::NAN,
            Err(e) => return Err(e.into()),
        };
        potential_rows.push(vec![Cell::Num(x), Cell::Num(v), Cell::Num(mass)]);
    }

    let envelope_meta = match &env {
        Some(e) => json!({
            "amplitude": e.amplitude,
            "anharmonic": e.anharmonic,
            "kind": kind_label(e.kind),
            "lobe_overlap": e.lobe_overlap(),
            "sigma": e.sigma,
            "sub_bin": e.sub_bin,
            "x0": e.x0,
        }),
        None => Value::Null,
    };
    let meta = json!({
        "command": "ground",
        "config": merge(common_config(sink), json!({ "lambda": lambda, "n": n })),
        "constants": constants_meta(),
        "results": {
            "bimodal": is_bimodal(&probabilities),
            "degenerate": env.is_none(),
            "doublet_gap": result.doublet_gap(),
            "energy": result.energies[0],
            "envelope": envelope_meta,
            "fidelity": fidelity_noon(state),
            "fit_error": fit,
            "peak_bin": distribution_peak(&probabilities),
        },
        "tool": tool_meta(),
    });

    let tables = [
        Table {
            name: "ground",
            columns: vec!["n", "x", "amplitude", "probability", "envelope"],
            rows: state_rows,
        },
        Table {
            name: "potential",
            columns: vec!["x", "potential_hbar_omega_r", "mass_ratio"],
            rows: potential_rows,
        },
    ];
    sink.emit("ground", &tables, &meta, None)
}

fn sweep_row(n: usize, lambda: f64) -> Result<Vec<Cell>, bjj_core::Error> {
    let params = ModelParams::new(n, lambda)?;
    let h = build_hamiltonian(&params);
    let result = spectrum(&h, 2, DEFAULT_TOLERANCE)?;
    let state = &result.states[0];
    let probabilities = imbalance_distribution(state);
    let peak = distribution_peak(&probabilities);
    let x_peak = imbalance_coordinate(peak, n).abs();
    let cp = ContinuumParams::from_model(&params);
    let (x0, sigma, fit) = match continuum::envelope(&cp) {
        Ok(env) => (env.x0, env.sigma, continuum::fit_error(&probabilities, &env)?),
        Err(bjj_core::Error::DegeneratePoint) => (f64::NAN, f64::NAN, f64::NAN),
        Err(e) => return Err(e),
    };
    Ok(vec![
        Cell::Num(lambda),
        Cell::Num(result.energies[0]),
        Cell::Num(result.doublet_gap().unwrap_or(f64::NAN)),
        Cell::Num(fidelity_noon(state)),
        Cell::Num(x_peak),
        Cell::Num(x0),
        Cell::Num(sigma),
        Cell::Num(fit),
        Cell::Int(is_bimodal(&probabilities) as i64),
    ])
}

pub fn sweep(args: &SweepArgs, file: &FileConfig, sink: &Sink) -> CliResult<()> {
    let n = require("n", args.n.or(file.n))?;
    let range = require(
        "lambda-range",
        args.lambda_range.clone().or_else(|| file.lambda_range.clone()),
    )?;
    let lambdas = parse_range(&range)?;

    let mut rows = Vec::with_capacity(lambdas.len());
    let mut notes = Vec::new();
    for &lambda in &lambdas {
        match sweep_row(n, lambda) {
            Ok(row) => rows.push(row),
            Err(e) => {
                notes.push(json!({ "error": e.to_string(), "lambda": lambda }));
                let mut row = vec![Cell::Num(lambda)];
                row.extend(std::iter::repeat(Cell::Num(f64::NAN)).take(8));
                rows.push(row);
            }
        }
    }

    let meta = json!({
        "command": "sweep",
        "config": merge(common_config(sink), json!({ "lambda_range": range, "n": n })),
        "constants": constants_meta(),
        "results": { "notes": notes, "points": lambdas.len() },
        "tool": tool_meta(),
    });
    let tables = [Table {
        name: "sweep",
        columns: vec![
            "lambda",
            "energy_hbar_omega_r",
            "gap_hbar_omega_r",
            "fidelity",
            "x0_empirical",
            "x0_envelope",
            "sigma",
            "fit_error",
            "bimodal",
        ],
        rows,
    }];
    sink.emit("sweep", &tables, &meta, None)
}

fn trapezoid_weight(i: usize, len: usize) -> f64 {
    if i == 0 || i + 1 == len {
        0.5
    } else {
        1.0
    }
}

/// Trapezoid estimate of ∬ W dx dp over the exported grid.
fn grid_mass(grid: &PhaseSpaceGrid) -> f64 {
    let dx = grid.x_axis[1] - grid.x_axis[0];
    let dp = grid.p_axis[1] - grid.p_axis[0];
    let mut total = 0.0;
    for ix in 0..grid.x_axis.len() {
        let wx = trapezoid_weight(ix, grid.x_axis.len());
        for ip in 0..grid.p_axis.len() {
            total += wx * trapezoid_weight(ip, grid.p_axis.len()) * grid.value(ix, ip);
        }
    }
    total * dx * dp
}

/// Worst deviation between the p-integrated grid and the position density.
fn marginal_deviation(grid: &PhaseSpaceGrid, env: &CatEnvelope) -> f64 {
    let dp = grid.p_axis[1] - grid.p_axis[0];
    let mut worst: f64 = 0.0;
    for (ix, &x) in grid.x_axis.iter().enumerate() {
        let mut marginal = 0.0;
        for ip in 0..grid.p_axis.len() {
            marginal += trapezoid_weight(ip, grid.p_axis.len()) * grid.value(ix, ip);
        }
        marginal *= dp;
        worst = worst.max((marginal - env.density(x)).abs());
    }
    worst
}

pub fn wigner(args: &WignerArgs, file: &FileConfig, sink: &Sink) -> CliResult<()> {
    let n = require("n", args.n.or(file.n))?;
    let lambda = require("lambda", args.lambda.or(file.lambda))?;
    let nx = args.nx.or(file.nx).unwrap_or(201);
    let np = args.np.or(file.np).unwrap_or(201);
    let pmax = args.pmax.or(file.pmax);
    let params = ModelParams::new(n, lambda)?;
    let cp = ContinuumParams::from_model(&params);
    let env = continuum::envelope(&cp)?;
    let grid = wigner_grid(&env, nx, np, pmax)?;

    let mut rows = Vec::with_capacity(nx * np);
    for (ix, &x) in grid.x_axis.iter().enumerate() {
        for (ip, &p) in grid.p_axis.iter().enumerate() {
            rows.push(vec![
                Cell::Num(x),
                Cell::Num(p),
                Cell::Num(grid.value(ix, ip)),
            ]);
        }
    }

    let meta = json!({
        "command": "wigner",
        "config": merge(common_config(sink), json!({
            "lambda": lambda,
            "n": n,
            "np": np,
            "nx": nx,
            "pmax": pmax,
        })),
        "constants": constants_meta(),
        "results": {
            "grid_mass": grid_mass(&grid),
            "kind": kind_label(env.kind),
            "lobe_overlap": env.lobe_overlap(),
            "marginal_deviation": marginal_deviation(&grid, &env),
            "max_w": grid.max_value(),
            "min_w": grid.min_value(),
            "sigma": env.sigma,
            "sub_bin": grid.sub_bin,
            "x0": env.x0,
        },
        "tool": tool_meta(),
    });
    let json_data = json!({
        "p_axis": grid.p_axis,
        "values": grid.values,
        "x_axis": grid.x_axis,
    });
    let tables = [Table {
        name: "wigner",
        columns: vec!["x", "p", "w"],
        rows,
    }];
    sink.emit("wigner", &tables, &meta, Some(json_data))
}

/// Per-λ crossover cells (ω, α, T_c, B_c); each cell degrades to NaN
/// independently so λ ≤ 1 rows stay as informative as possible.
fn crossover_cells(s: f64, lambda: f64, gamma: f64, omega_r: f64) -> (Vec<Cell>, Option<String>) {
    let mut first_error: Option<String> = None;
    let mut note = |e: bjj_core::Error| -> f64 {
        if first_error.is_none() {
            first_error = Some(e.to_string());
        }
        f64::NAN
    };
    let omega = thermon_frequency(lambda, omega_r).unwrap_or_else(&mut note);
    let alpha = damping_factor(gamma, omega).unwrap_or_else(&mut note);
    let t_c = critical_temperature(lambda, omega_r, gamma).unwrap_or_else(&mut note);
    let b_c = ContinuumParams::new(s, lambda)
        .and_then(|p| crossover_exponent(&p, alpha))
        .unwrap_or_else(&mut note);
    (
        vec![
            Cell::Num(lambda),
            Cell::Num(omega),
            Cell::Num(alpha),
            Cell::Num(t_c),
            Cell::Num(b_c),
        ],
        first_error,
    )
}

pub fn thermal(args: &ThermalArgs, file: &FileConfig, sink: &Sink) -> CliResult<()> {
    let n = require("n", args.n.or(file.n))?;
    let lambda_range = args
        .lambda_range
        .clone()
        .or_else(|| file.lambda_range.clone())
        .unwrap_or_else(|| "1.1:3:0.1".to_string());
    let temp_range = require(
        "temp-range",
        args.temp_range.clone().or_else(|| file.temp_range.clone()),
    )?;
    let gamma = args.gamma.or(file.gamma).unwrap_or(0.0);
    let omega_r = require("omega-r", args.omega_r.or(file.omega_r))?;
    let threshold = args
        .threshold
        .or(file.threshold)
        .unwrap_or(DEFAULT_METASTABILITY_THRESHOLD);
    let lambdas = parse_range(&lambda_range)?;
    let temperatures = parse_range(&temp_range)?;
    let s = n as f64 / 2.0;

    let mut crossover_rows = Vec::with_capacity(lambdas.len());
    let mut notes = Vec::new();
    for &lambda in &lambdas {
        let (row, error) = crossover_cells(s, lambda, gamma, omega_r);
        if let Some(error) = error {
            notes.push(json!({ "error": error, "lambda": lambda }));
        }
        crossover_rows.push(row);
    }

    let mut rate_rows = Vec::with_capacity(lambdas.len() * temperatures.len());
    for &lambda in &lambdas {
        let t_c = critical_temperature(lambda, omega_r, gamma).unwrap_or(f64::NAN);
        for &t in &temperatures {
            let regime = if t_c.is_finite() {
                match regime_classify(t, t_c) {
                    Ok(r) => r.as_str().to_string(),
                    Err(_) => "nan".to_string(),
                }
            } else {
                "nan".to_string()
            };
            // Below-crossover points are outside the rate's validity region,
            // not failures: the cell is NaN and no note is recorded.
            let rate = ContinuumParams::new(s, lambda)
                .and_then(|p| {
                    let tp = ThermalParams::new(t, gamma)?;
                    dissipative_rate(&p, &tp, omega_r)
                })
                .unwrap_or(f64::NAN);
            let (thermal_ratio, quantum_ratio, metastable) = ContinuumParams::new(s, lambda)
                .and_then(|p| metastability_check(&p, t, omega_r, threshold))
                .map(|r| {
                    (
                        Cell::Num(r.thermal_ratio),
                        Cell::Num(r.quantum_ratio),
                        Cell::Int(r.satisfied() as i64),
                    )
                })
                .unwrap_or((
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                ));
            rate_rows.push(vec![
                Cell::Num(lambda),
                Cell::Num(t),
                Cell::Num(t_c),
                Cell::Text(regime),
                Cell::Num(rate),
                thermal_ratio,
                quantum_ratio,
                metastable,
            ]);
        }
    }

    let meta = json!({
        "command": "thermal",
        "config": merge(common_config(sink), json!({
            "gamma": gamma,
            "lambda_range": lambda_range,
            "n": n,
            "omega_r": omega_r,
            "temp_range": temp_range,
            "threshold": threshold,
        })),
        "constants": constants_meta(),
        "results": {
            "lambda_points": lambdas.len(),
            "notes": notes,
            "temperature_points": temperatures.len(),
        },
        "tool": tool_meta(),
    });
    let tables = [
        Table {
            name: "crossover",
            columns: vec!["lambda", "omega_rad_per_s", "alpha", "t_c_k", "b_c"],
            rows: crossover_rows,
        },
        Table {
            name: "rates",
            columns: vec![
                "lambda",
                "temperature_k",
                "t_c_k",
                "regime",
                "rate_per_s",
                "thermal_ratio",
                "quantum_ratio",
                "metastable",
            ],
            rows: rate_rows,
        },
    ];
    sink.emit("thermal", &tables, &meta, None)
}

pub fn units(args: &UnitsArgs, file: &FileConfig, sink: &Sink) -> CliResult<()> {
    let n = require("n", args.n.or(file.n))?;
    let mass = require("mass", args.mass.or(file.mass))?;
    let asc = require("asc", args.asc.or(file.asc))?;
    let omega_perp = require("omega-perp", args.omega_perp.or(file.omega_perp))?;
    let omega_r = require("omega-r", args.omega_r.or(file.omega_r))?;
    let params = PhysicalParams::new(mass, asc, omega_perp, omega_r, n)?;
    let report = derive_units(&params)?;

    let row = vec![
        Cell::Num(report.transverse_length),
        Cell::Num(report.interaction_strength),
        Cell::Num(report.interaction_temperature),
        Cell::Num(report.lambda),
        Cell::Num(report.reference_temperature),
    ];
    let meta = json!({
        "command": "units",
        "config": merge(common_config(sink), json!({
            "asc": asc,
            "mass": mass,
            "n": n,
            "omega_perp": omega_perp,
            "omega_r": omega_r,
        })),
        "constants": constants_meta(),
        "results": {
            "interaction_strength_j": report.interaction_strength,
            "interaction_temperature_k": report.interaction_temperature,
            "lambda": report.lambda,
            "reference_temperature_k": report.reference_temperature,
            "transverse_length_m": report.transverse_length,
        },
        "tool": tool_meta(),
    });
    let tables = [Table {
        name: "units",
        columns: vec![
            "transverse_length_m",
            "interaction_strength_j",
            "interaction_temperature_k",
            "lambda",
            "reference_temperature_k",
        ],
        rows: vec![row],
    }];
    sink.emit("units", &tables, &meta, None)
}
