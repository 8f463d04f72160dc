//! One function per subcommand: configure, run the engine, check, write.

use anyhow::Result;
use serde::Serialize;
use serde_json::{json, Value};

use catsim::dynamics::Time;
use catsim::experiments::{
    double_rotation_schedule, dw_q_sequence, q_grids, q_scan, run_dimension_witness, run_epr_sweep, run_eraser,
    run_leggett_garg_sweep, run_qubit_witness, sequence_snapshot, single_rotation_schedule, DwAngles, EraserArm,
    ExperimentConfig, QGrid,
};
use catsim::quadrature::{spin_statistics, Density1D, Density2D, Sign};
use catsim::PiFraction;

use crate::output::{Checks, Sink};
use crate::{
    CheckFailure, CommonArgs, DwArgs, EprArgs, EraserArgs, LgArgs, QfuncArgs, ScheduleKind, SequenceArgs, StateKind,
    UsageError,
};

/// Tolerance on the unit normalization of every emitted density.
const NORM_TOLERANCE: f64 = 1e-8;
/// Sign-correlator gap above which two snapshots are macroscopically distinct.
const DIVERGENCE_GAP: f64 = 0.5;
const MAX_SWEEP_POINTS: usize = 100_000;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Applies the shared flags on top of a subcommand's defaults.
fn configure(common: &CommonArgs, base: ExperimentConfig, beta_list: bool) -> Result<ExperimentConfig> {
    let mut config = base;
    if let Some(alpha) = common.alpha {
        config.alpha = alpha;
    }
    match common.beta.as_slice() {
        [] => {}
        [beta] => config.beta = *beta,
        [first, ..] if beta_list => config.beta = *first,
        _ => return Err(usage("--beta takes a single value for this command")),
    }
    if let Some(k) = common.k {
        config.k = k;
    }
    if let Some(points) = common.grid_points {
        if points < 9 || points.is_multiple_of(2) {
            return Err(usage(format!("--grid-points must be odd and at least 9, got {points}")));
        }
    }
    let (points, span, n_max) = (
        common.grid_points.unwrap_or(config.grid_points),
        common.grid_span.or(config.grid_span),
        common.nmax.or(config.n_max),
    );
    config = config.with_grid(points, span).with_n_max(n_max);
    config.validate()?;
    Ok(config)
}

fn parameters(common: &CommonArgs, config: &ExperimentConfig, extra: Value) -> Value {
    let mut base = json!({
        "alpha": config.alpha,
        "beta": config.beta,
        "k": config.k,
        "nmax": config.n_max,
        "grid_points": config.grid_points,
        "grid_span": config.grid_span,
        "format": common.format,
    });
    if let (Value::Object(map), Value::Object(more)) = (&mut base, extra) {
        map.extend(more);
    }
    base
}

fn finish(sink: Sink, command: &str, params: Value, max_deviation: Option<f64>, checks: Checks) -> Result<()> {
    let path = sink.finish(command, params, max_deviation, &checks)?;
    println!("{}", path.display());
    let failed: Vec<String> = checks.failures().map(|c| format!("{} ({})", c.name, c.detail)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CheckFailure(failed).into())
    }
}

/// Parses `lo:hi:step` into an inclusive list, each value rounded to ten
/// decimals so that a sweep point equals the same value typed directly.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>> {
    let bad = || usage(format!("sweep must be lo:hi:step with step > 0 and hi >= lo, got {spec:?}"));
    let parts: Vec<f64> = spec
        .split(':')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let [lo, hi, step] = parts.as_slice() else {
        return Err(bad());
    };
    let (lo, hi, step) = (*lo, *hi, *step);
    if !(lo.is_finite() && hi.is_finite() && step > 0.0 && hi >= lo) {
        return Err(bad());
    }
    let count = ((hi - lo) / step + 1e-9).floor() + 1.0;
    if count > MAX_SWEEP_POINTS as f64 {
        return Err(usage(format!("sweep {spec:?} has more than {MAX_SWEEP_POINTS} points")));
    }
    Ok((0..count as usize).map(|i| round_decimal(lo + i as f64 * step)).collect())
}

fn round_decimal(x: f64) -> f64 {
    unsigned_zero(format!("{x:.10}").parse().expect("formatted float parses"))
}

/// Maps `-0.0` to `0.0` so sign flips of an exact zero print as `0.0`.
fn unsigned_zero(x: f64) -> f64 {
    x + 0.0
}

fn parse_angle(s: &str) -> Result<PiFraction> {
    Ok(s.parse::<PiFraction>()?)
}

/// Filename-safe label of an evolution time: `pi/4` becomes `pi_4`.
fn time_label(t: Time) -> String {
    match t {
        Time::PiEighths(m) => PiFraction::eighths(m).to_string().replace('/', "_"),
        Time::Real(x) => format!("{x}"),
    }
}

fn time_text(t: Time) -> String {
    match t {
        Time::PiEighths(m) => PiFraction::eighths(m).to_string(),
        Time::Real(x) => format!("{x}"),
    }
}

fn density_checks(checks: &mut Checks, name: &str, density: &Density1D) {
    checks.near(format!("{name} normalized"), density.integral(), 1.0, NORM_TOLERANCE);
    let min = density.values.iter().copied().fold(f64::INFINITY, f64::min);
    checks.record(format!("{name} non-negative"), min >= 0.0, format!("min {min:e}"));
}

fn joint_checks(checks: &mut Checks, name: &str, density: &Density2D) {
    checks.near(format!("{name} normalized"), density.integral(), 1.0, NORM_TOLERANCE);
    let min = density.values.iter().copied().fold(f64::INFINITY, f64::min);
    checks.record(format!("{name} non-negative"), min >= 0.0, format!("min {min:e}"));
}

#[derive(Debug, Serialize)]
struct ArmRow {
    p: f64,
    density_plus: f64,
    density_minus: f64,
    oracle_plus: f64,
    oracle_minus: f64,
}

fn arm_rows(arm: &EraserArm) -> Vec<ArmRow> {
    (0..arm.plus.grid.points())
        .map(|i| ArmRow {
            p: arm.plus.grid.coord(i),
            density_plus: arm.plus.values[i],
            density_minus: arm.minus.values[i],
            oracle_plus: arm.oracle_plus[i],
            oracle_minus: arm.oracle_minus[i],
        })
        .collect()
}

pub fn eraser(args: &EraserArgs) -> Result<()> {
    let common = &args.common;
    let config = configure(common, ExperimentConfig::eraser_default(), false)?;
    let report = run_eraser(&config)?;

    let mut sink = Sink::new(&common.out_dir, common.format)?;
    sink.table("eraser_whichway", &arm_rows(&report.which_way))?;
    sink.table("eraser_fringes", &arm_rows(&report.fringes))?;

    let arms = [
        ("which_way", &report.which_way),
        ("which_way_x", &report.which_way_x),
        ("fringes", &report.fringes),
    ];
    let mut checks = Checks::default();
    for (name, arm) in arms {
        density_checks(&mut checks, &format!("{name} plus"), &arm.plus);
        density_checks(&mut checks, &format!("{name} minus"), &arm.minus);
    }
    let max_deviation = arms.iter().map(|(_, a)| a.max_deviation).fold(0.0, f64::max);
    sink.document(
        "eraser_summary.json",
        &json!({
            "which_way_visibility": report.which_way.visibility,
            "which_way_max_deviation": report.which_way.max_deviation,
            "which_way_x_max_deviation": report.which_way_x.max_deviation,
            "which_way_gaussian_deviation": report.which_way_gaussian_deviation,
            "fringe_visibility": report.fringes.visibility,
            "fringe_max_deviation": report.fringes.max_deviation,
            "fringe_simple_deviation": report.fringes_simple_deviation,
        }),
    )?;
    finish(sink, "eraser", parameters(common, &config, json!({})), Some(max_deviation), checks)
}

#[derive(Debug, Serialize)]
struct LgRow {
    alpha: f64,
    e12: f64,
    e13: f64,
    e23: f64,
    b_lg: f64,
    p_cond: f64,
}

pub fn leggett_garg(args: &LgArgs) -> Result<()> {
    let common = &args.common;
    let config = configure(common, ExperimentConfig::leggett_garg_default(), false)?;
    let alphas = match &args.alpha_sweep {
        Some(spec) => parse_sweep(spec)?,
        None => vec![round_decimal(config.alpha)],
    };
    let reports = run_leggett_garg_sweep(&alphas, config.beta, &config)?;

    let mut checks = Checks::default();
    for r in &reports {
        let tag = format!("alpha={}", r.alpha);
        for (name, e) in [("e12", r.e12), ("e13", r.e13), ("e23", r.e23)] {
            checks.within(format!("{tag} {name} in [-1, 1]"), e, -1.0, 1.0);
        }
        checks.within(format!("{tag} p_cond in [0, 1]"), r.p_cond, 0.0, 1.0);
        checks.near(format!("{tag} b_lg composition"), r.b_lg, r.e12 + r.e23 - r.e13, 1e-12);
    }
    let rows: Vec<LgRow> = reports
        .iter()
        .map(|r| LgRow {
            alpha: r.alpha,
            e12: unsigned_zero(r.e12),
            e13: unsigned_zero(r.e13),
            e23: unsigned_zero(r.e23),
            b_lg: r.b_lg,
            p_cond: r.p_cond,
        })
        .collect();
    let best = reports
        .iter()
        .fold(None, |acc: Option<&catsim::experiments::LgReport>, r| match acc {
            Some(b) if b.b_lg >= r.b_lg => Some(b),
            _ => Some(r),
        })
        .expect("sweep is non-empty");

    let mut sink = Sink::new(&common.out_dir, common.format)?;
    sink.table("lg_sweep", &rows)?;
    sink.document(
        "lg_summary.json",
        &json!({
            "beta": config.beta,
            "k": config.k,
            "points": rows.len(),
            "max_b_lg": best.b_lg,
            "alpha_at_max": best.alpha,
            "violation": best.b_lg > 1.0,
        }),
    )?;
    let extra = json!({ "alpha_sweep": args.alpha_sweep, "alphas": alphas });
    finish(sink, "lg", parameters(common, &config, extra), None, checks)
}

fn parse_dw_angles(spec: &str) -> Result<DwAngles> {
    let values: Vec<PiFraction> = spec.split(',').map(parse_angle).collect::<Result<_>>()?;
    let [t0, t1, t2, p0, p1] = values.as_slice() else {
        return Err(usage(format!("--angles needs five values θ,θ′,θ″,φ,φ′, got {}", values.len())));
    };
    Ok(DwAngles {
        theta: [*t0, *t1, *t2],
        phi: [*p0, *p1],
    })
}

#[derive(Debug, Serialize)]
struct DwRow {
    setting: String,
    theta: String,
    phi: String,
    correlator: f64,
    analytic: f64,
}

pub fn dimension_witness(args: &DwArgs) -> Result<()> {
    let common = &args.common;
    let config = configure(common, ExperimentConfig::witness_default(), false)?;
    let angles = match &args.angles {
        Some(spec) => parse_dw_angles(spec)?,
        None if args.qubit_model => DwAngles::qubit(),
        None => DwAngles::macroscopic(),
    };
    let report = if args.qubit_model {
        run_qubit_witness(&angles)
    } else {
        run_dimension_witness(&angles, config.alpha, &config)?
    };

    let labels = ["theta,phi", "theta,phi'", "theta',phi", "theta',phi'", "theta'',phi"];
    let rows: Vec<DwRow> = labels
        .iter()
        .zip(angles.pairs())
        .enumerate()
        .map(|(i, (label, (t, p)))| DwRow {
            setting: label.to_string(),
            theta: t.to_string(),
            phi: p.to_string(),
            correlator: report.correlators[i],
            analytic: report.analytic[i],
        })
        .collect();
    let mut checks = Checks::default();
    for row in &rows {
        checks.within(format!("E({}) in [-1, 1]", row.setting), row.correlator, -1.0, 1.0);
    }
    checks.near("classical bound", report.classical_bound, 3.0, 0.0);

    let model = if args.qubit_model { "qubit" } else { "cat" };
    let mut sink = Sink::new(&common.out_dir, common.format)?;
    sink.table("dw_correlators", &rows)?;
    let mut body = json!({
        "model": model,
        "angles": {
            "theta": angles.theta.map(|a| a.to_string()),
            "phi": angles.phi.map(|a| a.to_string()),
        },
        "correlators": report.correlators,
        "analytic": report.analytic,
        "i_dw": report.i_dw,
        "analytic_i_dw": report.analytic_i_dw,
        "classical_bound": report.classical_bound,
        "violation": report.i_dw > report.classical_bound,
        "max_deviation": report.max_deviation(),
    });
    if !args.qubit_model {
        body["alpha"] = json!(config.alpha);
    }
    sink.document("dw_report.json", &body)?;
    let extra = json!({ "model": model, "angles": args.angles });
    finish(sink, "dw", parameters(common, &config, extra), Some(report.max_deviation()), checks)
}

#[derive(Debug, Serialize)]
struct EprRow {
    alpha: f64,
    beta: f64,
    var_x_inf: f64,
    var_p_inf: f64,
    eps_sq: f64,
    eps_m_sq: f64,
    oracle_var_x: f64,
    oracle_var_p: f64,
    oracle_eps_sq: f64,
    quoted_var_p: f64,
}

pub fn epr(args: &EprArgs) -> Result<()> {
    let common = &args.common;
    let config = configure(common, ExperimentConfig::eraser_default(), true)?;
    let alphas = match &args.alpha_sweep {
        Some(spec) => parse_sweep(spec)?,
        None => vec![config.alpha],
    };
    let betas = if common.beta.is_empty() {
        vec![config.beta]
    } else {
        common.beta.clone()
    };
    let reports = run_epr_sweep(&alphas, &betas, &config)?;

    let mut checks = Checks::default();
    for r in &reports {
        let tag = format!("alpha={} beta={}", r.alpha, r.beta);
        checks.record(
            format!("{tag} non-negative"),
            r.var_x_inf >= 0.0 && r.var_p_inf >= 0.0 && r.epsilon_sq >= 0.0 && r.epsilon_m_sq >= 0.0,
            format!("var_x {} var_p {} eps_sq {} eps_m_sq {}", r.var_x_inf, r.var_p_inf, r.epsilon_sq, r.epsilon_m_sq),
        );
    }
    let rows: Vec<EprRow> = reports
        .iter()
        .map(|r| EprRow {
            alpha: r.alpha,
            beta: r.beta,
            var_x_inf: r.var_x_inf,
            var_p_inf: r.var_p_inf,
            eps_sq: r.epsilon_sq,
            eps_m_sq: r.epsilon_m_sq,
            oracle_var_x: r.oracle_var_x,
            oracle_var_p: r.oracle_var_p,
            oracle_eps_sq: r.oracle_var_x * r.oracle_var_p,
            quoted_var_p: r.quoted_var_p,
        })
        .collect();
    let curves: Vec<Value> = betas
        .iter()
        .map(|&beta| {
            let curve: Vec<&EprRow> = rows.iter().filter(|r| r.beta == beta).collect();
            let min = curve
                .iter()
                .fold(None, |acc: Option<&&EprRow>, r| match acc {
                    Some(b) if b.eps_sq <= r.eps_sq => Some(b),
                    _ => Some(r),
                })
                .expect("curve is non-empty");
            json!({
                "beta": beta,
                "min_eps_sq": min.eps_sq,
                "alpha_at_min": min.alpha,
                "paradox_points": curve.iter().filter(|r| r.eps_sq < 0.25).count(),
                "macro_paradox_points": curve.iter().filter(|r| r.eps_m_sq < 0.25).count(),
            })
        })
        .collect();
    let max_deviation = reports.iter().map(|r| r.max_deviation()).fold(0.0, f64::max);

    let mut sink = Sink::new(&common.out_dir, common.format)?;
    sink.table("epr_sweep", &rows)?;
    sink.document("epr_summary.json", &json!({ "curves": curves, "max_deviation": max_deviation }))?;
    let extra = json!({ "alpha_sweep": args.alpha_sweep, "alphas": alphas, "betas": betas });
    finish(sink, "epr", parameters(common, &config, extra), Some(max_deviation), checks)
}

#[derive(Debug, Serialize)]
struct QRow {
    x: f64,
    p: f64,
    q_superposition: f64,
    q_mixture: f64,
}

fn q_rows(sup: &QGrid, mix: &QGrid) -> Vec<QRow> {
    let mut rows = Vec::with_capacity(sup.values.len());
    for i in 0..sup.x_grid.points() {
        for j in 0..sup.p_grid.points() {
            rows.push(QRow {
                x: sup.x_grid.coord(i),
                p: sup.p_grid.coord(j),
                q_superposition: sup.values[[i, j]],
                q_mixture: mix.values[[i, j]],
            });
        }
    }
    rows
}

fn q_stats(q: &QGrid) -> Result<Value> {
    let (x, p) = q.peak();
    Ok(json!({
        "integral": q.integral(),
        "weight_positive": q.half_weight(Sign::Positive)?,
        "weight_negative": q.half_weight(Sign::Negative)?,
        "peak": [x, p],
    }))
}

pub fn qfunc(args: &QfuncArgs) -> Result<()> {
    let common = &args.common;
    let config = configure(common, ExperimentConfig::witness_default(), false)?;
    let theta = parse_angle(&args.theta)?;
    let phi = parse_angle(&args.phi)?;
    if args.q_points < 9 || args.q_points.is_multiple_of(2) {
        return Err(usage(format!("--q-points must be odd and at least 9, got {}", args.q_points)));
    }
    let stages = dw_q_sequence(config.alpha, theta, phi, &config)?;
    let (x_grid, p_grid) = q_grids(config.alpha, args.q_points)?;

    let mut sink = Sink::new(&common.out_dir, common.format)?;
    let mut checks = Checks::default();
    let mut summaries = Vec::new();
    let mut used = Vec::new();
    for (index, stage) in stages.iter().enumerate() {
        let grids = q_scan(&[stage.superposition.clone(), stage.mixture.clone()], &x_grid, &p_grid)?;
        let (sup, mix) = (&grids[0], &grids[1]);
        let label = stage.time.to_string().replace('/', "_");
        let stem = if used.contains(&label) {
            format!("qfunc_{label}_{index}")
        } else {
            format!("qfunc_{label}")
        };
        used.push(label);
        for (name, q) in [("superposition", sup), ("mixture", mix)] {
            checks.near(format!("stage {index} {name} normalized"), q.integral(), 1.0, NORM_TOLERANCE);
            let min = q.values.iter().copied().fold(f64::INFINITY, f64::min);
            checks.record(format!("stage {index} {name} non-negative"), min >= 0.0, format!("min {min:e}"));
        }
        sink.table(&stem, &q_rows(sup, mix))?;
        let max_difference = sup
            .values
            .iter()
            .zip(mix.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        summaries.push(json!({
            "stage": index,
            "time": stage.time.to_string(),
            "file": stem,
            "superposition": q_stats(sup)?,
            "mixture": q_stats(mix)?,
            "max_difference": max_difference,
        }));
    }
    sink.document("qfunc_summary.json", &json!({ "stages": summaries }))?;
    let extra = json!({ "theta": theta.to_string(), "phi": phi.to_string(), "q_points": args.q_points });
    finish(sink, "qfunc", parameters(common, &config, extra), None, checks)
}

fn parse_snapshot(spec: &str) -> Result<(Time, Time)> {
    let times: Vec<PiFraction> = spec.split(',').map(parse_angle).collect::<Result<_>>()?;
    let [t_a, t_b] = times.as_slice() else {
        return Err(usage(format!("--at needs two times t_a,t_b, got {spec:?}")));
    };
    Ok((Time::from_pi_fraction(*t_a), Time::from_pi_fraction(*t_b)))
}

#[derive(Debug, Serialize)]
struct JointRow {
    x_a: f64,
    x_b: f64,
    density: f64,
}

fn joint_rows(joint: &Density2D, stride: usize) -> Vec<JointRow> {
    let mut rows = Vec::new();
    for i in (0..joint.grid_a.points()).step_by(stride) {
        for j in (0..joint.grid_b.points()).step_by(stride) {
            rows.push(JointRow {
                x_a: joint.grid_a.coord(i),
                x_b: joint.grid_b.coord(j),
                density: joint.values[[i, j]],
            });
        }
    }
    rows
}

pub fn sequence(args: &SequenceArgs) -> Result<()> {
    let common = &args.common;
    if args.stride == 0 {
        return Err(usage("--stride must be at least 1"));
    }
    let schedule = if args.at.is_empty() {
        match args.schedule {
            ScheduleKind::Single => single_rotation_schedule(),
            ScheduleKind::Double => double_rotation_schedule(),
        }
    } else {
        args.at.iter().map(|s| parse_snapshot(s)).collect::<Result<_>>()?
    };
    let config = configure(common, ExperimentConfig::sequence_default().with_schedule(schedule), false)?;
    let bell = config.bell()?;
    let mix = config.mixture()?;

    let mut sink = Sink::new(&common.out_dir, common.format)?;
    let mut checks = Checks::default();
    let mut snapshots = Vec::new();
    for &(t_a, t_b) in &config.schedule {
        let joint_bell = sequence_snapshot(&config, &bell, t_a, t_b)?;
        let joint_mix = sequence_snapshot(&config, &mix, t_a, t_b)?;
        let stats_bell = spin_statistics(&joint_bell)?;
        let stats_mix = spin_statistics(&joint_mix)?;
        let (chosen, stats) = match args.state {
            StateKind::Bell => (&joint_bell, &stats_bell),
            StateKind::Mix => (&joint_mix, &stats_mix),
        };
        let stem = format!("sequence_{}_{}", time_label(t_a), time_label(t_b));
        let tag = format!("({}, {})", time_text(t_a), time_text(t_b));
        joint_checks(&mut checks, &format!("{tag} bell"), &joint_bell);
        joint_checks(&mut checks, &format!("{tag} mix"), &joint_mix);
        for (name, e) in [("bell", stats_bell.correlator), ("mix", stats_mix.correlator)] {
            checks.within(format!("{tag} {name} correlator in [-1, 1]"), e, -1.0, 1.0);
        }
        sink.table(&stem, &joint_rows(chosen, args.stride))?;
        let gap = (stats_bell.correlator - stats_mix.correlator).abs();
        snapshots.push(json!({
            "t_a": time_text(t_a),
            "t_b": time_text(t_b),
            "file": stem,
            "correlator": stats.correlator,
            "p_plus_plus": stats.p_plus_plus,
            "p_plus_minus": stats.p_plus_minus,
            "p_minus_plus": stats.p_minus_plus,
            "p_minus_minus": stats.p_minus_minus,
            "correlator_bell": stats_bell.correlator,
            "correlator_mix": stats_mix.correlator,
            "correlator_gap": gap,
            "sup_difference": joint_bell.max_abs_diff(&joint_mix),
            "macroscopic_divergence": gap > DIVERGENCE_GAP,
        }));
    }
    let state = match args.state {
        StateKind::Bell => "bell",
        StateKind::Mix => "mix",
    };
    sink.document(
        "sequence_summary.json",
        &json!({ "state": state, "divergence_gap": DIVERGENCE_GAP, "snapshots": snapshots }),
    )?;
    let at: Vec<String> = config
        .schedule
        .iter()
        .map(|&(a, b)| format!("{},{}", time_text(a), time_text(b)))
        .collect();
    let extra = json!({ "state": state, "schedule": at, "stride": args.stride });
    finish(sink, "sequence", parameters(common, &config, extra), None, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_values_equal_typed_values() {
        let alphas = parse_sweep("0.2:3:0.1").unwrap();
        assert_eq!(alphas.len(), 29);
        assert_eq!(alphas[18], 2.0);
        assert_eq!(alphas[1], 0.3);
        assert_eq!(*alphas.last().unwrap(), 3.0);
        assert_eq!(parse_sweep("2:2:0.5").unwrap(), vec![2.0]);
    }

    #[test]
    fn malformed_sweeps_are_usage_errors() {
        for spec in ["1:2", "2:1:0.1", "0:1:0", "a:b:c", "0:1:-1"] {
            let err = parse_sweep(spec).unwrap_err();
            assert!(err.downcast_ref::<UsageError>().is_some(), "{spec}");
        }
    }

    #[test]
    fn time_labels_are_filename_safe() {
        assert_eq!(time_label(Time::PiEighths(4)), "pi_2");
        assert_eq!(time_label(Time::PiEighths(3)), "3pi_8");
        assert_eq!(time_label(Time::ZERO), "0");
    }

    #[test]
    fn witness_angles_need_five_values() {
        assert!(parse_dw_angles("pi/8,3pi/8,7pi/4,7pi/4,0").is_ok());
        let err = parse_dw_angles("pi/8,0").unwrap_err();
        assert!(err.downcast_ref::<UsageError>().is_some());
        let err = parse_dw_angles("pi/8,0,0,0,x").unwrap_err();
        assert!(matches!(err.downcast_ref::<catsim::Error>(), Some(catsim::Error::AngleParse(_))));
    }
}
