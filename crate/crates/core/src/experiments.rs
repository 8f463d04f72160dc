//! End-to-end drivers for the eraser, Leggett–Garg, Bell-versus-mixture,
//! dimension-witness, EPR and Q-function scenarios.
//!
//! Every driver builds its states in the truncated Fock basis, evolves them
//! with exact π/8 phases, samples the relevant quadrature densities and pairs
//! the numeric result with the closed-form oracle where one exists.

use std::f64::consts::PI;

use ndarray::Array2;
use rayon::prelude::*;

use crate::angle::PiFraction;
use crate::dynamics::{evolve, evolve_local, NonlinearUnitary, Time};
use crate::error::{Error, Result};
use crate::fock::{
    bell_cat_state, mix_state, Mixture, MixtureState, ModeLabel, SingleModeState, TruncationPolicy, TwoModeState,
};
use crate::oracles::{
    self, dw_expectation, epr_variances, epr_variances_quoted, macro_epr, mz_qubit_expectation, Branch, HusimiQ,
    OracleParams,
};
use crate::quadrature::{
    conditional_marginal, joint_density, marginal_density, moments, sign_expectation,
    spin_statistics, Density1D, Density2D, Grid1D, QuadratureAxis, Sign, SpinStatistics, BOUNDARY_THRESHOLD,
    DEFAULT_GRID_MARGIN, DEFAULT_GRID_POINTS,
};

/// Half-width of the central window used to measure fringe contrast.
pub const VISIBILITY_WINDOW: f64 = 2.0;

/// Parameters shared by all experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub alpha: f64,
    pub beta: f64,
    pub k: u32,
    /// `(t_a, t_b)` evolution times, in units of `Ω⁻¹`.
    pub schedule: Vec<(Time, Time)>,
    pub grid_points: usize,
    /// Half-width of every quadrature grid; per-amplitude default when `None`.
    pub grid_span: Option<f64>,
    /// Fock cutoff for both modes; per-amplitude default when `None`.
    pub n_max: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(alpha: f64, beta: f64, k: u32) -> Self {
        ExperimentConfig {
            alpha,
            beta,
            k,
            schedule: Vec::new(),
            grid_points: DEFAULT_GRID_POINTS,
            grid_span: None,
            n_max: None,
        }
    }

    /// Eraser and EPR defaults: `α = β = 2`, `k = 2`.
    pub fn eraser_default() -> Self {
        Self::new(2.0, 2.0, 2)
    }

    /// Leggett–Garg default: `α = β = 2`, `k = 4`.
    pub fn leggett_garg_default() -> Self {
        Self::new(2.0, 2.0, 4)
    }

    /// Bell-versus-mixture default: `α = β = 3`, `k = 4`, single-rotation schedule.
    pub fn sequence_default() -> Self {
        Self::new(3.0, 3.0, 4).with_schedule(single_rotation_schedule())
    }

    /// Dimension-witness default: `α = 3`, `k = 4`.
    pub fn witness_default() -> Self {
        Self::new(3.0, 0.0, 4)
    }

    pub fn with_amplitudes(mut self, alpha: f64, beta: f64) -> Self {
        self.alpha = alpha;
        self.beta = beta;
        self
    }

    pub fn with_schedule(mut self, schedule: Vec<(Time, Time)>) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_grid(mut self, points: usize, span: Option<f64>) -> Self {
        self.grid_points = points;
        self.grid_span = span;
        self
    }

    pub fn with_n_max(mut self, n_max: Option<usize>) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 || !self.k.is_multiple_of(2) {
            return Err(Error::InvalidExponent(self.k));
        }
        for amp in [self.alpha, self.beta] {
            if !amp.is_finite() || amp < 0.0 {
                return Err(Error::NegativeAmplitude(amp));
            }
        }
        for &(ta, tb) in &self.schedule {
            for t in [ta, tb] {
                if t.to_f64() < 0.0 {
                    return Err(Error::NegativeTime(t.to_f64()));
                }
            }
        }
        if let Some(span) = self.grid_span {
            if span.is_nan() || span <= 0.0 {
                return Err(Error::InvalidGrid(format!("grid span {span} must be positive")));
            }
        }
        Ok(())
    }

    /// Truncation for amplitude `amp`, honouring the cutoff override.
    pub fn policy(&self, amp: f64) -> Result<TruncationPolicy> {
        let policy = TruncationPolicy::for_amplitude(amp);
        let policy = match self.n_max {
            Some(n) => policy.with_n_max(n),
            None => policy,
        };
        policy.admit(amp)?;
        Ok(policy)
    }

    /// Grid for a quadrature of a mode with amplitude `amp`.
    pub fn grid(&self, amp: f64) -> Result<Grid1D> {
        let half = self
            .grid_span
            .unwrap_or(std::f64::consts::SQRT_2 * amp.abs() + DEFAULT_GRID_MARGIN);
        Grid1D::symmetric(half, self.grid_points)
    }

    pub fn bell(&self) -> Result<TwoModeState> {
        bell_cat_state(self.alpha, self.beta, self.policy(self.alpha)?, self.policy(self.beta)?)
    }

    pub fn mixture(&self) -> Result<MixtureState> {
        mix_state(self.alpha, self.beta, self.policy(self.alpha)?, self.policy(self.beta)?)
    }

    fn oracle(&self, branch: Branch) -> OracleParams {
        OracleParams::new(self.alpha, self.beta, branch)
    }
}

/// `(0,0), (π/8,0), (π/4,0), (3π/8,0), (π/2,0)`: rotation at A only.
pub fn single_rotation_schedule() -> Vec<(Time, Time)> {
    (0..=4).map(|m| (Time::PiEighths(m), Time::ZERO)).collect()
}

/// `(0,0), (π/8,π/8), (π/4,π/4), (3π/8,π/4), (π/2,π/4)`: both sites rotate.
pub fn double_rotation_schedule() -> Vec<(Time, Time)> {
    [(0, 0), (1, 1), (2, 2), (3, 2), (4, 2)]
        .into_iter()
        .map(|(a, b)| (Time::PiEighths(a), Time::PiEighths(b)))
        .collect()
}

/// Contrast `(max − min)/(max + min)` of a P density divided by the vacuum
/// envelope `e^{−p²}/√π`, over `|p| ≤ 2`.
pub fn fringe_visibility(dist: &Density1D) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (i, v) in dist.values.iter().enumerate() {
        let p = dist.grid.coord(i);
        if p.abs() <= VISIBILITY_WINDOW {
            let r = v / ((-p * p).exp() / PI.sqrt());
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    if hi + lo > 0.0 {
        (hi - lo) / (hi + lo)
    } else {
        0.0
    }
}

/// One arm of the eraser: `P(P_A)_±` with its oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct EraserArm {
    pub plus: Density1D,
    pub minus: Density1D,
    pub oracle_plus: Vec<f64>,
    pub oracle_minus: Vec<f64>,
    /// Sup-norm distance between numeric and oracle columns.
    pub max_deviation: f64,
    /// Larger of the two branch visibilities.
    pub visibility: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EraserReport {
    /// Which-way arm, `(t_a, t_b) = (π/2, π/2)`.
    pub which_way: EraserArm,
    /// `P(X_A)_±` on the which-way arm, with the closed form as oracle.
    pub which_way_x: EraserArm,
    /// Sup-norm distance of the which-way `P(P_A)_±` from the vacuum Gaussian.
    pub which_way_gaussian_deviation: f64,
    /// Eraser arm, A rotated and B returned to its initial state.
    pub fringes: EraserArm,
    /// Sup-norm distance of the eraser-arm fringes from the ideal-projection form.
    pub fringes_simple_deviation: f64,
}

fn eraser_arm(
    state: &TwoModeState,
    axis: QuadratureAxis,
    grid_a: &Grid1D,
    grid_b: &Grid1D,
    oracle: impl Fn(f64, Branch) -> f64,
) -> Result<EraserArm> {
    let branch_density = |branch: Branch| -> Result<Density1D> {
        Ok(conditional_marginal(state, axis, QuadratureAxis::X, grid_a, grid_b, branch.condition())?.density)
    };
    let plus = branch_density(Branch::Plus)?;
    let minus = branch_density(Branch::Minus)?;
    let coords = grid_a.coords();
    let oracle_plus: Vec<f64> = coords.iter().map(|&u| oracle(u, Branch::Plus)).collect();
    let oracle_minus: Vec<f64> = coords.iter().map(|&u| oracle(u, Branch::Minus)).collect();
    let deviation = |d: &Density1D, o: &[f64]| d.values.iter().zip(o).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    let max_deviation = deviation(&plus, &oracle_plus).max(deviation(&minus, &oracle_minus));
    let visibility = match axis {
        QuadratureAxis::P => fringe_visibility(&plus).max(fringe_visibility(&minus)),
        QuadratureAxis::X => 0.0,
    };
    Ok(EraserArm {
        plus,
        minus,
        oracle_plus,
        oracle_minus,
        max_deviation,
        visibility,
    })
}

/// Which-way and eraser arms of the delayed-choice eraser.
pub fn run_eraser(config: &ExperimentConfig) -> Result<EraserReport> {
    config.validate()?;
    let bell = config.bell()?;
    let t3 = Time::PiEighths(4);
    let grid_a = config.grid(config.alpha)?;
    let grid_b = config.grid(config.beta)?;

    let which_way_state = evolve_local(&bell, config.k, t3, t3)?;
    let which_way = eraser_arm(&which_way_state, QuadratureAxis::P, &grid_a, &grid_b, |p, b| {
        oracles::which_way_conditional(p, &config.oracle(b))
    })?;
    let which_way_x = eraser_arm(&which_way_state, QuadratureAxis::X, &grid_a, &grid_b, |x, b| {
        oracles::conditional_x_full(x, &config.oracle(b))
    })?;
    let gaussian = |p: f64| (-p * p).exp() / PI.sqrt();
    let which_way_gaussian_deviation = which_way
        .plus
        .max_deviation_from(gaussian)
        .max(which_way.minus.max_deviation_from(gaussian));

    let eraser_state = evolve_local(&bell, config.k, t3, Time::ZERO)?;
    let fringes = eraser_arm(&eraser_state, QuadratureAxis::P, &grid_a, &grid_b, |p, b| {
        oracles::fringe_full(p, &config.oracle(b))
    })?;
    let fringes_simple_deviation = fringes
        .plus
        .max_deviation_from(|p| oracles::fringe_simple(p, &config.oracle(Branch::Plus)))
        .max(
            fringes
                .minus
                .max_deviation_from(|p| oracles::fringe_simple(p, &config.oracle(Branch::Minus))),
        );

    Ok(EraserReport {
        which_way,
        which_way_x,
        which_way_gaussian_deviation,
        fringes,
        fringes_simple_deviation,
    })
}

/// Joint `(X_A, X_B)` density of `state` after local evolution `(t_a, t_b)`.
pub fn sequence_snapshot<S>(config: &ExperimentConfig, state: &S, t_a: Time, t_b: Time) -> Result<Density2D>
where
    S: crate::dynamics::Evolve + crate::quadrature::Joint,
{
    let evolved = evolve_local(state, config.k, t_a.wrapped(), t_b.wrapped())?;
    joint_density(
        &evolved,
        QuadratureAxis::X,
        QuadratureAxis::X,
        &config.grid(config.alpha)?,
        &config.grid(config.beta)?,
    )
}

fn sign_statistics_at(config: &ExperimentConfig, state: &TwoModeState, t_a: Time, t_b: Time) -> Result<SpinStatistics> {
    spin_statistics(&sequence_snapshot(config, state, t_a, t_b)?)
}

/// Leggett–Garg moments inferred through mode B.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LgReport {
    pub alpha: f64,
    pub beta: f64,
    /// Raw correlators `⟨S^A S^B⟩` at `(π/4,0)`, `(π/2,0)`, `(π/2,π/4)`.
    pub raw12: f64,
    pub raw13: f64,
    pub raw23: f64,
    /// A-side moments `⟨S_i S_j⟩ = −raw`, using the anticorrelation of the pair.
    pub e12: f64,
    pub e13: f64,
    pub e23: f64,
    pub b_lg: f64,
    /// `P(S^A = 1 | S^B = −1)` before any evolution.
    pub p_cond: f64,
}

/// Leggett–Garg test at times `t_1 = 0`, `t_2 = π/4`, `t_3 = π/2`.
pub fn run_leggett_garg(alpha: f64, beta: f64, config: &ExperimentConfig) -> Result<LgReport> {
    let config = config.clone().with_amplitudes(alpha, beta);
    config.validate()?;
    let bell = config.bell()?;
    let settings = [
        (Time::ZERO, Time::ZERO),
        (Time::PiEighths(2), Time::ZERO),
        (Time::PiEighths(4), Time::ZERO),
        (Time::PiEighths(4), Time::PiEighths(2)),
    ];
    let stats = settings
        .par_iter()
        .map(|&(ta, tb)| sign_statistics_at(&config, &bell, ta, tb))
        .collect::<Result<Vec<_>>>()?;
    let (raw12, raw13, raw23) = (stats[1].correlator, stats[2].correlator, stats[3].correlator);
    let (e12, e13, e23) = (-raw12, -raw13, -raw23);
    Ok(LgReport {
        alpha,
        beta,
        raw12,
        raw13,
        raw23,
        e12,
        e13,
        e23,
        b_lg: e12 + e23 - e13,
        p_cond: stats[0].conditional_a_given_b(Sign::Positive, Sign::Negative),
    })
}

/// Leggett–Garg reports for each amplitude, in input order.
pub fn run_leggett_garg_sweep(alphas: &[f64], beta: f64, config: &ExperimentConfig) -> Result<Vec<LgReport>> {
    alphas
        .par_iter()
        .map(|&a| run_leggett_garg(a, beta, config))
        .collect()
}

/// Bell and mixture joint statistics at one schedule entry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnapshotComparison {
    pub t_a: Time,
    pub t_b: Time,
    /// Sup-norm distance between the two joint `(X_A, X_B)` densities.
    pub sup_difference: f64,
    pub correlator_bell: f64,
    pub correlator_mix: f64,
}

impl SnapshotComparison {
    pub fn correlator_gap(&self) -> f64 {
        (self.correlator_bell - self.correlator_mix).abs()
    }
}

/// Applies the configured schedule to the Bell state and the mixture.
pub fn run_mixture_comparison(config: &ExperimentConfig) -> Result<Vec<SnapshotComparison>> {
    config.validate()?;
    let bell = config.bell()?;
    let mix = config.mixture()?;
    config
        .schedule
        .par_iter()
        .map(|&(t_a, t_b)| {
            let jb = sequence_snapshot(config, &bell, t_a, t_b)?;
            let jm = sequence_snapshot(config, &mix, t_a, t_b)?;
            Ok(SnapshotComparison {
                t_a,
                t_b,
                sup_difference: jb.max_abs_diff(&jm),
                correlator_bell: spin_statistics(&jb)?.correlator,
                correlator_mix: spin_statistics(&jm)?.correlator,
            })
        })
        .collect()
}

/// Preparation angles `θ, θ′, θ″` and measurement angles `φ, φ′`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DwAngles {
    pub theta: [PiFraction; 3],
    pub phi: [PiFraction; 2],
}

impl DwAngles {
    /// `θ = π/8, θ′ = 3π/8, θ″ = 7π/4; φ = 7π/4, φ′ = 0`.
    pub fn macroscopic() -> Self {
        DwAngles {
            theta: [PiFraction::new(1, 8), PiFraction::new(3, 8), PiFraction::new(7, 4)],
            phi: [PiFraction::new(7, 4), PiFraction::ZERO],
        }
    }

    /// `θ = π/4, θ′ = π/2, θ″ = 7π/8; φ = 13π/8, φ′ = 15π/8`.
    pub fn alternative() -> Self {
        DwAngles {
            theta: [PiFraction::new(1, 4), PiFraction::new(1, 2), PiFraction::new(7, 8)],
            phi: [PiFraction::new(13, 8), PiFraction::new(15, 8)],
        }
    }

    /// `θ = π/8, θ′ = 3π/8, θ″ = −π/4; φ = π/4, φ′ = 0`, for the qubit model.
    pub fn qubit() -> Self {
        DwAngles {
            theta: [PiFraction::new(1, 8), PiFraction::new(3, 8), PiFraction::new(-1, 4)],
            phi: [PiFraction::new(1, 4), PiFraction::ZERO],
        }
    }

    /// Setting pairs in the order `(θ,φ), (θ,φ′), (θ′,φ), (θ′,φ′), (θ″,φ)`.
    pub fn pairs(&self) -> [(PiFraction, PiFraction); 5] {
        let [t, t1, t2] = self.theta;
        let [p, p1] = self.phi;
        [(t, p), (t, p1), (t1, p), (t1, p1), (t2, p)]
    }

    pub fn to_f64(&self) -> oracles::WitnessAngles {
        oracles::WitnessAngles {
            theta: self.theta.map(|a| a.to_f64()),
            phi: self.phi.map(|a| a.to_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DwReport {
    pub angles: DwAngles,
    /// Numeric correlators in [`DwAngles::pairs`] order.
    pub correlators: [f64; 5],
    pub analytic: [f64; 5],
    pub i_dw: f64,
    pub analytic_i_dw: f64,
    /// Largest `I_DW` of any deterministic two-dimensional model.
    pub classical_bound: f64,
}

impl DwReport {
    pub fn max_deviation(&self) -> f64 {
        self.correlators
            .iter()
            .zip(&self.analytic)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `⟨sign X⟩` after preparing `|α⟩` with `t_θ = 2θ` and measuring with `t_φ = 2φ`.
pub fn dw_correlator(theta: PiFraction, phi: PiFraction, alpha: f64, config: &ExperimentConfig) -> Result<f64> {
    let t_theta = Time::PiEighths(2 * theta.require_eighths()?).wrapped();
    let t_phi = Time::PiEighths(2 * phi.require_eighths()?).wrapped();
    let state = SingleModeState::coherent(alpha, config.policy(alpha)?)?;
    let prepared = evolve(&state, &NonlinearUnitary::on_a(config.k, t_theta)?);
    let measured = evolve(&prepared, &NonlinearUnitary::on_a(config.k, t_phi)?);
    let density = marginal_density(&measured, ModeLabel::A, QuadratureAxis::X, &config.grid(alpha)?)?;
    sign_expectation(&density)
}

/// Prepare-and-measure dimension witness on a single mode.
pub fn run_dimension_witness(angles: &DwAngles, alpha: f64, config: &ExperimentConfig) -> Result<DwReport> {
    config.validate()?;
    let pairs = angles.pairs();
    for (t, p) in pairs {
        t.require_eighths()?;
        p.require_eighths()?;
    }
    let values = pairs
        .par_iter()
        .map(|&(t, p)| dw_correlator(t, p, alpha, config))
        .collect::<Result<Vec<_>>>()?;
    let mut correlators = [0.0; 5];
    correlators.copy_from_slice(&values);
    let mut analytic = [0.0; 5];
    for (a, (t, p)) in analytic.iter_mut().zip(pairs) {
        *a = dw_expectation(t.to_f64(), p.to_f64())?;
    }
    Ok(DwReport {
        angles: *angles,
        correlators,
        analytic,
        i_dw: oracles::i_dw(correlators),
        analytic_i_dw: oracles::i_dw(analytic),
        classical_bound: classical_witness_bound(),
    })
}

/// Microscopic qubit reference `cos(2(θ − φ))` over the same witness.
pub fn run_qubit_witness(angles: &DwAngles) -> DwReport {
    let mut correlators = [0.0; 5];
    for (c, (t, p)) in correlators.iter_mut().zip(angles.pairs()) {
        *c = mz_qubit_expectation(t.to_f64(), p.to_f64());
    }
    let value = oracles::i_dw(correlators);
    DwReport {
        angles: *angles,
        correlators,
        analytic: correlators,
        i_dw: value,
        analytic_i_dw: value,
        classical_bound: classical_witness_bound(),
    }
}

/// Maximum `I_DW` over product strategies `E(x,y) = a_x·b_y` (2⁵ of them).
pub fn product_strategy_bound() -> f64 {
    let mut best = f64::NEG_INFINITY;
    for bits in 0u32..32 {
        let s = |i: u32| if bits >> i & 1 == 1 { 1.0 } else { -1.0 };
        let (a, b) = ([s(0), s(1), s(2)], [s(3), s(4)]);
        let e = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1], a[2] * b[0]];
        best = best.max(oracles::i_dw(e));
    }
    best
}

/// Maximum `I_DW` over deterministic two-dimensional models: each preparation
/// sends one bit `λ(x) ∈ {±1}`, each measurement applies one of the four
/// Boolean functions `f_y(λ)`.
pub fn classical_witness_bound() -> f64 {
    let functions: [fn(f64) -> f64; 4] = [|_| 1.0, |_| -1.0, |l| l, |l| -l];
    let mut best = f64::NEG_INFINITY;
    for bits in 0u32..8 {
        let lam = |i: u32| if bits >> i & 1 == 1 { 1.0 } else { -1.0 };
        let l = [lam(0), lam(1), lam(2)];
        for f in &functions {
            for g in &functions {
                let e = [f(l[0]), g(l[0]), f(l[1]), g(l[1]), f(l[2])];
                best = best.max(oracles::i_dw(e));
            }
        }
    }
    best.max(product_strategy_bound())
}

/// EPR inference variances, numeric and closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EprReport {
    pub alpha: f64,
    pub beta: f64,
    pub var_x_inf: f64,
    pub var_p_inf: f64,
    pub epsilon_sq: f64,
    pub epsilon_m_sq: f64,
    pub oracle_var_x: f64,
    pub oracle_var_p: f64,
    pub quoted_var_p: f64,
}

impl EprReport {
    pub fn max_deviation(&self) -> f64 {
        (self.var_x_inf - self.oracle_var_x)
            .abs()
            .max((self.var_p_inf - self.oracle_var_p).abs())
    }
}

/// `Σ_± P(±)·Var(u_a | ±)` for a quadrature of A conditioned on the sign of `X_B`.
fn inferred_variance(state: &TwoModeState, axis: QuadratureAxis, grid_a: &Grid1D, grid_b: &Grid1D) -> Result<f64> {
    let mut total = 0.0;
    for sign in [Sign::Positive, Sign::Negative] {
        let c = conditional_marginal(state, axis, QuadratureAxis::X, grid_a, grid_b, sign)?;
        total += c.probability * moments(&c.density).1;
    }
    Ok(total)
}

/// EPR paradox: X inferred on the Bell state, P on the eraser-arm state.
pub fn run_epr(alpha: f64, beta: f64, config: &ExperimentConfig) -> Result<EprReport> {
    let config = config.clone().with_amplitudes(alpha, beta);
    config.validate()?;
    let bell = config.bell()?;
    let grid_a = config.grid(alpha)?;
    let grid_b = config.grid(beta)?;
    let var_x_inf = inferred_variance(&bell, QuadratureAxis::X, &grid_a, &grid_b)?;
    let eraser_state = evolve_local(&bell, config.k, Time::PiEighths(4), Time::ZERO)?;
    let var_p_inf = inferred_variance(&eraser_state, QuadratureAxis::P, &grid_a, &grid_b)?;
    let params = config.oracle(Branch::Plus);
    let (oracle_var_x, oracle_var_p) = epr_variances(&params);
    Ok(EprReport {
        alpha,
        beta,
        var_x_inf,
        var_p_inf,
        epsilon_sq: var_x_inf * var_p_inf,
        epsilon_m_sq: macro_epr(&params),
        oracle_var_x,
        oracle_var_p,
        quoted_var_p: epr_variances_quoted(&params).1,
    })
}

/// EPR reports over a `β × α` grid, `β` outermost, in input order.
pub fn run_epr_sweep(alphas: &[f64], betas: &[f64], config: &ExperimentConfig) -> Result<Vec<EprReport>> {
    let pairs: Vec<(f64, f64)> = betas
        .iter()
        .flat_map(|&b| alphas.iter().map(move |&a| (a, b)))
        .collect();
    pairs.par_iter().map(|&(a, b)| run_epr(a, b, config)).collect()
}

/// Single-mode state for Q-function scans.
#[derive(Debug, Clone, PartialEq)]
pub enum QState {
    Pure(SingleModeState),
    Mixed(Mixture<SingleModeState>),
}

impl HusimiQ for QState {
    fn q_value(&self, x: f64, p: f64) -> f64 {
        match self {
            QState::Pure(s) => s.q_value(x, p),
            QState::Mixed(m) => m.q_value(x, p),
        }
    }
}

impl QState {
    fn evolve(&self, u: &NonlinearUnitary) -> QState {
        match self {
            QState::Pure(s) => QState::Pure(evolve(s, u)),
            QState::Mixed(m) => QState::Mixed(evolve(m, u)),
        }
    }
}

/// A Q function sampled on `x_grid × p_grid`; `values[[i, j]] = Q(x_i, p_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QGrid {
    pub x_grid: Grid1D,
    pub p_grid: Grid1D,
    pub values: Array2<f64>,
}

impl QGrid {
    pub fn integral(&self) -> f64 {
        let wx = ndarray::Array1::from(self.x_grid.trapezoid_weights());
        let wp = ndarray::Array1::from(self.p_grid.trapezoid_weights());
        wx.dot(&self.values.dot(&wp))
    }

    /// Integrated weight of the half-plane `x > 0` (Positive) or `x < 0`.
    pub fn half_weight(&self, sign: Sign) -> Result<f64> {
        let wx = ndarray::Array1::from(self.x_grid.half_line_weights(sign)?);
        let wp = ndarray::Array1::from(self.p_grid.trapezoid_weights());
        Ok(wx.dot(&self.values.dot(&wp)))
    }

    /// Grid point of the largest value.
    pub fn peak(&self) -> (f64, f64) {
        let mut best = (0, 0, f64::NEG_INFINITY);
        for ((i, j), &v) in self.values.indexed_iter() {
            if v > best.2 {
                best = (i, j, v);
            }
        }
        (self.x_grid.coord(best.0), self.p_grid.coord(best.1))
    }
}

/// Default Q grid: `x ∈ ±(α + 6)`, `p ∈ ±6`.
pub fn q_grids(alpha: f64, points: usize) -> Result<(Grid1D, Grid1D)> {
    Ok((
        Grid1D::symmetric(alpha.abs() + DEFAULT_GRID_MARGIN, points)?,
        Grid1D::symmetric(DEFAULT_GRID_MARGIN, points)?,
    ))
}

fn q_grid<S: HusimiQ + Sync>(state: &S, x_grid: &Grid1D, p_grid: &Grid1D) -> Result<QGrid> {
    let xs = x_grid.coords();
    let ps = p_grid.coords();
    let rows: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| ps.iter().map(|&p| state.q_value(x, p)).collect())
        .collect();
    let values = Array2::from_shape_fn((xs.len(), ps.len()), |(i, j)| rows[i][j]);
    let n = xs.len();
    let m = ps.len();
    let edge = (0..n)
        .flat_map(|i| [values[[i, 0]], values[[i, m - 1]]])
        .chain((0..m).flat_map(|j| [values[[0, j]], values[[n - 1, j]]]))
        .fold(0.0, f64::max);
    if edge > BOUNDARY_THRESHOLD {
        return Err(Error::GridTooNarrow {
            boundary_density: edge,
            threshold: BOUNDARY_THRESHOLD,
        });
    }
    Ok(QGrid {
        x_grid: *x_grid,
        p_grid: *p_grid,
        values,
    })
}

/// Q grids for each state of a sequence, in order.
pub fn q_scan(states: &[QState], x_grid: &Grid1D, p_grid: &Grid1D) -> Result<Vec<QGrid>> {
    states.iter().map(|s| q_grid(s, x_grid, p_grid)).collect()
}

/// One stage of the witness preparation/measurement sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct QStage {
    /// Net interaction time since `|α⟩`, folded into `[0, 2π)`.
    pub time: PiFraction,
    pub superposition: QState,
    pub mixture: QState,
}

/// `|α⟩`, the θ-preparation, and the φ-measurement rotation, for both the
/// superposition and the matching mixture `cos²θ|α⟩⟨α| + sin²θ|−α⟩⟨−α|`.
pub fn dw_q_sequence(alpha: f64, theta: PiFraction, phi: PiFraction, config: &ExperimentConfig) -> Result<Vec<QStage>> {
    let m_theta = 2 * theta.require_eighths()?;
    let m_phi = 2 * phi.require_eighths()?;
    let policy = config.policy(alpha)?;
    let initial = SingleModeState::coherent(alpha, policy)?;
    let prep = NonlinearUnitary::on_a(config.k, Time::PiEighths(m_theta).wrapped())?;
    let meas = NonlinearUnitary::on_a(config.k, Time::PiEighths(m_phi).wrapped())?;

    let superposition = QState::Pure(evolve(&initial, &prep));
    let c = theta.to_f64().cos().powi(2);
    let mixture = QState::Mixed(Mixture::new(vec![
        (c, SingleModeState::coherent(alpha, policy)?),
        (1.0 - c, SingleModeState::coherent(-alpha, policy)?),
    ])?);
    let folded = |m: i64| PiFraction::eighths(m.rem_euclid(16));
    Ok(vec![
        QStage {
            time: PiFraction::ZERO,
            superposition: QState::Pure(initial.clone()),
            mixture: QState::Pure(initial),
        },
        QStage {
            time: folded(m_theta),
            superposition: superposition.clone(),
            mixture: mixture.clone(),
        },
        QStage {
            time: folded(m_theta + m_phi),
            superposition: superposition.evolve(&meas),
            mixture: mixture.evolve(&meas),
        },
    ])
}
