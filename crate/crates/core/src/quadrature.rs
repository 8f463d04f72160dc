//! Quadrature probability densities on uniform grids.
//!
//! Conventions: `X̂ = (â + â†)/√2`, `P̂ = (â − â†)/(i√2)`, so a real coherent
//! amplitude `α` gives an X-density centred at `√2·α` with variance ½. The
//! momentum basis is `⟨p|n⟩ = (−i)^n ψ_n(p)`.
//!
//! All integrals are trapezoid sums on the grid. Integrals over a half-line
//! (sign bins, conditioning on the sign of the other mode) split the grid at
//! the point `0` and add Gregory end corrections at the split, because the
//! integrand does not vanish there and a bare trapezoid would carry an
//! `O(h²)` error.

use ndarray::{s, Array1, Array2, Axis};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{Mixture, ModeLabel, SingleModeState, TwoModeState};

/// Density allowed at a grid boundary before the grid is considered too narrow.
pub const BOUNDARY_THRESHOLD: f64 = 1e-10;
/// Minimum probability of a conditioning half-line.
pub const CONDITION_THRESHOLD: f64 = 1e-12;
/// Default number of grid points per axis.
pub const DEFAULT_GRID_POINTS: usize = 1201;
/// Default margin added to the outermost hill centre `√2·α`.
pub const DEFAULT_GRID_MARGIN: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadratureAxis {
    X,
    P,
}

/// Sign of a quadrature outcome (the macroscopic spin).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Uniform grid `lo, lo + h, …, hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    lo: f64,
    hi: f64,
    points: usize,
}

impl Grid1D {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {points}")));
        }
        if !lo.is_finite() || !hi.is_finite() || hi <= lo {
            return Err(Error::InvalidGrid(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Grid1D { lo, hi, points })
    }

    /// `[−half_width, half_width]`; an odd point count puts a node at 0.
    pub fn symmetric(half_width: f64, points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, points)
    }

    /// `±(√2·α + 6)` with 1201 points.
    pub fn for_amplitude(alpha: f64) -> Self {
        let half = std::f64::consts::SQRT_2 * alpha.abs() + DEFAULT_GRID_MARGIN;
        Grid1D {
            lo: -half,
            hi: half,
            points: DEFAULT_GRID_POINTS,
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.hi
        } else {
            self.lo + i as f64 * self.spacing()
        }
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.coord(i)).collect()
    }

    /// Index of the grid node at 0, if there is one.
    pub fn zero_index(&self) -> Option<usize> {
        let pos = -self.lo / self.spacing();
        let i = pos.round();
        if i >= 0.0 && (i as usize) < self.points && (pos - i).abs() < 1e-9 {
            Some(i as usize)
        } else {
            None
        }
    }

    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut w = vec![h; self.points];
        w[0] = 0.5 * h;
        w[self.points - 1] = 0.5 * h;
        w
    }

    /// Weights for `∫` over `u > 0` (Positive) or `u < 0` (Negative).
    ///
    /// Trapezoid weights on the half grid with third-order Gregory
    /// corrections at the node `u = 0`; the far end is assumed negligible.
    pub fn half_line_weights(&self, sign: Sign) -> Result<Vec<f64>> {
        const CORRECTION: [f64; 4] = [-109.0 / 720.0, 177.0 / 720.0, -87.0 / 720.0, 19.0 / 720.0];
        let z = self
            .zero_index()
            .ok_or_else(|| Error::InvalidGrid("half-line integrals need a grid node at 0".into()))?;
        if z < CORRECTION.len() || self.points - 1 - z < CORRECTION.len() {
            return Err(Error::InvalidGrid("too few points on one side of 0".into()));
        }
        let h = self.spacing();
        let mut w = vec![0.0; self.points];
        match sign {
            Sign::Positive => {
                for wi in w.iter_mut().skip(z) {
                    *wi = h;
                }
                w[z] = 0.5 * h;
                w[self.points - 1] = 0.5 * h;
                for (j, c) in CORRECTION.iter().enumerate() {
                    w[z + j] += c * h;
                }
            }
            Sign::Negative => {
                for wi in w.iter_mut().take(z + 1) {
                    *wi = h;
                }
                w[z] = 0.5 * h;
                w[0] = 0.5 * h;
                for (j, c) in CORRECTION.iter().enumerate() {
                    w[z - j] += c * h;
                }
            }
        }
        Ok(w)
    }
}

/// Harmonic-oscillator eigenfunctions `ψ_n(x)`, `n = 0..=n_max`, by the
/// upward recurrence `ψ_{n+1} = √(2/(n+1))·x·ψ_n − √(n/(n+1))·ψ_{n−1}`.
pub fn hermite_basis(x: f64, n_max: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n_max + 1);
    psi.push(std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp());
    if n_max >= 1 {
        psi.push(std::f64::consts::SQRT_2 * x * psi[0]);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * psi[n] - (nf / (nf + 1.0)).sqrt() * psi[n - 1];
        psi.push(next);
    }
    psi
}

/// `(−i)^n`.
fn minus_i_power(n: usize) -> C64 {
    match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}

/// Matrix `⟨u_i|n⟩` of shape `points × dim` for the requested quadrature.
pub fn basis_matrix(axis: QuadratureAxis, grid: &Grid1D, dim: usize) -> Array2<C64> {
    let mut out = Array2::zeros((grid.points(), dim));
    for (i, mut row) in out.rows_mut().into_iter().enumerate() {
        let psi = hermite_basis(grid.coord(i), dim.saturating_sub(1));
        for (n, value) in row.iter_mut().enumerate() {
            *value = match axis {
                QuadratureAxis::X => C64::new(psi[n], 0.0),
                QuadratureAxis::P => minus_i_power(n) * psi[n],
            };
        }
    }
    out
}

/// A density sampled on a 1D grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Density1D {
    pub grid: Grid1D,
    pub values: Vec<f64>,
}

impl Density1D {
    pub fn integral(&self) -> f64 {
        dot(&self.grid.trapezoid_weights(), &self.values)
    }

    /// Probability of the half-line `u > 0` or `u < 0`.
    pub fn half_mass(&self, sign: Sign) -> Result<f64> {
        Ok(dot(&self.grid.half_line_weights(sign)?, &self.values))
    }

    pub fn boundary_max(&self) -> f64 {
        self.values[0].max(self.values[self.values.len() - 1])
    }

    pub fn max_abs_diff(&self, other: &Density1D) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Sup-norm distance to `f` sampled on the same grid.
    pub fn max_deviation_from(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (v - f(self.grid.coord(i))).abs())
            .fold(0.0, f64::max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Trapezoid mean and variance.
pub fn moments(dist: &Density1D) -> (f64, f64) {
    let w = dist.grid.trapezoid_weights();
    let mut mass = 0.0;
    let mut first = 0.0;
    for (i, (wi, v)) in w.iter().zip(&dist.values).enumerate() {
        let u = dist.grid.coord(i);
        mass += wi * v;
        first += wi * v * u;
    }
    let mean = first / mass;
    let var: f64 = w
        .iter()
        .zip(&dist.values)
        .enumerate()
        .map(|(i, (wi, v))| {
            let d = dist.grid.coord(i) - mean;
            wi * v * d * d
        })
        .sum::<f64>()
        / mass;
    (mean, var.max(0.0))
}

/// A density sampled on the product of two grids; `values[[i, j]]` is at `(u_a[i], u_b[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Density2D {
    pub grid_a: Grid1D,
    pub grid_b: Grid1D,
    pub axes: (QuadratureAxis, QuadratureAxis),
    pub values: Array2<f64>,
}

impl Density2D {
    pub fn integral(&self) -> f64 {
        let wa = Array1::from(self.grid_a.trapezoid_weights());
        let wb = Array1::from(self.grid_b.trapezoid_weights());
        wa.dot(&self.values.dot(&wb))
    }

    pub fn boundary_max(&self) -> f64 {
        let v = &self.values;
        let (r, c) = v.dim();
        let edges = [
            v.row(0).to_owned(),
            v.row(r - 1).to_owned(),
            v.column(0).to_owned(),
            v.column(c - 1).to_owned(),
        ];
        edges
            .iter()
            .flat_map(|e| e.iter().copied())
            .fold(0.0, f64::max)
    }

    /// Marginal over mode B.
    pub fn marginal_a(&self) -> Density1D {
        let wb = Array1::from(self.grid_b.trapezoid_weights());
        Density1D {
            grid: self.grid_a,
            values: self.values.dot(&wb).to_vec(),
        }
    }

    /// Marginal over mode A.
    pub fn marginal_b(&self) -> Density1D {
        let wa = Array1::from(self.grid_a.trapezoid_weights());
        Density1D {
            grid: self.grid_b,
            values: wa.dot(&self.values).to_vec(),
        }
    }

    pub fn max_abs_diff(&self, other: &Density2D) -> f64 {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// States with computable single-mode quadrature marginals.
pub trait Marginal {
    fn marginal_values(&self, mode: ModeLabel, axis: QuadratureAxis, grid: &Grid1D) -> Vec<f64>;
}

impl Marginal for SingleModeState {
    fn marginal_values(&self, _mode: ModeLabel, axis: QuadratureAxis, grid: &Grid1D) -> Vec<f64> {
        let basis = basis_matrix(axis, grid, self.dim());
        basis.dot(self.amplitudes()).iter().map(|c| c.norm_sqr()).collect()
    }
}

impl Marginal for TwoModeState {
    fn marginal_values(&self, mode: ModeLabel, axis: QuadratureAxis, grid: &Grid1D) -> Vec<f64> {
        // trace over the other mode in its number basis
        let c = self.amplitudes();
        let partial = match mode {
            ModeLabel::A => basis_matrix(axis, grid, c.nrows()).dot(c),
            ModeLabel::B => basis_matrix(axis, grid, c.ncols()).dot(&c.t()),
        };
        partial
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|z| z.norm_sqr()).sum())
            .collect()
    }
}

impl<S: Marginal> Marginal for Mixture<S> {
    fn marginal_values(&self, mode: ModeLabel, axis: QuadratureAxis, grid: &Grid1D) -> Vec<f64> {
        let mut total = vec![0.0; grid.points()];
        for (w, s) in self.branches() {
            for (t, v) in total.iter_mut().zip(s.marginal_values(mode, axis, grid)) {
                *t += w * v;
            }
        }
        total
    }
}

/// States with computable two-mode joint densities.
pub trait Joint {
    fn joint_values(&self, axes: (QuadratureAxis, QuadratureAxis), grid_a: &Grid1D, grid_b: &Grid1D) -> Array2<f64>;
}

const ROW_BLOCK: usize = 64;

impl Joint for TwoModeState {
    fn joint_values(&self, axes: (QuadratureAxis, QuadratureAxis), grid_a: &Grid1D, grid_b: &Grid1D) -> Array2<f64> {
        let c = self.amplitudes();
        let basis_a = basis_matrix(axes.0, grid_a, c.nrows());
        let basis_b = basis_matrix(axes.1, grid_b, c.ncols());
        // (M × N)·(N × points_b)
        let right = c.dot(&basis_b.t());
        let blocks: Vec<Array2<f64>> = (0..grid_a.points().div_ceil(ROW_BLOCK))
            .into_par_iter()
            .map(|b| {
                let lo = b * ROW_BLOCK;
                let hi = (lo + ROW_BLOCK).min(grid_a.points());
                basis_a.slice(s![lo..hi, ..]).dot(&right).mapv(|z| z.norm_sqr())
            })
            .collect();
        let views: Vec<_> = blocks.iter().map(|b| b.view()).collect();
        ndarray::concatenate(Axis(0), &views).expect("row blocks share column count")
    }
}

impl<S: Joint> Joint for Mixture<S> {
    fn joint_values(&self, axes: (QuadratureAxis, QuadratureAxis), grid_a: &Grid1D, grid_b: &Grid1D) -> Array2<f64> {
        let mut total = Array2::zeros((grid_a.points(), grid_b.points()));
        for (w, s) in self.branches() {
            total.scaled_add(*w, &s.joint_values(axes, grid_a, grid_b));
        }
        total
    }
}

/// Density of one quadrature of one mode.
pub fn marginal_density<S: Marginal>(
    state: &S,
    mode: ModeLabel,
    axis: QuadratureAxis,
    grid: &Grid1D,
) -> Result<Density1D> {
    let dist = Density1D {
        grid: *grid,
        values: state.marginal_values(mode, axis, grid),
    };
    let edge = dist.boundary_max();
    if edge > BOUNDARY_THRESHOLD {
        return Err(Error::GridTooNarrow {
            boundary_density: edge,
            threshold: BOUNDARY_THRESHOLD,
        });
    }
    Ok(dist)
}

/// `|⟨u_a|⟨u_b|ψ⟩|²` (pure) or its weighted branch sum (mixture).
pub fn joint_density<S: Joint>(
    state: &S,
    axis_a: QuadratureAxis,
    axis_b: QuadratureAxis,
    grid_a: &Grid1D,
    grid_b: &Grid1D,
) -> Result<Density2D> {
    let dist = Density2D {
        grid_a: *grid_a,
        grid_b: *grid_b,
        axes: (axis_a, axis_b),
        values: state.joint_values((axis_a, axis_b), grid_a, grid_b),
    };
    let edge = dist.boundary_max();
    if edge > BOUNDARY_THRESHOLD {
        return Err(Error::GridTooNarrow {
            boundary_density: edge,
            threshold: BOUNDARY_THRESHOLD,
        });
    }
    Ok(dist)
}

/// `P(u_a | sign(u_b) = condition)`.
pub fn conditional_density(joint: &Density2D, condition: Sign) -> Result<Density1D> {
    let wb = Array1::from(joint.grid_b.half_line_weights(condition)?);
    let numerator = joint.values.dot(&wb);
    let mass = dot(&joint.grid_a.trapezoid_weights(), numerator.as_slice().expect("contiguous"));
    if mass.is_nan() || mass <= CONDITION_THRESHOLD {
        return Err(Error::EmptyCondition {
            mass,
            threshold: CONDITION_THRESHOLD,
        });
    }
    Ok(Density1D {
        grid: joint.grid_a,
        values: numerator.iter().map(|v| v / mass).collect(),
    })
}

/// Joint sign-outcome probabilities of two quadratures and their correlator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinStatistics {
    pub p_plus_plus: f64,
    pub p_plus_minus: f64,
    pub p_minus_plus: f64,
    pub p_minus_minus: f64,
    pub correlator: f64,
}

impl SpinStatistics {
    fn from_quadrants(pp: f64, pm: f64, mp: f64, mm: f64) -> Self {
        SpinStatistics {
            p_plus_plus: pp,
            p_plus_minus: pm,
            p_minus_plus: mp,
            p_minus_minus: mm,
            correlator: pp + mm - pm - mp,
        }
    }

    pub fn total(&self) -> f64 {
        self.p_plus_plus + self.p_plus_minus + self.p_minus_plus + self.p_minus_minus
    }

    /// `P(S_A = a | S_B = b)`; the first sign refers to mode A.
    pub fn conditional_a_given_b(&self, a: Sign, b: Sign) -> f64 {
        let (joint, other) = match (a, b) {
            (Sign::Positive, Sign::Positive) => (self.p_plus_plus, self.p_minus_plus),
            (Sign::Negative, Sign::Positive) => (self.p_minus_plus, self.p_plus_plus),
            (Sign::Positive, Sign::Negative) => (self.p_plus_minus, self.p_minus_minus),
            (Sign::Negative, Sign::Negative) => (self.p_minus_minus, self.p_plus_minus),
        };
        joint / (joint + other)
    }
}

/// Quadrant integrals of a joint density; `S = +1` for `u > 0`.
pub fn spin_statistics(joint: &Density2D) -> Result<SpinStatistics> {
    let quadrant = |sa: Sign, sb: Sign| -> Result<f64> {
        let wa = Array1::from(joint.grid_a.half_line_weights(sa)?);
        let wb = Array1::from(joint.grid_b.half_line_weights(sb)?);
        Ok(wa.dot(&joint.values.dot(&wb)))
    };
    Ok(SpinStatistics::from_quadrants(
        quadrant(Sign::Positive, Sign::Positive)?,
        quadrant(Sign::Positive, Sign::Negative)?,
        quadrant(Sign::Negative, Sign::Positive)?,
        quadrant(Sign::Negative, Sign::Negative)?,
    ))
}

/// `⟨sign(u)⟩` for a single-mode density.
pub fn sign_expectation(dist: &Density1D) -> Result<f64> {
    Ok(dist.half_mass(Sign::Positive)? - dist.half_mass(Sign::Negative)?)
}

/// A mode-A density conditioned on the sign of a mode-B quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct Conditional {
    pub density: Density1D,
    /// Probability of the conditioning half-line.
    pub probability: f64,
}

/// States whose mode-A density restricted to a mode-B half-line can be
/// computed without forming the full joint grid.
pub trait Restricted {
    /// `∫_{sign(u_b) = condition} P(u_a, u_b) du_b` sampled on `grid_a`.
    fn restricted_values(
        &self,
        axes: (QuadratureAxis, QuadratureAxis),
        grid_a: &Grid1D,
        grid_b: &Grid1D,
        condition: Sign,
    ) -> Result<Vec<f64>>;
}

impl Restricted for TwoModeState {
    fn restricted_values(
        &self,
        axes: (QuadratureAxis, QuadratureAxis),
        grid_a: &Grid1D,
        grid_b: &Grid1D,
        condition: Sign,
    ) -> Result<Vec<f64>> {
        let c = self.amplitudes();
        let wb = Array1::from(grid_b.half_line_weights(condition)?);
        let basis_b = basis_matrix(axes.1, grid_b, c.ncols());
        // K_{nn'} = Σ_v w_v ⟨v|n⟩ conj⟨v|n'⟩, the half-line Gram matrix of mode B
        let weighted = &basis_b * &wb.mapv(|w| C64::new(w, 0.0)).insert_axis(Axis(1));
        let gram = weighted.t().dot(&basis_b.mapv(|z| z.conj()));
        let rho = c.dot(&gram).dot(&c.t().mapv(|z| z.conj()));
        let basis_a = basis_matrix(axes.0, grid_a, c.nrows());
        let projected = basis_a.dot(&rho);
        Ok(projected
            .rows()
            .into_iter()
            .zip(basis_a.rows())
            .map(|(r, phi)| {
                let value: f64 = r.iter().zip(phi.iter()).map(|(a, b)| (a * b.conj()).re).sum();
                // a positive semidefinite form; only rounding can push it below zero
                value.max(0.0)
            })
            .collect())
    }
}

impl<S: Restricted> Restricted for Mixture<S> {
    fn restricted_values(
        &self,
        axes: (QuadratureAxis, QuadratureAxis),
        grid_a: &Grid1D,
        grid_b: &Grid1D,
        condition: Sign,
    ) -> Result<Vec<f64>> {
        let mut total = vec![0.0; grid_a.points()];
        for (w, s) in self.branches() {
            for (t, v) in total.iter_mut().zip(s.restricted_values(axes, grid_a, grid_b, condition)?) {
                *t += w * v;
            }
        }
        Ok(total)
    }
}

/// `P(u_a | sign(u_b) = condition)` and the probability of the condition,
/// computed through the reduced state of mode A on the half-line.
pub fn conditional_marginal<S: Restricted>(
    state: &S,
    axis_a: QuadratureAxis,
    axis_b: QuadratureAxis,
    grid_a: &Grid1D,
    grid_b: &Grid1D,
    condition: Sign,
) -> Result<Conditional> {
    let numerator = state.restricted_values((axis_a, axis_b), grid_a, grid_b, condition)?;
    let mass = dot(&grid_a.trapezoid_weights(), &numerator);
    if mass.is_nan() || mass <= CONDITION_THRESHOLD {
        return Err(Error::EmptyCondition {
            mass,
            threshold: CONDITION_THRESHOLD,
        });
    }
    let density = Density1D {
        grid: *grid_a,
        values: numerator.iter().map(|v| v / mass).collect(),
    };
    let edge = density.boundary_max();
    if edge > BOUNDARY_THRESHOLD {
        return Err(Error::GridTooNarrow {
            boundary_density: edge,
            threshold: BOUNDARY_THRESHOLD,
        });
    }
    Ok(Conditional {
        density,
        probability: mass,
    })
}
