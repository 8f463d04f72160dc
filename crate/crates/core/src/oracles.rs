//! Closed-form reference densities, moments and correlators.
//!
//! Branch labels follow the inferred spin of mode A: [`Branch::Plus`] is the
//! outcome in which A sits in the `+α` hill, which for the anticorrelated cat
//! states here means conditioning on `X_B < 0`.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{Mixture, SingleModeState};

pub use libm::erf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    /// `+1` for [`Branch::Plus`], `−1` for [`Branch::Minus`].
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    /// Sign of `X_B` that selects this branch of mode A.
    pub fn condition(self) -> crate::quadrature::Sign {
        match self {
            Branch::Plus => crate::quadrature::Sign::Negative,
            Branch::Minus => crate::quadrature::Sign::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleParams {
    pub alpha: f64,
    pub beta: f64,
    pub branch: Branch,
}

impl OracleParams {
    pub fn new(alpha: f64, beta: f64, branch: Branch) -> Self {
        OracleParams { alpha, beta, branch }
    }

    pub fn with_branch(self, branch: Branch) -> Self {
        OracleParams { branch, ..self }
    }

    /// `1 − e^{−2α²−2β²}`, the squared-norm factor of the Bell cat state.
    fn d(&self) -> f64 {
        -(-2.0 * self.alpha * self.alpha - 2.0 * self.beta * self.beta).exp_m1()
    }

    /// `2N² = 1/D`.
    fn two_n_sq(&self) -> f64 {
        1.0 / self.d()
    }

    fn erf_beta(&self) -> f64 {
        erf(SQRT_2 * self.beta)
    }
}

fn gaussian(u: f64) -> f64 {
    (-u * u).exp() / PI.sqrt()
}

/// Ideal-projection fringes `e^{−p²}/√π·(1 ∓ sin(2√2·α·p))`.
pub fn fringe_simple(p: f64, params: &OracleParams) -> f64 {
    gaussian(p) * (1.0 - params.branch.sign() * (2.0 * SQRT_2 * params.alpha * p).sin())
}

/// Finite-β fringes `2N²e^{−p²}/√π·(1 − e^{−2β²}cos(2√2αp) ∓ erf(√2β)·sin(2√2αp))`.
pub fn fringe_full(p: f64, params: &OracleParams) -> f64 {
    let phase = 2.0 * SQRT_2 * params.alpha * p;
    let overlap = (-2.0 * params.beta * params.beta).exp();
    params.two_n_sq()
        * gaussian(p)
        * (1.0 - overlap * phase.cos() - params.branch.sign() * params.erf_beta() * phase.sin())
}

/// `P(P_A | sign X_B)` on the Bell cat state itself (which-way arm).
///
/// Both branches share `2N²e^{−p²}/√π·(1 − e^{−2β²}cos(2√2αp))`: the residual
/// contrast is the overlap `⟨−β|β⟩` of the two B hills.
pub fn which_way_conditional(p: f64, params: &OracleParams) -> f64 {
    let phase = 2.0 * SQRT_2 * params.alpha * p;
    let overlap = (-2.0 * params.beta * params.beta).exp();
    params.two_n_sq() * gaussian(p) * (1.0 - overlap * phase.cos())
}

/// Joint density `P(P_A, X_B)` of the eraser-arm state.
pub fn joint_p_x(p: f64, x_b: f64, params: &OracleParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let s = (SQRT_2 * a * p).sin();
    let sh = (SQRT_2 * b * x_b).sinh();
    let cross = 0.5 * (2.0 * SQRT_2 * a * p).sin() * (2.0 * SQRT_2 * b * x_b).sinh();
    2.0 * (-p * p - x_b * x_b - 2.0 * b * b).exp() / (PI * params.d()) * (s * s + sh * sh + cross)
}

/// Marginal `P(X_B)` of the eraser-arm state.
pub fn marginal_x_b(x_b: f64, params: &OracleParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    let sh = (SQRT_2 * b * x_b).sinh();
    (-x_b * x_b - 2.0 * b * b).exp() / (PI.sqrt() * params.d()) * (-(-2.0 * a * a).exp_m1() + 2.0 * sh * sh)
}

/// `P(X_A | sign X_B)` on the Bell cat state.
pub fn conditional_x_full(x: f64, params: &OracleParams) -> f64 {
    let (a, b) = (params.alpha, params.beta);
    // e^{−x²−2α²}cosh(kx) is evaluated as a sum of shifted Gaussians to avoid overflow
    let up = (-(x - SQRT_2 * a).powi(2)).exp();
    let down = (-(x + SQRT_2 * a).powi(2)).exp();
    let cosh_part = 0.5 * (up + down);
    let sinh_part = 0.5 * (up - down);
    params.two_n_sq() / PI.sqrt()
        * (cosh_part + params.branch.sign() * params.erf_beta() * sinh_part
            - (-x * x - 2.0 * a * a - 2.0 * b * b).exp())
}

/// Mean of [`conditional_x_full`]: `±√2α·erf(√2β)/(1 − e^{−2α²−2β²})`.
pub fn conditional_x_mean(params: &OracleParams) -> f64 {
    params.branch.sign() * SQRT_2 * params.alpha * params.erf_beta() / params.d()
}

/// Mean of [`fringe_full`]: `∓√2α·e^{−2α²}·erf(√2β)/(1 − e^{−2α²−2β²})`.
pub fn fringe_full_mean(params: &OracleParams) -> f64 {
    let a = params.alpha;
    -params.branch.sign() * SQRT_2 * a * (-2.0 * a * a).exp() * params.erf_beta() / params.d()
}

/// Inferred variances `(Δ_inf X_A)², (Δ_inf P_A)²` from the conditional
/// moments of the Bell cat (X) and eraser-arm (P) states.
pub fn epr_variances(params: &OracleParams) -> (f64, f64) {
    let a2 = params.alpha * params.alpha;
    let b2 = params.beta * params.beta;
    let d = params.d();
    let e2 = params.erf_beta().powi(2);
    if a2 == 0.0 {
        return (0.5, 0.5);
    }
    let var_x = 0.5 + 2.0 * a2 / d - 2.0 * a2 * e2 / (d * d);
    let var_p = 0.5 + 2.0 * a2 * (-2.0 * a2 - 2.0 * b2).exp() / d - 2.0 * a2 * e2 * (-4.0 * a2).exp() / (d * d);
    (var_x, var_p)
}

/// The inferred variances in the form usually quoted, whose last P term
/// carries `α²` where the moment integrals give `2α²`. The two differ by
/// `α²·erf²(√2β)·e^{−4α²}/D²`.
pub fn epr_variances_quoted(params: &OracleParams) -> (f64, f64) {
    let (var_x, var_p) = epr_variances(params);
    let a2 = params.alpha * params.alpha;
    let d = params.d();
    if a2 == 0.0 {
        return (var_x, var_p);
    }
    let correction = a2 * params.erf_beta().powi(2) * (-4.0 * a2).exp() / (d * d);
    (var_x, var_p + correction)
}

/// Inferred P variance under ideal projection, `½ − 2α²e^{−4α²}`.
pub fn ideal_p_variance(alpha: f64) -> f64 {
    0.5 - 2.0 * alpha * alpha * (-4.0 * alpha * alpha).exp()
}

/// The quoted ideal-projection value `½ − α²e^{−4α²}`.
pub fn ideal_p_variance_quoted(alpha: f64) -> f64 {
    0.5 - alpha * alpha * (-4.0 * alpha * alpha).exp()
}

/// Macroscopic EPR product `½·(ΔP_A)²` with the ideal-projection P variance.
pub fn macro_epr(params: &OracleParams) -> f64 {
    0.5 * ideal_p_variance(params.alpha)
}

fn eighths_of(angle: f64) -> Result<i64> {
    let m = angle * 8.0 / PI;
    let r = m.round();
    if (angle - r * PI / 8.0).abs() > 1e-12 {
        return Err(Error::InvalidAngle(format!("{angle} is not a multiple of pi/8")));
    }
    Ok(r as i64)
}

/// Macroscopic prepare-and-measure correlator `cos(2(θ + φ))`; angles must be
/// multiples of π/8.
pub fn dw_expectation(theta: f64, phi: f64) -> Result<f64> {
    eighths_of(theta)?;
    eighths_of(phi)?;
    Ok((2.0 * (theta + phi)).cos())
}

/// Microscopic Mach–Zehnder correlator `cos(2(θ − φ))`.
pub fn mz_qubit_expectation(theta: f64, phi: f64) -> f64 {
    (2.0 * (theta - phi)).cos()
}

/// `|E(θ,φ) + E(θ,φ′) + E(θ′,φ) − E(θ′,φ′) − E(θ″,φ)|` from the five correlators
/// in that order.
pub fn i_dw(e: [f64; 5]) -> f64 {
    (e[0] + e[1] + e[2] - e[3] - e[4]).abs()
}

/// Angle settings `(θ, θ′, θ″; φ, φ′)` of a dimension-witness test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessAngles {
    pub theta: [f64; 3],
    pub phi: [f64; 2],
}

impl WitnessAngles {
    /// Setting pairs in the order used by [`i_dw`].
    pub fn pairs(&self) -> [(f64, f64); 5] {
        let [t, t1, t2] = self.theta;
        let [p, p1] = self.phi;
        [(t, p), (t, p1), (t1, p), (t1, p1), (t2, p)]
    }
}

/// `I_DW` of a correlator model over an angle set.
pub fn i_dw_model(angles: &WitnessAngles, e: impl Fn(f64, f64) -> Result<f64>) -> Result<f64> {
    let pairs = angles.pairs();
    let mut values = [0.0; 5];
    for (v, (t, p)) in values.iter_mut().zip(pairs) {
        *v = e(t, p)?;
    }
    Ok(i_dw(values))
}

/// States with a Husimi Q function.
pub trait HusimiQ {
    fn q_value(&self, x: f64, p: f64) -> f64;
}

impl HusimiQ for SingleModeState {
    /// `(1/π)|⟨α₀|ψ⟩|²` with `α₀ = x + ip`.
    fn q_value(&self, x: f64, p: f64) -> f64 {
        let conj = C64::new(x, -p);
        let mut term = C64::new(1.0, 0.0);
        let mut overlap = C64::new(0.0, 0.0);
        for (n, c) in self.amplitudes().iter().enumerate() {
            if n > 0 {
                term *= conj / (n as f64).sqrt();
            }
            overlap += term * c;
        }
        (-(x * x + p * p)).exp() * overlap.norm_sqr() / PI
    }
}

impl<S: HusimiQ> HusimiQ for Mixture<S> {
    fn q_value(&self, x: f64, p: f64) -> f64 {
        self.branches().iter().map(|(w, s)| w * s.q_value(x, p)).sum()
    }
}

pub fn q_function<S: HusimiQ>(x: f64, p: f64, state: &S) -> f64 {
    state.q_value(x, p)
}

/// Q function of the coherent state `|α⟩`, real `α`.
pub fn coherent_q(x: f64, p: f64, alpha: f64) -> f64 {
    (-((x - alpha).powi(2) + p * p)).exp() / PI
}

/// X density of the coherent state `|α⟩`, real `α`.
pub fn coherent_x_density(x: f64, alpha: f64) -> f64 {
    gaussian(x - SQRT_2 * alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::TruncationPolicy;
    use proptest::prelude::*;

    fn simpson(f: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
        let h = (hi - lo) / n as f64;
        let mut s = f(lo) + f(hi);
        for i in 1..n {
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(lo + i as f64 * h);
        }
        s * h / 3.0
    }

    fn moments(f: impl Fn(f64) -> f64, span: f64) -> (f64, f64, f64) {
        let m0 = simpson(&f, -span, span, 8000);
        let m1 = simpson(|u| u * f(u), -span, span, 8000) / m0;
        let m2 = simpson(|u| u * u * f(u), -span, span, 8000) / m0;
        (m0, m1, m2 - m1 * m1)
    }

    #[test]
    fn fringe_simple_examples() {
        let params = OracleParams::new(2.0, 2.0, Branch::Plus);
        assert!((fringe_simple(0.0, &params) - 1.0 / PI.sqrt()).abs() < 1e-15);
        let p = PI / 2.0 / (2.0 * SQRT_2 * 2.0);
        assert!(fringe_simple(p, &params).abs() < 1e-15);
        let total = simpson(|u| fringe_simple(u, &params), -10.0, 10.0, 4000);
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn fringe_full_approaches_simple_at_large_beta() {
        for branch in [Branch::Plus, Branch::Minus] {
            let params = OracleParams::new(2.0, 8.0, branch);
            for i in 0..=400 {
                let p = -5.0 + i as f64 * 0.025;
                assert!((fringe_full(p, &params) - fringe_simple(p, &params)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn fringe_full_without_beta_has_no_sine_term() {
        let plus = OracleParams::new(2.0, 0.0, Branch::Plus);
        let minus = plus.with_branch(Branch::Minus);
        for i in 0..=100 {
            let p = -3.0 + i as f64 * 0.06;
            assert_eq!(fringe_full(p, &plus), fringe_full(p, &minus));
        }
        // D = 1 − e^{−8}; density ∝ 1 − cos
        let p = 0.3;
        let expected = gaussian(p) * (1.0 - (2.0 * SQRT_2 * 2.0 * p).cos()) / -(-8.0f64).exp_m1();
        assert!((fringe_full(p, &plus) - expected).abs() < 1e-15);
    }

    #[test]
    fn joint_density_examples() {
        let params = OracleParams::new(2.0, 2.0, Branch::Plus);
        assert_eq!(joint_p_x(0.0, 0.0, &params), 0.0);
        for &x in &[-3.0, -1.2, 0.0, 0.7, 2.5] {
            let m = simpson(|p| joint_p_x(p, x, &params), -10.0, 10.0, 4000);
            assert!((m - marginal_x_b(x, &params)).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn joint_density_conditions_to_fringes() {
        // P(P_A | X_B < 0) integrates the joint over the negative half-line
        let params = OracleParams::new(1.5, 1.0, Branch::Plus);
        for &p in &[-1.0, -0.2, 0.4, 1.3] {
            let numerator = simpson(|x| joint_p_x(p, x, &params), -12.0, 0.0, 6000);
            assert!((2.0 * numerator - fringe_full(p, &params)).abs() < 1e-9);
            let numerator = simpson(|x| joint_p_x(p, x, &params), 0.0, 12.0, 6000);
            assert!((2.0 * numerator - fringe_full(p, &params.with_branch(Branch::Minus))).abs() < 1e-9);
        }
    }

    #[test]
    fn conditional_x_mean_matches_quadrature() {
        for &(a, b) in &[(2.0, 2.0), (1.0, 0.5), (0.7, 1.3)] {
            for branch in [Branch::Plus, Branch::Minus] {
                let params = OracleParams::new(a, b, branch);
                let (m0, m1, _) = moments(|x| conditional_x_full(x, &params), 14.0);
                assert!((m0 - 1.0).abs() < 1e-10);
                assert!((m1 - conditional_x_mean(&params)).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn conditional_x_branches_merge_without_beta() {
        let plus = OracleParams::new(2.0, 0.0, Branch::Plus);
        let minus = plus.with_branch(Branch::Minus);
        assert_eq!(conditional_x_full(0.8, &plus), conditional_x_full(0.8, &minus));
    }

    #[test]
    fn variances_match_conditional_moments() {
        for &(a, b) in &[(2.0, 2.0), (1.0, 0.5), (0.5, 1.0), (1.0, 2.0)] {
            let plus = OracleParams::new(a, b, Branch::Plus);
            let (_, mean_x, var_x) = moments(|x| conditional_x_full(x, &plus), 14.0);
            let (_, mean_p, var_p) = moments(|p| fringe_full(p, &plus), 10.0);
            assert!((mean_p - fringe_full_mean(&plus)).abs() < 1e-10);
            assert!((mean_x - conditional_x_mean(&plus)).abs() < 1e-10);
            let (ex, ep) = epr_variances(&plus);
            assert!((var_x - ex).abs() < 1e-10, "a={a} b={b}");
            assert!((var_p - ep).abs() < 1e-10, "a={a} b={b}");
        }
    }

    #[test]
    fn variances_reach_ideal_limit() {
        let params = OracleParams::new(2.0, 8.0, Branch::Plus);
        let (_, var_p) = epr_variances(&params);
        assert!((var_p - ideal_p_variance(2.0)).abs() < 1e-12);
        assert!((var_p - (0.5 - 8.0 * (-16.0f64).exp())).abs() < 1e-12);
        let (_, quoted) = epr_variances_quoted(&params);
        assert!((quoted - (0.5 - 4.0 * (-16.0f64).exp())).abs() < 1e-9);
        assert!((quoted - ideal_p_variance_quoted(2.0)).abs() < 1e-9);
    }

    #[test]
    fn product_frozen_at_unit_alpha() {
        let (vx, vp) = epr_variances(&OracleParams::new(1.0, 2.0, Branch::Plus));
        let eps = vx * vp;
        assert!((eps - 0.231_805_768_370_974_7).abs() < 1e-12, "{eps:.16}");
        assert!(eps < 0.25);
    }

    #[test]
    fn vacuum_limit_has_no_paradox() {
        let (vx, vp) = epr_variances(&OracleParams::new(1e-6, 2.0, Branch::Plus));
        assert!((vx - 0.5).abs() < 1e-9 && (vp - 0.5).abs() < 1e-9);
        assert_eq!(epr_variances(&OracleParams::new(0.0, 1.0, Branch::Plus)), (0.5, 0.5));
        assert_eq!(macro_epr(&OracleParams::new(0.0, 1.0, Branch::Plus)), 0.25);
    }

    #[test]
    fn variances_converge_monotonically_in_beta() {
        let target = ideal_p_variance(2.0);
        let gaps: Vec<f64> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&b| (epr_variances(&OracleParams::new(2.0, b, Branch::Plus)).1 - target).abs())
            .collect();
        assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    }

    #[test]
    fn macro_product_matches_large_beta_limit() {
        let params = OracleParams::new(2.0, 8.0, Branch::Plus);
        let (vx, vp) = epr_variances(&params);
        assert!((macro_epr(&params) - vx * vp).abs() < 1e-9);
        assert!(macro_epr(&params) < 0.25);
        for a in [1.0, 1.5, 2.0, 3.0] {
            assert!(macro_epr(&OracleParams::new(a, 2.0, Branch::Plus)) < 0.25);
        }
    }

    #[test]
    fn dw_examples() {
        assert_eq!(dw_expectation(0.0, 0.0).unwrap(), 1.0);
        assert!((dw_expectation(PI / 8.0, 7.0 * PI / 4.0).unwrap() - SQRT_2 / 2.0).abs() < 1e-12);
        assert!((dw_expectation(7.0 * PI / 4.0, 7.0 * PI / 4.0).unwrap() + 1.0).abs() < 1e-12);
        assert!(matches!(dw_expectation(0.1, 0.0), Err(Error::InvalidAngle(_))));
    }

    #[test]
    fn witness_values_of_reference_angle_sets() {
        let macro_set = WitnessAngles {
            theta: [PI / 8.0, 3.0 * PI / 8.0, 7.0 * PI / 4.0],
            phi: [7.0 * PI / 4.0, 0.0],
        };
        let v = i_dw_model(&macro_set, dw_expectation).unwrap();
        assert!((v - (1.0 + 2.0 * SQRT_2)).abs() < 1e-12);

        let second = WitnessAngles {
            theta: [PI / 4.0, PI / 2.0, 7.0 * PI / 8.0],
            phi: [13.0 * PI / 8.0, 15.0 * PI / 8.0],
        };
        assert!(i_dw_model(&second, dw_expectation).unwrap() > 3.0);

        let clp = WitnessAngles {
            theta: [PI / 8.0, 3.0 * PI / 8.0, -PI / 4.0],
            phi: [PI / 4.0, 0.0],
        };
        let v = i_dw_model(&clp, |t, p| Ok(mz_qubit_expectation(t, p))).unwrap();
        assert!((v - (1.0 + 2.0 * SQRT_2)).abs() < 1e-12);
        assert!((mz_qubit_expectation(PI / 8.0, PI / 4.0) - SQRT_2 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn coherent_q_matches_overlap() {
        let s = SingleModeState::coherent(2.0, TruncationPolicy::for_amplitude(2.0)).unwrap();
        for &(x, p) in &[(2.0, 0.0), (1.0, 0.5), (-1.0, 2.0), (3.5, -1.0)] {
            assert!((q_function(x, p, &s) - coherent_q(x, p, 2.0)).abs() < 1e-14);
        }
        assert!((q_function(2.0, 0.0, &s) - 1.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn cat_q_has_two_half_weight_peaks() {
        let policy = TruncationPolicy::for_amplitude(2.0);
        let cat = SingleModeState::rotated_cat(2.0, PI / 4.0, policy).unwrap();
        let h = 0.05;
        let mut right = 0.0;
        let mut left = 0.0;
        for i in 0..=200 {
            for j in 0..=160 {
                let x = -5.0 + i as f64 * h;
                let p = -4.0 + j as f64 * h;
                let q = q_function(x, p, &cat) * h * h;
                if x > 0.0 {
                    right += q;
                } else if x < 0.0 {
                    left += q;
                }
            }
        }
        assert!((right - 0.5).abs() < 1e-3 && (left - 0.5).abs() < 1e-3, "{right} {left}");
    }

    proptest! {
        #[test]
        fn oracle_densities_normalized(a in 0.0f64..3.0, b in 0.05f64..3.0) {
            let plus = OracleParams::new(a, b, Branch::Plus);
            for params in [plus, plus.with_branch(Branch::Minus)] {
                let f = simpson(|p| fringe_full(p, &params), -10.0, 10.0, 4000);
                let s = simpson(|p| fringe_simple(p, &params), -10.0, 10.0, 4000);
                let w = simpson(|p| which_way_conditional(p, &params), -10.0, 10.0, 4000);
                let x = simpson(|u| conditional_x_full(u, &params), -15.0, 15.0, 6000);
                let m = simpson(|u| marginal_x_b(u, &params), -15.0, 15.0, 6000);
                for v in [f, s, w, x, m] {
                    prop_assert!((v - 1.0).abs() < 1e-8, "{}", v);
                }
            }
        }

        #[test]
        fn oracle_densities_non_negative(a in 0.0f64..3.0, b in 0.0f64..3.0, u in -8.0f64..8.0, v in -8.0f64..8.0) {
            let params = OracleParams::new(a, b, Branch::Plus);
            prop_assert!(fringe_simple(u, &params) >= 0.0);
            prop_assert!(fringe_full(u, &params) >= -1e-15);
            prop_assert!(which_way_conditional(u, &params) >= 0.0);
            prop_assert!(conditional_x_full(u, &params) >= -1e-15);
            prop_assert!(joint_p_x(u, v, &params) >= -1e-15);
        }

        #[test]
        fn correlators_bounded_and_periodic(mt in -32i64..32, mp in -32i64..32) {
            let t = mt as f64 * PI / 8.0;
            let p = mp as f64 * PI / 8.0;
            let e = dw_expectation(t, p).unwrap();
            prop_assert!(e.abs() <= 1.0);
            prop_assert!((e - dw_expectation(t + 2.0 * PI, p).unwrap()).abs() < 1e-12);
            prop_assert!((e - dw_expectation(t, p + 2.0 * PI).unwrap()).abs() < 1e-12);
            let m = mz_qubit_expectation(t, p);
            prop_assert!(m.abs() <= 1.0);
            prop_assert!((m - mz_qubit_expectation(t, p + 2.0 * PI)).abs() < 1e-12);
        }
    }
}
