//! Truncated number-basis representations of single- and two-mode states.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Tolerance on the squared norm accepted by constructors.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Site label for a two-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeLabel {
    A,
    B,
}

/// Highest retained number state plus the admissible truncated probability mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    n_max: usize,
    tail_tolerance: f64,
}

impl TruncationPolicy {
    pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-13;

    pub fn new(n_max: usize, tail_tolerance: f64) -> Result<Self> {
        if !(tail_tolerance > 0.0 && tail_tolerance.is_finite()) {
            return Err(Error::InvalidTruncation(format!(
                "tail tolerance must be positive, got {tail_tolerance}"
            )));
        }
        Ok(TruncationPolicy {
            n_max,
            tail_tolerance,
        })
    }

    /// Default rule `n_max = ceil(α² + 8|α|) + 20`.
    pub fn for_amplitude(alpha: f64) -> Self {
        let a = alpha.abs();
        TruncationPolicy {
            n_max: (a * a + 8.0 * a).ceil() as usize + 20,
            tail_tolerance: Self::DEFAULT_TAIL_TOLERANCE,
        }
    }

    pub fn with_n_max(self, n_max: usize) -> Self {
        TruncationPolicy { n_max, ..self }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of retained basis states, `n_max + 1`.
    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }

    /// Poisson mass `Σ_{n>n_max} e^{-α²} α^{2n}/n!` discarded by the truncation.
    pub fn tail_mass(&self, alpha: f64) -> f64 {
        let mean = alpha * alpha;
        if mean == 0.0 {
            return 0.0;
        }
        let first = self.n_max as f64 + 1.0;
        // log p_n for n = n_max + 1, then the ratio recurrence p_{n+1} = p_n · mean/(n+1)
        let mut term = (-mean + first * mean.ln() - libm::lgamma(first + 1.0)).exp();
        let mut sum = 0.0;
        let mut n = first;
        loop {
            sum += term;
            n += 1.0;
            term *= mean / n;
            if n > mean && term < sum * 1e-17 {
                break;
            }
            if term == 0.0 {
                break;
            }
        }
        sum
    }

    pub fn admit(&self, alpha: f64) -> Result<()> {
        let tail_mass = self.tail_mass(alpha);
        if tail_mass >= self.tail_tolerance {
            return Err(Error::TruncationTooSmall {
                alpha,
                n_max: self.n_max,
                tail_mass,
                tolerance: self.tail_tolerance,
            });
        }
        Ok(())
    }
}

fn check_norm(norm_sqr: f64) -> Result<()> {
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm_sqr));
    }
    Ok(())
}

fn require_non_negative(amplitude: f64) -> Result<()> {
    if amplitude < 0.0 || !amplitude.is_finite() {
        return Err(Error::NegativeAmplitude(amplitude));
    }
    Ok(())
}

/// Unnormalized coherent-state coefficients `e^{-α²/2} α^n/√n!`, n = 0..dim.
pub(crate) fn coherent_coefficients(alpha: f64, dim: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(dim);
    let mut term = (-0.5 * alpha * alpha).exp();
    for n in 0..dim {
        if n > 0 {
            term *= alpha / (n as f64).sqrt();
        }
        c.push(term);
    }
    c
}

/// A pure state of one bosonic mode in a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeState {
    amplitudes: Array1<C64>,
    truncation: TruncationPolicy,
}

impl SingleModeState {
    /// Wraps amplitudes that are already normalized.
    pub fn from_amplitudes(amplitudes: Array1<C64>, truncation: TruncationPolicy) -> Result<Self> {
        if amplitudes.len() != truncation.dim() {
            return Err(Error::InvalidTruncation(format!(
                "{} amplitudes for n_max={}",
                amplitudes.len(),
                truncation.n_max()
            )));
        }
        let state = SingleModeState {
            amplitudes,
            truncation,
        };
        check_norm(state.norm_sqr())?;
        Ok(state)
    }

    /// Rescales arbitrary (nonzero) amplitudes to unit norm.
    pub fn normalized(mut amplitudes: Array1<C64>, truncation: TruncationPolicy) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        amplitudes.mapv_inplace(|c| c / norm);
        Self::from_amplitudes(amplitudes, truncation)
    }

    pub fn vacuum(truncation: TruncationPolicy) -> Self {
        let mut amplitudes = Array1::zeros(truncation.dim());
        amplitudes[0] = C64::new(1.0, 0.0);
        SingleModeState {
            amplitudes,
            truncation,
        }
    }

    /// Coherent state `|α⟩` for real `α` (negative values give `|−|α|⟩`).
    pub fn coherent(alpha: f64, truncation: TruncationPolicy) -> Result<Self> {
        truncation.admit(alpha)?;
        let amps = coherent_coefficients(alpha, truncation.dim())
            .into_iter()
            .map(|c| C64::new(c, 0.0))
            .collect();
        Self::normalized(amps, truncation)
    }

    /// Normalized `c₊|α⟩ + c₋|−α⟩`.
    pub fn cat(alpha: f64, c_plus: C64, c_minus: C64, truncation: TruncationPolicy) -> Result<Self> {
        truncation.admit(alpha)?;
        let amps = coherent_coefficients(alpha, truncation.dim())
            .into_iter()
            .enumerate()
            .map(|(n, c)| {
                let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
                (c_plus + c_minus * parity) * c
            })
            .collect();
        Self::normalized(amps, truncation)
    }

    /// `cos θ|α⟩ + i sin θ|−α⟩`, normalized.
    pub fn rotated_cat(alpha: f64, theta: f64, truncation: TruncationPolicy) -> Result<Self> {
        Self::cat(
            alpha,
            C64::new(theta.cos(), 0.0),
            C64::new(0.0, theta.sin()),
            truncation,
        )
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn truncation(&self) -> &TruncationPolicy {
        &self.truncation
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`; states of different truncation are compared on the common support.
    pub fn inner(&self, other: &SingleModeState) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &SingleModeState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Euclidean distance between amplitude vectors (phase sensitive).
    pub fn distance(&self, other: &SingleModeState) -> f64 {
        distance(self.amplitudes.iter(), other.amplitudes.iter(), self.dim(), other.dim())
    }

    pub fn number_distribution(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn mean_number(&self) -> f64 {
        self.number_distribution()
            .iter()
            .enumerate()
            .map(|(n, p)| n as f64 * p)
            .sum()
    }

    pub(crate) fn map_amplitudes(&self, f: impl Fn(usize, C64) -> C64) -> Self {
        let mut amplitudes = self.amplitudes.clone();
        for (n, c) in amplitudes.iter_mut().enumerate() {
            *c = f(n, *c);
        }
        SingleModeState {
            amplitudes,
            truncation: self.truncation,
        }
    }
}

fn distance<'a>(
    a: impl Iterator<Item = &'a C64>,
    b: impl Iterator<Item = &'a C64>,
    len_a: usize,
    len_b: usize,
) -> f64 {
    let zero = C64::new(0.0, 0.0);
    let mut a = a.fuse();
    let mut b = b.fuse();
    let mut sum = 0.0;
    for _ in 0..len_a.max(len_b) {
        let x = a.next().copied().unwrap_or(zero);
        let y = b.next().copied().unwrap_or(zero);
        sum += (x - y).norm_sqr();
    }
    sum.sqrt()
}

/// A pure two-mode state with amplitude matrix `c[m][n]` on `|m⟩_a|n⟩_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    amplitudes: Array2<C64>,
    truncation: [TruncationPolicy; 2],
}

impl TwoModeState {
    pub fn from_amplitudes(amplitudes: Array2<C64>, truncation: [TruncationPolicy; 2]) -> Result<Self> {
        if amplitudes.dim() != (truncation[0].dim(), truncation[1].dim()) {
            return Err(Error::InvalidTruncation(format!(
                "amplitude matrix {:?} does not match truncations ({}, {})",
                amplitudes.dim(),
                truncation[0].n_max(),
                truncation[1].n_max()
            )));
        }
        let state = TwoModeState {
            amplitudes,
            truncation,
        };
        check_norm(state.norm_sqr())?;
        Ok(state)
    }

    pub fn normalized(mut amplitudes: Array2<C64>, truncation: [TruncationPolicy; 2]) -> Result<Self> {
        let norm = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotNormalized(0.0));
        }
        amplitudes.mapv_inplace(|c| c / norm);
        Self::from_amplitudes(amplitudes, truncation)
    }

    pub fn amplitudes(&self) -> &Array2<C64> {
        &self.amplitudes
    }

    pub fn truncation(&self, mode: ModeLabel) -> &TruncationPolicy {
        match mode {
            ModeLabel::A => &self.truncation[0],
            ModeLabel::B => &self.truncation[1],
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &TwoModeState) -> C64 {
        let (ra, ca) = self.amplitudes.dim();
        let (rb, cb) = other.amplitudes.dim();
        let mut sum = C64::new(0.0, 0.0);
        for m in 0..ra.min(rb) {
            for n in 0..ca.min(cb) {
                sum += self.amplitudes[[m, n]].conj() * other.amplitudes[[m, n]];
            }
        }
        sum
    }

    pub fn fidelity(&self, other: &TwoModeState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Phase-sensitive amplitude distance; both states must share truncations.
    pub fn distance(&self, other: &TwoModeState) -> f64 {
        assert_eq!(self.amplitudes.dim(), other.amplitudes.dim());
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Reduced number distribution of one mode.
    pub fn number_distribution(&self, mode: ModeLabel) -> Vec<f64> {
        let probs = self.amplitudes.mapv(|c| c.norm_sqr());
        match mode {
            ModeLabel::A => probs.rows().into_iter().map(|r| r.sum()).collect(),
            ModeLabel::B => probs.columns().into_iter().map(|c| c.sum()).collect(),
        }
    }

    pub(crate) fn map_amplitudes(&self, f: impl Fn(usize, usize, C64) -> C64) -> Self {
        let mut amplitudes = self.amplitudes.clone();
        for ((m, n), c) in amplitudes.indexed_iter_mut() {
            *c = f(m, n, *c);
        }
        TwoModeState {
            amplitudes,
            truncation: self.truncation,
        }
    }
}

/// `c[m][n] = a_m · b_n`.
pub fn tensor(a: &SingleModeState, b: &SingleModeState) -> TwoModeState {
    let col = a.amplitudes.view().insert_axis(ndarray::Axis(1));
    let row = b.amplitudes.view().insert_axis(ndarray::Axis(0));
    TwoModeState {
        amplitudes: &col * &row,
        truncation: [a.truncation, b.truncation],
    }
}

pub fn coherent_state(alpha: f64, policy: TruncationPolicy) -> Result<SingleModeState> {
    SingleModeState::coherent(alpha, policy)
}

/// Closed-form normalization `N = (1/√2){1 − exp(−2α² − 2β²)}^{−1/2}` of the Bell cat state.
pub fn bell_cat_normalization(alpha: f64, beta: f64) -> f64 {
    let overlap = (-2.0 * alpha * alpha - 2.0 * beta * beta).exp();
    1.0 / (2.0 * (1.0 - overlap)).sqrt()
}

/// Un-normalized `|α⟩|−β⟩ − |−α⟩|β⟩`, with exact coherent coefficients on the truncated support.
pub fn bell_cat_combination(alpha: f64, beta: f64, policy_a: TruncationPolicy, policy_b: TruncationPolicy) -> Array2<C64> {
    let a = coherent_coefficients(alpha, policy_a.dim());
    let b = coherent_coefficients(beta, policy_b.dim());
    Array2::from_shape_fn((policy_a.dim(), policy_b.dim()), |(m, n)| {
        let sign_a = if m % 2 == 0 { 1.0 } else { -1.0 };
        let sign_b = if n % 2 == 0 { 1.0 } else { -1.0 };
        // |α⟩|−β⟩ contributes a_m b_n (−1)^n, |−α⟩|β⟩ contributes (−1)^m a_m b_n
        C64::new(a[m] * b[n] * (sign_b - sign_a), 0.0)
    })
}

/// Entangled cat Bell state `N{|α⟩|−β⟩ − |−α⟩|β⟩}`.
pub fn bell_cat_state(
    alpha: f64,
    beta: f64,
    policy_a: TruncationPolicy,
    policy_b: TruncationPolicy,
) -> Result<TwoModeState> {
    require_non_negative(alpha)?;
    require_non_negative(beta)?;
    policy_a.admit(alpha)?;
    policy_b.admit(beta)?;
    TwoModeState::normalized(
        bell_cat_combination(alpha, beta, policy_a, policy_b),
        [policy_a, policy_b],
    )
}

/// A classical mixture of pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture<S> {
    branches: Vec<(f64, S)>,
}

impl<S> Mixture<S> {
    pub fn new(branches: Vec<(f64, S)>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidWeights("no branches".into()));
        }
        if let Some((w, _)) = branches.iter().find(|(w, _)| !(0.0..=1.0).contains(w)) {
            return Err(Error::InvalidWeights(format!("weight {w} outside [0, 1]")));
        }
        let total: f64 = branches.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        Ok(Mixture { branches })
    }

    pub fn branches(&self) -> &[(f64, S)] {
        &self.branches
    }

    pub fn map<T>(&self, f: impl Fn(&S) -> T) -> Mixture<T> {
        Mixture {
            branches: self.branches.iter().map(|(w, s)| (*w, f(s))).collect(),
        }
    }
}

/// Mixed state of two modes.
pub type MixtureState = Mixture<TwoModeState>;

/// Non-entangled `½|α⟩|−β⟩⟨…| + ½|−α⟩|β⟩⟨…|`.
pub fn mix_state(
    alpha: f64,
    beta: f64,
    policy_a: TruncationPolicy,
    policy_b: TruncationPolicy,
) -> Result<MixtureState> {
    require_non_negative(alpha)?;
    require_non_negative(beta)?;
    let first = tensor(
        &SingleModeState::coherent(alpha, policy_a)?,
        &SingleModeState::coherent(-beta, policy_b)?,
    );
    let second = tensor(
        &SingleModeState::coherent(-alpha, policy_a)?,
        &SingleModeState::coherent(beta, policy_b)?,
    );
    Mixture::new(vec![(0.5, first), (0.5, second)])
}
