//! Kerr-type nonlinear evolution `U(t) = exp(−i n̂^k t)` (ħ = Ω = 1).
//!
//! The unitary is diagonal in the number basis, so evolution is a per-entry
//! phase. At times `t = mπ/8` the phase `m·n^k·π/8` is reduced with integer
//! arithmetic (`m·n^k mod 16`) before any float conversion; generic times use
//! an error-free product `t·n^k` and a two-word reduction modulo 2π.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::angle::PiFraction;
use crate::error::{Error, Result};
use crate::fock::{Mixture, ModeLabel, SingleModeState, TruncationPolicy, TwoModeState};

/// Interaction time in units of `Ω⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Time {
    /// `m·π/8`, evaluated with exact modular phases.
    PiEighths(i64),
    Real(f64),
}

impl Time {
    pub const ZERO: Time = Time::PiEighths(0);

    pub fn to_f64(&self) -> f64 {
        match *self {
            Time::PiEighths(m) => m as f64 * PI / 8.0,
            Time::Real(t) => t,
        }
    }

    /// Exact when the fraction is a multiple of π/8, float otherwise.
    pub fn from_pi_fraction(f: PiFraction) -> Time {
        match f.as_eighths() {
            Some(m) => Time::PiEighths(m),
            None => Time::Real(f.to_f64()),
        }
    }

    /// Folds a π/8 multiple into one period `[0, 2π)`; the phase `e^{−imπn^k/8}`
    /// depends only on `m mod 16`. Real times are returned unchanged.
    pub fn wrapped(self) -> Time {
        match self {
            Time::PiEighths(m) => Time::PiEighths(m.rem_euclid(16)),
            t => t,
        }
    }
}

impl From<PiFraction> for Time {
    fn from(f: PiFraction) -> Self {
        Time::from_pi_fraction(f)
    }
}

/// `exp(−i t n̂^k)` acting on one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlinearUnitary {
    k: u32,
    time: Time,
    mode: ModeLabel,
}

impl NonlinearUnitary {
    pub fn new(k: u32, time: Time, mode: ModeLabel) -> Result<Self> {
        if k < 2 || !k.is_multiple_of(2) {
            return Err(Error::InvalidExponent(k));
        }
        let t = time.to_f64();
        if t < 0.0 || !t.is_finite() {
            return Err(Error::NegativeTime(t));
        }
        Ok(NonlinearUnitary { k, time, mode })
    }

    /// Unitary on mode A (the mode used for single-mode states).
    pub fn on_a(k: u32, time: Time) -> Result<Self> {
        Self::new(k, time, ModeLabel::A)
    }

    pub fn on_b(k: u32, time: Time) -> Result<Self> {
        Self::new(k, time, ModeLabel::B)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn time(&self) -> Time {
        self.time
    }

    pub fn mode(&self) -> ModeLabel {
        self.mode
    }

    /// `e^{−i·sign·t·n^k}` for `n = 0..dim`.
    pub fn phases(&self, dim: usize, sign: f64) -> Vec<C64> {
        (0..dim)
            .map(|n| {
                let angle = phase_angle(n as u64, self.k, self.time);
                C64::from_polar(1.0, -sign * angle)
            })
            .collect()
    }
}

/// `t·n^k mod 2π` in `[−π, π]`.
pub fn phase_angle(n: u64, k: u32, time: Time) -> f64 {
    match time {
        Time::PiEighths(m) => {
            let r = (m.rem_euclid(16) as u64 * pow_mod(n, k, 16)) % 16;
            let r = if r > 8 { r as f64 - 16.0 } else { r as f64 };
            r * PI / 8.0
        }
        Time::Real(t) => real_phase(n, k, t),
    }
}

fn pow_mod(base: u64, exp: u32, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let b = base % modulus;
    for _ in 0..exp {
        result = result * b % modulus;
    }
    result
}

// 2π as an unevaluated sum of three doubles.
const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_MID: f64 = 2.4492935982947064e-16;
const TWO_PI_LO: f64 = -5.989539619436679e-33;

/// Reduces `t·N` modulo 2π where `N = n^k` may exceed 2^53. `N` is split into
/// 32-bit limbs so every partial product `t·limb·2^{32j}` is formed without
/// rounding (two-product via FMA), and each is reduced separately.
fn real_phase(n: u64, k: u32, t: f64) -> f64 {
    let mut power: u128 = 1;
    let mut overflow = false;
    for _ in 0..k {
        match power.checked_mul(n as u128) {
            Some(p) => power = p,
            None => {
                overflow = true;
                break;
            }
        }
    }
    if overflow {
        // Outside any supported truncation; fall back to plain float arithmetic.
        return ((n as f64).powi(k as i32) * t).rem_euclid(2.0 * PI);
    }
    let mut total = 0.0;
    let mut shift = 0i32;
    while power > 0 {
        let limb = (power & 0xffff_ffff) as f64;
        power >>= 32;
        if limb != 0.0 {
            let scale = 2f64.powi(shift);
            total += reduce_product(t * scale, limb);
        }
        shift += 32;
    }
    symmetric_mod_two_pi(total)
}

/// `(a·b) mod 2π` for doubles `a`, `b` with `b` an exact integer.
fn reduce_product(a: f64, b: f64) -> f64 {
    let p = a * b;
    let err = a.mul_add(b, -p);
    let q = (p / TWO_PI_HI).round();
    let r = (-q).mul_add(TWO_PI_HI, p);
    let r = (-q).mul_add(TWO_PI_MID, r);
    let r = (-q).mul_add(TWO_PI_LO, r);
    r + err
}

fn symmetric_mod_two_pi(x: f64) -> f64 {
    let r = x - (x / TWO_PI_HI).round() * TWO_PI_HI;
    r - (r / TWO_PI_HI).round() * TWO_PI_HI
}

/// States that a diagonal number-basis unitary can act on.
pub trait Evolve: Sized {
    /// Multiplies the amplitude of `|n⟩` on `u.mode()` by `e^{−i·sign·t·n^k}`.
    fn apply_phases(&self, u: &NonlinearUnitary, sign: f64) -> Self;
}

impl Evolve for SingleModeState {
    fn apply_phases(&self, u: &NonlinearUnitary, sign: f64) -> Self {
        let phases = u.phases(self.dim(), sign);
        self.map_amplitudes(|n, c| c * phases[n])
    }
}

impl Evolve for TwoModeState {
    fn apply_phases(&self, u: &NonlinearUnitary, sign: f64) -> Self {
        let (rows, cols) = self.amplitudes().dim();
        match u.mode() {
            ModeLabel::A => {
                let phases = u.phases(rows, sign);
                self.map_amplitudes(|m, _, c| c * phases[m])
            }
            ModeLabel::B => {
                let phases = u.phases(cols, sign);
                self.map_amplitudes(|_, n, c| c * phases[n])
            }
        }
    }
}

impl<S: Evolve> Evolve for Mixture<S> {
    fn apply_phases(&self, u: &NonlinearUnitary, sign: f64) -> Self {
        self.map(|s| s.apply_phases(u, sign))
    }
}

/// `U(t)·state`.
pub fn evolve<S: Evolve>(state: &S, u: &NonlinearUnitary) -> S {
    state.apply_phases(u, 1.0)
}

/// `U(t)⁻¹·state`.
pub fn inverse_evolve<S: Evolve>(state: &S, u: &NonlinearUnitary) -> S {
    state.apply_phases(u, -1.0)
}

/// Applies local evolutions `U_A(t_a) U_B(t_b)`.
pub fn evolve_local<S: Evolve>(state: &S, k: u32, t_a: Time, t_b: Time) -> Result<S> {
    let mut out = evolve(state, &NonlinearUnitary::on_a(k, t_a)?);
    out = evolve(&out, &NonlinearUnitary::on_b(k, t_b)?);
    Ok(out)
}

/// Coefficients of the two-state solution `A|α⟩ + B|−α⟩` reached by
/// `exp(−i n̂⁴ mπ/8)|α⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatDecomposition {
    pub coeff_plus: C64,
    pub coeff_minus: C64,
    pub base_alpha: f64,
    pub m: i64,
}

impl CatDecomposition {
    /// Rotation angle `θ = t/2 = mπ/16`.
    pub fn theta(&self) -> f64 {
        self.m as f64 * PI / 16.0
    }

    /// `|A|² + |B|² + 2·Re(A·B̄)·e^{−2α²}`, the squared norm of `A|α⟩ + B|−α⟩`.
    pub fn norm_sqr(&self) -> f64 {
        let a = self.coeff_plus;
        let b = self.coeff_minus;
        a.norm_sqr()
            + b.norm_sqr()
            + 2.0 * (a * b.conj()).re * (-2.0 * self.base_alpha * self.base_alpha).exp()
    }

    /// `A|α⟩ + B|−α⟩` on the given truncation, without renormalization.
    pub fn to_state(&self, policy: TruncationPolicy) -> Result<SingleModeState> {
        policy.admit(self.base_alpha)?;
        let coeffs = crate::fock::coherent_coefficients(self.base_alpha, policy.dim());
        let amps = coeffs
            .into_iter()
            .enumerate()
            .map(|(n, c)| {
                let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
                (self.coeff_plus + self.coeff_minus * parity) * c
            })
            .collect();
        SingleModeState::from_amplitudes(amps, policy)
    }
}

/// Closed-form `A = e^{−imπ/16} cos(mπ/16)`, `B = i e^{−imπ/16} sin(mπ/16)` for `k = 4`.
pub fn cat_decomposition(m: i64, alpha: f64) -> CatDecomposition {
    let half = m as f64 * PI / 16.0;
    let global = C64::from_polar(1.0, -half);
    CatDecomposition {
        coeff_plus: global * half.cos(),
        coeff_minus: global * C64::new(0.0, half.sin()),
        base_alpha: alpha,
        m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{bell_cat_state, coherent_state, mix_state};
    use std::f64::consts::FRAC_PI_4;

    fn policy(alpha: f64) -> TruncationPolicy {
        TruncationPolicy::for_amplitude(alpha)
    }

    #[test]
    fn zero_time_is_identity() {
        let s = coherent_state(2.0, policy(2.0)).unwrap();
        for time in [Time::ZERO, Time::Real(0.0)] {
            let out = evolve(&s, &NonlinearUnitary::on_a(2, time).unwrap());
            assert!(out.distance(&s) < 1e-15);
        }
    }

    #[test]
    fn odd_or_small_exponent_rejected() {
        assert!(matches!(NonlinearUnitary::on_a(3, Time::ZERO), Err(Error::InvalidExponent(3))));
        assert!(matches!(NonlinearUnitary::on_a(0, Time::ZERO), Err(Error::InvalidExponent(0))));
        assert!(matches!(NonlinearUnitary::on_a(2, Time::Real(-0.1)), Err(Error::NegativeTime(_))));
    }

    #[test]
    fn kerr_quarter_rotation_matches_cat() {
        // k=2, t=π/2: e^{−iπ/4}(cos π/4 |α⟩ + i sin π/4 |−α⟩)
        let p = policy(2.0);
        let s = coherent_state(2.0, p).unwrap();
        let out = evolve(&s, &NonlinearUnitary::on_a(2, Time::PiEighths(4)).unwrap());
        let expected = SingleModeState::rotated_cat(2.0, FRAC_PI_4, p).unwrap();
        assert!(out.fidelity(&expected) > 1.0 - 1e-12);
        // and with the global phase as stated
        let g = C64::from_polar(1.0, -FRAC_PI_4);
        let direct = SingleModeState::cat(2.0, g * FRAC_PI_4.cos(), g * C64::new(0.0, FRAC_PI_4.sin()), p).unwrap();
        assert!(out.distance(&direct) < 1e-12);
    }

    #[test]
    fn quartic_eighth_rotation_matches_cat() {
        // k=4, t=π/4: e^{−iπ/8}(cos π/8 |α⟩ + i sin π/8 |−α⟩)
        let p = policy(2.0);
        let s = coherent_state(2.0, p).unwrap();
        let theta = PI / 8.0;
        let out = evolve(&s, &NonlinearUnitary::on_a(4, Time::PiEighths(2)).unwrap());
        let expected = SingleModeState::rotated_cat(2.0, theta, p).unwrap();
        assert!(out.fidelity(&expected) > 1.0 - 1e-12);
        let real_time = evolve(&s, &NonlinearUnitary::on_a(4, Time::Real(FRAC_PI_4)).unwrap());
        assert!(real_time.fidelity(&expected) > 1.0 - 1e-12);
    }

    #[test]
    fn decomposition_closed_forms() {
        let d0 = cat_decomposition(0, 3.0);
        assert_eq!(d0.coeff_plus, C64::new(1.0, 0.0));
        assert_eq!(d0.coeff_minus.norm(), 0.0);

        let d4 = cat_decomposition(4, 3.0);
        let g = C64::from_polar(1.0, -FRAC_PI_4);
        assert!((d4.coeff_plus - g * FRAC_PI_4.cos()).norm() < 1e-15);
        assert!((d4.coeff_minus - C64::new(0.0, 1.0) * g * FRAC_PI_4.sin()).norm() < 1e-15);
        assert!((d4.theta() - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn decomposition_norm_identity() {
        for m in 0..32 {
            for alpha in [0.1, 0.5, 1.0, 3.0] {
                let d = cat_decomposition(m, alpha);
                assert!((d.norm_sqr() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn numeric_evolution_matches_decomposition() {
        let p = policy(3.0);
        let s = coherent_state(3.0, p).unwrap();
        for m in 1..=16 {
            let evolved = evolve(&s, &NonlinearUnitary::on_a(4, Time::PiEighths(m)).unwrap());
            let closed = cat_decomposition(m, 3.0).to_state(p).unwrap();
            assert!(evolved.distance(&closed) < 1e-10, "m={m}");
        }
    }

    #[test]
    fn kerr_eighth_time_is_not_two_state() {
        // k=2 at t=π/4 leaves the {|α⟩, |−α⟩} span: scan A, B
        let p = policy(2.0);
        let s = coherent_state(2.0, p).unwrap();
        let out = evolve(&s, &NonlinearUnitary::on_a(2, Time::PiEighths(2)).unwrap());
        // best fidelity over the span is the squared norm of the projection,
        // scanned here over a grid of relative weights and phases
        let mut best: f64 = 0.0;
        for i in 0..=100 {
            let w = i as f64 / 100.0 * std::f64::consts::FRAC_PI_2;
            for j in 0..72 {
                let phi = j as f64 * 2.0 * PI / 72.0;
                if let Ok(cand) = SingleModeState::cat(
                    2.0,
                    C64::new(w.cos(), 0.0),
                    C64::from_polar(w.sin(), phi),
                    p,
                ) {
                    best = best.max(cand.fidelity(&out));
                }
            }
        }
        assert!(best < 0.999, "best fidelity {best}");
    }

    #[test]
    fn exact_and_float_phases_agree() {
        for k in [2u32, 4, 6] {
            for m in -20i64..20 {
                for n in [0u64, 1, 2, 3, 7, 40, 61] {
                    let exact = phase_angle(n, k, Time::PiEighths(m));
                    let float = phase_angle(n, k, Time::Real(m as f64 * PI / 8.0));
                    let diff = (exact - float).rem_euclid(2.0 * PI);
                    let diff = diff.min(2.0 * PI - diff);
                    // the only error is the representation error of mπ/8 times n^k
                    let bound = 4e-16 * (m.unsigned_abs() as f64 + 1.0) * (n as f64).powi(k as i32) + 1e-14;
                    assert!(diff <= bound, "k={k} m={m} n={n}: {diff}");
                }
            }
        }
    }

    #[test]
    fn large_products_reduced_accurately() {
        // references from 60-digit arithmetic on the exact double value of t
        let cases = [
            (200u64, 8u32, 1.0, -2.7121844749561195231),
            (61, 6, 0.7, -2.2074802744146039568),
            (150, 4, 0.3, -0.11258460734258050851),
        ];
        for (n, k, t, expected) in cases {
            let got = phase_angle(n, k, Time::Real(t));
            assert!((got - expected).abs() < 1e-10, "n={n} k={k}: {got}");
        }
    }

    #[test]
    fn two_mode_and_mixture_evolution() {
        let p = policy(2.0);
        let bell = bell_cat_state(2.0, 2.0, p, p).unwrap();
        let u = NonlinearUnitary::on_b(2, Time::Real(0.7)).unwrap();
        let back = inverse_evolve(&evolve(&bell, &u), &u);
        assert!(back.distance(&bell) < 1e-12);

        let mix = mix_state(2.0, 2.0, p, p).unwrap();
        let ua = NonlinearUnitary::on_a(4, Time::PiEighths(3)).unwrap();
        let round = inverse_evolve(&evolve(&mix, &ua), &ua);
        for ((w0, s0), (w1, s1)) in mix.branches().iter().zip(round.branches()) {
            assert_eq!(w0, w1);
            assert!(s0.fidelity(s1) > 1.0 - 1e-12);
        }
    }

    #[test]
    fn wrapped_time_preserves_phases() {
        let neg = Time::PiEighths(-2).wrapped();
        assert_eq!(neg, Time::PiEighths(14));
        for n in 0..30u64 {
            assert_eq!(phase_angle(n, 4, Time::PiEighths(-2)), phase_angle(n, 4, neg));
        }
    }
}
