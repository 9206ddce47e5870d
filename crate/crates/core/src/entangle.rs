//! Entanglement of the heralded state and the times at which it is maximal.
//!
//! The heralded state has concurrence
//! `C = √(1 + |z|⁴ − 2|z|² cos 2Φ)/(1 + |z|²)` with the combined phase
//! `Φ = φ + Jt/4ħ + B(γ_c − γ)t/2`. `C = 1` exactly when `|z| cos Φ = 0`.
//!
//! Written in the eigenfrequencies of the upper magnetization block, with
//! `s = Jt/2ħ`,
//!
//! ```text
//! |z| cos Φ = f(s) = [a₊ cos(a₋ s) − a₋ cos(a₊ s)] / (a₊ − a₋)
//! ```
//!
//! whose derivatives obey `|f'| ≤ 4/(a₊ − a₋)` and `|f''| ≤ 2` for every
//! `β`. The exact solver walks forward in steps that these bounds prove
//! cannot overshoot a zero, then bisects the final bracket. Roots are
//! labelled by their order in time: branch `n` is the `(n+1)`-th root.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::{closed_form, phase_descriptor};
use crate::error::{Error, Result};
use crate::herald::heralded_branches;
use crate::hilbert::{ComplexAmp, SystemParams, TwoSpinState};
use crate::spectral::{dimensionless_coeffs, DimensionlessCoeffs};

/// Smallest `|β|` accepted by the high-field formula.
pub const HIGH_FIELD_MIN_BETA: f64 = 10.0;

const NORM_TOLERANCE: f64 = 1e-9;

/// Concurrence `2|ad − bc|` of a normalized pure two-qubit state.
pub fn concurrence(state: &TwoSpinState) -> Result<f64> {
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let [a, b, c, d] = state.amps;
    Ok((2.0 * (a * d - b * c).norm()).min(1.0))
}

/// `Φ = φ + Jt/4ħ + B(γ_c − γ)t/2` with `φ` the principal argument of `z`,
/// reduced to `[−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTotal {
    pub value: f64,
}

pub fn phase_total(params: &SystemParams, t: f64) -> PhaseTotal {
    PhaseTotal {
        value: closed_form(params, t).phase_total.reduced().value(),
    }
}

/// `√(1 + |z|⁴ − 2|z|² cos 2Φ)/(1 + |z|²)`, with the radicand written as
/// `(1 − |z|²)² + 4|z|² sin²Φ` so it does not cancel near `C = 0`.
fn concurrence_from(z_mod: f64, deficit: f64, phase: f64) -> f64 {
    let z2 = z_mod * z_mod;
    let s = phase.sin();
    ((deficit * deficit + 4.0 * z2 * s * s).sqrt() / (1.0 + z2)).min(1.0)
}

/// Concurrence of the heralded state from `|z|` and `Φ` alone.
pub fn concurrence_closed_form(params: &SystemParams, t_f: f64) -> f64 {
    let f = closed_form(params, t_f);
    // 1 − |z|² = 8 sin²θ/(a₊ − a₋)², twice the flipped population.
    let deficit = 2.0 * f.flipped.norm_sqr();
    concurrence_from(f.descriptor.z_mod, deficit, f.phase_total.reduced().value())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverMode {
    Exact,
    Highfield,
}

impl std::str::FromStr for SolverMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(SolverMode::Exact),
            "highfield" => Ok(SolverMode::Highfield),
            other => Err(format!("unknown mode `{other}` (expected exact|highfield)")),
        }
    }
}

impl std::fmt::Display for SolverMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SolverMode::Exact => "exact",
            SolverMode::Highfield => "highfield",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementSolution {
    /// Seconds in SI mode, `Jt/ħ` in dimensionless mode.
    pub t_ent: f64,
    pub n: u32,
    pub mode: SolverMode,
    pub concurrence_at_t: f64,
    pub z_mod_at_t: f64,
    /// False when `Bγ_c = 0`: the state exists but cannot be heralded.
    pub measurable: bool,
}

impl EntanglementSolution {
    /// `Jt/ħ` at the solution.
    pub fn jt(&self, params: &SystemParams) -> f64 {
        self.t_ent * params.j_omega
    }
}

/// `f(s) = |z| cos Φ` in the stable eigenfrequency form, with `s = Jt/2ħ`.
#[derive(Debug, Clone, Copy)]
pub struct MaximalityCondition {
    k: DimensionlessCoeffs,
    w_slow: f64,
    w_fast: f64,
}

impl MaximalityCondition {
    pub fn new(params: &SystemParams) -> Self {
        let k = dimensionless_coeffs(params);
        let gap = k.a_gap();
        Self {
            k,
            w_slow: k.a_plus / gap,
            w_fast: -k.a_minus / gap,
        }
    }

    pub fn value(&self, s: f64) -> f64 {
        self.w_slow * (self.k.a_minus * s).cos() + self.w_fast * (self.k.a_plus * s).cos()
    }

    pub fn derivative(&self, s: f64) -> f64 {
        2.0 * ((self.k.a_minus * s).sin() - (self.k.a_plus * s).sin()) / self.k.a_gap()
    }

    /// Upper bound on `|f'|`.
    pub fn lipschitz(&self) -> f64 {
        4.0 / self.k.a_gap()
    }

    /// Distance from `s` that `f` provably cannot reach zero within.
    fn safe_step(&self, s: f64) -> f64 {
        let value = self.value(s);
        let sign = value.signum();
        let g = value.abs();
        let slope = sign * self.derivative(s);
        let by_slope = g / self.lipschitz();
        // g(s + h) ≥ g + g'h − h², since |f''| ≤ 2.
        let by_curvature = 0.5 * (slope + (slope * slope + 4.0 * g).sqrt());
        by_slope.max(by_curvature)
    }

    fn slowest_frequency(&self) -> f64 {
        self.k.a_plus.min(-self.k.a_minus)
    }
}

/// Knobs for the exact root search; times are in the units of `params`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Upper end of the search window. `None` picks a window that provably
    /// contains the requested root.
    pub max_time: Option<f64>,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_time: None,
            max_iterations: 10_000_000,
        }
    }
}

/// Moment of maximal entanglement on branch `n`.
pub fn solve_t_ent(
    params: &SystemParams,
    n: u32,
    mode: SolverMode,
) -> Result<EntanglementSolution> {
    solve_t_ent_with(params, n, mode, &SolverOptions::default())
}

pub fn solve_t_ent_with(
    params: &SystemParams,
    n: u32,
    mode: SolverMode,
    options: &SolverOptions,
) -> Result<EntanglementSolution> {
    params.validate()?;
    let t_ent = match mode {
        SolverMode::Exact => exact_root(params, n, options)?,
        SolverMode::Highfield => high_field_time(params, n)?,
    };
    let z_mod_at_t = phase_descriptor(params, t_ent).z_mod;
    Ok(EntanglementSolution {
        t_ent,
        n,
        mode,
        concurrence_at_t: concurrence_closed_form(params, t_ent),
        z_mod_at_t,
        measurable: !params.is_measurement_degenerate(),
    })
}

/// High-field time `Jt/ħ = (π + 2πn)/(∓√(9/4 + β(β+1)) + β + 1/2)`.
///
/// The lower sign applies for `β < 0` and the upper one for `β > 0`. The
/// denominator equals `−a₋` (respectively `−a₊`) and is evaluated in that
/// form; its magnitude is used so that branch `n = 0` is the first positive
/// time for either sign of `β`.
pub fn high_field_time(params: &SystemParams, n: u32) -> Result<f64> {
    let k = dimensionless_coeffs(params);
    if k.beta.abs() < HIGH_FIELD_MIN_BETA {
        return Err(Error::Regime {
            beta: k.beta,
            min: HIGH_FIELD_MIN_BETA,
        });
    }
    let denominator = if k.beta < 0.0 { -k.a_minus } else { -k.a_plus };
    let jt = PI * (1.0 + 2.0 * n as f64) / denominator.abs();
    Ok(jt / params.j_omega)
}

fn exact_root(params: &SystemParams, n: u32, options: &SolverOptions) -> Result<f64> {
    let f = MaximalityCondition::new(params);
    let to_s = 0.5 * params.j_omega;
    // Every half period of the dominant term contains a zero of f.
    let auto_window = PI * (n as f64 + 2.0) / f.slowest_frequency();
    let s_max = options.max_time.map_or(auto_window, |t| t * to_s);
    let window_error = || Error::NoRoot {
        n,
        window: s_max / to_s,
    };

    let mut s = 0.0;
    let mut found = 0u32;
    let mut iterations = 0usize;
    loop {
        let (lo, hi) = approach(&f, s, s_max, &mut iterations, options.max_iterations)
            .ok_or_else(window_error)?;
        let (root, resume) = polish(&f, lo, hi);
        if found == n {
            return Ok(root / to_s);
        }
        found += 1;
        s = resume;
    }
}

fn resolution(s: f64) -> f64 {
    1e-14 * s.abs().max(1.0)
}

/// Safe-step forward from `s` until the steps vanish at a zero of `f` or
/// rounding carries a step across one. Returns a bracket `lo ≤ root ≤ hi`.
fn approach(
    f: &MaximalityCondition,
    mut s: f64,
    s_max: f64,
    iterations: &mut usize,
    cap: usize,
) -> Option<(f64, f64)> {
    let mut sign = f.value(s).signum();
    loop {
        if s > s_max || *iterations >= cap {
            return None;
        }
        *iterations += 1;
        let value = f.value(s);
        if value == 0.0 {
            return Some((s, s));
        }
        if value.signum() != sign {
            // Only possible within rounding of a zero.
            return Some((s, s));
        }
        sign = value.signum();
        let step = f.safe_step(s);
        if step < resolution(s) {
            return Some((s, s));
        }
        let next = s + step;
        if f.value(next).signum() != sign {
            return Some((s, next));
        }
        s = next;
    }
}

/// Refine a bracket to a root and return a restart point just past it.
fn polish(f: &MaximalityCondition, lo: f64, hi: f64) -> (f64, f64) {
    let left_value = f.value(lo);
    if hi > lo {
        let root = bisect(f, lo, hi);
        return (root, hi.max(root + resolution(root)));
    }
    let mut h = resolution(lo);
    for _ in 0..8 {
        let right = lo + h;
        let right_value = f.value(right);
        if left_value == 0.0 || right_value == 0.0 || left_value.signum() != right_value.signum() {
            let root = bisect(f, lo, right);
            return (root, right.max(root + resolution(root)));
        }
        h *= 4.0;
    }
    // Tangential zero: no sign change nearby.
    (lo, lo + resolution(lo))
}

fn bisect(f: &MaximalityCondition, mut lo: f64, mut hi: f64) -> f64 {
    let lo_sign = f.value(lo).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f.value(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if f.value(lo).abs() <= f.value(hi).abs() {
        lo
    } else {
        hi
    }
}

/// `[(|z| − i)|↑↓⟩ + (|z| + i)|↓↑⟩]/√(2(1 + |z|²))` for `0 ≤ |z| ≤ 1`.
pub fn target_state(z_mod: f64) -> TwoSpinState {
    let norm = 1.0 / (2.0 * (1.0 + z_mod * z_mod)).sqrt();
    let mut s = TwoSpinState::zero();
    s.amps[0b01] = ComplexAmp::new(z_mod, -1.0) * norm;
    s.amps[0b10] = ComplexAmp::new(z_mod, 1.0) * norm;
    s
}

/// `|⟨target|state⟩|²`.
pub fn fidelity_direct(state: &TwoSpinState, target: &TwoSpinState) -> f64 {
    target.dot(state).norm_sqr()
}

/// `½[1 + |z| sin Φ]`, benchmarked against `target_state(1)`.
///
/// Coincides with `fidelity_direct(state_up, target_state(1))` only when
/// `|z| = 1`; see [`fidelity_overlap_closed_form`] for the exact overlap.
pub fn fidelity_closed_form(params: &SystemParams, t_f: f64) -> f64 {
    let z_mod = phase_descriptor(params, t_f).z_mod;
    0.5 * (1.0 + z_mod * phase_total(params, t_f).value.sin())
}

/// `½[1 + 2|z| sin Φ/(1 + |z|²)]`, the exact overlap with `target_state(1)`.
pub fn fidelity_overlap_closed_form(params: &SystemParams, t_f: f64) -> f64 {
    let z_mod = phase_descriptor(params, t_f).z_mod;
    0.5 * (1.0 + 2.0 * z_mod * phase_total(params, t_f).value.sin() / (1.0 + z_mod * z_mod))
}

/// Heralded state at `t_f` compared against `target_state(1)`.
pub fn fidelity_trace_point(params: &SystemParams, t_f: f64) -> f64 {
    fidelity_direct(&heralded_branches(params, t_f).state_up, &target_state(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xef2(b: f64) -> SystemParams {
        SystemParams::from_hz(5583.0, b, -73.997e6, 251.662e6).unwrap()
    }

    fn unit(x: f64, y: f64) -> ComplexAmp {
        ComplexAmp::new(x, y)
    }

    #[test]
    fn concurrence_of_reference_states() {
        assert_eq!(concurrence(&TwoSpinState::basis(0b01)).unwrap(), 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = TwoSpinState::new([unit(0.0, 0.0), unit(h, 0.0), unit(h, 0.0), unit(0.0, 0.0)]);
        assert!((concurrence(&bell).unwrap() - 1.0).abs() < 1e-15);
        let bad = TwoSpinState::new([
            unit(1.0, 0.0),
            unit(1.0, 0.0),
            unit(0.0, 0.0),
            unit(0.0, 0.0),
        ]);
        assert!(matches!(
            concurrence(&bad),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn zero_field_root() {
        // cos(x/2) = (√3 − 1)/2 solves (1/3)cos x + (2/3)cos(x/2) = 0.
        let oracle = 2.0 * ((3f64.sqrt() - 1.0) / 2.0).acos();
        let params = SystemParams::dimensionless(0.0).unwrap();
        let sol = solve_t_ent(&params, 0, SolverMode::Exact).unwrap();
        assert!(
            (sol.t_ent - oracle).abs() < 1e-12,
            "{} vs {oracle}",
            sol.t_ent
        );
        assert!((sol.t_ent - 2.39).abs() < 0.01);
        assert!((sol.concurrence_at_t - 1.0).abs() < 1e-9);
        assert!(!sol.measurable);

        let up = heralded_branches(&params, sol.t_ent).state_up;
        assert!((concurrence(&up).unwrap() - 1.0).abs() < 1e-6);
        // At the rounded time the concurrence is already 2e-6 short of one.
        let rounded = concurrence(&heralded_branches(&params, 2.39).state_up).unwrap();
        assert!((rounded - 0.999_998_043_428_245_8).abs() < 1e-10);
    }

    #[test]
    fn condition_matches_phase_form() {
        for beta in [-9283.7, -40.0, -0.5, 0.0, 0.8, 15.0] {
            let params = SystemParams::dimensionless(beta).unwrap();
            let f = MaximalityCondition::new(&params);
            for i in 0..50 {
                let t = 0.37 * i as f64;
                let d = phase_descriptor(&params, t);
                let phase_form = d.z_mod * phase_total(&params, t).value.cos();
                assert!(
                    (f.value(t / 2.0) - phase_form).abs() < 1e-9,
                    "beta {beta} t {t}"
                );
            }
        }
    }

    #[test]
    fn derivative_bounds_hold() {
        for beta in [-500.0, -2.0, 0.0, 3.0] {
            let f = MaximalityCondition::new(&SystemParams::dimensionless(beta).unwrap());
            let h = 1e-6;
            for i in 0..200 {
                let s = 0.113 * i as f64;
                let fd = (f.value(s + h) - f.value(s - h)) / (2.0 * h);
                assert!((fd - f.derivative(s)).abs() < 1e-6);
                assert!(f.derivative(s).abs() <= f.lipschitz() * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn successive_branches_are_ordered_and_maximal() {
        let params = SystemParams::dimensionless(-3.7).unwrap();
        let mut last = 0.0;
        for n in 0..6 {
            let sol = solve_t_ent(&params, n, SolverMode::Exact).unwrap();
            assert!(sol.t_ent > last);
            assert!((sol.concurrence_at_t - 1.0).abs() < 1e-9);
            last = sol.t_ent;
        }
    }

    #[test]
    fn first_root_is_not_skipped() {
        // Dense scan oracle for a moderate field where both terms matter.
        let params = SystemParams::dimensionless(1.3).unwrap();
        let f = MaximalityCondition::new(&params);
        let sol = solve_t_ent(&params, 0, SolverMode::Exact).unwrap();
        let s_root = sol.t_ent / 2.0;
        let steps = 200_000;
        let first_change = (1..=steps)
            .map(|i| s_root * 1.5 * i as f64 / steps as f64)
            .find(|&s| f.value(s) <= 0.0)
            .unwrap();
        assert!((first_change - s_root).abs() < 1e-4 * s_root);
    }

    #[test]
    fn xef2_exact_and_high_field() {
        let params = xef2(1.0);
        let exact = solve_t_ent(&params, 0, SolverMode::Exact).unwrap();
        let approx = solve_t_ent(&params, 0, SolverMode::Highfield).unwrap();
        assert!((exact.t_ent - 0.82).abs() < 0.02, "{}", exact.t_ent);
        assert!(((exact.t_ent - approx.t_ent) / exact.t_ent).abs() < 1e-3);
        assert!((exact.concurrence_at_t - 1.0).abs() < 1e-9);
        assert!(exact.measurable);
    }

    #[test]
    fn high_field_regime_guard() {
        let err = solve_t_ent(
            &SystemParams::dimensionless(3.0).unwrap(),
            0,
            SolverMode::Highfield,
        );
        assert!(matches!(err, Err(Error::Regime { .. })));
        assert!(solve_t_ent(
            &SystemParams::dimensionless(-10.0).unwrap(),
            0,
            SolverMode::Highfield
        )
        .is_ok());
    }

    #[test]
    fn positive_beta_uses_upper_sign() {
        let params = SystemParams::dimensionless(800.0).unwrap();
        let exact = solve_t_ent(&params, 0, SolverMode::Exact).unwrap();
        let approx = solve_t_ent(&params, 0, SolverMode::Highfield).unwrap();
        assert!(approx.t_ent > 0.0);
        assert!(((exact.t_ent - approx.t_ent) / exact.t_ent).abs() < 1e-3);
    }

    #[test]
    fn short_window_reports_no_root() {
        let params = SystemParams::dimensionless(0.0).unwrap();
        let options = SolverOptions {
            max_time: Some(1.0),
            ..Default::default()
        };
        assert_eq!(
            solve_t_ent_with(&params, 0, SolverMode::Exact, &options),
            Err(Error::NoRoot { n: 0, window: 1.0 })
        );
    }

    #[test]
    fn target_states() {
        let t = target_state(1.0);
        assert!((t.amps[1] - unit(0.5, -0.5)).norm() < 1e-15);
        assert!((t.amps[2] - unit(0.5, 0.5)).norm() < 1e-15);
        for z in [0.0, 0.3, 0.7, 1.0] {
            assert!((concurrence(&target_state(z)).unwrap() - 1.0).abs() < 1e-15);
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t0 = target_state(0.0);
        assert!((t0.amps[1] - unit(0.0, -h)).norm() < 1e-15);
        assert!((t0.amps[2] - unit(0.0, h)).norm() < 1e-15);
    }

    #[test]
    fn fidelity_reference_values() {
        let bell_plus = target_state(0.0);
        assert!((fidelity_direct(&bell_plus, &bell_plus) - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let singlet =
            TwoSpinState::new([unit(0.0, 0.0), unit(h, 0.0), unit(-h, 0.0), unit(0.0, 0.0)]);
        let triplet =
            TwoSpinState::new([unit(0.0, 0.0), unit(h, 0.0), unit(h, 0.0), unit(0.0, 0.0)]);
        assert!(fidelity_direct(&singlet, &triplet) < 1e-30);
        assert!((concurrence_from(1.0, 0.0, PI / 2.0) - 1.0).abs() < 1e-15);
        assert_eq!(concurrence_closed_form(&xef2(1.0), 0.0), 0.0);
    }

    #[test]
    fn fidelity_at_the_xef2_solution() {
        let params = xef2(1.0);
        let sol = solve_t_ent(&params, 0, SolverMode::Exact).unwrap();
        assert!(fidelity_trace_point(&params, sol.t_ent) >= 0.999);
        let closed = fidelity_closed_form(&params, sol.t_ent);
        assert!((closed - fidelity_trace_point(&params, sol.t_ent)).abs() < 1e-6);
    }

    #[test]
    fn overlap_form_matches_direct_fidelity_everywhere() {
        let params = SystemParams::dimensionless(0.4).unwrap();
        for i in 0..100 {
            let t = 0.21 * i as f64;
            let a = fidelity_overlap_closed_form(&params, t);
            let b = fidelity_trace_point(&params, t);
            assert!((a - b).abs() < 1e-12);
        }
    }
}
