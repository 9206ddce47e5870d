//! Readout of the auxiliary spin and the heralded state of the basic spins.
//!
//! A projective measurement of `S_c` at `t_f` leaves the basic spins in
//! `|↑↑⟩` (auxiliary spin down) or in a superposition of `|↑↓⟩` and `|↓↑⟩`
//! (auxiliary spin up). The readout itself is driven by a monochromatic
//! field resonant with the `ψ^(5) → ψ^(2)` transition; this module also
//! evaluates the first-order emission and absorption probabilities for that
//! field and the resulting integral intensity.
//!
//! Only the combinations that enter the probabilities and the intensity are
//! exposed. The field amplitude `B_int = k√(2πc²ħ/(ωV))` follows the
//! Gaussian-style normalization of the interaction Hamiltonian, so the
//! absolute scale of `W±` depends on that convention. Being first order,
//! `W±` may exceed one for long pulses or large photon numbers; they are
//! reported unclamped.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dynamics::closed_form;
use crate::error::{Error, Result};
use crate::hilbert::{ComplexAmp, SystemParams, TwoSpinState};
use crate::spectral::analytic_eigensystem;

/// CODATA values used for SI evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysConstants {
    pub c: f64,
    pub hbar: f64,
}

pub const PHYS: PhysConstants = PhysConstants {
    c: 299_792_458.0,
    hbar: 1.054_571_817e-34,
};

impl Default for PhysConstants {
    fn default() -> Self {
        PHYS
    }
}

/// Both measurement branches of the auxiliary spin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeraldOutcome {
    pub p_up: f64,
    pub state_up: TwoSpinState,
    pub p_down: f64,
    pub state_down: TwoSpinState,
    /// `e^{−iBγ t_f/2}`: the normalized projection of the lab-frame state onto
    /// the auxiliary spin-up branch equals `global_phase · state_up`.
    pub global_phase: ComplexAmp,
}

const UP_DOWN: usize = 0b01;
const DOWN_UP: usize = 0b10;

/// Both branches without the measurability check, for analysis at `B = 0`.
pub fn heralded_branches(params: &SystemParams, t_f: f64) -> HeraldOutcome {
    let f = closed_form(params, t_f);
    let z2 = f.descriptor.z_mod * f.descriptor.z_mod;
    let norm = 1.0 / (2.0 * (1.0 + z2)).sqrt();

    let mut state_up = TwoSpinState::zero();
    state_up.amps[UP_DOWN] = (f.u + f.v) * norm;
    state_up.amps[DOWN_UP] = (f.u - f.v) * norm;

    HeraldOutcome {
        p_up: 0.5 * (1.0 + z2),
        state_up,
        p_down: f.flipped.norm_sqr(),
        state_down: TwoSpinState::basis(0),
        global_phase: f.global,
    }
}

/// Heralded branches at `t_f`; fails when `Bγ_c = 0` leaves E^(2) and E^(5)
/// degenerate and the auxiliary spin cannot be resolved.
pub fn herald(params: &SystemParams, t_f: f64) -> Result<HeraldOutcome> {
    params.validate()?;
    if params.is_measurement_degenerate() {
        return Err(Error::Degeneracy);
    }
    Ok(heralded_branches(params, t_f))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransitionFrequencies {
    /// `(E^(5) − E^(2))/ħ + ω`, emission channel.
    pub omega_52: f64,
    /// `(E^(2) − E^(5))/ħ − ω`, absorption channel.
    pub omega_25: f64,
}

pub fn transition_frequencies(params: &SystemParams, omega: f64) -> Result<TransitionFrequencies> {
    let sys = analytic_eigensystem(params)?;
    let split = sys.energy(5) - sys.energy(2);
    Ok(TransitionFrequencies {
        omega_52: split + omega,
        omega_25: -split - omega,
    })
}

/// Irradiation used to read out the auxiliary spin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiationParams {
    /// Photon angular frequency, rad/s.
    pub omega: f64,
    pub e_y: f64,
    pub e_z: f64,
    /// Irradiation time, s.
    pub tau: f64,
    pub n_photons: u64,
    /// Quantization volume, m³.
    pub volume: f64,
    /// Position along the propagation axis; enters only as a phase.
    #[serde(default)]
    pub x_pos: f64,
}

impl RadiationParams {
    /// Field polarized along z.
    pub fn new(omega: f64, tau: f64, n_photons: u64, volume: f64) -> Self {
        Self {
            omega,
            e_y: 0.0,
            e_z: 1.0,
            tau,
            n_photons,
            volume,
            x_pos: 0.0,
        }
    }

    pub fn with_polarization(self, e_y: f64, e_z: f64) -> Self {
        Self { e_y, e_z, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            self.omega,
            self.e_y,
            self.e_z,
            self.tau,
            self.volume,
            self.x_pos,
        ];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams(
                "radiation parameters must be finite".into(),
            ));
        }
        if self.omega <= 0.0 {
            return Err(Error::InvalidParams(
                "photon frequency must be positive".into(),
            ));
        }
        if self.tau < 0.0 {
            return Err(Error::InvalidParams(
                "irradiation time must be non-negative".into(),
            ));
        }
        if self.volume <= 0.0 {
            return Err(Error::InvalidParams(
                "quantization volume must be positive".into(),
            ));
        }
        let pol = self.e_y * self.e_y + self.e_z * self.e_z;
        if (pol - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "polarization must be a unit vector, |e|^2 = {pol}"
            )));
        }
        Ok(())
    }
}

/// `sin²(wτ/2)/w²`, continuous through `w = 0` where it equals `τ²/4`.
pub fn line_shape(detuning: f64, tau: f64) -> f64 {
    let x = detuning * tau;
    if x.abs() < 1e-6 {
        0.25 * tau * tau * (1.0 - x * x / 12.0)
    } else {
        let s = (0.5 * x).sin();
        s * s / (detuning * detuning)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineProbabilities {
    /// Emission, `∝ (N + 1)`.
    pub w_plus: f64,
    /// Absorption, `∝ N`.
    pub w_minus: f64,
}

pub fn emission_absorption_probabilities(
    params: &SystemParams,
    rad: &RadiationParams,
) -> Result<LineProbabilities> {
    emission_absorption_with(params, rad, &PHYS)
}

pub fn emission_absorption_with(
    params: &SystemParams,
    rad: &RadiationParams,
    phys: &PhysConstants,
) -> Result<LineProbabilities> {
    rad.validate()?;
    let freqs = transition_frequencies(params, rad.omega)?;
    let k = rad.omega / phys.c;
    let coupling = PI * phys.c * phys.c / (rad.omega * rad.volume)
        * phys.hbar
        * params.gamma_c
        * params.gamma_c
        * rad.e_z
        * rad.e_z
        * k
        * k;
    let n = rad.n_photons as f64;
    Ok(LineProbabilities {
        w_plus: coupling * line_shape(freqs.omega_52, rad.tau) * (n + 1.0),
        w_minus: coupling * line_shape(freqs.omega_25, rad.tau) * n,
    })
}

/// Net radiated power `ħ²|e_z|² B⁴ γ_c⁶/(16π c³)` in watts.
pub fn integral_intensity(params: &SystemParams, e_z_mod: f64) -> Result<f64> {
    integral_intensity_with(params, e_z_mod, &PHYS)
}

pub fn integral_intensity_with(
    params: &SystemParams,
    e_z_mod: f64,
    phys: &PhysConstants,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&e_z_mod) {
        return Err(Error::InvalidParams(format!(
            "|e_z| must lie in [0, 1], got {e_z_mod}"
        )));
    }
    let b2 = params.b_field * params.b_field;
    let g2 = params.gamma_c * params.gamma_c;
    Ok(
        phys.hbar * phys.hbar * e_z_mod * e_z_mod * b2 * b2 * g2 * g2 * g2
            / (16.0 * PI * phys.c.powi(3)),
    )
}

/// Readout photon frequency `|Bγ_c|`.
pub fn resonance_frequency(params: &SystemParams) -> Result<f64> {
    if params.is_measurement_degenerate() {
        return Err(Error::Degeneracy);
    }
    Ok(params.central_larmor().abs())
}

/// Herald branches together with the readout-field figures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementRecord {
    pub outcome: HeraldOutcome,
    pub frequencies: TransitionFrequencies,
    pub probabilities: LineProbabilities,
    pub resonance: f64,
    pub intensity: f64,
}

pub fn measure(
    params: &SystemParams,
    t_f: f64,
    rad: &RadiationParams,
) -> Result<MeasurementRecord> {
    let outcome = herald(params, t_f)?;
    Ok(MeasurementRecord {
        outcome,
        frequencies: transition_frequencies(params, rad.omega)?,
        probabilities: emission_absorption_probabilities(params, rad)?,
        resonance: resonance_frequency(params)?,
        intensity: integral_intensity(params, rad.e_z.abs().min(1.0))?,
    })
}
