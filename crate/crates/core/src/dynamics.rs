//! Free evolution of the star from `|↑↑↓⟩`.
//!
//! Only the three `S^z = +1/2` basis states are ever populated. The closed
//! form is parameterized by the phase descriptor
//! `z = cos θ + i·(a₊+a₋)/(a₊−a₋)·sin θ` with `θ = (J t/4ħ)(a₊ − a₋)`.
//! [`evolve_numeric`] propagates the same state through the numerically
//! diagonalized Hamiltonian and serves as the oracle for [`evolve_analytic`].

use crate::hilbert::{
    build_hamiltonian, ComplexAmp, SystemParams, ThreeSpinState, DOWN_UP_UP, UP_DOWN_UP, UP_UP_DOWN,
};
use crate::jacobi::eigh;
use crate::phase::Phase;
use crate::spectral::{dimensionless_coeffs, DimensionlessCoeffs};

/// Coefficients of `|↑↑↓⟩` on the eigenstates `ψ^(2)`, `ψ^(3)`, `ψ^(4)`.
///
/// All three are positive with the eigenvector conventions of
/// [`crate::spectral::analytic_eigensystem`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialDecomposition {
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl InitialDecomposition {
    pub fn get(&self, label: usize) -> Option<f64> {
        match label {
            2 => Some(self.c2),
            3 => Some(self.c3),
            4 => Some(self.c4),
            _ => None,
        }
    }

    pub fn entries(&self) -> [(usize, f64); 3] {
        [(2, self.c2), (3, self.c3), (4, self.c4)]
    }
}

pub fn initial_decomposition(params: &SystemParams) -> InitialDecomposition {
    let k = dimensionless_coeffs(params);
    let gap = k.a_gap();
    InitialDecomposition {
        c2: std::f64::consts::FRAC_1_SQRT_2,
        c3: (-k.a_minus / gap / 2.0).sqrt(),
        c4: (k.a_plus / gap / 2.0).sqrt(),
    }
}

/// `z`, its modulus and principal argument, and the rotation angle `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDescriptor {
    pub z: ComplexAmp,
    pub z_mod: f64,
    pub phi: f64,
    pub theta: f64,
}

impl PhaseDescriptor {
    fn from_angle(theta: Phase, k: &DimensionlessCoeffs) -> Self {
        let (sin, cos) = theta.sin_cos();
        let z = ComplexAmp::new(cos, k.a_ratio() * sin);
        Self {
            z,
            z_mod: z.norm().min(1.0),
            phi: z.im.atan2(z.re),
            theta: theta.value(),
        }
    }
}

/// `Jt/4ħ` and `θ` as split phases.
fn exchange_angles(params: &SystemParams, t: f64, k: &DimensionlessCoeffs) -> (Phase, Phase) {
    let jt = Phase::product(params.j_omega, t);
    (jt.scale(0.25), jt.scale(0.25 * k.a_gap()))
}

/// `θ = (J t/4ħ)(a₊ − a₋)`.
pub fn rotation_angle(params: &SystemParams, t: f64) -> f64 {
    exchange_angles(params, t, &dimensionless_coeffs(params))
        .1
        .value()
}

pub fn phase_descriptor(params: &SystemParams, t: f64) -> PhaseDescriptor {
    let k = dimensionless_coeffs(params);
    PhaseDescriptor::from_angle(exchange_angles(params, t, &k).1, &k)
}

/// Population that has flowed into `|↓↑↑⟩`: `4 sin²θ/(a₊ − a₋)²`.
pub fn flipped_population(params: &SystemParams, t: f64) -> f64 {
    let k = dimensionless_coeffs(params);
    let amp = 2.0 * exchange_angles(params, t, &k).1.sin_cos().0 / k.a_gap();
    amp * amp
}

/// Ingredients of the closed form: `u = z e^{iJt/4ħ}`, `v = e^{−iB(γ_c−γ)t/2}`,
/// the global factor `e^{−iBγt/2}` and the `|↓↑↑⟩` amplitude.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ClosedForm {
    pub descriptor: PhaseDescriptor,
    pub u: ComplexAmp,
    pub v: ComplexAmp,
    pub global: ComplexAmp,
    pub flipped: ComplexAmp,
    /// `Φ = φ + Jt/4ħ + B(γ_c − γ)t/2`, unreduced.
    pub phase_total: Phase,
}

pub(crate) fn closed_form(params: &SystemParams, t: f64) -> ClosedForm {
    let k = dimensionless_coeffs(params);
    let (exchange, theta) = exchange_angles(params, t, &k);
    let descriptor = PhaseDescriptor::from_angle(theta, &k);
    let zeeman = Phase::product(params.basic_larmor(), t).scale(-0.5);
    let splitting = Phase::product(params.larmor_difference(), t).scale(0.5);
    let amp = -2.0 * theta.sin_cos().0 / k.a_gap();
    ClosedForm {
        descriptor,
        u: descriptor.z * exchange.exp_i(),
        v: (-splitting).exp_i(),
        global: zeeman.exp_i(),
        flipped: ComplexAmp::new(0.0, amp) * (exchange + zeeman).exp_i(),
        phase_total: Phase::new(descriptor.phi) + exchange + splitting,
    }
}

/// Closed-form `ψ(t)`.
pub fn evolve_analytic(params: &SystemParams, t: f64) -> ThreeSpinState {
    let f = closed_form(params, t);
    let mut psi = ThreeSpinState::zero();
    psi.amps[UP_UP_DOWN] = f.global * (f.u + f.v) * 0.5;
    psi.amps[UP_DOWN_UP] = f.global * (f.u - f.v) * 0.5;
    psi.amps[DOWN_UP_UP] = f.flipped;
    psi
}

/// `exp(−iHt/ħ)|↑↑↓⟩` through the Jacobi eigenbasis of the full matrix.
pub fn evolve_numeric(params: &SystemParams, t: f64) -> ThreeSpinState {
    eigh(&build_hamiltonian(params)).propagate(&ThreeSpinState::initial(), t)
}
