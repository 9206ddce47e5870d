//! State and operator algebra for the three-spin star.
//!
//! Basis states are written `|s_c s_1 s_2⟩` with the auxiliary spin first.
//! The index of a basis state is `4·bit(s_c) + 2·bit(s_1) + bit(s_2)` with
//! `bit(↑) = 0` and `bit(↓) = 1`, so the auxiliary spin-up subspace is the
//! contiguous block `0..4`.
//!
//! Energies are stored as angular frequencies (`E/ħ`, rad/s); ħ never
//! appears in the internal formulas.

use std::f64::consts::PI;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexAmp = Complex64;

const ZERO: ComplexAmp = Complex64::new(0.0, 0.0);
const ONE: ComplexAmp = Complex64::new(1.0, 0.0);

pub const UP_UP_DOWN: usize = 0b001;
pub const UP_DOWN_UP: usize = 0b010;
pub const DOWN_UP_UP: usize = 0b100;

/// Single spin projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

/// Index of `|s_c s_1 s_2⟩` in the eight-dimensional basis.
pub fn basis_index(c: Spin, s1: Spin, s2: Spin) -> usize {
    4 * c.bit() + 2 * s1.bit() + s2.bit()
}

/// Twice the total `S^z` of a basis state, as a signed integer.
pub fn twice_magnetization(index: usize) -> i32 {
    (0..3)
        .map(|k| if index >> k & 1 == 0 { 1 } else { -1 })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Site {
    Central,
    First,
    Second,
}

impl Site {
    fn shift(self) -> usize {
        match self {
            Site::Central => 2,
            Site::First => 1,
            Site::Second => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Whether parameters carry SI units or are given directly as `β` with `J/ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitMode {
    Si,
    Dimensionless,
}

/// Physical parameters of the star.
///
/// `j_omega` is the exchange constant as an angular frequency `J/ħ` (rad/s),
/// `b_field` is in tesla and the gyromagnetic ratios in rad s⁻¹ T⁻¹.
/// In dimensionless mode `j_omega = 1`, `gamma_c = 1`, `gamma = 0`, and
/// `b_field` holds `β` itself; times are then the product `J t / ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    pub j_omega: f64,
    pub b_field: f64,
    pub gamma_c: f64,
    pub gamma: f64,
    pub unit_mode: UnitMode,
}

impl SystemParams {
    /// SI parameters with the exchange constant already in rad/s.
    pub fn new(j_omega: f64, b_field: f64, gamma_c: f64, gamma: f64) -> Result<Self> {
        let params = Self {
            j_omega,
            b_field,
            gamma_c,
            gamma,
            unit_mode: UnitMode::Si,
        };
        params.validate()?;
        Ok(params)
    }

    /// SI parameters with the exchange constant quoted as `J/(2πħ)` in Hz.
    pub fn from_hz(j_hz: f64, b_field: f64, gamma_c: f64, gamma: f64) -> Result<Self> {
        Self::new(2.0 * PI * j_hz, b_field, gamma_c, gamma)
    }

    /// Dimensionless parameters: `J/ħ = 1` and the field term equals `β`.
    pub fn dimensionless(beta: f64) -> Result<Self> {
        let params = Self {
            j_omega: 1.0,
            b_field: beta,
            gamma_c: 1.0,
            gamma: 0.0,
            unit_mode: UnitMode::Dimensionless,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [self.j_omega, self.b_field, self.gamma_c, self.gamma];
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if self.j_omega <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "exchange frequency must be positive, got {}",
                self.j_omega
            )));
        }
        Ok(())
    }

    /// Same system in a different field.
    pub fn with_field(&self, b_field: f64) -> Self {
        Self { b_field, ..*self }
    }

    /// `B(γ_c − γ)/(J/ħ)`.
    pub fn beta(&self) -> f64 {
        self.b_field * (self.gamma_c - self.gamma) / self.j_omega
    }

    /// `B γ_c`, the auxiliary-spin Zeeman frequency.
    pub fn central_larmor(&self) -> f64 {
        self.b_field * self.gamma_c
    }

    /// `B γ`, the Zeeman frequency of each basic spin.
    pub fn basic_larmor(&self) -> f64 {
        self.b_field * self.gamma
    }

    /// `B(γ_c − γ)`.
    pub fn larmor_difference(&self) -> f64 {
        self.b_field * (self.gamma_c - self.gamma)
    }

    /// True when the E^(2)/E^(5) splitting `B γ_c` vanishes.
    pub fn is_measurement_degenerate(&self) -> bool {
        self.central_larmor() == 0.0
    }
}

macro_rules! state_type {
    ($name:ident, $dim:expr) => {
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $name {
            pub amps: [ComplexAmp; $dim],
        }

        impl $name {
            pub const DIM: usize = $dim;

            pub fn new(amps: [ComplexAmp; $dim]) -> Self {
                Self { amps }
            }

            pub fn zero() -> Self {
                Self { amps: [ZERO; $dim] }
            }

            pub fn basis(index: usize) -> Self {
                let mut s = Self::zero();
                s.amps[index] = ONE;
                s
            }

            pub fn norm_sqr(&self) -> f64 {
                self.amps.iter().map(|a| a.norm_sqr()).sum()
            }

            pub fn norm(&self) -> f64 {
                self.norm_sqr().sqrt()
            }

            pub fn normalized(&self) -> Self {
                let n = self.norm();
                self.scale(ComplexAmp::new(1.0 / n, 0.0))
            }

            pub fn scale(&self, factor: ComplexAmp) -> Self {
                let mut out = *self;
                out.amps.iter_mut().for_each(|a| *a *= factor);
                out
            }

            /// `⟨self|other⟩`.
            pub fn dot(&self, other: &Self) -> ComplexAmp {
                self.amps
                    .iter()
                    .zip(other.amps.iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum()
            }

            /// Largest amplitude-wise deviation from `other`.
            pub fn sup_distance(&self, other: &Self) -> f64 {
                self.amps
                    .iter()
                    .zip(other.amps.iter())
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            }

            pub fn is_finite(&self) -> bool {
                self.amps
                    .iter()
                    .all(|a| a.re.is_finite() && a.im.is_finite())
            }
        }

        impl Index<usize> for $name {
            type Output = ComplexAmp;
            fn index(&self, i: usize) -> &ComplexAmp {
                &self.amps[i]
            }
        }

        impl IndexMut<usize> for $name {
            fn index_mut(&mut self, i: usize) -> &mut ComplexAmp {
                &mut self.amps[i]
            }
        }

        impl Add for $name {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self {
                self.amps
                    .iter_mut()
                    .zip(rhs.amps)
                    .for_each(|(a, b)| *a += b);
                self
            }
        }

        impl Sub for $name {
            type Output = Self;
            fn sub(mut self, rhs: Self) -> Self {
                self.amps
                    .iter_mut()
                    .zip(rhs.amps)
                    .for_each(|(a, b)| *a -= b);
                self
            }
        }
    };
}

state_type!(ThreeSpinState, 8);
state_type!(TwoSpinState, 4);

impl ThreeSpinState {
    /// Initial state `|↑↑↓⟩`.
    pub fn initial() -> Self {
        Self::basis(UP_UP_DOWN)
    }

    /// Unnormalized components with the auxiliary spin in `spin`.
    pub fn project_central(&self, spin: Spin) -> TwoSpinState {
        let offset = 4 * spin.bit();
        let mut out = TwoSpinState::zero();
        out.amps.copy_from_slice(&self.amps[offset..offset + 4]);
        out
    }
}

/// A state of either dimension, for [`inner_product`].
#[derive(Debug, Clone, Copy)]
pub enum AnyState<'a> {
    Three(&'a ThreeSpinState),
    Two(&'a TwoSpinState),
}

impl AnyState<'_> {
    fn amps(&self) -> &[ComplexAmp] {
        match self {
            AnyState::Three(s) => &s.amps,
            AnyState::Two(s) => &s.amps,
        }
    }
}

impl<'a> From<&'a ThreeSpinState> for AnyState<'a> {
    fn from(s: &'a ThreeSpinState) -> Self {
        AnyState::Three(s)
    }
}

impl<'a> From<&'a TwoSpinState> for AnyState<'a> {
    fn from(s: &'a TwoSpinState) -> Self {
        AnyState::Two(s)
    }
}

/// Hermitian inner product `⟨u|v⟩`; fails when the dimensions differ.
pub fn inner_product<'a, 'b>(
    u: impl Into<AnyState<'a>>,
    v: impl Into<AnyState<'b>>,
) -> Result<ComplexAmp> {
    let (u, v) = (u.into(), v.into());
    let (a, b) = (u.amps(), v.amps());
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
}

/// Dense 8×8 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator8 {
    pub m: [[ComplexAmp; 8]; 8],
}

impl Operator8 {
    pub fn zero() -> Self {
        Self { m: [[ZERO; 8]; 8] }
    }

    pub fn identity() -> Self {
        let mut op = Self::zero();
        (0..8).for_each(|i| op.m[i][i] = ONE);
        op
    }

    pub fn trace(&self) -> ComplexAmp {
        (0..8).map(|i| self.m[i][i]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            for j in 0..8 {
                out.m[i][j] = self.m[j][i].conj();
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        out.m.iter_mut().flatten().for_each(|a| *a *= factor);
        out
    }

    pub fn apply(&self, v: &ThreeSpinState) -> ThreeSpinState {
        let mut out = ThreeSpinState::zero();
        for (i, row) in self.m.iter().enumerate() {
            out.amps[i] = row.iter().zip(v.amps.iter()).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|a| a.norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest elementwise deviation from the conjugate transpose.
    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }
}

impl Add for Operator8 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.m
            .iter_mut()
            .flatten()
            .zip(rhs.m.iter().flatten())
            .for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for Operator8 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale(-1.0)
    }
}

impl Mul for Operator8 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for i in 0..8 {
            for k in 0..8 {
                let a = self.m[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..8 {
                    out.m[i][j] += a * rhs.m[k][j];
                }
            }
        }
        out
    }
}

fn half_pauli(axis: Axis) -> [[ComplexAmp; 2]; 2] {
    let h = 0.5;
    match axis {
        Axis::X => [
            [ZERO, ComplexAmp::new(h, 0.0)],
            [ComplexAmp::new(h, 0.0), ZERO],
        ],
        Axis::Y => [
            [ZERO, ComplexAmp::new(0.0, -h)],
            [ComplexAmp::new(0.0, h), ZERO],
        ],
        Axis::Z => [
            [ComplexAmp::new(h, 0.0), ZERO],
            [ZERO, ComplexAmp::new(-h, 0.0)],
        ],
    }
}

/// `σ/2` acting on one site, identity on the other two.
pub fn spin_operator(site: Site, axis: Axis) -> Operator8 {
    let pauli = half_pauli(axis);
    let shift = site.shift();
    let mask = !(1usize << shift);
    let mut op = Operator8::zero();
    for row in 0..8 {
        for col in 0..8 {
            if row & mask == col & mask {
                op.m[row][col] = pauli[row >> shift & 1][col >> shift & 1];
            }
        }
    }
    op
}

/// Total `S^z` of the three spins.
pub fn total_sz() -> Operator8 {
    spin_operator(Site::Central, Axis::Z)
        + spin_operator(Site::First, Axis::Z)
        + spin_operator(Site::Second, Axis::Z)
}

fn dot_product(a: Site, b: Site) -> Operator8 {
    [Axis::X, Axis::Y, Axis::Z]
        .into_iter()
        .map(|axis| spin_operator(a, axis) * spin_operator(b, axis))
        .fold(Operator8::zero(), |acc, op| acc + op)
}

/// `H/ħ = J/ħ·S_c·(S_1 + S_2) + Bγ_c S_c^z + Bγ(S_1^z + S_2^z)` in rad/s.
pub fn build_hamiltonian(params: &SystemParams) -> Operator8 {
    let exchange =
        dot_product(Site::Central, Site::First) + dot_product(Site::Central, Site::Second);
    let zeeman_c = spin_operator(Site::Central, Axis::Z).scale(params.central_larmor());
    let zeeman_basic = (spin_operator(Site::First, Axis::Z) + spin_operator(Site::Second, Axis::Z))
        .scale(params.basic_larmor());
    exchange.scale(params.j_omega) + zeeman_c + zeeman_basic
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ComplexAmp, b: ComplexAmp, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn basis_ordering_puts_central_spin_first() {
        assert_eq!(basis_index(Spin::Up, Spin::Up, Spin::Down), UP_UP_DOWN);
        assert_eq!(basis_index(Spin::Up, Spin::Down, Spin::Up), UP_DOWN_UP);
        assert_eq!(basis_index(Spin::Down, Spin::Up, Spin::Up), DOWN_UP_UP);
        assert_eq!(basis_index(Spin::Down, Spin::Down, Spin::Down), 7);
        assert_eq!(twice_magnetization(0), 3);
        assert_eq!(twice_magnetization(UP_UP_DOWN), 1);
        assert_eq!(twice_magnetization(7), -3);
    }

    #[test]
    fn spin_operators_are_traceless() {
        for site in [Site::Central, Site::First, Site::Second] {
            for axis in [Axis::X, Axis::Y, Axis::Z] {
                assert_eq!(spin_operator(site, axis).trace(), ZERO);
            }
        }
    }

    #[test]
    fn half_pauli_squares_to_quarter_identity() {
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let s = spin_operator(Site::First, axis);
            let diff = s * s - Operator8::identity().scale(0.25);
            assert!(diff.max_abs() < 1e-15);
        }
    }

    #[test]
    fn different_sites_commute() {
        let c =
            spin_operator(Site::First, Axis::X).commutator(&spin_operator(Site::Second, Axis::Y));
        assert_eq!(c.max_abs(), 0.0);
        // Same site does not: [S^x, S^y] = i S^z.
        let c = spin_operator(Site::Central, Axis::X)
            .commutator(&spin_operator(Site::Central, Axis::Y));
        let expected = spin_operator(Site::Central, Axis::Z);
        for i in 0..8 {
            for j in 0..8 {
                assert!(close(c.m[i][j], expected.m[i][j] * ComplexAmp::i(), 1e-15));
            }
        }
    }

    #[test]
    fn central_sz_splits_the_basis_in_halves() {
        let sz = spin_operator(Site::Central, Axis::Z);
        for i in 0..8 {
            let expected = if i < 4 { 0.5 } else { -0.5 };
            assert_eq!(sz.m[i][i].re, expected);
        }
    }

    #[test]
    fn hamiltonian_zero_field_spectrum_by_blocks() {
        let params = SystemParams::new(2.0, 0.0, 1.0, 3.0).unwrap();
        let h = build_hamiltonian(&params);
        assert!(h.trace().norm() < 1e-12);
        assert!(h.hermiticity_defect() < 1e-14);
        // |↑↑↑⟩ is an eigenvector with J/2.
        let v = h.apply(&ThreeSpinState::basis(0));
        assert!(close(v[0], ComplexAmp::new(1.0, 0.0), 1e-14));
    }

    #[test]
    fn hamiltonian_conserves_total_sz() {
        let params = SystemParams::new(1.3, 0.7, -2.0, 5.0).unwrap();
        let h = build_hamiltonian(&params);
        assert!(h.commutator(&total_sz()).max_abs() < 1e-12 * h.max_abs());
        for m in 0..8 {
            for n in 0..8 {
                if twice_magnetization(m) != twice_magnetization(n) {
                    assert_eq!(h.m[m][n], ZERO);
                }
            }
        }
    }

    #[test]
    fn inner_products() {
        let psi = ThreeSpinState::new([
            ComplexAmp::new(0.5, 0.0),
            ComplexAmp::new(0.0, 0.5),
            ComplexAmp::new(0.5, 0.0),
            ComplexAmp::new(0.0, -0.5),
            ZERO,
            ZERO,
            ZERO,
            ZERO,
        ]);
        assert!(close(inner_product(&psi, &psi).unwrap(), ONE, 1e-15));
        let a = ThreeSpinState::basis(UP_UP_DOWN);
        let b = ThreeSpinState::basis(UP_DOWN_UP);
        assert_eq!(inner_product(&a, &b).unwrap(), ZERO);
        let two = TwoSpinState::basis(0);
        assert_eq!(
            inner_product(&a, &two),
            Err(Error::DimensionMismatch { left: 8, right: 4 })
        );
    }

    #[test]
    fn params_validation() {
        assert!(SystemParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(SystemParams::new(1.0, f64::NAN, 1.0, 1.0).is_err());
        let p = SystemParams::from_hz(5583.0, 1.0, -73.997e6, 251.662e6).unwrap();
        assert!((p.j_omega - 2.0 * PI * 5583.0).abs() < 1e-9);
        assert!((p.beta() - (-325.659e6 / p.j_omega)).abs() < 1e-9);
        let d = SystemParams::dimensionless(-3.5).unwrap();
        assert_eq!(d.beta(), -3.5);
    }

    #[test]
    fn projection_onto_central_spin() {
        let s = ThreeSpinState::basis(DOWN_UP_UP);
        assert_eq!(s.project_central(Spin::Up).norm_sqr(), 0.0);
        assert_eq!(s.project_central(Spin::Down), TwoSpinState::basis(0));
    }
}
