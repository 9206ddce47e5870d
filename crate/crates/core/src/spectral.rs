//! Closed-form spectrum of the star Hamiltonian.
//!
//! The eight eigenpairs split by total magnetization: two fully polarized
//! states, a singlet-like pair `ψ^(2)`, `ψ^(5)` of the basic spins, and two
//! mixed pairs in each `S^z = ±1/2` block whose shape is governed by the
//! dimensionless coefficients `a±` (upper block) and `b±` (lower block).

use std::f64::consts::SQRT_2;

use crate::error::{Error, Result};
use crate::hilbert::{
    ComplexAmp, SystemParams, ThreeSpinState, DOWN_UP_UP, UP_DOWN_UP, UP_UP_DOWN,
};

const DOWN_UP_DOWN: usize = 0b101;
const DOWN_DOWN_UP: usize = 0b110;
const UP_DOWN_DOWN: usize = 0b011;

const NORMALIZATION_FLOOR: f64 = 1e-30;

/// `β` and the block coefficients `a±`, `b±`.
///
/// `a± = ±√(9/4 + β(β+1)) − β − 1/2` and `b± = ±√(9/4 + β(β−1)) + β − 1/2`.
/// The root that would cancel catastrophically is recovered from the exact
/// products `a₊a₋ = b₊b₋ = −2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessCoeffs {
    pub beta: f64,
    pub a_plus: f64,
    pub a_minus: f64,
    pub b_plus: f64,
    pub b_minus: f64,
}

impl DimensionlessCoeffs {
    pub fn from_beta(beta: f64) -> Self {
        let shift_a = beta + 0.5;
        let root_a = shift_a.hypot(SQRT_2);
        let (a_plus, a_minus) = if shift_a >= 0.0 {
            let a_minus = -(root_a + shift_a);
            (-2.0 / a_minus, a_minus)
        } else {
            let a_plus = root_a - shift_a;
            (a_plus, -2.0 / a_plus)
        };

        let shift_b = beta - 0.5;
        let root_b = shift_b.hypot(SQRT_2);
        let (b_plus, b_minus) = if shift_b >= 0.0 {
            let b_plus = root_b + shift_b;
            (b_plus, -2.0 / b_plus)
        } else {
            let b_minus = -(root_b - shift_b);
            (-2.0 / b_minus, b_minus)
        };

        Self {
            beta,
            a_plus,
            a_minus,
            b_plus,
            b_minus,
        }
    }

    /// `a₊ − a₋ = 2√(9/4 + β(β+1))`.
    pub fn a_gap(&self) -> f64 {
        2.0 * (self.beta + 0.5).hypot(SQRT_2)
    }

    /// `b₊ − b₋ = 2√(9/4 + β(β−1))`.
    pub fn b_gap(&self) -> f64 {
        2.0 * (self.beta - 0.5).hypot(SQRT_2)
    }

    /// `(a₊ + a₋)/(a₊ − a₋)`, the imaginary weight of the phase descriptor.
    pub fn a_ratio(&self) -> f64 {
        -(2.0 * self.beta + 1.0) / self.a_gap()
    }
}

pub fn dimensionless_coeffs(params: &SystemParams) -> DimensionlessCoeffs {
    DimensionlessCoeffs::from_beta(params.beta())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenPair {
    /// Angular frequency `E/ħ` in rad/s.
    pub energy: f64,
    pub state: ThreeSpinState,
}

/// Eigenpairs in the fixed order `E^(1)..E^(8)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSystem {
    pub coeffs: DimensionlessCoeffs,
    pairs: [EigenPair; 8],
}

impl EigenSystem {
    /// Eigenpair by its 1-based label.
    pub fn pair(&self, label: usize) -> &EigenPair {
        assert!((1..=8).contains(&label), "eigenpair labels run from 1 to 8");
        &self.pairs[label - 1]
    }

    pub fn energy(&self, label: usize) -> f64 {
        self.pair(label).energy
    }

    pub fn state(&self, label: usize) -> &ThreeSpinState {
        &self.pair(label).state
    }

    pub fn pairs(&self) -> &[EigenPair; 8] {
        &self.pairs
    }

    pub fn energies(&self) -> [f64; 8] {
        self.pairs.map(|p| p.energy)
    }

    pub fn max_abs_energy(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.energy.abs())
            .fold(0.0, f64::max)
    }
}

fn real(x: f64) -> ComplexAmp {
    ComplexAmp::new(x, 0.0)
}

fn combination(entries: &[(usize, f64)], denominator: f64, label: usize) -> Result<ThreeSpinState> {
    if !denominator.is_finite() || denominator < NORMALIZATION_FLOOR {
        return Err(Error::DegenerateBasis {
            index: label,
            denominator,
        });
    }
    let norm = 1.0 / denominator.sqrt();
    let mut s = ThreeSpinState::zero();
    for &(index, weight) in entries {
        s.amps[index] = real(weight * norm);
    }
    Ok(s)
}

/// All eight closed-form eigenpairs.
pub fn analytic_eigensystem(params: &SystemParams) -> Result<EigenSystem> {
    params.validate()?;
    let k = dimensionless_coeffs(params);
    let j = params.j_omega;
    let wc = params.central_larmor();
    let w = params.basic_larmor();
    let (ga, gb) = (k.a_gap(), k.b_gap());

    let e1 = 0.5 * (wc + 2.0 * w + j);
    let e2 = 0.5 * wc;
    let e3 = 0.5 * (w + 0.5 * j * (ga - 1.0));
    let e4 = 0.5 * (w - 0.5 * j * (ga + 1.0));
    let e5 = -0.5 * wc;
    let e6 = -0.5 * (w - 0.5 * j * (gb - 1.0));
    let e7 = -0.5 * (w + 0.5 * j * (gb + 1.0));
    let e8 = -0.5 * (wc + 2.0 * w - j);

    let psi1 = ThreeSpinState::basis(0);
    let psi2 = combination(&[(UP_UP_DOWN, 1.0), (UP_DOWN_UP, -1.0)], 2.0, 2)?;
    let psi3 = combination(
        &[(UP_UP_DOWN, 1.0), (UP_DOWN_UP, 1.0), (DOWN_UP_UP, k.a_plus)],
        k.a_plus * ga,
        3,
    )?;
    let psi4 = combination(
        &[
            (UP_UP_DOWN, 1.0),
            (UP_DOWN_UP, 1.0),
            (DOWN_UP_UP, k.a_minus),
        ],
        -k.a_minus * ga,
        4,
    )?;
    let psi5 = combination(&[(DOWN_UP_DOWN, 1.0), (DOWN_DOWN_UP, -1.0)], 2.0, 5)?;
    let psi6 = combination(
        &[
            (DOWN_UP_DOWN, 1.0),
            (DOWN_DOWN_UP, 1.0),
            (UP_DOWN_DOWN, k.b_plus),
        ],
        k.b_plus * gb,
        6,
    )?;
    let psi7 = combination(
        &[
            (DOWN_UP_DOWN, 1.0),
            (DOWN_DOWN_UP, 1.0),
            (UP_DOWN_DOWN, k.b_minus),
        ],
        -k.b_minus * gb,
        7,
    )?;
    let psi8 = ThreeSpinState::basis(7);

    let pairs = [
        (e1, psi1),
        (e2, psi2),
        (e3, psi3),
        (e4, psi4),
        (e5, psi5),
        (e6, psi6),
        (e7, psi7),
        (e8, psi8),
    ]
    .map(|(energy, state)| EigenPair { energy, state });

    Ok(EigenSystem { coeffs: k, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{build_hamiltonian, inner_product};
    use crate::jacobi::eigh;

    fn xef2(b: f64) -> SystemParams {
        SystemParams::from_hz(5583.0, b, -73.997e6, 251.662e6).unwrap()
    }

    #[test]
    fn zero_beta_coefficients() {
        let k = DimensionlessCoeffs::from_beta(0.0);
        assert_eq!(k.a_plus, 1.0);
        assert_eq!(k.a_minus, -2.0);
        assert_eq!(k.b_plus, 1.0);
        assert_eq!(k.b_minus, -2.0);
        assert_eq!(k.a_plus * k.a_minus, -2.0);
    }

    #[test]
    fn naive_roots_agree_where_they_are_well_conditioned() {
        for beta in [-3.0, -0.7, -0.5, 0.0, 0.25, 2.0, 11.0] {
            let k = DimensionlessCoeffs::from_beta(beta);
            let sa = (2.25 + beta * (beta + 1.0)).sqrt();
            let sb = (2.25 + beta * (beta - 1.0)).sqrt();
            assert!((k.a_plus - (sa - beta - 0.5)).abs() < 1e-13);
            assert!((k.a_minus - (-sa - beta - 0.5)).abs() < 1e-13);
            assert!((k.b_plus - (sb + beta - 0.5)).abs() < 1e-13);
            assert!((k.b_minus - (-sb + beta - 0.5)).abs() < 1e-13);
        }
    }

    #[test]
    fn xef2_gap_matches_numeric_block_splitting() {
        let params = xef2(1.0);
        let k = dimensionless_coeffs(&params);
        assert!((k.beta + 9.2837e3).abs() < 1.0, "beta = {}", k.beta);
        let direct = 2.0 * (k.beta * k.beta + k.beta + 2.25).sqrt();
        assert!(((k.a_plus - k.a_minus) - direct).abs() < 1e-9 * direct);

        // Numeric eigenvalues of the S^z = +1/2 block, minus the ψ^(2) level.
        let eig = eigh(&build_hamiltonian(&params));
        let sys = analytic_eigensystem(&params).unwrap();
        let mut block: Vec<f64> = (0..8)
            .filter(|&n| {
                let v = eig.vector(n);
                let weight = [UP_UP_DOWN, UP_DOWN_UP, DOWN_UP_UP]
                    .iter()
                    .map(|&i| v.amps[i].norm_sqr())
                    .sum::<f64>();
                let singlet = inner_product(&v, sys.state(2)).unwrap().norm_sqr();
                weight > 0.5 && singlet < 0.5
            })
            .map(|n| eig.values[n])
            .collect();
        block.sort_by(f64::total_cmp);
        assert_eq!(block.len(), 2);
        let numeric_gap = 2.0 * (block[1] - block[0]) / params.j_omega;
        assert!((numeric_gap - direct).abs() < 1e-9 * direct);
    }

    #[test]
    fn tabulated_levels() {
        let params = SystemParams::new(3.0, 0.4, 2.0, -1.5).unwrap();
        let sys = analytic_eigensystem(&params).unwrap();
        assert_eq!(sys.energy(2), 0.5 * 0.4 * 2.0);
        assert_eq!(sys.energy(5), -0.5 * 0.4 * 2.0);
        let s2 = sys.state(2);
        assert!((s2[UP_UP_DOWN].re - 1.0 / SQRT_2).abs() < 1e-15);
        assert!((s2[UP_DOWN_UP].re + 1.0 / SQRT_2).abs() < 1e-15);
        let total: f64 = sys.energies().iter().sum();
        assert!(total.abs() < 1e-12 * sys.max_abs_energy());
    }

    #[test]
    fn zero_field_w_state() {
        let sys = analytic_eigensystem(&SystemParams::dimensionless(0.0).unwrap()).unwrap();
        let w = 1.0 / 3f64.sqrt();
        let s3 = sys.state(3);
        for i in [UP_UP_DOWN, UP_DOWN_UP, DOWN_UP_UP] {
            assert!((s3[i].re - w).abs() < 1e-15);
        }
    }

    #[test]
    fn residuals_against_matrix() {
        for beta in [-1e5, -9283.7, -12.0, -0.5, 0.0, 0.3, 7.0, 4.2e4] {
            let params = SystemParams::dimensionless(beta).unwrap();
            let h = build_hamiltonian(&params);
            let sys = analytic_eigensystem(&params).unwrap();
            let scale = sys.max_abs_energy();
            for pair in sys.pairs() {
                let r = h.apply(&pair.state) - pair.state.scale(real(pair.energy));
                assert!(
                    r.norm() < 1e-11 * scale,
                    "beta {beta}: residual {}",
                    r.norm()
                );
            }
        }
    }

    #[test]
    fn degenerate_normalization_is_reported() {
        assert!(matches!(
            combination(&[(0, 1.0)], 0.0, 3),
            Err(Error::DegenerateBasis { index: 3, .. })
        ));
        assert!(combination(&[(0, 1.0)], f64::NAN, 3).is_err());
    }
}
