//! Cyclic Jacobi eigensolver for dense 8×8 Hermitian matrices.
//!
//! Used as the numeric oracle for the closed-form spectrum and propagator.
//! Rotations on a zero off-diagonal entry are skipped, so block-diagonal
//! structure of the input is preserved exactly.

use crate::hilbert::{ComplexAmp, Operator8, ThreeSpinState};
use crate::phase::{dot2, Phase};

const MAX_SWEEPS: usize = 64;

/// Eigenvalues in ascending order with eigenvectors as the columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: [f64; 8],
    pub vectors: Operator8,
    /// `vₖ†(H vₖ − λₖ vₖ)` from a compensated residual; `values + shifts`
    /// is the Rayleigh quotient to about twice the working precision.
    pub shifts: [f64; 8],
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> ThreeSpinState {
        let mut v = ThreeSpinState::zero();
        (0..8).for_each(|i| v.amps[i] = self.vectors.m[i][k]);
        v
    }

    /// `exp(−i H t) ψ` through the eigenbasis.
    pub fn propagate(&self, psi: &ThreeSpinState, t: f64) -> ThreeSpinState {
        let mut coeffs = [ComplexAmp::new(0.0, 0.0); 8];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let overlap: ComplexAmp = (0..8)
                .map(|i| self.vectors.m[i][k].conj() * psi.amps[i])
                .sum();
            let phase = Phase::product(self.values[k], t) + Phase::product(self.shifts[k], t);
            *c = overlap * (-phase).exp_i();
        }
        let mut out = ThreeSpinState::zero();
        for i in 0..8 {
            out.amps[i] = (0..8).map(|k| self.vectors.m[i][k] * coeffs[k]).sum();
        }
        out
    }
}

fn off_diagonal_norm_sqr(a: &Operator8) -> f64 {
    let mut s = 0.0;
    for i in 0..8 {
        for j in 0..8 {
            if i != j {
                s += a.m[i][j].norm_sqr();
            }
        }
    }
    s
}

/// Diagonalize a Hermitian matrix. Only the Hermitian part of `h` is honored.
pub fn eigh(h: &Operator8) -> HermitianEigen {
    let mut a = *h;
    let mut v = Operator8::identity();
    let scale = h.frobenius().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off = off_diagonal_norm_sqr(&a).sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for p in 0..8 {
            for q in (p + 1)..8 {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..8).collect();
    order.sort_by(|&i, &j| a.m[i][i].re.total_cmp(&a.m[j][j].re));
    let mut values = [0.0; 8];
    let mut vectors = Operator8::zero();
    for (k, &src) in order.iter().enumerate() {
        values[k] = a.m[src][src].re;
        for i in 0..8 {
            vectors.m[i][k] = v.m[i][src];
        }
    }
    let vectors = refine_mixing(h, &values, &vectors);
    let shifts = std::array::from_fn(|k| {
        let r = residual(h, &vectors, k, values[k]);
        (0..8)
            .map(|i| vectors.m[i][k].conj() * r[i])
            .sum::<ComplexAmp>()
            .re
    });
    HermitianEigen {
        values,
        vectors,
        shifts,
    }
}

/// `H vₖ − λ vₖ` with every product formed exactly.
fn residual(h: &Operator8, vectors: &Operator8, k: usize, lambda: f64) -> [ComplexAmp; 8] {
    let v = |i: usize| vectors.m[i][k];
    std::array::from_fn(|i| {
        let re = (0..8).flat_map(|j| [(h.m[i][j].re, v(j).re), (-h.m[i][j].im, v(j).im)]);
        let im = (0..8).flat_map(|j| [(h.m[i][j].re, v(j).im), (h.m[i][j].im, v(j).re)]);
        ComplexAmp::new(
            dot2(re.chain([(-lambda, v(i).re)])),
            dot2(im.chain([(-lambda, v(i).im)])),
        )
    })
}

/// First-order correction of the rotation between close eigenvectors.
///
/// Jacobi leaves `V†HV = Λ + M` with `M ~ ε‖H‖`. For a pair split by a gap
/// much smaller than `‖H‖` the mixing `M_jk/(λ_k − λ_j)` is far above `ε`
/// and shows up as a phase error after long propagation. Pairs with
/// `|M_jk|` not small against their gap are left alone.
fn refine_mixing(h: &Operator8, values: &[f64; 8], vectors: &Operator8) -> Operator8 {
    let residuals: [[ComplexAmp; 8]; 8] =
        std::array::from_fn(|k| residual(h, vectors, k, values[k]));
    let mut out = *vectors;
    for k in 0..8 {
        for j in 0..8 {
            let gap = values[k] - values[j];
            if j == k || gap == 0.0 {
                continue;
            }
            let m: ComplexAmp = (0..8)
                .map(|i| vectors.m[i][j].conj() * residuals[k][i])
                .sum();
            if m.norm() > 1e-3 * gap.abs() {
                continue;
            }
            let x = m / gap;
            for i in 0..8 {
                out.m[i][k] += vectors.m[i][j] * x;
            }
        }
        let norm = (0..8).map(|i| out.m[i][k].norm_sqr()).sum::<f64>().sqrt();
        (0..8).for_each(|i| out.m[i][k] /= norm);
    }
    out
}

/// Annihilate `a[p][q]` with the unitary `G = D·R`, where `D` makes the
/// entry real and `R` is the classical real Jacobi rotation.
fn rotate(a: &mut Operator8, v: &mut Operator8, p: usize, q: usize) {
    let apq = a.m[p][q];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let app = a.m[p][p].re;
    let aqq = a.m[q][q].re;

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // Column q of G is (s, c·conj(phase)) and column p is (c, −s·conj(phase)).
    let g_pp = ComplexAmp::new(c, 0.0);
    let g_pq = ComplexAmp::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;

    for row in 0..8 {
        let (x, y) = (a.m[row][p], a.m[row][q]);
        a.m[row][p] = x * g_pp + y * g_qp;
        a.m[row][q] = x * g_pq + y * g_qq;
        let (x, y) = (v.m[row][p], v.m[row][q]);
        v.m[row][p] = x * g_pp + y * g_qp;
        v.m[row][q] = x * g_pq + y * g_qq;
    }
    for col in 0..8 {
        let (x, y) = (a.m[p][col], a.m[q][col]);
        a.m[p][col] = g_pp.conj() * x + g_qp.conj() * y;
        a.m[q][col] = g_pq.conj() * x + g_qq.conj() * y;
    }
    a.m[p][q] = ComplexAmp::new(0.0, 0.0);
    a.m[q][p] = ComplexAmp::new(0.0, 0.0);
    a.m[p][p].im = 0.0;
    a.m[q][q].im = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_hermitian(seed: u64) -> Operator8 {
        // Small LCG keeps the test free of extra dependencies.
        let mut state = seed;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut h = Operator8::zero();
        for i in 0..8 {
            h.m[i][i] = ComplexAmp::new(next(), 0.0);
            for j in (i + 1)..8 {
                let z = ComplexAmp::new(next(), next());
                h.m[i][j] = z;
                h.m[j][i] = z.conj();
            }
        }
        h
    }

    #[test]
    fn reconstructs_random_hermitian_matrices() {
        for seed in 0..20 {
            let h = random_hermitian(seed);
            let eig = eigh(&h);
            let u = eig.vectors;
            let mut lambda = Operator8::zero();
            (0..8).for_each(|k| lambda.m[k][k] = ComplexAmp::new(eig.values[k], 0.0));
            let rebuilt = u * lambda * u.adjoint();
            assert!((rebuilt - h).max_abs() < 1e-13, "seed {seed}");
            assert!((u.adjoint() * u - Operator8::identity()).max_abs() < 1e-13);
            assert!(eig.values.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn diagonal_input_is_left_alone() {
        let mut h = Operator8::zero();
        (0..8).for_each(|k| h.m[k][k] = ComplexAmp::new(7.0 - k as f64, 0.0));
        let eig = eigh(&h);
        assert_eq!(eig.values, [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0]);
    }

    #[test]
    fn propagation_is_unitary() {
        let h = random_hermitian(99);
        let eig = eigh(&h);
        let psi = ThreeSpinState::basis(3);
        let out = eig.propagate(&psi, 12.5);
        assert!((out.norm_sqr() - 1.0).abs() < 1e-13);
        assert!(eig.propagate(&psi, 0.0).sup_distance(&psi) < 1e-14);
    }
}
