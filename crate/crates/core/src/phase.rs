//! Phases carried as unevaluated sums `hi + lo`.
//!
//! Products like `E·t` reach 1e5–1e6 rad in the high-field regime, where a
//! plain `f64` loses ~1e-10 rad to rounding. [`Phase`] keeps the exact
//! rounding error of such products and reduces by 2π before the sine.

use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

const TWO_PI_HI: f64 = std::f64::consts::TAU;
const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Angle in radians with roughly twice the working precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Phase {
    hi: f64,
    lo: f64,
}

impl Phase {
    pub const ZERO: Phase = Phase { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Phase { hi: x, lo: 0.0 }
    }

    fn renormalized(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Phase { hi, lo }
    }

    /// `a·b` without rounding.
    pub fn product(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Phase { hi, lo }
    }

    pub fn scale(self, k: f64) -> Self {
        let (hi, err) = two_prod(self.hi, k);
        Phase::renormalized(hi, err + self.lo * k)
    }

    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    /// Representative in `[−π, π]`, carried exactly enough for trig.
    pub fn reduced(self) -> Self {
        let k = (self.hi / TWO_PI_HI).round();
        if k == 0.0 {
            return self;
        }
        let (p, e) = two_prod(k, TWO_PI_HI);
        // hi and p agree to within a factor of two, so the difference is exact.
        Phase::renormalized(self.hi - p, (self.lo - e) - k * TWO_PI_LO)
    }

    pub fn sin_cos(self) -> (f64, f64) {
        let r = self.reduced();
        let (s, c) = r.hi.sin_cos();
        (s + r.lo * c, c - r.lo * s)
    }

    pub fn exp_i(self) -> Complex64 {
        let (s, c) = self.sin_cos();
        Complex64::new(c, s)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let (s, e) = two_sum(self.hi, rhs.hi);
        Phase::renormalized(s, e + self.lo + rhs.lo)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// `Σ aᵢbᵢ` with compensated accumulation; accurate to a few ulps of the result.
pub fn dot2(terms: impl IntoIterator<Item = (f64, f64)>) -> f64 {
    let (mut s, mut c) = (0.0, 0.0);
    for (a, b) in terms {
        let (p, pe) = two_prod(a, b);
        let (t, te) = two_sum(s, p);
        s = t;
        c += pe + te;
    }
    s + c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_keeps_rounding_error() {
        let p = Phase::product(0.1, 3.0);
        assert_eq!(p.hi, 0.1 * 3.0);
        assert!(p.lo != 0.0);
        assert_eq!(p.hi.mul_add(1.0, p.lo), p.value());
    }

    #[test]
    fn reduction_matches_small_angles() {
        let small = Phase::new(0.7);
        let big =
            Phase::new(0.7) + Phase::product(1000.0, TWO_PI_HI) + Phase::new(1000.0 * TWO_PI_LO);
        let (s1, c1) = small.sin_cos();
        let (s2, c2) = big.sin_cos();
        assert!((s1 - s2).abs() < 1e-15);
        assert!((c1 - c2).abs() < 1e-15);
    }

    #[test]
    fn large_phase_beats_plain_f64() {
        let turns = 1e5;
        let phase =
            Phase::product(turns, TWO_PI_HI) + Phase::new(turns * TWO_PI_LO) + Phase::new(0.3);
        assert!((phase.sin_cos().0 - 0.3f64.sin()).abs() < 1e-15);
        let plain = (turns * std::f64::consts::TAU + 0.3).sin();
        assert!((plain - 0.3f64.sin()).abs() > 1e-12);
    }

    #[test]
    fn dot2_cancels_exactly() {
        let x = dot2([(1e16, 1.0), (1.0, 1.0), (-1e16, 1.0)]);
        assert_eq!(x, 1.0);
    }
}
