//! Parameter sweeps over field and time.
//!
//! Rows are produced in grid order; every grid point is independent.

use serde::{Deserialize, Serialize};

use crate::entangle::{
    concurrence_closed_form, fidelity_closed_form, fidelity_trace_point, solve_t_ent, SolverMode,
};
use crate::error::{Error, Result};
use crate::herald::heralded_branches;
use crate::hilbert::SystemParams;

/// Inclusive linear grid `min, …, max` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl LinearGrid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min >= max {
            return Err(Error::InvalidParams(format!(
                "grid needs min < max, got [{min}, {max}]"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidParams(format!(
                "grid needs at least 2 steps, got {steps}"
            )));
        }
        Ok(Self { min, max, steps })
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |i| {
            if i + 1 == self.steps {
                self.max
            } else {
                self.min + span * i as f64 / last
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldRow {
    pub b_tesla: f64,
    pub beta: f64,
    pub t_ent_s: f64,
    pub jt_dimensionless: f64,
    pub mode: SolverMode,
}

/// Entanglement time on branch `n` across a field grid.
pub fn sweep_field(
    base: &SystemParams,
    grid: &LinearGrid,
    n: u32,
    mode: SolverMode,
) -> Result<Vec<FieldRow>> {
    grid.points()
        .map(|b| {
            let params = base.with_field(b);
            let sol = solve_t_ent(&params, n, mode)?;
            Ok(FieldRow {
                b_tesla: b,
                beta: params.beta(),
                t_ent_s: sol.t_ent,
                jt_dimensionless: sol.jt(&params),
                mode,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t_s: f64,
    pub fidelity_closed_form: f64,
    pub fidelity_direct: f64,
    pub concurrence: f64,
    pub p_up: f64,
}

/// Fidelity of the heralded state against the `|z| = 1` target over time.
pub fn fidelity_trace(params: &SystemParams, grid: &LinearGrid) -> Vec<TraceRow> {
    grid.points()
        .map(|t| TraceRow {
            t_s: t,
            fidelity_closed_form: fidelity_closed_form(params, t),
            fidelity_direct: fidelity_trace_point(params, t),
            concurrence: concurrence_closed_form(params, t),
            p_up: heralded_branches(params, t).p_up,
        })
        .collect()
}

/// Ordinary least-squares slope and intercept of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// `π|γ_c − γ|/(J/ħ)²`, the large-field slope of `t_ent(B)` in s/T.
pub fn asymptotic_field_slope(params: &SystemParams) -> f64 {
    std::f64::consts::PI * (params.gamma_c - params.gamma).abs() / (params.j_omega * params.j_omega)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_are_exact() {
        let g = LinearGrid::new(0.5, 2.0, 16).unwrap();
        let pts: Vec<f64> = g.points().collect();
        assert_eq!(pts.len(), 16);
        assert_eq!(pts[0], 0.5);
        assert_eq!(pts[15], 2.0);
        assert!((pts[1] - 0.6).abs() < 1e-15);
        assert!(LinearGrid::new(1.0, 1.0, 4).is_err());
        assert!(LinearGrid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn fit_recovers_a_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y = x.map(|v| 2.5 * v - 1.0);
        let (m, c) = linear_fit(&x, &y);
        assert!((m - 2.5).abs() < 1e-14 && (c + 1.0).abs() < 1e-14);
    }
}
