//! Moment of maximal entanglement, exact root against the high-field formula.

use spinstar::entangle::{solve_t_ent, SolverMode};
use spinstar::presets::XEF2;
use spinstar::SystemParams;

fn main() -> spinstar::Result<()> {
    let zero = SystemParams::dimensionless(0.0)?;
    println!("beta = 0 (units Jt/hbar):");
    for n in 0..3 {
        let s = solve_t_ent(&zero, n, SolverMode::Exact)?;
        println!(
            "  n = {n}: Jt = {:.12}, C = {:.12}, measurable = {}",
            s.t_ent, s.concurrence_at_t, s.measurable
        );
    }

    let params = XEF2.params(1.0)?;
    println!("XeF2 at 1 T, beta = {:.3}:", params.beta());
    for n in 0..3 {
        let exact = solve_t_ent(&params, n, SolverMode::Exact)?;
        let high = solve_t_ent(&params, n, SolverMode::Highfield)?;
        println!(
            "  n = {n}: exact {:.9} s, high-field {:.9} s, rel. diff {:.2e}",
            exact.t_ent,
            high.t_ent,
            (exact.t_ent - high.t_ent).abs() / exact.t_ent
        );
    }
    Ok(())
}
