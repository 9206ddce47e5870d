//! Entanglement time versus field for XeF2 and its asymptotic slope.
//!
//! Writes CSV to stdout.

use spinstar::entangle::SolverMode;
use spinstar::presets::XEF2;
use spinstar::sweep::{asymptotic_field_slope, linear_fit, sweep_field, LinearGrid};

fn main() -> spinstar::Result<()> {
    let base = XEF2.params(1.0)?;
    let grid = LinearGrid::new(0.5, 2.0, 16)?;
    let rows = sweep_field(&base, &grid, 0, SolverMode::Exact)?;

    println!("B_tesla,beta,t_ent_s,jt_dimensionless");
    for r in &rows {
        println!(
            "{},{},{},{}",
            r.b_tesla, r.beta, r.t_ent_s, r.jt_dimensionless
        );
    }
    let b: Vec<f64> = rows.iter().map(|r| r.b_tesla).collect();
    let t: Vec<f64> = rows.iter().map(|r| r.t_ent_s).collect();
    let (slope, intercept) = linear_fit(&b, &t);
    eprintln!(
        "fit: t_ent = {slope:.6} s/T * B {intercept:+.2e} s, asymptote {:.6} s/T",
        asymptotic_field_slope(&base)
    );
    Ok(())
}
