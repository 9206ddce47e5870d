//! Fidelity of the heralded pair against the Bell-like target over three seconds.
//!
//! Writes CSV to stdout; extremes go to stderr.

use spinstar::presets::XEF2;
use spinstar::sweep::{fidelity_trace, LinearGrid};

fn main() -> spinstar::Result<()> {
    let params = XEF2.params(1.0)?;
    let rows = fidelity_trace(&params, &LinearGrid::new(0.0, 3.0, 1001)?);

    println!("t_s,fidelity_closed_form,fidelity_direct,concurrence,p_up");
    for r in &rows {
        println!(
            "{},{},{},{},{}",
            r.t_s, r.fidelity_closed_form, r.fidelity_direct, r.concurrence, r.p_up
        );
    }
    let best = rows
        .iter()
        .max_by(|a, b| a.fidelity_direct.total_cmp(&b.fidelity_direct))
        .unwrap();
    let worst = rows
        .iter()
        .min_by(|a, b| a.fidelity_direct.total_cmp(&b.fidelity_direct))
        .unwrap();
    let gap = rows
        .iter()
        .map(|r| (r.fidelity_closed_form - r.fidelity_direct).abs())
        .fold(0.0, f64::max);
    eprintln!("max F = {:.9} at {:.3} s", best.fidelity_direct, best.t_s);
    eprintln!(
        "min F = {:.3e} at {:.3} s",
        worst.fidelity_direct, worst.t_s
    );
    eprintln!("largest closed-form deviation: {gap:.2e}");
    Ok(())
}
