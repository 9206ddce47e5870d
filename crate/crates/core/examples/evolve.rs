//! Closed-form evolution from |↑↑↓⟩ checked against direct propagation.
//!
//! cargo run --example evolve -- [beta] [jt]

use spinstar::cli::basis_label;
use spinstar::dynamics::{evolve_analytic, evolve_numeric, phase_descriptor};
use spinstar::SystemParams;

fn main() -> spinstar::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("numeric argument"));
    let beta = args.next().unwrap_or(0.0);
    let jt = args.next().unwrap_or(2.39);

    let params = SystemParams::dimensionless(beta)?;
    let psi = evolve_analytic(&params, jt);
    let oracle = evolve_numeric(&params, jt);

    println!("beta = {beta}, Jt/hbar = {jt}");
    for (i, a) in psi.amps.iter().enumerate() {
        if a.norm() > 0.0 {
            println!(
                "  |{}>  {:+.12} {:+.12}i   |a|^2 = {:.12}",
                basis_label(i),
                a.re,
                a.im,
                a.norm_sqr()
            );
        }
    }
    let d = phase_descriptor(&params, jt);
    println!(
        "z = {:.12} {:+.12}i, |z| = {:.12}, phi = {:.12}",
        d.z.re, d.z.im, d.z_mod, d.phi
    );
    println!(
        "max deviation from eigenbasis propagation: {:.3e}",
        psi.sup_distance(&oracle)
    );
    Ok(())
}
