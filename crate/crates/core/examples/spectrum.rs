//! Analytic eigensystem against Jacobi diagonalization of the full matrix.
//!
//! cargo run --example spectrum -- [beta]

use spinstar::hilbert::build_hamiltonian;
use spinstar::jacobi::eigh;
use spinstar::spectral::analytic_eigensystem;
use spinstar::SystemParams;

fn main() -> spinstar::Result<()> {
    let beta = std::env::args()
        .nth(1)
        .map(|a| a.parse().expect("numeric beta"))
        .unwrap_or(0.0);
    let params = SystemParams::dimensionless(beta)?;
    let sys = analytic_eigensystem(&params)?;
    let k = sys.coeffs;
    println!(
        "beta = {beta}: a+ = {:.9}, a- = {:.9}, b+ = {:.9}, b- = {:.9}",
        k.a_plus, k.a_minus, k.b_plus, k.b_minus
    );

    let mut analytic = sys.energies();
    analytic.sort_by(f64::total_cmp);
    let numeric = eigh(&build_hamiltonian(&params)).values;
    println!("{:>4} {:>18} {:>18}", "k", "analytic (sorted)", "jacobi");
    for (i, (a, n)) in analytic.iter().zip(numeric).enumerate() {
        println!("{:>4} {:>18.12} {:>18.12}", i + 1, a, n);
    }
    for (label, pair) in sys.pairs().iter().enumerate() {
        println!("E{} = {:+.12}", label + 1, pair.energy);
    }
    Ok(())
}
