//! Readout of the xenon spin by its emission line.

use spinstar::herald::{measure, RadiationParams};
use spinstar::presets::XEF2;

fn main() -> spinstar::Result<()> {
    for b in [0.5, 1.0, 2.0] {
        let params = XEF2.params(b)?;
        let omega = params.central_larmor().abs();
        let rad = RadiationParams::new(omega, 1e-3, 10, 1e-6);
        let rec = measure(&params, 0.83, &rad)?;
        println!("B = {b} T");
        println!("  resonance       {:.6e} rad/s", rec.resonance);
        println!("  omega_52        {:.6e} rad/s", rec.frequencies.omega_52);
        println!("  omega_25        {:.6e} rad/s", rec.frequencies.omega_25);
        println!("  W+ (N+1 = 11)   {:.6e}", rec.probabilities.w_plus);
        println!("  W- (N = 10)     {:.6e}", rec.probabilities.w_minus);
        println!("  intensity       {:.6e} W", rec.intensity);
    }
    Ok(())
}
