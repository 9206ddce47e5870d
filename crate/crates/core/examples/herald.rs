//! Reading out the auxiliary spin and the state left on the basic pair.
//!
//! cargo run --example herald -- [B_tesla] [t_s]

use spinstar::entangle::{concurrence, concurrence_closed_form};
use spinstar::herald::herald;
use spinstar::presets::XEF2;

fn main() -> spinstar::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<f64>().expect("numeric argument"));
    let b = args.next().unwrap_or(1.0);
    let t = args.next().unwrap_or(0.83);

    let params = XEF2.params(b)?;
    let out = herald(&params, t)?;
    let [_, ud, du, _] = out.state_up.amps;

    println!("XeF2 at B = {b} T, t_f = {t} s");
    println!("P(aux up)   = {:.15}", out.p_up);
    println!("P(aux down) = {:.3e}  (pair left in |uu>)", out.p_down);
    println!(
        "heralded pair: ({:+.9} {:+.9}i)|ud> + ({:+.9} {:+.9}i)|du>",
        ud.re, ud.im, du.re, du.im
    );
    println!(
        "concurrence: {:.12} (closed form {:.12})",
        concurrence(&out.state_up)?,
        concurrence_closed_form(&params, t)
    );

    // Without a Zeeman splitting the two readout lines coincide.
    match herald(&XEF2.params(0.0)?, t) {
        Err(e) => println!("at B = 0: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
