//! Cornell-type confinement potential -a/r + b r + c r².

use gchkit::physics::{boundary_coefficient, confinement_energy, ConfinementModel};
use gchkit::special::Kind;
use gchkit::trf::{TerminationLadder, TrfTruncation};

fn main() -> gchkit::Result<()> {
    let m = ConfinementModel::from_potential(0.6, 0.3, 0.5, 1.0, 1.0)?;
    println!("alpha_F = {:.12}, beta_F = {:.12}", m.alpha_f, m.beta_f);
    for l in 0..2 {
        for b in 0..3 {
            let e = confinement_energy(&m, 0, b, l);
            println!("l = {l}, beta = {b}: E = {e:.12}, GCH {:?}", m.gch_params(l, e)?);
        }
    }

    let ladder = TerminationLadder::new(vec![2], Kind::First)?;
    let t = TrfTruncation::new(0, 1)?;
    let c = boundary_coefficient(|r| m.wavefunction(&ladder, 1, r, &t), m.boundary_power(1))?;
    println!("psi(r)/r^2 -> {c:.10} as r -> 0");
    Ok(())
}
