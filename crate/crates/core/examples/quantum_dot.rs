//! Two electrons in a parabolic quantum dot with a magnetic field.

use gchkit::physics::{qdot_energy, QuantumDotModel};
use gchkit::special::Kind;
use gchkit::trf::{TerminationLadder, TrfTruncation};

fn main() -> gchkit::Result<()> {
    let q = QuantumDotModel::unit(1.0, 0.5, 1.0, -2)?;
    println!("u = {:.6}, a = {}, gamma = {}", q.u(), q.a(), q.gamma());
    for i in 0..2 {
        for b in 0..3 {
            let e = qdot_energy(&q, i, b);
            println!("i = {i}, beta = {b}: E_r = {e}, d = {}", q.d(e));
        }
    }

    let ladder = TerminationLadder::new(vec![1, 1], Kind::First)?;
    let t = TrfTruncation::new(1, 1)?;
    for r in [0.5, 1.0, 2.0] {
        let psi = q.wavefunction(&ladder, r, Some(std::f64::consts::FRAC_PI_4), &t)?;
        println!("Psi(r = {r}, phi = pi/4) = {psi:.10}");
    }
    Ok(())
}
