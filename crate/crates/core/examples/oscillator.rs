//! Rotating harmonic oscillator: eigenvalue ladder and a normalised state.

use gchkit::physics::{normalization_constant, oscillator_eigenvalue, Measure, OscillatorModel};
use gchkit::special::Kind;
use gchkit::trf::{TerminationLadder, TrfTruncation};

fn main() -> gchkit::Result<()> {
    let m = OscillatorModel::new(1, 0.8)?;
    for i in 0..3 {
        let row: Vec<f64> = (0..4).map(|b| oscillator_eigenvalue(&m, i, b)).collect();
        println!("i = {i}: lambda_m = {row:?}");
    }

    let ladder = TerminationLadder::new(vec![1, 1], Kind::First)?;
    let t = TrfTruncation::new(1, 1)?;
    let psi = |r: f64| m.wavefunction(&ladder, r, &t);
    let n = normalization_constant(psi, Measure::Line, 20.0, 400)?;
    println!("N = {n:.12}");
    for r in [0.5, 1.0, 2.0, 4.0] {
        println!("  psi({r}) = {:.12}", n * psi(r)?);
    }
    Ok(())
}
