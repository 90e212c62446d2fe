//! Terminating nested series on a ladder beta_0 <= beta_1 <= ...

use gchkit::ode::GchParams;
use gchkit::special::Kind;
use gchkit::trf::{ladder_from_omega, qw_rw_eval, StepNumerator, TerminationLadder, TrfTruncation};

fn main() -> gchkit::Result<()> {
    // Omega = 4 with mu = -2 puts beta_0 = 1 at lambda = 0.
    let p = GchParams::new(-2.0, 0.4, 2.0, 4.0, 0.8);
    let report = ladder_from_omega(&p, 0.0, 3)?;
    println!("per-level values from Omega: {:?} (consistent: {})", report.values, report.consistent);

    let ladder = TerminationLadder::new(vec![1, 2, 2], Kind::First)?;
    let num = StepNumerator::Linear { omega_low: p.omega_low };
    for n_max in 0..3 {
        let t = TrfTruncation::new(n_max, 1)?;
        let v = qw_rw_eval(&ladder, p.gamma(), num, p.z_of(0.5), p.eps_tilde_of(0.5), &t)?;
        println!("QW through eps~^{n_max} at x = 0.5: {v:.15}");
    }
    Ok(())
}
