//! Transfer-order integral representation against the nested series.

use gchkit::integral::{integral_rep_eval, RepBranch};
use gchkit::ode::GchParams;
use gchkit::quadrature::QuadratureSpec;
use gchkit::special::Kind;
use gchkit::trf::{qw_rw_eval, StepNumerator, TerminationLadder, TrfTruncation};
use gchkit::verify::infinite_series;

fn main() -> gchkit::Result<()> {
    let spec = QuadratureSpec::default();

    let p = GchParams::new(-2.0, 0.3, 2.0, 0.0, 0.8);
    let ladder = TerminationLadder::new(vec![2, 3], Kind::First)?;
    let num = StepNumerator::Linear { omega_low: p.omega_low };
    for n in 0..=1 {
        let rep = integral_rep_eval(Kind::First, &RepBranch::Polynomial(ladder.clone()), &p, 0.7, n, &spec)?;
        let ser = qw_rw_eval(&ladder, p.gamma(), num, p.z_of(0.7), p.eps_tilde_of(0.7), &TrfTruncation::new(n, 1)?)?;
        println!("polynomial, order {n}: integral {rep:.15}, series {ser:.15}");
    }

    let p = GchParams::new(-2.0, 0.3, 1.4, 1.0, 0.6);
    for n in 0..=2 {
        let rep = integral_rep_eval(Kind::First, &RepBranch::Infinite, &p, 0.3, n, &spec)?;
        println!("infinite, order {n}: integral {rep:.15}, series {:.15}", infinite_series(Kind::First, &p, 0.3, n)?);
    }
    Ok(())
}
