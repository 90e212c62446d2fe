//! Generating functions: the polynomial kernel and the weighted lattice sum.

use gchkit::genfunc::{genfunc_chp, genfunc_gch_lhs, genfunc_gch_rhs, genfunc_gch_rhs_contour, LatticeCaps, WeightSeq};
use gchkit::ode::GchParams;
use gchkit::quadrature::QuadratureSpec;
use gchkit::special::{chp_eval, Kind};

fn main() -> gchkit::Result<()> {
    let (t, g, z): (f64, f64, f64) = (0.3, 1.5, 0.7);
    let mut partial = 0.0;
    let mut fact = 1.0;
    for d in 0..40u32 {
        if d > 0 {
            fact *= f64::from(d);
        }
        partial += t.powi(d as i32) / fact * chp_eval(Kind::First, d, g, z)?;
    }
    println!("kernel: closed {:.15}, 40-term sum {partial:.15}", genfunc_chp(Kind::First, t, g, z)?);

    let p = GchParams::new(-2.0, 1.0, 2.0, 0.0, 0.8);
    let spec = QuadratureSpec::default();
    let caps = LatticeCaps { beta_cap: 30, n_cap: 1 };
    for s in [vec![0.0, 0.25], vec![0.2, 0.25]] {
        let ws = WeightSeq::new(s.clone())?;
        let lhs = genfunc_gch_lhs(Kind::First, &p, &ws, 0.4, caps)?;
        let residue = genfunc_gch_rhs(Kind::First, &p, &ws, 0.4, 1, &spec)?;
        let contour = genfunc_gch_rhs_contour(Kind::First, &p, &ws, 0.4, 1, &spec)?;
        println!("weights {s:?}: lattice {lhs:.12}, residue form {residue:.12}, contour form {contour:.12}");
    }
    Ok(())
}
