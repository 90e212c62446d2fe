//! Contour forms of the polynomial kernels and the one-level identities.

use gchkit::integral::{chp_contour, kummer_contour, verify_kj, verify_qj, KummerContour};
use gchkit::ode::GchParams;
use gchkit::quadrature::QuadratureSpec;
use gchkit::special::{chp_eval, kummer_m, Kind};

fn main() -> gchkit::Result<()> {
    for nodes in [8, 16, 32, 64] {
        let c = chp_contour(Kind::First, 4, 1.5, 2.0, 0.5, nodes)?;
        let e = (c - chp_eval(Kind::First, 4, 1.5, 2.0)?).abs();
        println!("F_4 contour with {nodes:>2} nodes: error {e:.2e}");
    }
    let k = kummer_contour(KummerContour::Laguerre, -3.0, 1.5, 0.7, 0.5, 128)?;
    println!("M(-3, 1.5, 0.7): contour {k:.15}, series {:.15}", kummer_m(-3.0, 1.5, 0.7)?);

    let spec = QuadratureSpec::default();
    let kj = verify_kj(2, 0.0, 1.5, 3, 1, 0.6, &spec)?;
    println!("K_2: sum {:.15}, triple integral {:.15}", kj.lhs, kj.rhs);

    // a = Omega/(2 mu) + j/2 = -1: a pole inside the contour.
    let p = GchParams::new(-2.0, 0.0, 2.0, 8.0, 0.0);
    let q = verify_qj(2, &p, 0.0, 0, 0.4, &spec, 80)?;
    println!("Q_2 at a = -1: sum {:.15}, integral {:.15}", q.lhs, q.rhs);
    // a = +1: the integrand is analytic inside the circle and the integral is 0.
    let p = GchParams::new(-2.0, 0.0, 2.0, -2.0, 0.0);
    let q = verify_qj(1, &p, 0.0, 0, 0.2, &spec, 80)?;
    println!("Q_1 at a = +1: sum {:.15}, integral {:.3e}", q.lhs, q.rhs);
    Ok(())
}
