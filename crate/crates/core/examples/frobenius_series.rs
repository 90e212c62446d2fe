//! Power-series solutions at the origin and their ODE residuals.

use gchkit::ode::{eval_series, frobenius_coeffs, indicial_roots, series_residual, GchParams};
use gchkit::special::Kind;

fn main() -> gchkit::Result<()> {
    let p = GchParams::new(-2.0, 0.7, 1.4, 1.3, -0.5);
    let roots = indicial_roots(&p);
    println!("indicial roots: {} and {}", roots.first, roots.second);

    for kind in [Kind::First, Kind::Second] {
        let sc = frobenius_coeffs(&p, p.lambda(kind)?, 60)?;
        println!("{kind} kind, first coefficients: {:?}", &sc.coeffs[..4]);
        for x in [0.1, 0.3, 0.6] {
            let y = eval_series(&sc, x)?;
            let (res, scale) = series_residual(&sc, x)?;
            println!("  x = {x}: y = {:.15}  tail {:.1e}  residual {:.1e} (scale {scale:.2})", y.value, y.tail, res);
        }
    }
    Ok(())
}
