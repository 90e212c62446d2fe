//! Non-terminating nested series against the Frobenius expansion.

use gchkit::ode::{eval_series, frobenius_coeffs, GchParams};
use gchkit::trf::{trf_coefficients, trf_infinite_eval, TrfEvaluator, TrfTruncation};

fn main() -> gchkit::Result<()> {
    let p = GchParams::new(-1.2, 0.9, 2.3, 0.7, 1.1);
    let t = TrfTruncation::new(20, 40)?;

    let nested = trf_coefficients(&TrfEvaluator::Infinite { params: p, lambda: 0.0 }, &t, 12)?;
    let frob = frobenius_coeffs(&p, 0.0, 12)?;
    for (m, (a, b)) in nested.iter().zip(&frob.coeffs).enumerate() {
        println!("c_{m:<2} nested {a:+.15e}  frobenius {b:+.15e}");
    }

    let oracle = frobenius_coeffs(&p, 0.0, 120)?;
    for x in [0.2, 0.8, 1.5] {
        let v = trf_infinite_eval(&p, 0.0, x, &t)?;
        let o = eval_series(&oracle, x)?;
        println!("x = {x}: nested {:.15} (tail {:.1e}), frobenius {:.15}", v.value, v.tail, o.value);
    }
    Ok(())
}
