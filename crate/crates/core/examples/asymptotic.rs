//! Growth of the non-terminating series against its limiting form.

use gchkit::ode::GchParams;
use gchkit::physics::{asymptotic_diagnostic, asymptotic_form};
use gchkit::trf::{trf_infinite_eval, TrfTruncation};

fn main() -> gchkit::Result<()> {
    let r = asymptotic_diagnostic()?;
    println!("x = {}: series {:.10}, limiting form {:.10}, gap {:.2e}", r.x, r.series, r.asymptotic, r.relative_gap);

    let p = GchParams::new(-2.0, 1e-6, 1e-3, -4.0, 0.0);
    let t = TrfTruncation::new(4, 400)?;
    for x in [0.5, 1.0, 2.0, 3.0] {
        let s = trf_infinite_eval(&p, 0.0, x, &t)?.value;
        println!("x = {x}: series {s:.6e}, limiting form {:.6e}", asymptotic_form(-2.0, x)?);
    }
    Ok(())
}
