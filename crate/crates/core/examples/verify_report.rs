//! Runs one verification suite and prints its checks.

use gchkit::verify::{run_suite, Suite};

fn main() -> gchkit::Result<()> {
    let suite: Suite = std::env::args().nth(1).as_deref().unwrap_or("kernels").parse()?;
    let report = run_suite(suite, 7);
    for c in &report.checks {
        let mark = if c.pass { "ok  " } else if c.gating { "FAIL" } else { "note" };
        println!("{mark} {}/{}: {:.2e} (tol {:.0e}) {}", c.suite, c.name, c.max_error, c.tolerance, c.note);
    }
    println!("passed: {}", report.passed());
    Ok(())
}
