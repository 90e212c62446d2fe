//! Scalar kernels: Pochhammer symbols, Kummer M and the confluent polynomials.

use gchkit::special::{beta, chp_coefficients, chp_eval, erf, kummer_m, pochhammer, Kind};

fn main() -> gchkit::Result<()> {
    println!("(1.5)_4 = {}", pochhammer(1.5, 4));
    println!("(-3)_5 = {}  (terminates)", pochhammer(-3.0, 5));
    println!("B(2.5, 0.5) = {:.15}", beta(2.5, 0.5)?);
    println!("erf(0.5) = {:.15}", erf(0.5));

    for z in [-5.0, 0.5, 10.0] {
        println!("M(-0.75, 1.5, {z}) = {:.15e}", kummer_m(-0.75, 1.5, z)?);
    }

    // F_d and A_d: degree-d polynomials with F_d(gamma; 0) = (gamma)_d.
    for d in 0..4 {
        let f = chp_coefficients(Kind::First, d, 1.5)?;
        let a = chp_eval(Kind::Second, d, 1.5, 0.8)?;
        println!("F_{d}(1.5; z) coefficients {f:?}, A_{d}(1.5; 0.8) = {a:.12}");
    }
    Ok(())
}
