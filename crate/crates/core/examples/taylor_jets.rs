//! Bivariate truncated Taylor arithmetic: build jets, combine them and
//! read off partial derivatives.

use centroframe::taylor::{coordinate_jets, Taylor};

fn main() -> centroframe::Result<()> {
    let (u0, v0) = (0.3, -0.7);
    let (u, v) = coordinate_jets(u0, v0, 6);

    // f = sin(u) * exp(u v) + sqrt(1 + v^2)
    let one = Taylor::constant(6, 1.0);
    let f = u.sin() * (u * v).exp() + (one + v * v).sqrt(1e-12)?;

    println!("f({u0}, {v0}) = {:.15}", f.value());
    for (a, b) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 2)] {
        println!("  d^{a}/du^{a} d^{b}/dv^{b} f = {:+.12e}", f.derivative(a, b));
    }

    // the jet is a polynomial in (du, dv); compare against direct evaluation
    let (du, dv) = (1e-2, -2e-2);
    let exact = (u0 + du).sin() * ((u0 + du) * (v0 + dv)).exp() + (1.0 + (v0 + dv).powi(2)).sqrt();
    println!("jet at offset ({du}, {dv}): {:.15}  direct: {exact:.15}", f.eval(du, dv));

    // division by a jet with vanishing constant term is refused
    match one.checked_div(&(u - u0), 1e-12) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("1 / (u - u0): {e}"),
    }
    Ok(())
}
