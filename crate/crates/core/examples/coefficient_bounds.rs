//! Printed and derived coefficient bounds side by side, including the
//! classical reductions and the cells where the printed forms go negative.
//!
//! cargo run --example coefficient_bounds

use salagean::bounds::{bound_a2, bound_a3, bound_a4, Provenance};
use salagean::ClassParams;

fn main() -> salagean::Result<()> {
    println!("{:>4} {:>5} {:>5} {:>9} {:>11} {:>11} {:>11} {:>11}", "n", "alpha", "beta", "a2", "a3 printed", "a3 derived", "a4 printed", "a4 derived");
    for (n, alpha, beta) in [(0, 1.0, 0.0), (1, 1.0, 0.0), (0, 0.5, 0.0), (1, 0.5, 0.25), (2, 2.0, 0.5), (3, 0.5, 0.0)] {
        let p = ClassParams::new(alpha, beta, n)?;
        println!(
            "{n:>4} {alpha:>5} {beta:>5} {:>9.5} {:>11.5} {:>11.5} {:>11.5} {:>11.5}",
            bound_a2(&p),
            bound_a3(&p, Provenance::Printed),
            bound_a3(&p, Provenance::Derived),
            bound_a4(&p, Provenance::Printed),
            bound_a4(&p, Provenance::Derived),
        );
    }
    Ok(())
}
