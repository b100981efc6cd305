//! Grid membership checks: the identity is always a member, the Koebe
//! function is not in the class with `n = 0`, `alpha = 1`, `beta = 0`, and a
//! polynomial with a large second coefficient fails everywhere.
//!
//! cargo run --example check_membership

use num_complex::Complex64;
use salagean::classes::{check_membership_default, koebe, GRID_ORDER};
use salagean::{ClassParams, NormalizedFunction};

fn main() -> salagean::Result<()> {
    let params = ClassParams::new(1.0, 0.0, 0)?;
    let candidates = [
        ("z", NormalizedFunction::identity(GRID_ORDER)),
        ("koebe", koebe(GRID_ORDER)),
        ("z - 3z^2", NormalizedFunction::from_tail(&[Complex64::new(-3.0, 0.0)])?.padded(GRID_ORDER)),
    ];
    for (name, f) in &candidates {
        let report = check_membership_default(f, &params)?;
        println!(
            "{name:>9}: {:?}, margin {:.4}, tail {:.1e}, worst point {:.3}",
            report.verdict, report.margin, report.tail_estimate, report.argmin
        );
    }
    Ok(())
}
