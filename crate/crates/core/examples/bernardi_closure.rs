//! Closure of the class under the Bernardi-type integral transform, checked
//! on random members for several `c`.
//!
//! cargo run --release --example bernardi_closure

use salagean::fuzz::bernardi_audit;
use salagean::ClassParams;

fn main() -> salagean::Result<()> {
    for (alpha, beta, n) in [(0.5, 0.0, 0), (1.0, 0.25, 1), (2.0, 0.5, 3)] {
        let params = ClassParams::new(alpha, beta, n)?;
        for audit in bernardi_audit(&params, &[0.0, 1.0, 2.0], 50, 1)? {
            let t = &audit.tally;
            println!(
                "{params} c = {}: {} checked, {} members, {} boundary, {} violations",
                audit.c, t.checked, t.member, t.boundary, t.violation
            );
        }
    }
    Ok(())
}
