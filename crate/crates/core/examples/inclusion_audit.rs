//! Empirical look at the inclusion of `T_{n+1}^alpha(beta)` in
//! `T_n^alpha(beta/alpha)`. Violations are reported with a witness.
//!
//! cargo run --release --example inclusion_audit

use salagean::fuzz::inclusion_audit;
use salagean::ClassParams;

fn main() -> salagean::Result<()> {
    for (alpha, beta, n) in [(2.0, 0.5, 1), (1.0, 0.25, 2), (0.5, 0.0, 1), (0.75, 0.5, 1)] {
        let source = ClassParams::new(alpha, beta, n)?;
        let audit = inclusion_audit(&source, 200, 3)?;
        match audit.target {
            None => println!("{source}: no target class"),
            Some(target) => println!(
                "{source} -> {target}: {} of {} members, {} violations{}",
                audit.tally.member,
                audit.tally.checked,
                audit.tally.violation,
                audit
                    .tally
                    .first_violation
                    .map(|w| format!(", first witness {}", serde_json::to_string(&w).expect("serializable")))
                    .unwrap_or_default()
            ),
        }
    }
    Ok(())
}
