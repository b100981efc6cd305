//! The Fekete-Szego functional `|a3 - mu a2^2|`: bounds against the largest
//! value a short randomized search finds, and a replay of the witness that
//! beats the printed bound at `alpha = 1`, `mu = 2`.
//!
//! cargo run --release --example fekete_szego

use salagean::bounds::Provenance;
use salagean::fuzz::{empirical_max, Functional, SearchConfig};
use salagean::ClassParams;

fn main() -> salagean::Result<()> {
    let config = SearchConfig { trials: 2_000, ..SearchConfig::default() };
    let params = ClassParams::new(1.0, 0.0, 1)?;
    for mu in [-1.0, 0.0, 0.5, 2.0] {
        let record = empirical_max(&params, Functional::FeketeSzego { mu }, &config, 0)?;
        let printed = record.check(Provenance::Printed).unwrap();
        let derived = record.check(Provenance::Derived).unwrap();
        println!(
            "mu = {mu:>4}: found {:.6}, printed {:.6} ({:?}), derived {:.6} ({:?})",
            record.empirical_max, printed.bound, printed.verdict, derived.bound, derived.verdict
        );
        if record.has_counterexample() {
            println!("  witness {}", serde_json::to_string(&record.argmax_spec).expect("serializable"));
            println!("  replayed value {:.12}", record.replay()?);
        }
    }
    Ok(())
}
