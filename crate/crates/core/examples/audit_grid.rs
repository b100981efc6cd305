//! A small grid audit of every coefficient bound, summarized per variant.
//!
//! cargo run --release --example audit_grid

use salagean::fuzz::{audit_suite, Functional, ParamGrid, SearchConfig, Verdict, ALL_VARIANTS};

fn main() -> salagean::Result<()> {
    let grid = ParamGrid { n: vec![0, 1], alpha: vec![0.5, 1.0, 2.0], beta: vec![0.0, 0.5] };
    let functionals = [Functional::A2, Functional::A3, Functional::A4, Functional::FeketeSzego { mu: 2.0 }];
    let config = SearchConfig { trials: 1_000, ..SearchConfig::default() };
    let report = audit_suite(&grid, &functionals, &config, &ALL_VARIANTS, 42)?;
    for (variant, counts) in &report.summary.by_variant {
        println!("{:<8} {counts:?}", variant.as_str());
    }
    for record in &report.records {
        for check in record.bounds.iter().filter(|b| b.verdict == Verdict::Counterexample) {
            println!(
                "{} {}: found {:.6} above {} bound {:.6}",
                record.params,
                record.functional.key(),
                record.empirical_max,
                check.variant.as_str(),
                check.bound
            );
        }
    }
    Ok(())
}
