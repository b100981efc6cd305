//! Distortion bounds for `Re L_n(f)` on `|z| = r`, in normalized units and
//! scaled back by `alpha^n`, next to the sampled extremes.
//!
//! cargo run --release --example distortion

use salagean::bounds::{distortion_bounds, Provenance};
use salagean::fuzz::{empirical_max, Functional, SearchConfig};
use salagean::ClassParams;

fn main() -> salagean::Result<()> {
    let config = SearchConfig { trials: 1_000, ..SearchConfig::default() };
    let params = ClassParams::new(2.0, 0.25, 1)?;
    for r in [0.25, 0.5, 0.75] {
        let lo = empirical_max(&params, Functional::DistortionLower { r }, &config, 0)?;
        let hi = empirical_max(&params, Functional::DistortionUpper { r }, &config, 0)?;
        println!("r = {r}: sampled Re L_n in [{:.6}, {:.6}]", lo.empirical_max, hi.empirical_max);
        for provenance in [Provenance::Printed, Provenance::PrintedInProof, Provenance::Derived] {
            let pair = distortion_bounds(&params, r, provenance)?;
            println!(
                "  {:<16} [{:>9.6}, {:>9.6}]  scaled by alpha^n: [{:>9.6}, {:>9.6}]",
                provenance.as_str(),
                pair.lower,
                pair.upper,
                pair.lower * params.alpha_pow_n(),
                pair.upper * params.alpha_pow_n()
            );
        }
    }
    Ok(())
}
