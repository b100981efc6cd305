//! Builds class members from a Schwarz function and from a Herglotz atom
//! measure, then confirms them on the membership grid.
//!
//! cargo run --example build_member

use num_complex::Complex64;
use salagean::classes::{check_membership_default, MemberSpec, GRID_ORDER};
use salagean::{ClassParams, SchwarzSpec};

fn main() -> salagean::Result<()> {
    let params = ClassParams::new(0.5, 0.25, 2)?;
    let specs = [
        MemberSpec::Schwarz { phi: SchwarzSpec::constant(Complex64::new(-1.0, 0.0))? },
        MemberSpec::Schwarz { phi: SchwarzSpec::monomial(Complex64::from_polar(1.0, 0.7), 3)? },
        MemberSpec::Schwarz {
            phi: SchwarzSpec::normalized_polynomial(vec![Complex64::new(0.2, 0.0), Complex64::new(0.0, 0.9)])?,
        },
        MemberSpec::Atoms { weights: vec![0.6, 0.4], angles: vec![0.0, 2.0] },
    ];
    for spec in &specs {
        let f = spec.build(&params, GRID_ORDER)?;
        let report = check_membership_default(&f, &params)?;
        println!("{}", serde_json::to_string(spec).expect("serializable"));
        println!(
            "  a2 = {:.6}, a3 = {:.6}, min Re L_n = {:.6}, verdict {:?}",
            f.a(2).unwrap(),
            f.a(3).unwrap(),
            report.min_real_part,
            report.verdict
        );
    }
    Ok(())
}
