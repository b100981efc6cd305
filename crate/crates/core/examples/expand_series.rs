//! Coefficient tables of the Koebe function, of `(f/z)^alpha`, and of the
//! normalized operator image `L_n(f)`.
//!
//! cargo run --example expand_series

use salagean::classes::koebe;
use salagean::{salagean_normalized, ClassParams};

fn main() -> salagean::Result<()> {
    let f = koebe(8);
    for (alpha, n) in [(1.0, 0), (1.0, 1), (2.0, 0)] {
        let params = ClassParams::new(alpha, 0.0, n)?;
        let h = f.quotient_pow(alpha)?;
        let image = salagean_normalized(&f, &params)?;
        println!("alpha = {alpha}, n = {n}");
        println!("{:>3} {:>12} {:>12} {:>12}", "k", "a_k", "h_k", "L_n coeff");
        for k in 0..=6 {
            let a = f.series().coeff(k).unwrap_or_default();
            println!("{k:>3} {:>12.4} {:>12.4} {:>12.4}", a.re, h.coeffs()[k].re, image.coeffs()[k].re);
        }
        println!();
    }
    Ok(())
}
