use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{circle_values, TruncatedSeries};

/// Number of equispaced boundary points used to estimate `sup |phi|`.
pub const BOUNDARY_SAMPLES: usize = 720;

/// Slack allowed on the sampled boundary maximum.
pub const SUP_TOLERANCE: f64 = 1e-9;

/// Finite description of an analytic `phi` on the disk with `|phi| <= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SchwarzSpec {
    /// `phi(z) = c`.
    Constant { c: Complex64 },
    /// `phi(z) = c z^degree`.
    Monomial { c: Complex64, degree: u32 },
    /// `phi(z) = scale * sum raw_k z^k`.
    NormalizedPolynomial { raw: Vec<Complex64>, scale: f64 },
}

impl SchwarzSpec {
    pub fn constant(c: Complex64) -> Result<Self> {
        let spec = SchwarzSpec::Constant { c };
        spec.validate()?;
        Ok(spec)
    }

    pub fn monomial(c: Complex64, degree: u32) -> Result<Self> {
        let spec = SchwarzSpec::Monomial { c, degree };
        spec.validate()?;
        Ok(spec)
    }

    /// Scales `raw` so that `sup |phi| <= 1` on the closed disk.
    ///
    /// For a polynomial of degree `d` whose modulus peaks at `theta*`, the
    /// Bernstein inequality for the real trigonometric polynomial
    /// `Re(e^{-i psi} p(e^{i theta}))` bounds the drop to the nearest of `M`
    /// samples by the factor `1 - d^2 pi^2 / (2 M^2)`. Dividing the sampled
    /// maximum by that factor therefore over-estimates the true supremum.
    pub fn normalized_polynomial(raw: Vec<Complex64>) -> Result<Self> {
        if raw.is_empty() || raw.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::InvalidSchwarz("polynomial needs finite coefficients".into()));
        }
        let sampled = sampled_sup(&raw);
        let d = (raw.len() - 1) as f64;
        let m = BOUNDARY_SAMPLES as f64;
        // the extra 1e-12 absorbs rounding in the division below
        let safety = (1.0 - d * d * PI * PI / (2.0 * m * m)) * (1.0 - 1e-12);
        let scale = if sampled == 0.0 { 0.0 } else { safety / sampled };
        let spec = SchwarzSpec::NormalizedPolynomial { raw, scale };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SchwarzSpec::Constant { c } | SchwarzSpec::Monomial { c, .. } => {
                if !(c.re.is_finite() && c.im.is_finite()) || c.norm() > 1.0 + SUP_TOLERANCE {
                    return Err(Error::InvalidSchwarz(format!("|c| = {} exceeds 1", c.norm())));
                }
            }
            SchwarzSpec::NormalizedPolynomial { raw, scale } => {
                if raw.is_empty() || !scale.is_finite() || *scale < 0.0 {
                    return Err(Error::InvalidSchwarz("bad polynomial normalization".into()));
                }
                if raw.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                    return Err(Error::InvalidSchwarz("non-finite coefficient".into()));
                }
                let sup = self.boundary_sup();
                if sup > 1.0 + SUP_TOLERANCE {
                    return Err(Error::InvalidSchwarz(format!("sampled sup |phi| = {sup} exceeds 1")));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SchwarzSpec::Constant { c } => *c,
            SchwarzSpec::Monomial { c, degree } => c * z.powu(*degree),
            SchwarzSpec::NormalizedPolynomial { raw, scale } => horner(raw, z) * *scale,
        }
    }

    /// Maximum of `|phi|` over [`BOUNDARY_SAMPLES`] points of the unit circle.
    pub fn boundary_sup(&self) -> f64 {
        match self {
            SchwarzSpec::Constant { c } | SchwarzSpec::Monomial { c, .. } => c.norm(),
            SchwarzSpec::NormalizedPolynomial { raw, scale } => sampled_sup(raw) * scale,
        }
    }

    /// Coefficients of `phi` up to `order`.
    pub fn series(&self, order: usize) -> TruncatedSeries {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); order + 1];
        match self {
            SchwarzSpec::Constant { c } => coeffs[0] = *c,
            SchwarzSpec::Monomial { c, degree } => {
                if let Some(slot) = coeffs.get_mut(*degree as usize) {
                    *slot = *c;
                }
            }
            SchwarzSpec::NormalizedPolynomial { raw, scale } => {
                for (slot, r) in coeffs.iter_mut().zip(raw) {
                    *slot = r * *scale;
                }
            }
        }
        TruncatedSeries::new(coeffs).expect("validated coefficients are finite")
    }
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn sampled_sup(coeffs: &[Complex64]) -> f64 {
    circle_values(coeffs, 1.0, BOUNDARY_SAMPLES)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_monomial_validation() {
        assert!(SchwarzSpec::constant(Complex64::new(-1.0, 0.0)).is_ok());
        assert!(SchwarzSpec::constant(Complex64::new(0.8, 0.7)).is_err());
        assert!(SchwarzSpec::monomial(Complex64::from_polar(1.0, 0.3), 4).is_ok());
        assert!(SchwarzSpec::monomial(Complex64::new(1.01, 0.0), 1).is_err());
    }

    #[test]
    fn normalized_polynomial_sup_is_below_one() {
        let raw = vec![
            Complex64::new(0.3, -0.2),
            Complex64::new(1.5, 0.4),
            Complex64::new(-0.7, 2.0),
            Complex64::new(0.1, 0.1),
            Complex64::new(3.0, -1.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(-2.0, 0.0),
        ];
        let spec = SchwarzSpec::normalized_polynomial(raw).unwrap();
        assert!(spec.boundary_sup() <= 1.0);
        // a much finer grid must not find anything above one either
        let direct = (0..BOUNDARY_SAMPLES)
            .map(|j| spec.eval(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / BOUNDARY_SAMPLES as f64)).norm())
            .fold(0.0, f64::max);
        assert!((direct - spec.boundary_sup()).abs() < 1e-12);
        let fine = (0..200_000)
            .map(|j| spec.eval(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 200_000.0)).norm())
            .fold(0.0, f64::max);
        assert!(fine <= 1.0, "fine sup {fine}");
        assert!(fine > 0.999);
    }

    #[test]
    fn zero_polynomial_is_allowed() {
        let spec = SchwarzSpec::normalized_polynomial(vec![Complex64::new(0.0, 0.0); 3]).unwrap();
        assert_eq!(spec.boundary_sup(), 0.0);
    }

    #[test]
    fn tampered_scale_is_rejected() {
        let spec = SchwarzSpec::NormalizedPolynomial {
            raw: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            scale: 1.5,
        };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn series_matches_eval() {
        let spec = SchwarzSpec::monomial(Complex64::from_polar(0.9, 1.1), 3).unwrap();
        let z = Complex64::new(0.2, -0.4);
        assert!((spec.series(6).eval(z) - spec.eval(z)).norm() < 1e-15);
        // degree beyond the order truncates to zero
        assert_eq!(spec.series(2), TruncatedSeries::zero(2));
    }
}
