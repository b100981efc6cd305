//! Building class members from their operator image.
//!
//! Every member `f` of `T_n^alpha(beta)` is determined by `S = L_n(f)`, a
//! series with `S(0) = 1` and `Re S > beta`. Inverting the operator is
//! diagonal on `h = (f/z)^alpha`: `h_k = S_k / ((alpha + k)/alpha)^n`, and then
//! `f = z h^{1/alpha}`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::schwarz::SchwarzSpec;
use crate::error::{Error, Result};
use crate::params::ClassParams;
use crate::series::{NormalizedFunction, TruncatedSeries};

/// Slack on `|S_k| <= 2 (1 - beta)` before a construction is declared divergent.
const CARATHEODORY_SLACK: f64 = 1e-6;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Inverts the normalized operator: the unique normalized `f` (to the given
/// order) with `L_n(f) = image`. `image` must have constant term exactly 1;
/// `f` has order `image.order() + 1`.
pub fn member_from_operator_image(image: &TruncatedSeries, params: &ClassParams) -> Result<NormalizedFunction> {
    if image.coeffs()[0] != ONE {
        return Err(Error::NonUnitConstantTerm {
            re: image.coeffs()[0].re,
            im: image.coeffs()[0].im,
        });
    }
    let h = image.integral_coeffwise(|k| params.operator_weight(k).recip());
    let root = h.pow_real(params.alpha().recip())?;
    NormalizedFunction::from_quotient(&root)
}

/// `S(z) = (2 beta - 1) + 2 (1 - beta) / (1 + z phi(z))`, the representation
/// of the operator image through a Schwarz function.
pub fn schwarz_image(phi: &SchwarzSpec, params: &ClassParams, order: usize) -> Result<TruncatedSeries> {
    phi.validate()?;
    let z_phi = if order == 0 {
        TruncatedSeries::zero(0)
    } else {
        phi.series(order - 1).shift_up()
    };
    image_from_z_phi(&z_phi, params.beta())
}

/// Expands `(2 beta - 1) + 2 (1 - beta) / (1 + w)` for a series `w` with
/// `w(0) = 0`. When `w = z phi` with `|phi| <= 1` the result is
/// `beta + (1 - beta) p` with `p` Caratheodory, so `|S_k| <= 2 (1 - beta)`; a
/// coefficient above that means `w` was not of that form.
pub fn image_from_z_phi(z_phi: &TruncatedSeries, beta: f64) -> Result<TruncatedSeries> {
    if z_phi.coeffs()[0] != Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("z phi must vanish at the origin".into()));
    }
    let inverse = z_phi.add_constant(ONE).reciprocal()?;
    let mut coeffs: Vec<Complex64> = inverse.scale(Complex64::new(2.0 * (1.0 - beta), 0.0)).coeffs().to_vec();
    // 2(1-b) + (2b-1) is 1 exactly; floating addition need not be.
    coeffs[0] = ONE;
    let limit = 2.0 * (1.0 - beta) + CARATHEODORY_SLACK;
    if let Some((index, c)) = coeffs.iter().enumerate().skip(1).find(|(_, c)| c.norm() > limit) {
        return Err(Error::InversionDivergence { index, modulus: c.norm() });
    }
    TruncatedSeries::new(coeffs)
}

/// The member whose operator image is the Schwarz representation of `phi`.
/// `order` is the order of the returned `f`.
pub fn member_from_schwarz(phi: &SchwarzSpec, params: &ClassParams, order: usize) -> Result<NormalizedFunction> {
    let order = order.max(1);
    let image = schwarz_image(phi, params, order - 1)?;
    member_from_operator_image(&image, params)
}

/// `S = beta + (1 - beta) p` for a Caratheodory function `p`.
pub fn caratheodory_image(p: &TruncatedSeries, params: &ClassParams, order: usize) -> Result<TruncatedSeries> {
    if p.coeffs()[0] != ONE {
        return Err(Error::NonUnitConstantTerm { re: p.coeffs()[0].re, im: p.coeffs()[0].im });
    }
    if p.order() < order {
        return Err(Error::Domain(format!(
            "Caratheodory series has order {} but {order} is needed",
            p.order()
        )));
    }
    let beta = params.beta();
    let mut coeffs: Vec<Complex64> = p.truncate(order).scale(Complex64::new(1.0 - beta, 0.0)).coeffs().to_vec();
    coeffs[0] = ONE;
    TruncatedSeries::new(coeffs)
}

/// The member with `L_n(f) = beta + (1 - beta) p`. `order` is the order of `f`.
pub fn member_from_caratheodory(p: &TruncatedSeries, params: &ClassParams, order: usize) -> Result<NormalizedFunction> {
    let order = order.max(1);
    let image = caratheodory_image(p, params, order - 1)?;
    member_from_operator_image(&image, params)
}

/// `p(z) = sum_j w_j (1 + z e^{-i t_j}) / (1 - z e^{-i t_j})`, so that
/// `p_0 = 1` and `p_k = 2 sum_j w_j e^{-i k t_j}`.
pub fn caratheodory_from_atoms(weights: &[f64], angles: &[f64], order: usize) -> Result<TruncatedSeries> {
    validate_measure(weights, angles)?;
    let mut coeffs = vec![ONE];
    for k in 1..=order {
        let sum: Complex64 = weights
            .iter()
            .zip(angles)
            .map(|(&w, &t)| Complex64::from_polar(2.0 * w, -(k as f64) * t))
            .sum();
        coeffs.push(sum);
    }
    TruncatedSeries::new(coeffs)
}

fn validate_measure(weights: &[f64], angles: &[f64]) -> Result<()> {
    if weights.is_empty() || weights.len() != angles.len() {
        return Err(Error::BadMeasure(format!(
            "{} weights for {} angles",
            weights.len(),
            angles.len()
        )));
    }
    if weights.iter().chain(angles).any(|x| !x.is_finite()) {
        return Err(Error::BadMeasure("non-finite weight or angle".into()));
    }
    if weights.iter().any(|&w| w < 0.0) {
        return Err(Error::BadMeasure("negative weight".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::BadMeasure(format!("weights sum to {total}")));
    }
    Ok(())
}

/// Serializable recipe for a class member: the witness format used by the
/// auditor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum MemberSpec {
    Schwarz { phi: SchwarzSpec },
    Atoms { weights: Vec<f64>, angles: Vec<f64> },
}

impl MemberSpec {
    pub fn build(&self, params: &ClassParams, order: usize) -> Result<NormalizedFunction> {
        match self {
            MemberSpec::Schwarz { phi } => member_from_schwarz(phi, params, order),
            MemberSpec::Atoms { weights, angles } => {
                let p = caratheodory_from_atoms(weights, angles, order.max(1) - 1)?;
                member_from_caratheodory(&p, params, order)
            }
        }
    }

    /// Operator image of the member, to the order of `f` minus one.
    pub fn image(&self, params: &ClassParams, order: usize) -> Result<TruncatedSeries> {
        let order = order.max(1) - 1;
        match self {
            MemberSpec::Schwarz { phi } => schwarz_image(phi, params, order),
            MemberSpec::Atoms { weights, angles } => {
                caratheodory_image(&caratheodory_from_atoms(weights, angles, order)?, params, order)
            }
        }
    }
}

/// The Koebe function `z / (1 - z)^2 = sum k z^k`.
pub fn koebe(order: usize) -> NormalizedFunction {
    rotated_koebe(0.0, order)
}

/// `e^{-i xi} K(e^{i xi} z)`, with `a_k = k e^{i (k-1) xi}`.
pub fn rotated_koebe(xi: f64, order: usize) -> NormalizedFunction {
    let coeffs = (0..=order.max(1))
        .map(|k| {
            if k == 0 {
                Complex64::new(0.0, 0.0)
            } else if k == 1 {
                ONE
            } else {
                Complex64::from_polar(k as f64, (k as f64 - 1.0) * xi.rem_euclid(TAU))
            }
        })
        .collect();
    NormalizedFunction::new(TruncatedSeries::new(coeffs).expect("finite")).expect("normalized")
}

/// `F^alpha = (alpha + c) z^{-c} int_0^z t^{c-1} f(t)^alpha dt`, applied on
/// `h = (f/z)^alpha` as `H_k = h_k (alpha + c) / (alpha + c + k)`.
pub fn bernardi_transform(f: &NormalizedFunction, c: f64, params: &ClassParams) -> Result<NormalizedFunction> {
    let alpha = params.alpha();
    if !(c.is_finite() && alpha + c > 0.0) {
        return Err(Error::Domain(format!("need alpha + c > 0, got alpha = {alpha}, c = {c}")));
    }
    let h = f.quotient_pow(alpha)?;
    let transformed = h.integral_coeffwise(|k| (alpha + c) / (alpha + c + k as f64));
    NormalizedFunction::from_quotient(&transformed.pow_real(alpha.recip())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::salagean_normalized;
    use std::f64::consts::PI;

    fn params(alpha: f64, beta: f64, n: u32) -> ClassParams {
        ClassParams::new(alpha, beta, n).unwrap()
    }

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn zero_phi_gives_identity() {
        let phi = SchwarzSpec::constant(re(0.0)).unwrap();
        for p in [params(0.5, 0.2, 3), params(2.0, 0.0, 0)] {
            let f = member_from_schwarz(&phi, &p, 16).unwrap();
            assert_eq!(f, NormalizedFunction::identity(16));
        }
    }

    #[test]
    fn minus_one_phi_reaches_a2_bound() {
        let phi = SchwarzSpec::constant(re(-1.0)).unwrap();
        for beta in [0.0, 0.25, 0.5, 0.9] {
            let f = member_from_schwarz(&phi, &params(1.0, beta, 0), 12).unwrap();
            let want = 2.0 * (1.0 - beta);
            assert!((f.a(2).unwrap() - re(want)).norm() < 1e-14);
            // 2(1-b)/(1-z) expands with every coefficient equal to 2(1-b)
            for k in 2..=12 {
                assert!((f.a(k).unwrap() - re(want)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn half_plane_member_is_not_koebe_beyond_a2() {
        // S0 extremal: f/z = (1+z)/(1-z), so a_k = 2 for k >= 2; Koebe shares only a_2.
        let phi = SchwarzSpec::constant(re(-1.0)).unwrap();
        let f = member_from_schwarz(&phi, &params(1.0, 0.0, 0), 8).unwrap();
        let k = koebe(8);
        assert_eq!(f.a(2), k.a(2));
        assert!((f.a(3).unwrap() - re(2.0)).norm() < 1e-14);
        assert_eq!(k.a(3), Some(re(3.0)));
    }

    #[test]
    fn caratheodory_half_plane_matches_schwarz() {
        let p = caratheodory_from_atoms(&[1.0], &[0.0], 20).unwrap();
        let prm = params(1.0, 0.0, 0);
        let a = member_from_caratheodory(&p, &prm, 21).unwrap();
        let b = member_from_schwarz(&SchwarzSpec::constant(re(-1.0)).unwrap(), &prm, 21).unwrap();
        assert!(a.series().max_abs_diff(b.series()) < 1e-13);
    }

    #[test]
    fn caratheodory_one_gives_identity() {
        let p = TruncatedSeries::one(10);
        let f = member_from_caratheodory(&p, &params(0.7, 0.4, 2), 11).unwrap();
        assert_eq!(f, NormalizedFunction::identity(11));
    }

    #[test]
    fn recover_c1_from_member() {
        let p = caratheodory_from_atoms(&[0.3, 0.7], &[0.4, 2.9], 8).unwrap();
        let prm = params(0.6, 0.3, 2);
        let f = member_from_caratheodory(&p, &prm, 9).unwrap();
        let (a, b, n) = (0.6f64, 0.3, 2);
        let c1 = f.a(2).unwrap() * ((a + 1.0).powi(n) / (a.powi(n - 1) * (1.0 - b)));
        assert!((c1 - p.coeffs()[1]).norm() < 1e-10);
    }

    #[test]
    fn two_antipodal_atoms() {
        let p = caratheodory_from_atoms(&[0.5, 0.5], &[0.0, PI], 3).unwrap();
        let c = p.coeffs();
        assert!(c[1].norm() < 1e-15);
        assert!((c[2] - re(2.0)).norm() < 1e-15);
        assert!(c[3].norm() < 1e-15);
    }

    #[test]
    fn single_atom_is_all_twos() {
        let p = caratheodory_from_atoms(&[1.0], &[0.0], 6).unwrap();
        assert!(p.coeffs()[1..].iter().all(|&c| c == re(2.0)));
    }

    #[test]
    fn bad_measures() {
        assert!(matches!(caratheodory_from_atoms(&[], &[], 3), Err(Error::BadMeasure(_))));
        assert!(matches!(caratheodory_from_atoms(&[0.5], &[0.0], 3), Err(Error::BadMeasure(_))));
        assert!(matches!(caratheodory_from_atoms(&[1.5, -0.5], &[0.0, 1.0], 3), Err(Error::BadMeasure(_))));
        assert!(matches!(caratheodory_from_atoms(&[1.0], &[0.0, 1.0], 3), Err(Error::BadMeasure(_))));
    }

    #[test]
    fn round_trip_through_operator() {
        let phi = SchwarzSpec::normalized_polynomial(vec![re(0.2), Complex64::new(-0.5, 0.9), re(0.4)]).unwrap();
        let prm = params(0.5, 0.25, 3);
        let f = member_from_schwarz(&phi, &prm, 32).unwrap();
        let image = schwarz_image(&phi, &prm, 31).unwrap();
        assert!(salagean_normalized(&f, &prm).unwrap().max_abs_diff(&image) < 1e-10);
    }

    #[test]
    fn unbounded_phi_diverges() {
        let phi = SchwarzSpec::NormalizedPolynomial { raw: vec![re(3.0)], scale: 1.0 };
        assert!(phi.validate().is_err());
        let w = TruncatedSeries::from_real(&[0.0, 3.0]).unwrap().with_order(8);
        assert!(matches!(image_from_z_phi(&w, 0.0), Err(Error::InversionDivergence { index: 1, .. })));
        let ok = TruncatedSeries::from_real(&[0.0, -1.0]).unwrap().with_order(8);
        assert!(image_from_z_phi(&ok, 0.5).is_ok());
    }

    #[test]
    fn koebe_coefficients() {
        let k = koebe(6);
        assert_eq!(k.a(2), Some(re(2.0)));
        assert_eq!(k.a(3), Some(re(3.0)));
        assert_eq!(k.a(4), Some(re(4.0)));
        assert_eq!(rotated_koebe(0.0, 6), k);
        let r = rotated_koebe(1.234, 10);
        for j in 1..=10 {
            assert!((r.a(j).unwrap().norm() - j as f64).abs() < 1e-12);
        }
        let want = Complex64::from_polar(3.0, 2.0 * 1.234);
        assert!((r.a(3).unwrap() - want).norm() < 1e-12);
    }

    #[test]
    fn bernardi_fixes_identity_and_constant_term() {
        let prm = params(1.5, 0.1, 1);
        let f = NormalizedFunction::identity(10);
        assert_eq!(bernardi_transform(&f, 2.0, &prm).unwrap(), f);
        let g = member_from_schwarz(&SchwarzSpec::constant(re(-1.0)).unwrap(), &prm, 10).unwrap();
        let big = bernardi_transform(&g, 0.0, &prm).unwrap();
        assert_eq!(big.a(1), Some(re(1.0)));
        assert!(bernardi_transform(&g, -1.5, &prm).is_err());
    }

    #[test]
    fn bernardi_scales_operator_image() {
        let prm = params(2.0, 0.3, 1);
        let phi = SchwarzSpec::monomial(Complex64::from_polar(1.0, 0.7), 1).unwrap();
        let f = member_from_schwarz(&phi, &prm, 20).unwrap();
        let c = 1.0;
        let big = bernardi_transform(&f, c, &prm).unwrap();
        let lf = salagean_normalized(&f, &prm).unwrap();
        let lb = salagean_normalized(&big, &prm).unwrap();
        for k in 0..=lf.order() {
            let w = (2.0 + c) / (2.0 + c + k as f64);
            assert!((lb.coeffs()[k] - lf.coeffs()[k] * w).norm() < 1e-10);
        }
    }
}
