use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classes::{MemberSpec, SchwarzSpec};
use crate::error::Result;
use crate::params::ClassParams;
use crate::series::NormalizedFunction;

/// Share of samples drawn as Caratheodory atom measures; the rest are
/// Schwarz functions.
pub const ATOM_SHARE: f64 = 0.25;

/// Attempts per member before a construction error is reported.
pub const MAX_ATTEMPTS: usize = 10;

/// Draws a member recipe.
///
/// Schwarz functions are 30% unimodular constants, 30% unimodular rotated
/// monomials `c z^m` (`1 <= m <= 5`) and 40% sup-normalized random
/// polynomials of degree at most 6. Atom measures have 2 to 6 atoms with
/// flat-Dirichlet weights and uniform angles.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R) -> MemberSpec {
    if rng.gen::<f64>() < ATOM_SHARE {
        let count = rng.gen_range(2..=6);
        let raw: Vec<f64> = (0..count).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let angles = (0..count).map(|_| rng.gen::<f64>() * TAU).collect();
        return MemberSpec::Atoms { weights: normalize_weights(&raw), angles };
    }
    let pick = rng.gen::<f64>();
    let phi = if pick < 0.3 {
        SchwarzSpec::Constant { c: unit(rng) }
    } else if pick < 0.6 {
        SchwarzSpec::Monomial { c: unit(rng), degree: rng.gen_range(1..=5) }
    } else {
        let degree = rng.gen_range(0..=6);
        let raw = (0..=degree)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        SchwarzSpec::normalized_polynomial(raw).expect("finite coefficients")
    };
    MemberSpec::Schwarz { phi }
}

fn unit<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen::<f64>() * TAU)
}

/// Rescales nonnegative weights to sum to one.
pub(crate) fn normalize_weights(raw: &[f64]) -> Vec<f64> {
    let total: f64 = raw.iter().sum();
    if !(total > 0.0) {
        return vec![1.0 / raw.len() as f64; raw.len()];
    }
    raw.iter().map(|w| w / total).collect()
}

/// A random member of the class, deterministic in `seed`.
pub fn random_member(params: &ClassParams, seed: u64, order: usize) -> Result<(MemberSpec, NormalizedFunction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = None;
    for _ in 0..MAX_ATTEMPTS {
        let spec = random_spec(&mut rng);
        match spec.build(params, order) {
            Ok(f) => return Ok((spec, f)),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.expect("at least one attempt"))
}

/// Perturbs a recipe by roughly `step`, staying inside its family.
pub fn perturb<R: Rng + ?Sized>(spec: &MemberSpec, step: f64, rng: &mut R) -> MemberSpec {
    let mut jitter = |c: Complex64| {
        let rho = (c.norm() + step * rng.gen_range(-1.0..1.0)).clamp(0.0, 1.0);
        let theta = c.arg() + step * PI * rng.gen_range(-1.0..1.0);
        Complex64::from_polar(rho, theta)
    };
    match spec {
        MemberSpec::Schwarz { phi } => {
            let phi = match phi {
                SchwarzSpec::Constant { c } => SchwarzSpec::Constant { c: jitter(*c) },
                SchwarzSpec::Monomial { c, degree } => SchwarzSpec::Monomial { c: jitter(*c), degree: *degree },
                SchwarzSpec::NormalizedPolynomial { raw, .. } => {
                    let size = raw.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1e-3);
                    let raw = raw
                        .iter()
                        .map(|c| {
                            c + Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (step * size)
                        })
                        .collect();
                    SchwarzSpec::normalized_polynomial(raw).expect("finite coefficients")
                }
            };
            MemberSpec::Schwarz { phi }
        }
        MemberSpec::Atoms { weights, angles } => {
            let raw: Vec<f64> = weights
                .iter()
                .map(|w| w * (2.0 * step * rng.gen_range(-1.0..1.0)).exp())
                .collect();
            let angles = angles
                .iter()
                .map(|t| (t + step * PI * rng.gen_range(-1.0..1.0)).rem_euclid(TAU))
                .collect();
            MemberSpec::Atoms { weights: normalize_weights(&raw), angles }
        }
    }
}
