use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::BoundName;
use crate::classes::{CONSTRUCTION_ORDER, GRID_ORDER};
use crate::error::Result;
use crate::params::ClassParams;
use crate::series::{salagean_normalized, NormalizedFunction, TruncatedSeries};

/// Points on the circle `|z| = r` used for distortion extremes.
pub const DISTORTION_ANGLES: usize = 256;

/// Whether a bound caps the functional from above or from below.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Upper,
    Lower,
}

/// A real quantity read off a class member, audited against a bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Functional {
    A2,
    A3,
    A4,
    /// `|a3 - mu a2^2|`
    FeketeSzego { mu: f64 },
    /// `max Re L_n(f)` on `|z| = r`
    DistortionUpper { r: f64 },
    /// `min Re L_n(f)` on `|z| = r`
    DistortionLower { r: f64 },
}

impl Functional {
    pub fn bound_name(&self) -> BoundName {
        match self {
            Functional::A2 => BoundName::A2,
            Functional::A3 => BoundName::A3,
            Functional::A4 => BoundName::A4,
            Functional::FeketeSzego { .. } => BoundName::FeketeSzego,
            Functional::DistortionUpper { .. } => BoundName::DistortionUpper,
            Functional::DistortionLower { .. } => BoundName::DistortionLower,
        }
    }

    pub fn extra(&self) -> Option<f64> {
        match *self {
            Functional::FeketeSzego { mu } => Some(mu),
            Functional::DistortionUpper { r } | Functional::DistortionLower { r } => Some(r),
            _ => None,
        }
    }

    pub fn sense(&self) -> Sense {
        match self {
            Functional::DistortionLower { .. } => Sense::Lower,
            _ => Sense::Upper,
        }
    }

    pub fn is_distortion(&self) -> bool {
        matches!(self, Functional::DistortionUpper { .. } | Functional::DistortionLower { .. })
    }

    /// Truncation order the member must be built at.
    pub fn order(&self) -> usize {
        if self.is_distortion() {
            GRID_ORDER
        } else {
            CONSTRUCTION_ORDER
        }
    }

    /// Stable text key, used for naming and for deriving random streams.
    pub fn key(&self) -> String {
        match self {
            Functional::A2 => "a2".into(),
            Functional::A3 => "a3".into(),
            Functional::A4 => "a4".into(),
            Functional::FeketeSzego { mu } => format!("fekete_szego(mu={mu:?})"),
            Functional::DistortionUpper { r } => format!("distortion_upper(r={r:?})"),
            Functional::DistortionLower { r } => format!("distortion_lower(r={r:?})"),
        }
    }

    /// Value of the functional. `image` is `L_n(f)`; it is only needed for the
    /// distortion functionals and is computed on demand when absent.
    pub fn evaluate(
        &self,
        f: &NormalizedFunction,
        image: Option<&TruncatedSeries>,
        params: &ClassParams,
    ) -> Result<f64> {
        let coeff = |k: usize| f.a(k).unwrap_or(Complex64::new(0.0, 0.0));
        Ok(match *self {
            Functional::A2 => coeff(2).norm(),
            Functional::A3 => coeff(3).norm(),
            Functional::A4 => coeff(4).norm(),
            Functional::FeketeSzego { mu } => (coeff(3) - coeff(2) * coeff(2) * mu).norm(),
            Functional::DistortionUpper { r } | Functional::DistortionLower { r } => {
                let owned;
                let image = match image {
                    Some(s) => s,
                    None => {
                        owned = salagean_normalized(f, params)?;
                        &owned
                    }
                };
                let (lo, hi) = circle_real_range(image, r);
                if self.sense() == Sense::Lower {
                    lo
                } else {
                    hi
                }
            }
        })
    }

    /// The value to maximize when searching for extremes.
    pub fn objective(&self, value: f64) -> f64 {
        match self.sense() {
            Sense::Upper => value,
            Sense::Lower => -value,
        }
    }
}

/// `(min, max)` of `Re s(z)` over [`DISTORTION_ANGLES`] points of `|z| = r`.
pub fn circle_real_range(s: &TruncatedSeries, r: f64) -> (f64, f64) {
    s.eval_circle(r, DISTORTION_ANGLES)
        .iter()
        .map(|v| v.re)
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}
