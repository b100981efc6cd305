use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ClassParams;
use crate::series::{salagean_normalized, NormalizedFunction};

pub const DEFAULT_RADII: [f64; 3] = [0.3, 0.6, 0.9];
pub const DEFAULT_ANGLES: usize = 256;
pub const MAX_RADIUS: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipVerdict {
    Member,
    Boundary,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub params: ClassParams,
    pub radii: Vec<f64>,
    pub angles: usize,
    pub min_real_part: f64,
    /// Grid point where the minimum was found.
    pub argmin: Complex64,
    pub margin: f64,
    pub tail_estimate: f64,
    pub verdict: MembershipVerdict,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        self.verdict == MembershipVerdict::Member
    }
}

/// Samples `Re L_n(f)` on `radii x angles` and compares its minimum against
/// `beta`, with the truncation tail at the largest radius as the error bar.
pub fn check_membership(
    f: &NormalizedFunction,
    params: &ClassParams,
    radii: &[f64],
    angles: usize,
) -> Result<MembershipReport> {
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0 && r <= MAX_RADIUS)) {
        return Err(Error::Domain(format!("radii must lie in (0, {MAX_RADIUS}]")));
    }
    if angles == 0 {
        return Err(Error::Domain("need at least one angle".into()));
    }
    let image = salagean_normalized(f, params)?;
    let mut min_real_part = f64::INFINITY;
    let mut argmin = Complex64::new(0.0, 0.0);
    for &r in radii {
        for (j, value) in image.eval_circle(r, angles).iter().enumerate() {
            if value.re < min_real_part {
                min_real_part = value.re;
                argmin = Complex64::from_polar(r, TAU * j as f64 / angles as f64);
            }
        }
    }
    let r_max = radii.iter().copied().fold(0.0, f64::max);
    let tail_estimate = image.tail_bound(r_max);
    let margin = min_real_part - params.beta();
    let verdict = if margin > tail_estimate {
        MembershipVerdict::Member
    } else if margin < -tail_estimate {
        MembershipVerdict::Violation
    } else {
        MembershipVerdict::Boundary
    };
    Ok(MembershipReport {
        params: *params,
        radii: radii.to_vec(),
        angles,
        min_real_part,
        argmin,
        margin,
        tail_estimate,
        verdict,
    })
}

/// [`check_membership`] on the default grid.
pub fn check_membership_default(f: &NormalizedFunction, params: &ClassParams) -> Result<MembershipReport> {
    check_membership(f, params, &DEFAULT_RADII, DEFAULT_ANGLES)
}
