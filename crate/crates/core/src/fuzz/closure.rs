//! Empirical checks of closure properties: the Bernardi-type integral
//! transform and the inclusion `T_{n+1}^alpha(beta) -> T_n^alpha(beta/alpha)`.
//! Failures are counted and reported with a witness, never asserted away.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::sampler::random_member;
use crate::classes::{bernardi_transform, check_membership_default, MemberSpec, MembershipVerdict, GRID_ORDER};
use crate::error::Result;
use crate::params::ClassParams;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClosureTally {
    pub checked: usize,
    pub member: usize,
    pub boundary: usize,
    pub violation: usize,
    pub first_violation: Option<MemberSpec>,
}

impl ClosureTally {
    fn record(&mut self, verdict: MembershipVerdict, spec: &MemberSpec) {
        self.checked += 1;
        match verdict {
            MembershipVerdict::Member => self.member += 1,
            MembershipVerdict::Boundary => self.boundary += 1,
            MembershipVerdict::Violation => {
                self.violation += 1;
                self.first_violation.get_or_insert_with(|| spec.clone());
            }
        }
    }

    pub fn all_members(&self) -> bool {
        self.checked > 0 && self.member == self.checked
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernardiAudit {
    pub params: ClassParams,
    pub c: f64,
    pub tally: ClosureTally,
}

/// Transforms `samples` random members with each `c` and checks the results
/// for membership in the same class.
pub fn bernardi_audit(params: &ClassParams, cs: &[f64], samples: usize, seed: u64) -> Result<Vec<BernardiAudit>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..samples)
        .map(|_| random_member(params, rng.next_u64(), GRID_ORDER))
        .collect::<Result<Vec<_>>>()?;
    cs.iter()
        .map(|&c| {
            let mut tally = ClosureTally::default();
            for (spec, f) in &members {
                let transformed = bernardi_transform(f, c, params)?;
                tally.record(check_membership_default(&transformed, params)?.verdict, spec);
            }
            Ok(BernardiAudit { params: *params, c, tally })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InclusionAudit {
    /// Class the members are drawn from, `T_{n+1}^alpha(beta)`.
    pub source: ClassParams,
    /// `T_n^alpha(beta/alpha)`, absent when `beta/alpha >= 1` or `n + 1 = 0`.
    pub target: Option<ClassParams>,
    pub tally: ClosureTally,
}

/// Draws members of `source` (which must have `n >= 1`) and checks them
/// against `T_{n-1}^alpha(beta/alpha)`.
pub fn inclusion_audit(source: &ClassParams, samples: usize, seed: u64) -> Result<InclusionAudit> {
    let target = if source.n() == 0 {
        None
    } else {
        ClassParams::new(source.alpha(), source.beta() / source.alpha(), source.n() - 1).ok()
    };
    let mut tally = ClosureTally::default();
    if let Some(target) = target {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (spec, f) = random_member(source, rng.next_u64(), GRID_ORDER)?;
            tally.record(check_membership_default(&f, &target)?.verdict, &spec);
        }
    }
    Ok(InclusionAudit { source: *source, target, tally })
}
