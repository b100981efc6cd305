use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::functional::{Functional, Sense};
use super::sampler::{perturb, random_member};
use crate::bounds::{BoundVariant, Provenance};
use crate::classes::{check_membership_default, MemberSpec, MembershipVerdict};
use crate::error::{Error, Result};
use crate::params::ClassParams;
use crate::series::salagean_normalized;

/// Empirical values may exceed a valid bound by this much (rounding).
pub const VALIDATION_TOL: f64 = 1e-9;

/// Distance to a bound within which it counts as attained.
pub const SHARPNESS_TOL: f64 = 1e-6;

const HILL_STEP_START: f64 = 0.5;
const HILL_STEP_END: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Validated,
    Sharp,
    Counterexample,
    Inconclusive,
}

impl Verdict {
    /// `margin` is the signed slack of the bound: positive when the
    /// empirical extreme is on the safe side.
    pub fn classify(margin: f64) -> Self {
        if !margin.is_finite() || margin < -SHARPNESS_TOL {
            Verdict::Counterexample
        } else if margin < -VALIDATION_TOL {
            Verdict::Inconclusive
        } else if margin <= SHARPNESS_TOL {
            Verdict::Sharp
        } else {
            Verdict::Validated
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub variant: Provenance,
    pub bound: f64,
    pub margin: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub trials: usize,
    pub hill_climb_steps: usize,
    /// Abort when a sampled member fails the membership grid check.
    pub verify_members: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { trials: 10_000, hill_climb_steps: 200, verify_members: true }
    }
}

/// Outcome of auditing one functional on one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub params: ClassParams,
    pub functional: Functional,
    pub trials: usize,
    /// Truncation order the members were built at.
    pub order: usize,
    /// Extreme value found: the maximum, or for a lower distortion bound the
    /// minimum of `Re L_n`.
    pub empirical_max: f64,
    pub argmax_spec: MemberSpec,
    pub bounds: Vec<BoundCheck>,
    pub seed: u64,
    pub cell: u64,
}

impl AuditRecord {
    pub fn check(&self, variant: Provenance) -> Option<&BoundCheck> {
        self.bounds.iter().find(|b| b.variant == variant)
    }

    pub fn has_counterexample(&self) -> bool {
        self.bounds.iter().any(|b| b.verdict == Verdict::Counterexample)
    }

    /// Rebuilds the witness and re-evaluates the functional.
    pub fn replay(&self) -> Result<f64> {
        replay(&self.argmax_spec, &self.functional, &self.params, self.order)
    }
}

pub fn replay(spec: &MemberSpec, functional: &Functional, params: &ClassParams, order: usize) -> Result<f64> {
    let f = spec.build(params, order)?;
    functional.evaluate(&f, None, params)
}

/// Bound checks for every provenance of the functional's bound.
pub fn judge(functional: &Functional, params: &ClassParams, empirical: f64, variants: &[Provenance]) -> Result<Vec<BoundCheck>> {
    let name = functional.bound_name();
    name.provenances()
        .iter()
        .filter(|p| variants.contains(p))
        .map(|&variant| {
            let bound = BoundVariant::new(name, variant, *params, functional.extra()).value()?;
            let margin = match functional.sense() {
                Sense::Upper => bound - empirical,
                Sense::Lower => empirical - bound,
            };
            Ok(BoundCheck { variant, bound, margin, verdict: Verdict::classify(margin) })
        })
        .collect()
}

pub const ALL_VARIANTS: [Provenance; 3] = [Provenance::Printed, Provenance::PrintedInProof, Provenance::Derived];

struct Best {
    objective: f64,
    value: f64,
    spec: MemberSpec,
}

/// Searches one class for the extremes of several functionals at once.
///
/// Members are drawn from a stream keyed by `(seed, cell)`, so a
/// functional's record does not depend on which other functionals share the
/// cell, and parallel runs agree with serial ones.
pub fn audit_cell(
    params: &ClassParams,
    functionals: &[Functional],
    config: &SearchConfig,
    variants: &[Provenance],
    seed: u64,
    cell: u64,
) -> Result<Vec<AuditRecord>> {
    if functionals.is_empty() {
        return Ok(Vec::new());
    }
    if config.trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let order = functionals.iter().map(Functional::order).max().unwrap_or(0);
    let needs_image = functionals.iter().any(Functional::is_distortion);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(cell);
    let mut best: Vec<Option<Best>> = functionals.iter().map(|_| None).collect();
    for _ in 0..config.trials {
        let (spec, f) = random_member(params, rng.next_u64(), order)?;
        if config.verify_members {
            let report = check_membership_default(&f, params)?;
            if report.verdict == MembershipVerdict::Violation {
                return Err(Error::Domain(format!(
                    "sampled member violates {params}: {spec:?} (margin {})",
                    report.margin
                )));
            }
        }
        let image = if needs_image { Some(salagean_normalized(&f, params)?) } else { None };
        for (slot, func) in best.iter_mut().zip(functionals) {
            let value = func.evaluate(&f, image.as_ref(), params)?;
            let objective = func.objective(value);
            if slot.as_ref().map_or(true, |b| objective > b.objective) {
                *slot = Some(Best { objective, value, spec: spec.clone() });
            }
        }
    }
    functionals
        .iter()
        .zip(best)
        .map(|(func, start)| {
            let start = start.expect("trials >= 1");
            let climb_seed = stream_seed(seed, cell, &func.key());
            let found = hill_climb(func, params, order, start, config.hill_climb_steps, climb_seed);
            let replayed = replay(&found.spec, func, params, order)?;
            if (replayed - found.value).abs() > VALIDATION_TOL {
                return Err(Error::Domain(format!("witness for {} does not replay", func.key())));
            }
            Ok(AuditRecord {
                params: *params,
                functional: *func,
                trials: config.trials,
                order,
                empirical_max: found.value,
                bounds: judge(func, params, found.value, variants)?,
                argmax_spec: found.spec,
                seed,
                cell,
            })
        })
        .collect()
}

fn hill_climb(func: &Functional, params: &ClassParams, order: usize, start: Best, steps: usize, seed: u64) -> Best {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = start;
    let ratio = HILL_STEP_END / HILL_STEP_START;
    for k in 0..steps {
        let step = HILL_STEP_START * ratio.powf(k as f64 / steps.max(1) as f64);
        let candidate = perturb(&best.spec, step, &mut rng);
        let Ok(value) = replay(&candidate, func, params, order) else {
            continue;
        };
        let objective = func.objective(value);
        if objective > best.objective {
            best = Best { objective, value, spec: candidate };
        }
    }
    best
}

/// SplitMix64 finalizer.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// FNV-1a over the key, folded with the seed and cell.
fn stream_seed(seed: u64, cell: u64, key: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in key.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    mix(seed ^ mix(cell ^ mix(h)))
}

/// Audit of a single functional on a single class.
pub fn empirical_max(
    params: &ClassParams,
    functional: Functional,
    config: &SearchConfig,
    seed: u64,
) -> Result<AuditRecord> {
    let mut records = audit_cell(params, &[functional], config, &ALL_VARIANTS, seed, 0)?;
    Ok(records.remove(0))
}

/// Cartesian grid of class parameters, enumerated `n`-major, then `alpha`,
/// then `beta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub n: Vec<u32>,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl ParamGrid {
    pub fn cells(&self) -> Result<Vec<ClassParams>> {
        let mut cells = Vec::with_capacity(self.n.len() * self.alpha.len() * self.beta.len());
        for &n in &self.n {
            for &alpha in &self.alpha {
                for &beta in &self.beta {
                    cells.push(ClassParams::new(alpha, beta, n)?);
                }
            }
        }
        Ok(cells)
    }
}

impl Default for ParamGrid {
    fn default() -> Self {
        Self { n: vec![0, 1, 2, 3], alpha: vec![0.5, 1.0, 2.0], beta: vec![0.0, 0.25, 0.5] }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub validated: usize,
    pub sharp: usize,
    pub counterexample: usize,
    pub inconclusive: usize,
}

impl VerdictCounts {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Validated => self.validated += 1,
            Verdict::Sharp => self.sharp += 1,
            Verdict::Counterexample => self.counterexample += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub records: usize,
    pub total: VerdictCounts,
    pub by_variant: BTreeMap<Provenance, VerdictCounts>,
}

impl AuditSummary {
    pub fn of(records: &[AuditRecord]) -> Self {
        let mut summary = AuditSummary { records: records.len(), ..Default::default() };
        for check in records.iter().flat_map(|r| &r.bounds) {
            summary.total.add(check.verdict);
            summary.by_variant.entry(check.variant).or_default().add(check.verdict);
        }
        summary
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
    pub summary: AuditSummary,
}

/// Audits every functional on every cell of the grid. Cells run in
/// parallel; the result is ordered by cell, then by functional.
pub fn audit_suite(
    grid: &ParamGrid,
    functionals: &[Functional],
    config: &SearchConfig,
    variants: &[Provenance],
    seed: u64,
) -> Result<AuditReport> {
    let cells = grid.cells()?;
    if cells.is_empty() {
        return Err(Error::Domain("empty parameter grid".into()));
    }
    let per_cell: Vec<Vec<AuditRecord>> = cells
        .par_iter()
        .enumerate()
        .map(|(i, params)| audit_cell(params, functionals, config, variants, seed, i as u64))
        .collect::<Result<_>>()?;
    let records: Vec<AuditRecord> = per_cell.into_iter().flatten().collect();
    let summary = AuditSummary::of(&records);
    Ok(AuditReport { records, summary })
}
