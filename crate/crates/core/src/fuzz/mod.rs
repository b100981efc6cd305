//! Randomized extremal search over `T_n^alpha(beta)` and the audit of every
//! closed-form bound against it.

mod audit;
mod closure;
mod functional;
mod sampler;

pub use audit::{
    audit_cell, audit_suite, empirical_max, judge, replay, AuditRecord, AuditReport, AuditSummary, BoundCheck,
    ParamGrid, SearchConfig, Verdict, VerdictCounts, ALL_VARIANTS, SHARPNESS_TOL, VALIDATION_TOL,
};
pub use closure::{bernardi_audit, inclusion_audit, BernardiAudit, ClosureTally, InclusionAudit};
pub use functional::{circle_real_range, Functional, Sense, DISTORTION_ANGLES};
pub use sampler::{perturb, random_member, random_spec, ATOM_SHARE, MAX_ATTEMPTS};
