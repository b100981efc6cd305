//! Members of `T_n^alpha(beta)`: construction from Schwarz or Caratheodory
//! data, numerical membership checks, the Koebe family and the Bernardi-type
//! integral transform.

mod construct;
mod membership;
mod schwarz;

pub use construct::{
    bernardi_transform, caratheodory_from_atoms, caratheodory_image, image_from_z_phi, koebe,
    member_from_caratheodory, member_from_operator_image, member_from_schwarz, rotated_koebe,
    schwarz_image, MemberSpec,
};
pub use membership::{
    check_membership, check_membership_default, MembershipReport, MembershipVerdict, DEFAULT_ANGLES,
    DEFAULT_RADII, MAX_RADIUS,
};
pub use schwarz::{SchwarzSpec, BOUNDARY_SAMPLES, SUP_TOLERANCE};

pub use crate::params::ClassParams;

/// Truncation order for constructed members.
pub const CONSTRUCTION_ORDER: usize = 32;

/// Truncation order for membership and distortion grids.
pub const GRID_ORDER: usize = 64;
