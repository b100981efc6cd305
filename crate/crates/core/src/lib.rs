pub mod bounds;
pub mod classes;
pub mod cli;
pub mod error;
pub mod fuzz;
pub mod params;
pub mod series;

pub use classes::{ClassParams, MemberSpec, SchwarzSpec};
pub use error::{Error, Result};
pub use series::{salagean_normalized, NormalizedFunction, TruncatedSeries};
