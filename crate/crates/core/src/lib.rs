//! Exact symbolic computations for a rank-2 vector bundle on P1 x P3:
//! intersection rings, Chern classes and Riemann-Roch, line-bundle
//! cohomology, slope stability, a Heisenberg-type matrix group, pencils of
//! quadrics, and a claim registry that checks every numerical statement.

pub mod chern;
pub mod chow;
pub mod claims;
pub mod cohom;
pub mod error;
pub mod exactalg;
pub mod geometry;
pub mod heisenberg;
pub mod pencil;
pub mod stability;

pub use error::{Error, Result};
