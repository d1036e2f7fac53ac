pub mod battery;
pub mod error;
pub mod gauss;
pub mod geometry;
pub mod hharmonic;
pub mod invariant;
pub mod report;
pub mod specfun;
pub mod sphere;
pub mod zonal;

pub use error::{Error, Result};
