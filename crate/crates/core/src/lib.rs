pub mod blockcode;
pub mod cluster;
pub mod contfrac;
pub mod error;
pub mod exactnum;
pub mod jacobiperron;
pub mod ktheory;
pub mod minkowski;
mod periodic;

pub use contfrac::ContinuedFraction;
pub use error::{Error, Result};
pub use exactnum::ExactNumber;
