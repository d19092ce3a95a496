pub mod census;
pub mod conjectures;
pub mod contfrac;
pub mod cs_norm;
pub mod dataset;
pub mod error;
pub mod families;
pub mod slope;
pub mod sweep;
