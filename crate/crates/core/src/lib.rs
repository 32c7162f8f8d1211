//! Exact symbolic engine for vector-valued observables on frame bundles,
//! the circle bundle over the plane, complex 2-space and the 3-sphere.

pub mod cartan;
pub mod cli;
pub mod circle;
pub mod csphere;
pub mod error;
pub mod exact;
pub mod frame;
pub mod opalg;
pub mod verify;

pub use error::{Error, Result};
