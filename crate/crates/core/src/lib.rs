//! Shear and twist computations on hyperbolic pairs of pants, twisting along
//! stretch paths, a holonomy model of the once-punctured torus, envelope
//! bounds, and the genus-2 stretch-vector cloud.
#![no_std]

extern crate alloc;

pub mod cube;
pub mod envelope;
pub mod error;
pub mod h2;
pub mod hull;
pub mod pants;
pub mod scalar;
pub mod stretch;
pub mod torus;

pub use error::{Error, Result};
