//! Exact computations with linear systems of skew-symmetric forms on a
//! six-dimensional space: ranks, Pfaffians, Grassmannian incidence, stability
//! under SL(6), constant-rank-4 planes and the associated scroll.

pub mod catalog;
mod error;
pub mod exterior;
pub mod linsys;
pub mod planes;
pub mod sample;
pub mod scalars;
pub mod scroll;
pub mod stability;

pub use error::{Error, Result};
