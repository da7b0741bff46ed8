//! Exact Bredon homology of representation spheres for `C_{p^n}`, `p` odd, with coefficients in
//! Mackey functors, together with closed-form predictions and slice spectral sequence charts.

pub mod bredon;
pub mod cells;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod mackey;
pub mod reps;
pub mod slices;

pub use error::{Error, Result};
