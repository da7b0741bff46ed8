//! Exact integer linear algebra over arbitrary-precision integers.

mod group;
mod homology;
mod matrix;
mod snf;

pub use group::{GroupHom, Invariants, PresentedGroup};
pub use homology::{cokernel, cokernel_with_projection, homology_at, induced_hom, kernel, Subquotient};
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, smith, smith_normal_form, solve, solve_with, Smith};
