//! Mackey functors for cyclic `p`-groups.

mod abelian;
mod context;
mod families;
mod functor;
mod induction;
mod iso;
mod json;
mod lewis;
mod names;

pub use abelian::{exactness_failures, induced_morphism, mackey_cokernel, mackey_homology, mackey_kernel, MackeySubquotient};
pub use context::{is_prime, GroupContext};
pub use families::{make_b, make_b_ell, make_b_star, make_constant_z, make_dual_z, make_perm, make_z};
pub use functor::{AxiomViolation, MackeyFunctor, MackeyMorphism};
pub use induction::{cell_automorphism, counit, ind_res, induce, inflate, one_minus_gamma, pull, push, restrict, unit};
pub use iso::{mackey_iso, IsoVerdict};
pub use json::{big_to_value, value_to_big, LevelJson, MackeyJson};
pub use lewis::lewis_diagram;
pub use names::{Library, NamedFunctor};
