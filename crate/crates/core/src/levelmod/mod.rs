//! The modules `V^r_n` and plain `F_q`-vector spaces.

mod group;
mod space;
mod submodule;

pub use group::{group_u, group_u_order, reduction_kernel, trunc_mul, MatrixGroup, RMat};
pub use space::{ModElem, ModuleSpace};
pub use submodule::{
    basis_of, free_submodule_count, free_submodules, free_submodules_brute, free_submodules_brute_levels, subspaces,
    FreeSubmodule, LinearMap, QuotientMap,
};
