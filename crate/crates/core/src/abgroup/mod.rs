//! Finitely generated abelian groups and integer linear algebra.

mod group;
mod matrix;
mod snf;
mod subgroup;

pub use group::{FgAbGroup, GroupElement};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};
pub use subgroup::{
    all_subgroups, quotient, subgroup_index, Index, Quotient, SubgroupSpec, SubgroupStructure,
};
