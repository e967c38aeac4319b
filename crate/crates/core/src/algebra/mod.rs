//! Exact integer linear algebra: Smith normal form, kernel lattices, and
//! finitely generated abelian groups with homomorphisms. The computational
//! substrate for every homology group in the crate.

pub mod group;
pub mod matrix;

pub use group::{
    cokernel, exact_at, induced_hom, subquotient, subquotient_presentation, FgAbGroup,
    GroupError, GroupInvariants, Homomorphism, Subquotient,
};
pub use matrix::{
    kernel_basis, lattice_contains, lattices_equal, smith_normal_form, solve, Int, IntMatrix,
    LinearSolver, SmithDecomposition,
};
