//! Exact linear algebra over Z and F_p.
//!
//! Everything here works on dense matrices of arbitrary-precision integers.
//! The Smith normal form is the single workhorse: kernels, cokernels, linear
//! solves and splittings are all read off from it.

mod matrix;
mod ring;
mod snf;

pub use matrix::Matrix;
pub use ring::Ring;
pub use snf::{
    cokernel_invariants, elementary_divisors, inverse, kernel_basis, left_inverse, rank, right_inverse,
    smith_normal_form, solve, solve_matrix, ModulePresentation, SmithForm,
};
