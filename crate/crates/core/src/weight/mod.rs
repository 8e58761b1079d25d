//! The weight structure on bounded free complexes whose heart is the free
//! modules in degree zero, together with its left adjacent t-structure.
//!
//! Memberships are decided on homology: `X ∈ w≥n` when `H_i X = 0` for
//! `i < n`, and `X ∈ w≤n` when `H_i X = 0` for `i > n` and `H_n X` is free.

mod decompose;
mod heart;
mod membership;
mod orthogonal;

pub use decompose::{compare_decompositions, weight_decompose, DecompositionComparison, WeightDecomposition};
pub use heart::{heart_split, strictify_heart, HeartSplitting, Strictified};
pub use membership::{
    check_left_adjacent, in_heart, in_t_geq, in_t_leq, in_w_eq, in_w_geq, in_w_leq, t_cotruncate, t_truncate_below,
    weight_bounds, weight_bounds_of, TCotruncation, WeightBounds,
};
pub use orthogonal::{check_negative, check_orthogonality, detects_nonzero, NegativityFailure, NegativityVerdict};
