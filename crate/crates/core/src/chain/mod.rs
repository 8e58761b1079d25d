//! Bounded chain complexes of finitely generated free modules and their
//! homotopy theory.
//!
//! Grading is homological: `d_i : X_i -> X_{i-1}`. Shifting is
//! `(Σ^k X)_i = X_{i-k}` with differentials multiplied by `(-1)^k`.

mod acyclic;
mod classify;
mod complex;
mod constructions;
mod homology;
mod homotopy;
mod map;
mod minimize;
mod quotient;

pub use acyclic::{split_acyclic, AcyclicSplitting, ElementaryPiece};
pub use classify::{equivalence_between, homotopy_classify, standard_model, Classification};
pub use complex::{ChainComplex, ComplexDefect};
pub use constructions::{cone, cylinder, hom_complex, Cone, Cylinder, HomComplex};
pub use homology::{homology, pi0_hom, HomologyProfile, HomotopyClassGroup};
pub use homotopy::{
    find_homotopy, homotopy_inverse, is_homotopy_equivalence, is_quasi_iso, nullhomotopy, solve_up_to_homotopy,
    HomotopyEquivalence,
};
pub use map::{ChainMap, Homotopy};
pub use minimize::{is_minimal, minimize, Minimization};
pub use quotient::{cokernel_of_split_mono, is_degreewise_split_mono, SplitQuotient};
