//! Seeded generators with known answers and the property campaigns built
//! on them.
//!
//! Complexes are direct sums of free, torsion and elementary blocks hidden
//! by unimodular changes of basis, so their homology is known without
//! computing it.

mod gen;
pub mod oracle;
mod runner;
mod suites;

pub use gen::{
    conjugate, conjugation_map, expected_profile, gen_chain_map, gen_chain_map_with, gen_complex, gen_complex_with,
    random_unimodular, refiltration_source, trial_seed, Block, BlockWeights, GenParams, Generated,
};
pub use runner::{replay, run_suite, Failure, Outcome, Tally, TrialCtx, VerifyReport};
pub use suites::{find_suite, suite_names, Suite, SUITES};
