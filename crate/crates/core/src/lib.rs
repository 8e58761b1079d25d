//! Weight structures on bounded chain complexes of free modules over the
//! integers and prime fields.

pub mod cell;
pub mod chain;
pub mod cli;
pub mod document;
pub mod error;
pub mod fuzz;
pub mod kzero;
pub mod linalg;
pub mod weight;

pub use error::{Error, Result};
