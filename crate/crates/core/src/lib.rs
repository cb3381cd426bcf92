//! Certified bounds on the γ₂ factorization norm of Boolean matrices, with
//! the supporting combinatorics: degeneracy, blocky decompositions, dense
//! submatrix extraction, semilinear incidence graphs and discrepancy.

pub mod blocky;
pub mod boolmat;
pub mod constructions;
pub mod discrepancy;
pub mod error;
pub mod experiments;
pub mod extraction;
mod flow;
pub mod format;
pub mod gamma2;
pub mod seed;
pub mod semilinear;
pub mod spectral;

pub use boolmat::BoolMatrix;
pub use error::{Error, Result};
pub use spectral::RealMatrix;
