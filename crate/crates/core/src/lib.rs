//! Exact congruence modules, Wiles defects and Koszul homology for finite
//! local algebras over `O = Z_(p)`.

pub mod algebra;
pub mod congruence;
pub mod engine;
pub mod error;
pub mod family;
pub mod field;
pub mod groebner;
pub mod koszul;
pub mod lab;
pub mod lattice;
pub mod matrix;
pub mod omodule;
pub mod oracle;
pub mod point;
pub mod presentation;
pub mod problem;
pub mod poly;
pub mod scalar;
pub mod report;
pub mod search;
pub mod smith;

#[cfg(test)]
mod testutil;

pub use error::{Error, ErrorClass, Result};
pub use scalar::{Dvr, LocalScalar, Valuation};

/// Matrices over `O` (and `E`).
pub type QMatrix = matrix::Matrix<LocalScalar>;
/// Matrices over `F_p`, entries reduced.
pub type FpMatrix = matrix::Matrix<u64>;
