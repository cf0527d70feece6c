//! Gauss-law qudit stabilizer codes for Z_N lattice gauge theories with
//! staggered fermions, their logical and bosonic rewrites, and the numerical
//! checks that tie the three pictures together.

pub mod bosonic;
pub mod circuits;
pub mod cli;
pub mod dense;
pub mod encoding;
pub mod error;
pub mod gauss_code;
pub mod io;
pub mod logical;
pub mod stabilizer;
pub mod terms;
pub mod verify;
pub mod zn_algebra;

pub use error::{Error, Result};
