//! Exact twisted Hochschild, paracyclic and cyclic homology of algebras given
//! by structure constants over the rationals.
//!
//! Everything here is pure computation over `alloc`; file formats, reports and
//! the command line live in the `hochkit` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod builtin;
pub mod cyclic;
pub mod error;
pub mod exactla;
pub mod hochschild;
pub mod paracyclic;
pub mod products;
pub mod smash;

pub use algebra::{Automorphism, BasisElement, Bimodule, BimoduleMap, GradedAlgebra, Weight, Window};
pub use error::{Error, Result};
pub use exactla::{MatrixQ, Rational};
