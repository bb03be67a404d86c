//! Exact normal forms for formal vector fields and vertical twists on jet Lie
//! algebras, with the supporting cohomology, cocycle and factorization
//! machinery and a finite-dimensional check of the entropy inequality.

pub mod cli;
pub mod cocycle;
pub mod cohomology;
pub mod error;
pub mod factorize;
pub mod gpe;
pub mod jetlie;
pub mod liealg;
pub mod linalg;
pub mod lp;
pub mod normalform;
pub mod poly;
pub mod rational;
pub mod ring;

pub use error::{JetError, Result};
