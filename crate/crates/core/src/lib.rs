#![no_std]
//! Exact representation theory of finite acyclic quivers.
//!
//! Everything here is computed with exact arithmetic over the rationals or a
//! prime field: Hom and Ext¹ between representations, decomposition into
//! indecomposables, exceptional sequences and tilting modules, perpendicular
//! categories, and the stratifications they induce.

extern crate alloc;

pub mod error;
pub mod exceptional;
pub mod field;
pub mod linalg;
pub mod perpcat;
pub mod quiver;
pub mod repcat;
pub mod strat;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use linalg::Mat;
pub use quiver::Quiver;
pub use repcat::{Morphism, Rep};
