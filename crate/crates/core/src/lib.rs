//! Homological invariants of finite simplicial complexes over F2 and the
//! integers: Steenrod squares on simplicial cochains, Poincare duality
//! certificates, orientation characters, Wu and Stiefel-Whitney classes,
//! and reducibility verdicts for duality complexes of dimension up to 4.

pub mod algebra;
pub mod catalog;
pub mod complex;
pub mod duality;
pub mod error;
pub mod products;
pub mod report;
pub mod verdict;

pub use error::{Error, Result};
