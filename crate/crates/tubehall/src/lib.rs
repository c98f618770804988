//! Exact computational workbench for the Ringel-Hall Lie algebras of the
//! 2-periodic tube orbit categories: the cluster tube of rank 2 and the root
//! category of the homogeneous tube, together with the classification
//! arithmetic for orbit categories of the category generated by a spherical
//! object and the quiver-covering combinatorics behind it.
//!
//! Everything is exact: arithmetic happens over prime fields or the integers,
//! and all Hall numbers are obtained by explicit enumeration of morphism
//! orbits.

pub mod error;
pub mod field;
pub mod scan;
pub mod tube;
pub mod derived;
pub mod orbit;
pub mod lie;
pub mod atlas;
pub mod covering;

pub use error::{Error, Result};
