//! Exact computation of the random-walk invariant of string links, the
//! R-matrix tangle functor on its graded components, and the exterior-algebra
//! Burau machinery that relates them.

pub mod braid;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod randomwalk;
pub mod registry;
pub mod ring;
pub mod rmatrix;
pub mod verify;

pub use error::{Error, Result};
