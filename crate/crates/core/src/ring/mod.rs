//! Truncated graded rings over a fixed ambient geometry.

mod class;
mod geometry;

pub use class::GradedClass;
pub use geometry::{Generator, Geometry, GeometryKind, Monomial, CANONICAL, SECOND_CHERN};
