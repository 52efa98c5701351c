//! Exact characteristic-class calculus for smooth orbifold pairs `(X, Δ)`.
//!
//! Classes live in a truncated graded ring over a small set of ambient
//! presets ([`ring`]). On top of it, [`orbifold`] builds the Chern and Segre
//! classes of the order-`k` orbifold cotangent bundles and the
//! Green–Griffiths coefficient `χ_k`; [`threshold`] runs the exact searches
//! built on `χ_k`; [`schur`] and [`gysin`] hold the partition combinatorics.
//!
//! All `χ` values are normalized to covering degree 1.

pub mod error;
pub mod gysin;
pub mod orbifold;
pub mod pair_file;
pub mod rational;
pub mod ring;
pub mod schur;
pub mod threshold;

pub use error::{Error, Result};
pub use orbifold::{OrbifoldComponent, OrbifoldPair};
pub use rational::{ExtMultiplicity, Order, Rational};
pub use ring::{Geometry, GeometryKind, GradedClass};
pub use schur::{Partition, SchurExpansion};
