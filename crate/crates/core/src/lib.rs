//! Exact computations with cluster-algebra seed patterns.
//!
//! The crate covers matrix and seed mutation, exhaustive enumeration of
//! mutation classes and seed patterns, finite-type recognition, folding by
//! group actions, and the polygon and punctured-polygon models of types A-D.

pub mod canon;
pub mod classify;
pub mod error;
pub mod exchange;
pub mod explore;
pub mod folding;
pub mod geom;
pub mod laurent;
pub mod matrix;
pub mod seed;

pub use error::{Error, Result};
pub use exchange::{Diagram, DiagramEdge, ExtendedExchangeMatrix};
pub use laurent::{LaurentPolynomial, Monomial, QuadraticNumber, TropicalMonomial};
pub use matrix::{Int, IntMatrix};
pub use seed::{CanonicalSeed, Seed};
