//! Discrete convexity and separating systems.
//!
//! * [`metric`]: segments, convexity and hulls on finite metric spaces.
//! * [`hamming`]: Hamming-space hulls, half-spaces and separating coordinates.
//! * [`separation`]: `ε-(s,t)`-separation of codes and set systems.
//! * [`euclidean`]: angle tests, acute sets and the cube embedding.
//! * [`l1`]: boxes and `(2,1)`-separation in real `L¹`.
//! * [`bounds`], [`construct`], [`search`]: lower bounds, constructions and
//!   exact values of `κ(n)`.

pub mod bounds;
pub mod construct;
pub mod error;
pub mod euclidean;
pub mod hamming;
pub mod l1;
pub mod metric;
pub mod rational;
pub mod search;
pub mod separation;

pub use error::{Error, Result};
pub use hamming::{Guard, HammingSpace, Membership, ProjectionHull, Word};
pub use metric::{FiniteMetricSpace, PointSet};
pub use separation::{Code, SeparationReport};
