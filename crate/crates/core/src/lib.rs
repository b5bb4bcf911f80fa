//! Exact nerves of convex families, barycentric subdivisions, witness maps
//! on subdivided nerves, and the mod-2 Van Kampen obstruction.
//!
//! All geometry is generic over [`Scalar`]; the [`Rational`] instantiation
//! is exact and is what the certificate pipeline uses.

pub mod certificate;
pub mod complex;
pub mod convex;
mod error;
pub mod format;
pub mod nerve;
pub mod obstruction;
mod scalar;
pub mod wegner;

pub use complex::{barycentric_subdivision, FVector, Face, SdComplex, SimplicialComplex, VertexId};
pub use convex::{HPolytope, Point};
pub use error::{Error, Result};
pub use nerve::{ConvexFamily, NerveMatch};
pub use scalar::Scalar;
pub use wegner::WegnerMap;

/// Arbitrary-precision rational, the exact scalar.
pub type Rational = num_rational::BigRational;

pub type RatPoint = Point<Rational>;
pub type RatPolytope = HPolytope<Rational>;
pub type RatFamily = ConvexFamily<Rational>;
pub type RatWegnerMap = WegnerMap<Rational>;

pub type F64Point = Point<f64>;
pub type F64Polytope = HPolytope<f64>;
pub type F64Family = ConvexFamily<f64>;
