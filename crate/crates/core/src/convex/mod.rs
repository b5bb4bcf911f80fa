//! Exact convex geometry over an ordered field.

mod hull;
mod linsolve;
mod lp;
mod point;
mod polytope;

pub use hull::{
    generic_crossing_parity, hull_intersection, hulls_intersect, point_in_hull, Crossing,
};
pub use point::Point;
pub use polytope::HPolytope;
