//! Exact V- and H-representation polytope calculus.

mod body;
mod dd;
mod halfspace;
pub mod io;
mod ops;

pub use body::{Body, HPolytope, VPolytope, MAX_DIM};
pub use halfspace::Halfspace;
pub(crate) use ops::gauge_by_facets;
pub use ops::{
    body_from_hrep, central_symmetral, conv_union, equal_sets, facets_of, gauge_value, hull_vertices, intersect,
    intersect_bodies, membership, minkowski_sum, scale_reflect, support, vertices_of, DiscardedPoint, GaugeValue,
    HullResult, Intersection, Membership,
};
