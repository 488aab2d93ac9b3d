//! Maximum cliques in grounded L-shape and 1-bend string intersection
//! graphs: exact rational geometry, polynomial clique algorithms for
//! restricted L-shape classes, dynamic 2D range-maximum indexes, and an
//! executable hardness-reduction construction with a verifier.

pub mod cliques;
pub mod gen;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod permutation;
pub mod range_maxima;
pub mod reductions;
