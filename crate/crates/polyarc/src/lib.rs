pub mod geometry_core;
pub mod delaunay;
pub mod annulus_solver;
pub mod arc_fit;
pub mod hull_tree;
pub mod sorted_range;
pub mod feasibility;
pub mod dp_compress;
pub mod random_hull;
