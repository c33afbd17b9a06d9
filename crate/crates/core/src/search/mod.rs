//! Derivative-free search over distributions and the small geometry of
//! the cross-section: hulls of point clouds and outer regions cut out by
//! halfspaces.

mod hull;
mod optimize;
mod region;
mod seeds;
mod simplex;

pub use hull::{convex_hull_3d, from_bgd, to_bgd, Polytope3, HULL_EPS};
pub use optimize::{
    embed_dense, generate_cloud, logits, optimize_distribution, optimize_distribution_with,
    restart_seed, section_point, softmax, sphere_directions, CloudOptions, Objective,
    RestartOutcome, SearchConfig, SearchResult, DEGENERATE_RANK, MAX_ALPHABET,
};
pub use region::{outer_region, OuterRegion, RegionVertex, REGION_TOL};
pub use seeds::{vertex_distribution, Vertex};
pub use simplex::{minimize_scalar, nelder_mead, Minimum, NelderMeadOptions};
