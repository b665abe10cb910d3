//! Lattice patterns inside Cartesian powers of a number set: the simplex
//! and grid templates, facet normals with parallel-shift witnesses,
//! homothetic-copy and simplex enumeration, hyperplane class censuses
//! with richness filtering, and projection of simplices onto arithmetic
//! progressions of their first coordinates.

mod classes;
mod homothets;
mod linalg;
mod pipeline;
mod simplex;
mod simplices;
mod vecnd;

pub use classes::{hyperplane_classes, rich_point_filter, HyperplaneClass};
pub use homothets::{
    cartesian_power, enumerate_homothetic_copies, match_pattern_in_pointset, popular_holders,
    HomotheticCopy, RatioPolicy,
};
pub use pipeline::{
    covering_scaling_report, general_pipeline, GeneralPipelineReport, PipelineConfig,
    ScalingReport, ThresholdRule,
};
pub use simplex::{
    facet_normals, facet_shift_check, facets, grid_pattern, simplex_vertices, ShiftWitness,
};
pub use simplices::{
    brute_force_simplices, enumerate_simplices, project_simplices, ProjectionReport,
    SimplexWitness,
};
pub use vecnd::{IntVector, Pattern, PointND};
