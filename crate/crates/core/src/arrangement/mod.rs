//! 2-D incidence arrangements built from axis-tied line families, the
//! triangles they contain, popularity filtering, graph refinement, and the
//! pipeline that turns triangles into 3-term arithmetic progressions.
//!
//! An arrangement here is a finite point set together with lines drawn from
//! up to four families: horizontal `y = a`, vertical `x = a`, diagonal
//! `x - y = t`, and antidiagonal `x + y = s`. Within one family a point
//! lies on exactly one line, so incidence is a parameter lookup, never a
//! geometric predicate.

mod build;
mod pipeline;
mod refine;
mod triangles;

pub use build::{build_ap_arrangement, build_sum_arrangement, Arrangement2, Line2, LineFamily, Point2};
pub use pipeline::{pipeline_k3, PipelineK3Report};
pub use refine::{popular_differences, refine_graph, RefineStrategy, RefinementReport};
pub use triangles::{
    enumerate_triangles, lines_graph, right_angle_counts, triangles_to_aps, ApMultiplicity,
    Orientation, TriangleWitness,
};
