use super::build::build_ap_arrangement;
use super::refine::{refine_graph, RefineStrategy, RefinementReport};
use super::triangles::{enumerate_triangles, triangles_to_aps, ApMultiplicity};
use crate::exact::{difference_set_along_graph, sumset_along_graph, NumberSet, PairGraph, Rat};
use crate::Result;

/// End-to-end result of the 3-term pipeline.
#[derive(Debug, Clone)]
pub struct PipelineK3Report {
    pub epsilon: Rat,
    /// Absent only for a graph with no edges at all (nothing to refine).
    pub refinement: Option<RefinementReport>,
    pub point_count: u64,
    pub line_count: u64,
    pub triangle_count: u64,
    /// Distinct projected 3-term progressions with their triangle
    /// multiplicities, sorted by progression.
    pub aps: Vec<ApMultiplicity>,
}

impl PipelineK3Report {
    pub fn distinct_ap_count(&self) -> u64 {
        self.aps.len() as u64
    }
}

/// Runs the 3-term extraction end to end: refine the graph by difference
/// popularity (automatic cutoff at retention `1−ε`), build the
/// horizontal/diagonal/antidiagonal arrangement on the surviving edges,
/// enumerate its triangles, and project them to 3-term progressions.
///
/// A graph with no edges or loops yields an empty report rather than an
/// error, so degenerate instances (|A| ≤ 1 among them) flow through.
pub fn pipeline_k3(a: &NumberSet, g: &PairGraph, epsilon: &Rat) -> Result<PipelineK3Report> {
    if g.edge_count() + g.loop_count() == 0 {
        return Ok(PipelineK3Report {
            epsilon: epsilon.clone(),
            refinement: None,
            point_count: 0,
            line_count: 0,
            triangle_count: 0,
            aps: Vec::new(),
        });
    }
    let (refined, report) = refine_graph(a, g, epsilon, &RefineStrategy::Auto)?;
    let diffs = difference_set_along_graph(a, &refined)?;
    let sums = sumset_along_graph(a, &refined)?;
    let arr = build_ap_arrangement(a, &refined, &diffs, &sums)?;
    let triangles = enumerate_triangles(&arr)?;
    let aps = triangles_to_aps(&triangles);
    Ok(PipelineK3Report {
        epsilon: epsilon.clone(),
        refinement: Some(report),
        point_count: arr.point_count() as u64,
        line_count: arr.line_count() as u64,
        triangle_count: triangles.len() as u64,
        aps,
    })
}
