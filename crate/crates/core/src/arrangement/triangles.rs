use super::build::{Arrangement2, Line2, LineFamily, Point2};
use crate::exact::{ApWitness, PairGraph, Rat};
use crate::Result;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Whether the apex sits above or below the horizontal base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Up,
    Down,
}

/// A proper triangle of the arrangement in canonical form: a horizontal
/// base pair (`base_left.x < base_right.x`, equal `y`) plus the apex on
/// the diagonal through one base point and the antidiagonal through the
/// other.
///
/// The apex is determined by the base and the orientation:
/// `apex.x = (base_left.x + base_right.x) / 2` and
/// `apex.y = base.y ± (base_right.x − base_left.x) / 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TriangleWitness {
    pub base_left: Point2,
    pub base_right: Point2,
    pub apex: Point2,
    pub orientation: Orientation,
}

impl TriangleWitness {
    fn from_base(base_left: &Point2, base_right: &Point2, orientation: Orientation) -> Self {
        let two = Rat::from_integer(2.into());
        let mid = (&base_left.x + &base_right.x) / &two;
        let rise = (&base_right.x - &base_left.x) / &two;
        let apex_y = match orientation {
            Orientation::Up => &base_left.y + &rise,
            Orientation::Down => &base_left.y - &rise,
        };
        TriangleWitness {
            base_left: base_left.clone(),
            base_right: base_right.clone(),
            apex: Point2::new(mid, apex_y),
            orientation,
        }
    }

    /// The 3-term progression of the x-coordinates, ascending.
    pub fn projected_ap(&self) -> ApWitness {
        ApWitness::new(vec![
            self.base_left.x.clone(),
            self.apex.x.clone(),
            self.base_right.x.clone(),
        ])
    }
}

/// All proper triangles of a horizontal/diagonal/antidiagonal arrangement.
///
/// Every proper triangle uses one line of each family, so its unique
/// horizontal pair is the base and the third point is one of the two
/// apex positions; enumeration therefore scans base pairs per horizontal
/// line and tests apex membership. Horizontal lines are processed in
/// parallel and the result is sorted, so the output order is independent
/// of the schedule.
pub fn enumerate_triangles(arr: &Arrangement2) -> Result<Vec<TriangleWitness>> {
    arr.expect_families(&[
        LineFamily::Horizontal,
        LineFamily::Diagonal,
        LineFamily::Antidiagonal,
    ])?;
    let mut rows: BTreeMap<&Rat, Vec<&Point2>> = BTreeMap::new();
    for p in arr.points() {
        rows.entry(&p.y).or_default().push(p);
    }
    let rows: Vec<Vec<&Point2>> = rows.into_values().collect();
    let mut found: Vec<TriangleWitness> = rows
        .par_iter()
        .flat_map_iter(|row| {
            let mut local = Vec::new();
            for (i, left) in row.iter().enumerate() {
                for right in &row[i + 1..] {
                    for orientation in [Orientation::Up, Orientation::Down] {
                        let t = TriangleWitness::from_base(left, right, orientation);
                        if arr.contains_point(&t.apex) {
                            local.push(t);
                        }
                    }
                }
            }
            local
        })
        .collect();
    found.sort();
    Ok(found)
}

/// For every point `p = (a, b)` of a vertical/horizontal/antidiagonal
/// arrangement, the number of right-isosceles triangles with their right
/// angle at `p`: pairs `(a, b′)`, `(a′, b)` of arrangement points with
/// `a + b′ = a′ + b` (equal legs along the two axes) and `b′ ≠ b`.
pub fn right_angle_counts(arr: &Arrangement2) -> Result<BTreeMap<Point2, u64>> {
    arr.expect_families(&[
        LineFamily::Vertical,
        LineFamily::Horizontal,
        LineFamily::Antidiagonal,
    ])?;
    let mut columns: BTreeMap<&Rat, Vec<&Rat>> = BTreeMap::new();
    for p in arr.points() {
        columns.entry(&p.x).or_default().push(&p.y);
    }
    let mut counts = BTreeMap::new();
    for p in arr.points() {
        let mut count = 0u64;
        for y in &columns[&p.x] {
            if **y == p.y {
                continue;
            }
            let delta = *y - &p.y;
            if arr.contains_point(&Point2::new(&p.x + &delta, p.y.clone())) {
                count += 1;
            }
        }
        counts.insert(p.clone(), count);
    }
    Ok(counts)
}

/// Deduplicated projection of triangles onto 3-term progressions of their
/// x-coordinates, with the number of triangles behind each progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApMultiplicity {
    pub ap: ApWitness,
    pub multiplicity: u64,
}

/// Projects each triangle to the 3-AP of its x-coordinates and groups
/// equal progressions, returning them sorted with multiplicities.
pub fn triangles_to_aps(ts: &[TriangleWitness]) -> Vec<ApMultiplicity> {
    let mut grouped: BTreeMap<Vec<Rat>, u64> = BTreeMap::new();
    for t in ts {
        let ap = t.projected_ap();
        *grouped.entry(ap.terms().to_vec()).or_insert(0) += 1;
    }
    grouped
        .into_iter()
        .map(|(terms, multiplicity)| ApMultiplicity {
            ap: ApWitness::new(terms),
            multiplicity,
        })
        .collect()
}

/// The adjacency graph of the arrangement's lines: two lines are joined
/// when their crossing point belongs to the arrangement.
///
/// Since every point lies on exactly one line per family, each point
/// contributes the three pairs among its incident lines and nothing else.
/// Triangles of this graph count proper triangles plus one degenerate
/// concurrent triple per point, so
/// `lines_graph(arr).count_triangles() = |triangles| + |points|`.
pub fn lines_graph(arr: &Arrangement2) -> PairGraph {
    let lines = arr.lines();
    let index: BTreeMap<&Line2, usize> = lines.iter().zip(0..).collect();
    let mut g = PairGraph::new(lines.len(), false);
    for p in arr.points() {
        let incident: Vec<usize> = arr
            .families()
            .iter()
            .map(|fam| {
                let line = Line2 {
                    family: *fam,
                    parameter: fam.parameter_of(p),
                };
                index[&line]
            })
            .collect();
        for (k, &i) in incident.iter().enumerate() {
            for &j in &incident[k + 1..] {
                g.add_edge(i, j).expect("line indices are in range");
            }
        }
    }
    g
}
