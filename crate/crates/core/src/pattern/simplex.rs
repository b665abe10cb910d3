use super::linalg::{cross_normal, rank_int};
use super::vecnd::{IntVector, Pattern};
use crate::{Error, Result};
use num::BigInt;

/// The staircase simplex on `d+1` vertices: the origin, `i·e_1 + e_{i+1}`
/// for `1 ≤ i ≤ d−1`, and `d·e_1`. Vertex `i` is the unique point with
/// first coordinate `i`, so the pattern's sorted order coincides with the
/// vertex-index order.
pub fn simplex_vertices(d: usize) -> Result<Pattern> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { got: d, min: 2 });
    }
    let mut points = Vec::with_capacity(d + 1);
    points.push(IntVector::new(vec![BigInt::from(0); d])?);
    for i in 1..d {
        let mut coords = vec![BigInt::from(0); d];
        coords[0] = BigInt::from(i);
        coords[i] = BigInt::from(1);
        points.push(IntVector::new(coords)?);
    }
    let mut last = vec![BigInt::from(0); d];
    last[0] = BigInt::from(d);
    points.push(IntVector::new(last)?);
    Pattern::new(format!("simplex-{d}"), points)
}

/// The shifted grid `{0,…,d−1} × {−1,0,1} × {0,1}^{d−2}`, whose subsets
/// supply hyperplanes parallel to every facet of the simplex. Its size is
/// `d·3·2^{d−2}`.
pub fn grid_pattern(d: usize) -> Result<Pattern> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { got: d, min: 2 });
    }
    let mut ranges: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    ranges.push((0..d as i64).map(BigInt::from).collect());
    ranges.push([-1i64, 0, 1].iter().map(|&v| BigInt::from(v)).collect());
    for _ in 0..d - 2 {
        ranges.push([0i64, 1].iter().map(|&v| BigInt::from(v)).collect());
    }
    let mut points = vec![Vec::new()];
    for range in &ranges {
        let mut next = Vec::with_capacity(points.len() * range.len());
        for prefix in &points {
            for v in range {
                let mut coords = prefix.clone();
                coords.push(v.clone());
                next.push(coords);
            }
        }
        points = next;
    }
    let points: Result<Vec<IntVector>> = points.into_iter().map(IntVector::new).collect();
    Pattern::new(format!("grid-{d}"), points?)
}

/// The `d+1` facets of the simplex, each the pattern of the `d` vertices
/// left after omitting one. Ordered lexicographically by their vertex
/// index sets, i.e. omitting the last vertex first.
pub fn facets(d: usize) -> Result<Vec<Pattern>> {
    let simplex = simplex_vertices(d)?;
    let vertices = simplex.points();
    (0..=d)
        .rev()
        .enumerate()
        .map(|(idx, omit)| {
            let pts: Vec<IntVector> = vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, v)| v.clone())
                .collect();
            Pattern::new(format!("simplex-{d}-facet-{idx}"), pts)
        })
        .collect()
}

/// The primitive normal of each facet's affine hull, in facet order:
/// the generalized cross product of the facet's edge vectors, reduced to
/// gcd 1 with its first nonzero coordinate positive.
pub fn facet_normals(d: usize) -> Result<Vec<IntVector>> {
    facets(d)?
        .iter()
        .map(|facet| {
            let base = &facet.points()[0];
            let edges: Vec<Vec<BigInt>> = facet.points()[1..]
                .iter()
                .map(|p| {
                    p.coords()
                        .iter()
                        .zip(base.coords())
                        .map(|(a, b)| a - b)
                        .collect()
                })
                .collect();
            let normal = IntVector::new(cross_normal(&edges))?;
            normal.primitive().map_err(|_| {
                Error::Internal(format!("facet {} of the simplex is degenerate", facet.name()))
            })
        })
        .collect()
}

/// A facet together with `d` grid points, the origin among them, whose
/// affine hull is parallel to the facet (equal primitive normal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftWitness {
    pub facet_index: usize,
    pub normal: IntVector,
    pub grid_points: Vec<IntVector>,
}

/// For every facet of the simplex, finds `d` points of the grid — the
/// origin plus `d−1` linearly independent points, all orthogonal to the
/// facet normal — witnessing that the grid contains a hyperplane section
/// parallel to the facet. The greedy scan over the grid's sorted points
/// is deterministic.
pub fn facet_shift_check(d: usize) -> Result<Vec<ShiftWitness>> {
    let grid = grid_pattern(d)?;
    facet_normals(d)?
        .into_iter()
        .enumerate()
        .map(|(facet_index, normal)| {
            let mut picked: Vec<IntVector> = Vec::new();
            let mut rows: Vec<Vec<BigInt>> = Vec::new();
            for t in grid.points() {
                if t.is_zero() || normal.dot_int(t) != BigInt::from(0) {
                    continue;
                }
                let mut candidate = rows.clone();
                candidate.push(t.coords().to_vec());
                if rank_int(&candidate) > rows.len() {
                    rows = candidate;
                    picked.push(t.clone());
                    if picked.len() == d - 1 {
                        break;
                    }
                }
            }
            if picked.len() < d - 1 {
                return Err(Error::Internal(format!(
                    "no parallel section of the grid found for facet {facet_index} in dimension {d}"
                )));
            }
            let origin = IntVector::new(vec![BigInt::from(0); d])?;
            let mut grid_points = vec![origin];
            grid_points.extend(picked);
            Ok(ShiftWitness {
                facet_index,
                normal,
                grid_points,
            })
        })
        .collect()
}
