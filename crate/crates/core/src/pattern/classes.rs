use super::simplex::facet_normals;
use super::vecnd::{IntVector, PointND};
use crate::exact::{NumberSet, Rat};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// The partition of `A^d` into hyperplane classes for one primitive
/// normal: every point lands in the class of its inner product with the
/// normal, so the class sizes sum to `|A|^d`. A class is rich when it
/// holds at least `rich_threshold` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneClass {
    normal: IntVector,
    classes: BTreeMap<Rat, u64>,
    rich_threshold: u64,
}

impl HyperplaneClass {
    pub fn normal(&self) -> &IntVector {
        &self.normal
    }

    /// Offset → class size, every nonempty class.
    pub fn classes(&self) -> &BTreeMap<Rat, u64> {
        &self.classes
    }

    pub fn rich_threshold(&self) -> u64 {
        self.rich_threshold
    }

    /// Size of the class at `offset`; zero when no point of the power
    /// lands there.
    pub fn count_at(&self, offset: &Rat) -> u64 {
        self.classes.get(offset).copied().unwrap_or(0)
    }

    pub fn is_rich(&self, offset: &Rat) -> bool {
        self.count_at(offset) >= self.rich_threshold
    }

    pub fn rich_offsets(&self) -> Vec<Rat> {
        self.classes
            .iter()
            .filter(|(_, &n)| n >= self.rich_threshold)
            .map(|(o, _)| o.clone())
            .collect()
    }

    pub fn rich_class_count(&self) -> u64 {
        self.classes
            .values()
            .filter(|&&n| n >= self.rich_threshold)
            .count() as u64
    }

    pub fn total_points(&self) -> u64 {
        self.classes.values().sum()
    }

    /// Same census with the richness cutoff replaced.
    pub fn with_rich_threshold(mut self, rich_threshold: u64) -> Self {
        self.rich_threshold = rich_threshold;
        self
    }
}

/// Census of the hyperplane classes of `A^d` orthogonal to `normal`,
/// computed by folding one coordinate at a time: after `c` coordinates
/// the map holds the distribution of `Σ ν_i·x_i` over `A^c`, so the
/// power is never materialized.
pub fn hyperplane_classes(
    a: &NumberSet,
    d: usize,
    normal: &IntVector,
    rich_threshold: u64,
) -> Result<HyperplaneClass> {
    if normal.dim() != d {
        return Err(Error::PatternDimensionMismatch {
            expected: d,
            got: normal.dim(),
        });
    }
    let normal = normal.primitive()?;
    let mut classes: BTreeMap<Rat, u64> = BTreeMap::new();
    classes.insert(Rat::from_integer(0.into()), 1);
    for c in 0..d {
        let coeff = Rat::from_integer(normal.get(c).clone());
        let mut next: BTreeMap<Rat, u64> = BTreeMap::new();
        for (offset, count) in &classes {
            for x in a.iter() {
                *next.entry(offset + &coeff * x).or_insert(0) += count;
            }
        }
        classes = next;
    }
    Ok(HyperplaneClass {
        normal,
        classes,
        rich_threshold,
    })
}

/// Keeps the candidate points whose hyperplane class is rich for every
/// facet normal of the standard `d`-simplex, and returns the censuses the
/// decision was made against (facet order). Output points are sorted and
/// deduplicated.
pub fn rich_point_filter(
    a: &NumberSet,
    d: usize,
    candidates: &[PointND],
    rich_threshold: u64,
) -> Result<(Vec<PointND>, Vec<HyperplaneClass>)> {
    let normals = facet_normals(d)?;
    let censuses: Vec<HyperplaneClass> = normals
        .iter()
        .map(|normal| hyperplane_classes(a, d, normal, rich_threshold))
        .collect::<Result<_>>()?;
    let mut kept = Vec::new();
    for p in candidates {
        if p.dim() != d {
            return Err(Error::PatternDimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
        if censuses.iter().all(|hc| hc.is_rich(&hc.normal().dot(p))) {
            kept.push(p.clone());
        }
    }
    kept.sort();
    kept.dedup();
    Ok((kept, censuses))
}
