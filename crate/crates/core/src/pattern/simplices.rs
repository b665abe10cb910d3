use super::classes::HyperplaneClass;
use super::homothets::RatioPolicy;
use super::simplex::{facet_normals, simplex_vertices};
use super::vecnd::{IntVector, PointND};
use crate::arrangement::ApMultiplicity;
use crate::exact::{ApWitness, NumberSet, Rat};
use crate::{Error, Result};
use num::BigInt;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Hosts larger than this are refused by the subset-scan oracle.
const BRUTE_FORCE_HOST_CAP: u64 = 200;

/// One homothetic image of the standard simplex found inside a point
/// set: `vertices[i]` is the image of simplex vertex `i`, and the first
/// coordinates of the vertices form the projected arithmetic
/// progression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexWitness {
    pub holder: PointND,
    pub ratio: Rat,
    pub vertices: Vec<PointND>,
    pub projected_ap: ApWitness,
}

fn witness_from(holder: &PointND, ratio: &Rat, vertices: Vec<PointND>) -> SimplexWitness {
    let mut xs: Vec<Rat> = vertices.iter().map(|v| v.get(0).clone()).collect();
    if xs[0] > xs[xs.len() - 1] {
        xs.reverse();
    }
    SimplexWitness {
        holder: holder.clone(),
        ratio: ratio.clone(),
        vertices,
        projected_ap: ApWitness::new(xs),
    }
}

/// All homothetic images of the standard `d`-simplex whose vertices lie
/// in `allowed`, optionally restricted to images supported on rich
/// hyperplane classes.
///
/// Ratio candidates come from first-coordinate gaps (the simplex spans
/// `d` along that axis), and for each ratio only points whose first
/// coordinate starts a full arithmetic chain are tried. When `rich` is
/// given it must hold one census per facet, in facet order; an image is
/// kept only if each facet's supporting-hyperplane offset is rich in the
/// matching census. Output is sorted by `(ratio, holder)`.
pub fn enumerate_simplices(
    d: usize,
    allowed: &[PointND],
    rich: Option<&[HyperplaneClass]>,
    policy: RatioPolicy,
) -> Result<Vec<SimplexWitness>> {
    let simplex = simplex_vertices(d)?;
    let template: &[IntVector] = simplex.points();
    let normals = facet_normals(d)?;
    if let Some(censuses) = rich {
        if censuses.len() != d + 1 {
            return Err(Error::Internal(format!(
                "expected {} facet censuses, got {}",
                d + 1,
                censuses.len()
            )));
        }
    }
    for p in allowed {
        if p.dim() != d {
            return Err(Error::PatternDimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let points: BTreeSet<&PointND> = allowed.iter().collect();
    let mut by_x0: BTreeMap<&Rat, Vec<&PointND>> = BTreeMap::new();
    for p in &points {
        by_x0.entry(p.get(0)).or_default().push(p);
    }
    let x0s: BTreeSet<&Rat> = by_x0.keys().copied().collect();
    let span = Rat::from_integer(d.into());
    let mut ratios: BTreeSet<Rat> = BTreeSet::new();
    for &x in &x0s {
        for &y in &x0s {
            if x == y {
                continue;
            }
            let lambda = (y - x) / &span;
            if policy.admits(&lambda) {
                ratios.insert(lambda);
            }
        }
    }
    // Facet `j` omits vertex `d - j`; every remaining vertex lies on its
    // supporting hyperplane, so one representative fixes the offset.
    let reps: Vec<usize> = (0..=d).map(|j| if d - j == 0 { 1 } else { 0 }).collect();
    let ratios: Vec<Rat> = ratios.into_iter().collect();
    let found: Vec<SimplexWitness> = ratios
        .par_iter()
        .flat_map_iter(|lambda| {
            let chain_starts: Vec<&Rat> = x0s
                .iter()
                .filter(|&&x| {
                    (1..=d).all(|i| {
                        x0s.contains(&(x + lambda * Rat::from_integer(i.into())))
                    })
                })
                .copied()
                .collect();
            let mut local = Vec::new();
            for x0 in chain_starts {
                'holders: for h in &by_x0[x0] {
                    let mut vertices = Vec::with_capacity(d + 1);
                    vertices.push((*h).clone());
                    for v in &template[1..] {
                        let q = h.offset_by(v, lambda);
                        if !points.contains(&q) {
                            continue 'holders;
                        }
                        vertices.push(q);
                    }
                    if let Some(censuses) = rich {
                        for (j, census) in censuses.iter().enumerate() {
                            let offset = normals[j].dot(&vertices[reps[j]]);
                            if !census.is_rich(&offset) {
                                continue 'holders;
                            }
                        }
                    }
                    local.push(witness_from(h, lambda, vertices));
                }
            }
            local
        })
        .collect();
    debug_assert!(found
        .windows(2)
        .all(|w| (&w[0].ratio, &w[0].holder) < (&w[1].ratio, &w[1].holder)));
    Ok(found)
}

/// Projection of simplex witnesses to first-coordinate arithmetic
/// progressions, with the per-progression multiplicity bound that makes
/// the projection useful: a positive-ratio witness pins its holder's
/// first coordinate and its ratio, leaving at most `|A|^(d-1)` choices,
/// so no progression can be claimed by more positive witnesses than
/// that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionReport {
    /// Distinct projected progressions over all witnesses, sorted by
    /// terms; each multiplicity counts positive-ratio witnesses only.
    pub distinct: Vec<ApMultiplicity>,
    pub witness_count: u64,
    pub positive_witness_count: u64,
    pub multiplicity_bound: BigInt,
}

pub fn project_simplices(
    witnesses: &[SimplexWitness],
    a: &NumberSet,
    d: usize,
) -> Result<ProjectionReport> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { got: d, min: 2 });
    }
    let multiplicity_bound = BigInt::from(a.len()).pow((d - 1) as u32);
    let mut groups: BTreeMap<&[Rat], u64> = BTreeMap::new();
    let mut positive = 0u64;
    for w in witnesses {
        let slot = groups.entry(w.projected_ap.terms()).or_insert(0);
        if w.ratio > Rat::from_integer(0.into()) {
            *slot += 1;
            positive += 1;
        }
    }
    let mut distinct = Vec::with_capacity(groups.len());
    for (terms, multiplicity) in groups {
        if BigInt::from(multiplicity) > multiplicity_bound {
            return Err(Error::Internal(format!(
                "projection multiplicity {} exceeds bound {}",
                multiplicity, multiplicity_bound
            )));
        }
        distinct.push(ApMultiplicity {
            ap: ApWitness::new(terms.to_vec()),
            multiplicity,
        });
    }
    Ok(ProjectionReport {
        distinct,
        witness_count: witnesses.len() as u64,
        positive_witness_count: positive,
        multiplicity_bound,
    })
}

/// Subset-scan oracle: tries every `(d+1)`-subset of the host as a
/// candidate image of the standard simplex, in both vertex orders.
/// Quadratic in nothing but honest — it exists to check the factorized
/// enumerator and is capped at small hosts.
pub fn brute_force_simplices(
    host: &[PointND],
    d: usize,
    policy: RatioPolicy,
) -> Result<Vec<SimplexWitness>> {
    let simplex = simplex_vertices(d)?;
    let template: &[IntVector] = simplex.points();
    for p in host {
        if p.dim() != d {
            return Err(Error::PatternDimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let points: BTreeSet<&PointND> = host.iter().collect();
    if points.len() as u64 > BRUTE_FORCE_HOST_CAP {
        return Err(Error::SizeCapExceeded {
            cells: points.len() as u128,
            cap: BRUTE_FORCE_HOST_CAP,
        });
    }
    let points: Vec<&PointND> = points.into_iter().collect();
    let span = Rat::from_integer(d.into());
    let mut found = Vec::new();
    let mut subset = Vec::with_capacity(d + 1);
    subsets_rec(&points, d + 1, 0, &mut subset, &mut |chosen| {
        // A genuine image has pairwise distinct first coordinates, so the
        // lexicographic order of the subset matches one of the two vertex
        // orders, depending on the ratio's sign.
        let first = chosen[0];
        let last = chosen[d];
        for (lambda, holder) in [
            ((last.get(0) - first.get(0)) / &span, first),
            ((first.get(0) - last.get(0)) / &span, last),
        ] {
            if !policy.admits(&lambda) {
                continue;
            }
            let images: Vec<PointND> = template
                .iter()
                .map(|v| holder.offset_by(v, &lambda))
                .collect();
            let mut sorted: Vec<&PointND> = images.iter().collect();
            sorted.sort();
            if sorted.iter().zip(chosen.iter()).all(|(x, y)| *x == *y) {
                found.push(witness_from(holder, &lambda, images));
            }
        }
    });
    found.sort_by(|a, b| (&a.ratio, &a.holder).cmp(&(&b.ratio, &b.holder)));
    Ok(found)
}

fn subsets_rec<'a>(
    points: &[&'a PointND],
    want: usize,
    from: usize,
    chosen: &mut Vec<&'a PointND>,
    emit: &mut impl FnMut(&[&'a PointND]),
) {
    if want == 0 {
        emit(chosen);
        return;
    }
    for i in from..=points.len().saturating_sub(want) {
        chosen.push(points[i]);
        subsets_rec(points, want - 1, i + 1, chosen, emit);
        chosen.pop();
    }
}
