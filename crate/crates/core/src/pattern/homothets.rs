use super::vecnd::{Pattern, PointND};
use crate::exact::{NumberSet, Rat};
use crate::{Error, Result};
use num::{BigInt, Signed, Zero};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

/// Which homothety ratios an enumeration admits. Facets of an image stay
/// parallel to the template's under either sign; the positive policy is
/// the default wherever per-image multiplicities are bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioPolicy {
    Positive,
    Nonzero,
}

impl RatioPolicy {
    pub fn admits(&self, lambda: &Rat) -> bool {
        match self {
            RatioPolicy::Positive => lambda.is_positive(),
            RatioPolicy::Nonzero => !lambda.is_zero(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            RatioPolicy::Positive => "positive",
            RatioPolicy::Nonzero => "nonzero",
        }
    }
}

/// One homothetic image of a pattern: the image of the origin (the
/// holder) plus the scaling ratio. The pattern is referenced by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotheticCopy {
    pub holder: PointND,
    pub ratio: Rat,
    pub pattern: String,
}

impl HomotheticCopy {
    /// The image points `holder + ratio·p`, in pattern order.
    pub fn image(&self, pattern: &Pattern) -> Vec<PointND> {
        pattern
            .points()
            .iter()
            .map(|p| self.holder.offset_by(p, &self.ratio))
            .collect()
    }
}

/// All candidate ratios a pattern admits inside `A`: the anchor
/// coordinate's value gap must map to a difference of `A`, so every ratio
/// is such a difference divided by the gap.
fn candidate_ratios(pattern: &Pattern, a: &NumberSet, policy: RatioPolicy) -> Vec<Rat> {
    let anchor = (0..pattern.dim())
        .map(|c| pattern.coordinate_values(c))
        .find(|vals| vals.len() >= 2)
        .expect("pattern extent was checked");
    let gap = Rat::from_integer(anchor.last().unwrap() - anchor.first().unwrap());
    let mut seen = BTreeSet::new();
    for x in a.iter() {
        for y in a.iter() {
            if x == y {
                continue;
            }
            let lambda = (x - y) / &gap;
            if policy.admits(&lambda) {
                seen.insert(lambda);
            }
        }
    }
    seen.into_iter().collect()
}

/// For one coordinate of the pattern and one ratio, the set of holder
/// coordinates `h` with `h + λ·v ∈ A` for every pattern value `v` of that
/// coordinate; ascending.
fn holder_axis(values: &[BigInt], lambda: &Rat, a: &NumberSet) -> Vec<Rat> {
    let first = Rat::from_integer(values[0].clone());
    let mut out = Vec::new();
    'next: for base in a.iter() {
        let h = base - lambda * &first;
        for v in &values[1..] {
            if !a.contains(&(&h + lambda * Rat::from_integer(v.clone()))) {
                continue 'next;
            }
        }
        out.push(h);
    }
    out
}

/// Every homothetic copy of `pattern` inside the Cartesian power
/// `A^d` (`d` = pattern dimension), as `(holder, ratio)` pairs.
///
/// The membership condition factors over coordinates: a holder works for
/// ratio λ exactly when each of its coordinates lies in that coordinate's
/// axis set, so the copies for one ratio form the Cartesian product of
/// the axis sets. Ratios are scanned in parallel; output is sorted by
/// `(ratio, holder)`.
pub fn enumerate_homothetic_copies(
    pattern: &Pattern,
    a: &NumberSet,
    policy: RatioPolicy,
) -> Result<Vec<HomotheticCopy>> {
    if pattern.len() < 2 {
        return Err(Error::PatternWithoutExtent);
    }
    if a.len() < 2 {
        return Ok(Vec::new());
    }
    let d = pattern.dim();
    let axes_values: Vec<Vec<BigInt>> = (0..d).map(|c| pattern.coordinate_values(c)).collect();
    let ratios = candidate_ratios(pattern, a, policy);
    let copies: Vec<HomotheticCopy> = ratios
        .par_iter()
        .flat_map_iter(|lambda| {
            let axes: Vec<Vec<Rat>> = axes_values
                .iter()
                .map(|values| holder_axis(values, lambda, a))
                .collect();
            let mut local = Vec::new();
            if axes.iter().all(|axis| !axis.is_empty()) {
                let mut holder = Vec::with_capacity(d);
                product_rec(&axes, &mut holder, &mut |coords| {
                    local.push(HomotheticCopy {
                        holder: PointND::new(coords.to_vec()).expect("d >= 1"),
                        ratio: lambda.clone(),
                        pattern: pattern.name().to_string(),
                    });
                });
            }
            local
        })
        .collect();
    debug_assert!(copies
        .windows(2)
        .all(|w| (&w[0].ratio, &w[0].holder) < (&w[1].ratio, &w[1].holder)));
    Ok(copies)
}

/// Lexicographic walk over the product of the axis sets.
fn product_rec(axes: &[Vec<Rat>], prefix: &mut Vec<Rat>, emit: &mut impl FnMut(&[Rat])) {
    match axes.split_first() {
        None => emit(prefix),
        Some((first, rest)) => {
            for v in first {
                prefix.push(v.clone());
                product_rec(rest, prefix, emit);
                prefix.pop();
            }
        }
    }
}

/// The points occurring as holder of at least `threshold` of the given
/// copies, ascending.
pub fn popular_holders(copies: &[HomotheticCopy], threshold: u64) -> Vec<PointND> {
    let mut counts: BTreeMap<&PointND, u64> = BTreeMap::new();
    for c in copies {
        *counts.entry(&c.holder).or_insert(0) += 1;
    }
    counts
        .into_iter()
        .filter(|(_, n)| *n >= threshold)
        .map(|(p, _)| p.clone())
        .collect()
}

/// Finds every homothetic copy of `pattern` inside an arbitrary finite
/// point set by quadratic search: each ordered pair of host points is
/// tried as the images of two fixed template points, which pins down
/// `(holder, ratio)` for full verification. Independent of the factorized
/// enumerator, so the two can check each other on product hosts.
pub fn match_pattern_in_pointset(
    pattern: &Pattern,
    host: &[PointND],
    policy: RatioPolicy,
) -> Result<Vec<HomotheticCopy>> {
    if pattern.len() < 2 {
        return Err(Error::PatternWithoutExtent);
    }
    let d = pattern.dim();
    for p in host {
        if p.dim() != d {
            return Err(Error::PatternDimensionMismatch {
                expected: d,
                got: p.dim(),
            });
        }
    }
    let points: BTreeSet<&PointND> = host.iter().collect();
    let b0 = &pattern.points()[0];
    let b1 = &pattern.points()[pattern.len() - 1];
    let pivot = (0..d)
        .find(|&c| b0.get(c) != b1.get(c))
        .expect("distinct pattern points differ somewhere");
    let denom = Rat::from_integer(b1.get(pivot) - b0.get(pivot));
    let host_vec: Vec<&PointND> = points.iter().copied().collect();
    let mut copies: Vec<HomotheticCopy> = host_vec
        .par_iter()
        .flat_map_iter(|x| {
            let mut local = Vec::new();
            for y in &host_vec {
                let lambda = (y.get(pivot) - x.get(pivot)) / &denom;
                if !policy.admits(&lambda) {
                    continue;
                }
                let holder = x.offset_by(b0, &-lambda.clone());
                if holder.offset_by(b1, &lambda) != **y {
                    continue;
                }
                if pattern
                    .points()
                    .iter()
                    .all(|p| points.contains(&holder.offset_by(p, &lambda)))
                {
                    local.push(HomotheticCopy {
                        holder,
                        ratio: lambda,
                        pattern: pattern.name().to_string(),
                    });
                }
            }
            local
        })
        .collect();
    copies.sort_by(|a, b| (&a.ratio, &a.holder).cmp(&(&b.ratio, &b.holder)));
    Ok(copies)
}

/// Materializes `A^d` in lexicographic order, refusing to build more than
/// `max_cells` points.
pub fn cartesian_power(a: &NumberSet, d: usize, max_cells: u64) -> Result<Vec<PointND>> {
    if d == 0 {
        return Err(Error::DimensionTooSmall { got: 0, min: 1 });
    }
    let cells = (a.len() as u128)
        .checked_pow(d as u32)
        .unwrap_or(u128::MAX);
    if cells > max_cells as u128 {
        return Err(Error::SizeCapExceeded {
            cells,
            cap: max_cells,
        });
    }
    let axes: Vec<Vec<Rat>> = (0..d).map(|_| a.iter().cloned().collect()).collect();
    let mut out = Vec::with_capacity(cells as usize);
    let mut prefix = Vec::with_capacity(d);
    product_rec(&axes, &mut prefix, &mut |coords| {
        out.push(PointND::new(coords.to_vec()).expect("d >= 1"));
    });
    Ok(out)
}
