use super::classes::HyperplaneClass;
use super::homothets::{enumerate_homothetic_copies, match_pattern_in_pointset, RatioPolicy};
use super::simplex::{facet_normals, grid_pattern};
use super::simplices::{enumerate_simplices, project_simplices, ProjectionReport};
use super::vecnd::{Pattern, PointND};
use crate::exact::{NumberSet, Rat};
use crate::{Error, Result};
use num::{BigInt, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// How a pipeline stage picks its cutoff: a fixed fraction of the
/// stage's natural reference count, or automatically as the largest
/// cutoff that still retains the given fraction of the stage's items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdRule {
    Fixed(Rat),
    Auto { fraction: Rat },
}

impl ThresholdRule {
    fn validate(&self, what: &'static str) -> Result<()> {
        let zero = Rat::from_integer(0.into());
        let one = Rat::from_integer(1.into());
        match self {
            ThresholdRule::Fixed(f) if *f < zero => Err(Error::EpsilonOutOfRange(format!(
                "{what}: fixed fraction {f} is negative"
            ))),
            ThresholdRule::Auto { fraction } if *fraction <= zero || *fraction > one => {
                Err(Error::EpsilonOutOfRange(format!(
                    "{what}: retention fraction {fraction} is outside (0, 1]"
                )))
            }
            _ => Ok(()),
        }
    }

    /// The cutoff this rule selects for items with the given counts.
    /// `reference` is the stage's natural comparison scale (what a fixed
    /// fraction is taken of); `counts` holds one entry per item.
    fn cutoff(&self, reference: &BigInt, counts: &[u64]) -> u64 {
        match self {
            ThresholdRule::Fixed(f) => {
                let scaled = f * Rat::from_integer(reference.clone());
                let ceil = scaled.ceil().to_integer();
                ceil.to_u64().unwrap_or(u64::MAX).max(1)
            }
            ThresholdRule::Auto { fraction } => auto_cutoff(counts, fraction),
        }
    }
}

/// Largest cutoff `t` such that at least `fraction` of the counts are
/// `>= t`. Counts must be nonempty; the minimum count always qualifies,
/// so a solution exists.
fn auto_cutoff(counts: &[u64], fraction: &Rat) -> u64 {
    let mut candidates: Vec<u64> = counts.to_vec();
    candidates.sort_unstable();
    candidates.dedup();
    let target = fraction * Rat::from_integer(counts.len().into());
    let keeps = |t: u64| {
        let kept = counts.iter().filter(|&&c| c >= t).count();
        Rat::from_integer(kept.into()) >= target
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if keeps(candidates[mid]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    candidates[lo]
}

/// Tuning for the full grid-to-progression pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Ratio policy for the grid-copy enumeration stage.
    pub grid_policy: RatioPolicy,
    /// Ratio policy for the final simplex enumeration.
    pub simplex_policy: RatioPolicy,
    /// Cutoff rule for popular holders (reference scale `|A|`).
    pub holder_rule: ThresholdRule,
    /// Cutoff rule for rich hyperplane classes (reference scale
    /// `|A|^(d-1)`).
    pub richness_rule: ThresholdRule,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        let half = Rat::new(1.into(), 2.into());
        PipelineConfig {
            grid_policy: RatioPolicy::Nonzero,
            simplex_policy: RatioPolicy::Positive,
            holder_rule: ThresholdRule::Auto {
                fraction: half.clone(),
            },
            richness_rule: ThresholdRule::Auto { fraction: half },
        }
    }
}

impl PipelineConfig {
    /// The least selective configuration: both automatic cutoffs retain
    /// everything, so no holder and no image is ever discarded. Useful
    /// as a completeness baseline.
    pub fn permissive() -> Self {
        let one = Rat::from_integer(1.into());
        PipelineConfig {
            holder_rule: ThresholdRule::Auto {
                fraction: one.clone(),
            },
            richness_rule: ThresholdRule::Auto { fraction: one },
            ..PipelineConfig::default()
        }
    }
}

/// Everything the staged pipeline did: stage-by-stage counts, the
/// cutoffs it settled on, and the projected progressions. `empty_at`
/// names the first stage that produced nothing, if any; later stages
/// are then vacuously zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralPipelineReport {
    pub dimension: usize,
    pub set_size: u64,
    pub grid_copy_count: u64,
    /// Grid copies per cell of `A^(d+1)`, the trivial upper scale.
    pub copy_density: Rat,
    pub distinct_holder_count: u64,
    pub holder_cutoff: u64,
    pub popular_holder_count: u64,
    pub richness_cutoff: u64,
    /// Rich classes per facet census, in facet order.
    pub rich_class_counts: Vec<u64>,
    pub kept_point_count: u64,
    pub simplex_count: u64,
    pub projection: ProjectionReport,
    pub empty_at: Option<&'static str>,
}

/// Runs the staged pipeline on `A` in dimension `d`:
/// grid-copy enumeration, popular-holder selection, rich-class
/// filtering, simplex enumeration inside the surviving points, and
/// projection to first-coordinate progressions.
///
/// Every stage only discards, so each reported progression really is
/// one of `A` — the pipeline is sound by construction, and the
/// permissive configuration makes the simplex stage see every holder.
pub fn general_pipeline(
    a: &NumberSet,
    d: usize,
    config: &PipelineConfig,
) -> Result<GeneralPipelineReport> {
    config.holder_rule.validate("holder rule")?;
    config.richness_rule.validate("richness rule")?;
    let grid = grid_pattern(d)?;
    let set_size = a.len() as u64;
    let cells = BigInt::from(a.len()).pow((d + 1) as u32);
    let mut report = GeneralPipelineReport {
        dimension: d,
        set_size,
        grid_copy_count: 0,
        copy_density: Rat::from_integer(0.into()),
        distinct_holder_count: 0,
        holder_cutoff: 0,
        popular_holder_count: 0,
        richness_cutoff: 0,
        rich_class_counts: Vec::new(),
        kept_point_count: 0,
        simplex_count: 0,
        projection: project_simplices(&[], a, d)?,
        empty_at: None,
    };

    let copies = enumerate_homothetic_copies(&grid, a, config.grid_policy)?;
    report.grid_copy_count = copies.len() as u64;
    if !cells.is_zero() {
        report.copy_density = Rat::new(copies.len().into(), cells);
    }
    if copies.is_empty() {
        report.empty_at = Some("grid-copies");
        return Ok(report);
    }

    let mut holder_counts: BTreeMap<&PointND, u64> = BTreeMap::new();
    for c in &copies {
        *holder_counts.entry(&c.holder).or_insert(0) += 1;
    }
    report.distinct_holder_count = holder_counts.len() as u64;
    let counts: Vec<u64> = holder_counts.values().copied().collect();
    let holder_cutoff = config
        .holder_rule
        .cutoff(&BigInt::from(a.len()), &counts);
    report.holder_cutoff = holder_cutoff;
    let popular: Vec<PointND> = holder_counts
        .iter()
        .filter(|(_, &n)| n >= holder_cutoff)
        .map(|(p, _)| (*p).clone())
        .collect();
    report.popular_holder_count = popular.len() as u64;
    if popular.is_empty() {
        report.empty_at = Some("popular-holders");
        return Ok(report);
    }

    let normals = facet_normals(d)?;
    let censuses: Vec<HyperplaneClass> = normals
        .iter()
        .map(|nu| super::classes::hyperplane_classes(a, d, nu, 1))
        .collect::<Result<_>>()?;
    let min_counts: Vec<u64> = popular
        .iter()
        .map(|p| {
            censuses
                .iter()
                .map(|hc| hc.count_at(&hc.normal().dot(p)))
                .min()
                .unwrap_or(0)
        })
        .collect();
    let richness_cutoff = config
        .richness_rule
        .cutoff(&BigInt::from(a.len()).pow((d - 1) as u32), &min_counts);
    report.richness_cutoff = richness_cutoff;
    let censuses: Vec<HyperplaneClass> = censuses
        .into_iter()
        .map(|hc| hc.with_rich_threshold(richness_cutoff))
        .collect();
    report.rich_class_counts = censuses.iter().map(|hc| hc.rich_class_count()).collect();
    let kept: Vec<PointND> = popular
        .iter()
        .zip(&min_counts)
        .filter(|(_, &m)| m >= richness_cutoff)
        .map(|(p, _)| p.clone())
        .collect();
    report.kept_point_count = kept.len() as u64;
    if kept.is_empty() {
        report.empty_at = Some("rich-filter");
        return Ok(report);
    }

    let witnesses = enumerate_simplices(d, &kept, Some(&censuses), config.simplex_policy)?;
    report.simplex_count = witnesses.len() as u64;
    if witnesses.is_empty() {
        report.empty_at = Some("simplex-enumeration");
    }
    report.projection = project_simplices(&witnesses, a, d)?;
    Ok(report)
}

/// How the number of homothetic copies of one pattern grows across a
/// family of hosts, next to the exponent ceiling `1 + 1/(|f|-1)` that
/// incidence counting puts on copies of a `|f|`-point pattern in
/// general position. The slope is an ordinary least-squares fit of
/// `ln(count)` against `ln(size)`, absent when fewer than two hosts
/// have a positive count.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingReport {
    pub pattern: String,
    pub policy: RatioPolicy,
    pub sizes: Vec<u64>,
    pub counts: Vec<u64>,
    pub slope: Option<f64>,
    pub ceiling: f64,
}

/// Counts copies of `pattern` in each host with the quadratic matcher
/// and fits the growth exponent. Hosts must strictly increase in size
/// and there must be at least three of them.
pub fn covering_scaling_report(
    pattern: &Pattern,
    hosts: &[Vec<PointND>],
    policy: RatioPolicy,
) -> Result<ScalingReport> {
    if hosts.len() < 3 {
        return Err(Error::NotEnoughSizes {
            got: hosts.len(),
            min: 3,
        });
    }
    let mut sizes = Vec::with_capacity(hosts.len());
    let mut counts = Vec::with_capacity(hosts.len());
    for host in hosts {
        let copies = match_pattern_in_pointset(pattern, host, policy)?;
        let mut distinct: Vec<&PointND> = host.iter().collect();
        distinct.sort();
        distinct.dedup();
        sizes.push(distinct.len() as u64);
        counts.push(copies.len() as u64);
    }
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InfeasibleSpec(
            "host point sets must strictly increase in size".into(),
        ));
    }
    let pairs: Vec<(f64, f64)> = sizes
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c > 0)
        .map(|(&s, &c)| ((s as f64).ln(), (c as f64).ln()))
        .collect();
    let slope = if pairs.len() < 2 {
        None
    } else {
        let n = pairs.len() as f64;
        let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
        let num: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let den: f64 = pairs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(num / den)
    };
    Ok(ScalingReport {
        pattern: pattern.name().to_string(),
        policy,
        sizes,
        counts,
        slope,
        ceiling: 1.0 + 1.0 / (pattern.len() as f64 - 1.0),
    })
}
