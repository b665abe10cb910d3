use crate::exact::{difference_set_along_graph, NumberSet, PairGraph, Rat};
use crate::{Error, Result};
use num::{BigInt, Signed, Zero};
use std::collections::BTreeMap;

/// Multiplicity of every difference over the full Cartesian product:
/// `r(t) = |{(a, b) ∈ A×A : a − b = t}|`. Symmetric under negation, and
/// `r(0) = |A|`.
fn difference_counts(a: &NumberSet) -> BTreeMap<Rat, u64> {
    let mut counts = BTreeMap::new();
    for x in a.iter() {
        for y in a.iter() {
            *counts.entry(x - y).or_insert(0u64) += 1;
        }
    }
    counts
}

/// All differences realized by at least `threshold` ordered pairs of
/// `A×A`, as a set (both signs and zero appear when popular).
pub fn popular_differences(a: &NumberSet, threshold: u64) -> NumberSet {
    assert!(threshold >= 1, "threshold must be at least 1");
    NumberSet::from_values(
        difference_counts(a)
            .into_iter()
            .filter(|(_, r)| *r >= threshold)
            .map(|(t, _)| t),
    )
}

/// How the popularity cutoff is chosen when refining a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefineStrategy {
    /// Keep edges whose difference has multiplicity ≥ α·|A|; the edge
    /// retention bound may fail and is then only flagged in the report.
    FixedAlpha(Rat),
    /// Choose the largest cutoff that still keeps at least a (1−ε)
    /// fraction of the edges; the retention bound holds by construction.
    Auto,
}

/// Outcome summary of a graph refinement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementReport {
    pub epsilon: Rat,
    pub alpha_used: Rat,
    /// Edge slots before/after, loops included (a loop is the difference-0
    /// pair of its vertex).
    pub edges_before: u64,
    pub edges_after: u64,
    pub popular_difference_count: u64,
    /// |A −_{G′} A| / |A| for the refined graph.
    pub d_achieved: Rat,
    /// Whether edges_after ≥ (1−ε)·edges_before. Always true for the
    /// automatic strategy; a fixed cutoff may violate it.
    pub retention_met: bool,
}

/// Integer multiplicity threshold for popularity at level α·n: the least
/// count ≥ α·n, clamped to at least 1.
fn threshold_for_alpha(alpha: &Rat, n: u64) -> u64 {
    let level = alpha * Rat::from_integer(BigInt::from(n));
    if level.is_negative() || level.is_zero() {
        return 1;
    }
    let ceil = level.ceil().to_integer();
    let t = u64::try_from(ceil.clone()).unwrap_or(u64::MAX);
    t.max(1)
}

/// Keeps exactly the edges (and loops) of `g` whose vertex difference is
/// popular at the chosen cutoff, and reports the achieved difference-set
/// bound `D = |A −_{G′} A| / |A|`.
///
/// The automatic strategy binary-searches the realized multiplicity
/// values for the largest cutoff whose surviving edge count is still at
/// least `(1−ε)` of the original, so its retention bound always holds.
pub fn refine_graph(
    a: &NumberSet,
    g: &PairGraph,
    epsilon: &Rat,
    strategy: &RefineStrategy,
) -> Result<(PairGraph, RefinementReport)> {
    if g.vertex_count() != a.len() {
        return Err(Error::DimensionMismatch {
            set: a.len(),
            graph: g.vertex_count(),
        });
    }
    if epsilon <= &Rat::zero() || epsilon >= &Rat::from_integer(BigInt::from(1)) {
        return Err(Error::EpsilonOutOfRange(crate::exact::format_rat(epsilon)));
    }
    let edges_before = (g.edge_count() + g.loop_count()) as u64;
    if edges_before == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = a.len() as u64;
    let counts = difference_counts(a);
    // Multiplicity of each edge slot's difference, in the iteration order
    // edges-then-loops used again when rebuilding below.
    let edge_mults: Vec<u64> = g
        .edges()
        .map(|(i, j)| counts[&(a.get(i) - a.get(j))])
        .chain(g.loops().map(|_| n))
        .collect();

    let threshold = match strategy {
        RefineStrategy::FixedAlpha(alpha) => threshold_for_alpha(alpha, n),
        RefineStrategy::Auto => {
            // Candidate cutoffs: the distinct multiplicities realized by the
            // edges. Kept-edge count is non-increasing in the cutoff, so
            // binary search finds the largest cutoff meeting the retention
            // floor (the smallest candidate keeps every edge, hence some
            // candidate always works).
            let mut candidates: Vec<u64> = edge_mults.clone();
            candidates.sort_unstable();
            candidates.dedup();
            let keeps = |cutoff: u64| -> u64 {
                edge_mults.iter().filter(|&&m| m >= cutoff).count() as u64
            };
            let floor = (Rat::from_integer(BigInt::from(1)) - epsilon)
                * Rat::from_integer(BigInt::from(edges_before));
            let meets = |cutoff: u64| Rat::from_integer(BigInt::from(keeps(cutoff))) >= floor;
            let (mut lo, mut hi) = (0usize, candidates.len() - 1);
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                if meets(candidates[mid]) {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            candidates[lo]
        }
    };

    let alpha_used = match strategy {
        RefineStrategy::FixedAlpha(alpha) => alpha.clone(),
        RefineStrategy::Auto => {
            Rat::new(BigInt::from(threshold), BigInt::from(n))
        }
    };

    let mut refined = PairGraph::new(g.vertex_count(), g.allow_loops());
    let mut slot = 0usize;
    for (i, j) in g.edges() {
        if edge_mults[slot] >= threshold {
            refined.add_edge(i, j)?;
        }
        slot += 1;
    }
    for i in g.loops() {
        if edge_mults[slot] >= threshold {
            refined.add_edge(i, i)?;
        }
        slot += 1;
    }

    let edges_after = (refined.edge_count() + refined.loop_count()) as u64;
    let popular_difference_count = counts.values().filter(|&&r| r >= threshold).count() as u64;
    let d_achieved = {
        let diff = difference_set_along_graph(a, &refined)?;
        Rat::new(BigInt::from(diff.len()), BigInt::from(a.len()))
    };
    let retention_met = Rat::from_integer(BigInt::from(edges_after))
        >= (Rat::from_integer(BigInt::from(1)) - epsilon)
            * Rat::from_integer(BigInt::from(edges_before));
    let report = RefinementReport {
        epsilon: epsilon.clone(),
        alpha_used,
        edges_before,
        edges_after,
        popular_difference_count,
        d_achieved,
        retention_met,
    };
    Ok((refined, report))
}
